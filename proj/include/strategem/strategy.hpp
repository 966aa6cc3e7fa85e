#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "strategem/engine.hpp"

namespace strategem {

template <typename Config>
struct StrategyNode {
    Player mover;
    Config config;
    std::vector<StrategyNode<Config>> children;
    friend bool operator==(const StrategyNode&, const StrategyNode&) = default;
};

/// A strategy subtree: it keeps every opponent reply and commits to exactly
/// one of the target's own moves at each node it contains.
template <typename Config>
struct StrategyTree {
    Player target;
    Criterion criterion;
    StrategyNode<Config> root;
    friend bool operator==(const StrategyTree&, const StrategyTree&) = default;
};

template <typename Config>
std::size_t tree_size(const StrategyNode<Config>& node) {
    std::size_t n = 1;
    for (const auto& child : node.children) n += tree_size(child);
    return n;
}

namespace detail {

template <GameRules G>
StrategyNode<typename G::Config> build_strategy(Criterion criterion, Player target, Player mover,
                                                const typename G::Config& c, const G& rules,
                                                ValuationCache<typename G::Key>& cache,
                                                const EngineOptions& opt, std::uint64_t depth) {
    if (depth > opt.depth_limit) throw DepthLimitError(opt.depth_limit);
    StrategyNode<typename G::Config> node{mover, c, {}};
    if (rules.halted(mover, c)) return node;

    if (mover == target) {
        // commit to the first satisfying successor in canonical order
        for (const typename G::Config& succ : rules.next_configs(mover, c)) {
            if (!evaluate(criterion, target, other(mover), succ, rules, cache, opt, depth + 1))
                continue;
            node.children.push_back(
                build_strategy(criterion, target, other(mover), succ, rules, cache, opt, depth + 1));
            break;
        }
        assert(node.children.size() == 1);
    } else {
        for (const typename G::Config& succ : rules.next_configs(mover, c))
            node.children.push_back(
                build_strategy(criterion, target, other(mover), succ, rules, cache, opt, depth + 1));
    }
    return node;
}

template <GameRules G>
bool verify_node(const StrategyNode<typename G::Config>& node, Player target, Criterion criterion,
                 const G& rules) {
    if (rules.halted(node.mover, node.config))
        return node.children.empty() &&
               leaf_satisfies(criterion, target, rules.leaf_outcome(node.mover, node.config));

    const std::vector<typename G::Config> succs = rules.next_configs(node.mover, node.config);
    for (const auto& child : node.children)
        if (child.mover != other(node.mover)) return false;

    if (node.mover == target) {
        if (node.children.size() != 1) return false;
        if (std::find(succs.begin(), succs.end(), node.children.front().config) == succs.end())
            return false;
    } else {
        // all opponent replies, each exactly once
        if (node.children.size() != succs.size()) return false;
        std::vector<typename G::Config> got;
        got.reserve(node.children.size());
        for (const auto& child : node.children) got.push_back(child.config);
        std::vector<typename G::Config> want = succs;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want) return false;
    }
    for (const auto& child : node.children)
        if (!verify_node(child, target, criterion, rules)) return false;
    return true;
}

inline std::int64_t saturating_add(std::int64_t a, std::int64_t b, std::int64_t cap) {
    return a > cap - b ? cap : a + b;
}

inline std::int64_t saturating_mul(std::int64_t a, std::int64_t b, std::int64_t cap) {
    if (a == 0 || b == 0) return 0;
    if (a > cap / b) return cap;
    return std::min(a * b, cap);
}

/// Counts strategy subtrees directly from the rules: a sum over own-move
/// choices, a product over mandatory opponent replies. Deliberately does not
/// consult the valuation path it serves as an oracle for.
template <GameRules G>
std::int64_t count_rec(Criterion criterion, Player target, Player mover,
                       const typename G::Config& c, const G& rules, std::int64_t cap,
                       const EngineOptions& opt, std::uint64_t depth,
                       std::map<std::pair<Player, typename G::Key>, std::int64_t>& memo) {
    if (depth > opt.depth_limit) throw DepthLimitError(opt.depth_limit);
    const auto key = std::make_pair(mover, rules.canonical_key(c));
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    std::int64_t count;
    if (rules.halted(mover, c)) {
        count = leaf_satisfies(criterion, target, rules.leaf_outcome(mover, c)) ? 1 : 0;
    } else if (mover == target) {
        count = 0;
        for (const typename G::Config& succ : rules.next_configs(mover, c))
            count = saturating_add(
                count, count_rec(criterion, target, other(mover), succ, rules, cap, opt, depth + 1, memo),
                cap);
    } else {
        count = 1;
        for (const typename G::Config& succ : rules.next_configs(mover, c)) {
            count = saturating_mul(
                count, count_rec(criterion, target, other(mover), succ, rules, cap, opt, depth + 1, memo),
                cap);
            if (count == 0) break;
        }
    }
    memo.emplace(key, count);
    return count;
}

}  // namespace detail

/// Extracts a strategy subtree witnessing the valuation, or nothing when the
/// valuation is false. Own-move ties break to the first satisfying successor
/// in canonical order, so extraction is deterministic.
template <GameRules G>
std::optional<StrategyTree<typename G::Config>> extract_strategy(Player target, Criterion criterion,
                                                                 Player mover,
                                                                 const typename G::Config& c,
                                                                 const G& rules,
                                                                 const EngineOptions& opt = {}) {
    ValuationCache<typename G::Key> cache;
    if (!detail::evaluate(criterion, target, mover, c, rules, cache, opt, 0)) return std::nullopt;
    return StrategyTree<typename G::Config>{
        target, criterion, detail::build_strategy(criterion, target, mover, c, rules, cache, opt, 0)};
}

/// Checks the three subtree conditions plus the leaf criterion. Malformed
/// trees simply fail.
template <GameRules G>
bool verify_strategy(const StrategyTree<typename G::Config>& tree, const G& rules) {
    return detail::verify_node(tree.root, tree.target, tree.criterion, rules);
}

/// Number of distinct strategy subtrees from (mover, c) whose leaves all meet
/// the criterion, saturating at cap.
template <GameRules G>
std::int64_t count_strategies(Player target, Criterion criterion, Player mover,
                              const typename G::Config& c, const G& rules, std::int64_t cap,
                              const EngineOptions& opt = {}) {
    assert(cap >= 1);
    std::map<std::pair<Player, typename G::Key>, std::int64_t> memo;
    return detail::count_rec(criterion, target, mover, c, rules, cap, opt, 0, memo);
}

}  // namespace strategem
