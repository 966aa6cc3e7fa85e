#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace strategem {

enum class Player : std::uint8_t { B, R };

constexpr Player other(Player p) { return p == Player::B ? Player::R : Player::B; }
constexpr char player_char(Player p) { return p == Player::B ? 'B' : 'R'; }

enum class Outcome : std::uint8_t { RWin, BWin, Draw };

constexpr Outcome win_outcome(Player p) { return p == Player::R ? Outcome::RWin : Outcome::BWin; }

constexpr const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::RWin: return "RWin";
    case Outcome::BWin: return "BWin";
    default: return "Draw";
    }
}

/// What a strategy subtree must deliver at its leaves: the target's win,
/// or merely anything that is not the opponent's win.
enum class Criterion : std::uint8_t { Winning, NonLosing };

constexpr bool leaf_satisfies(Criterion k, Player target, Outcome o) {
    return k == Criterion::Winning ? o == win_outcome(target)
                                   : o != win_outcome(other(target));
}

struct DepthLimitError : std::runtime_error {
    explicit DepthLimitError(std::uint64_t limit)
        : std::runtime_error("depth limit of " + std::to_string(limit) +
                             " plies exceeded; game may not terminate") {}
};

struct CapExceededError : std::runtime_error {
    explicit CapExceededError(std::size_t cap)
        : std::runtime_error("more than " + std::to_string(cap) + " states discovered") {}
};

struct InvalidConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A pluggable game. Configs are opaque values; keys are totally ordered and
/// identify positions up to whatever equivalence the game chooses (e.g. board
/// symmetry). halted(p, c) must hold exactly when next_configs(p, c) is empty,
/// and next_configs must be duplicate-free and sorted by canonical key.
template <typename G>
concept GameRules = requires(const G& g, Player p, const typename G::Config& c) {
    typename G::Config;
    typename G::Key;
    requires std::totally_ordered<typename G::Key>;
    { g.halted(p, c) } -> std::same_as<bool>;
    { g.leaf_outcome(p, c) } -> std::same_as<Outcome>;
    { g.next_configs(p, c) } -> std::same_as<std::vector<typename G::Config>>;
    { g.canonical_key(c) } -> std::same_as<typename G::Key>;
};

struct EngineOptions {
    std::uint64_t depth_limit = 1'000'000;
    bool short_circuit = true;  // early exit once a fold is settled
};

/// Transposition table for position valuations. Entries are insert-once: a
/// key, once bound, never changes value.
template <typename Key>
class ValuationCache {
public:
    std::optional<bool> lookup(Criterion kind, Player target, Player mover, const Key& key) const {
        const auto it = entries_.find(std::make_tuple(kind, target, mover, key));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void store(Criterion kind, Player target, Player mover, const Key& key, bool value) {
        const auto [it, inserted] = entries_.emplace(std::make_tuple(kind, target, mover, key), value);
        if (!inserted && it->second != value)
            throw std::logic_error("ValuationCache: rebind of an entry to a different value");
    }

    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::tuple<Criterion, Player, Player, Key>, bool> entries_;
};

namespace detail {

/// Backward-induction valuation: leaf criterion at halted nodes, disjunction
/// over successors where the target moves, conjunction where the opponent
/// does. Successors fold in canonical order.
template <GameRules G>
bool evaluate(Criterion kind, Player target, Player mover, const typename G::Config& c,
              const G& rules, ValuationCache<typename G::Key>& cache,
              const EngineOptions& opt, std::uint64_t depth) {
    if (depth > opt.depth_limit) throw DepthLimitError(opt.depth_limit);
    const typename G::Key key = rules.canonical_key(c);
    if (const auto hit = cache.lookup(kind, target, mover, key)) return *hit;

    bool value;
    if (rules.halted(mover, c)) {
        value = leaf_satisfies(kind, target, rules.leaf_outcome(mover, c));
    } else {
        const bool own_turn = mover == target;
        value = !own_turn;  // fold identity: false for the disjunction, true for the conjunction
        for (const typename G::Config& succ : rules.next_configs(mover, c)) {
            const bool sub = evaluate(kind, target, other(mover), succ, rules, cache, opt, depth + 1);
            value = own_turn ? (value || sub) : (value && sub);
            if (opt.short_circuit && value == own_turn) break;  // settled
        }
    }
    cache.store(kind, target, mover, key, value);
    return value;
}

template <GameRules G>
std::uint64_t height_rec(Player mover, const typename G::Config& c, const G& rules,
                         const EngineOptions& opt, std::uint64_t depth,
                         std::map<std::pair<Player, typename G::Key>, std::uint64_t>& memo) {
    if (depth > opt.depth_limit) throw DepthLimitError(opt.depth_limit);
    const auto key = std::make_pair(mover, rules.canonical_key(c));
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    std::uint64_t h = 0;
    for (const typename G::Config& succ : rules.next_configs(mover, c))
        h = std::max(h, 1 + height_rec(other(mover), succ, rules, opt, depth + 1, memo));
    memo.emplace(key, h);
    return h;
}

}  // namespace detail

/// True iff `target` has a winning strategy from c with `mover` to move.
template <GameRules G>
bool wins_for(Player target, Player mover, const typename G::Config& c, const G& rules,
              ValuationCache<typename G::Key>& cache, const EngineOptions& opt = {}) {
    return detail::evaluate(Criterion::Winning, target, mover, c, rules, cache, opt, 0);
}

/// True iff `target` has a non-losing strategy from c with `mover` to move.
template <GameRules G>
bool nonlosing_for(Player target, Player mover, const typename G::Config& c, const G& rules,
                   ValuationCache<typename G::Key>& cache, const EngineOptions& opt = {}) {
    return detail::evaluate(Criterion::NonLosing, target, mover, c, rules, cache, opt, 0);
}

/// Perfect-play value of a position. At most one player can have a winning
/// strategy; if neither does, the game is a draw under perfect play.
template <GameRules G>
Outcome game_value(Player mover, const typename G::Config& c, const G& rules,
                   ValuationCache<typename G::Key>& cache, const EngineOptions& opt = {}) {
    const bool r = wins_for(Player::R, mover, c, rules, cache, opt);
    const bool b = wins_for(Player::B, mover, c, rules, cache, opt);
    if (r && b) throw std::logic_error("game_value: winning strategies for both players");
    return r ? Outcome::RWin : b ? Outcome::BWin : Outcome::Draw;
}

/// Height of the game tree under (mover, c): 0 at halted nodes, else one more
/// than the tallest successor.
template <GameRules G>
std::uint64_t height(Player mover, const typename G::Config& c, const G& rules,
                     const EngineOptions& opt = {}) {
    std::map<std::pair<Player, typename G::Key>, std::uint64_t> memo;
    return detail::height_rec(mover, c, rules, opt, 0, memo);
}

/// Breadth-first walk over the distinct (mover, position) pairs reachable
/// from the start, visiting each exactly once in discovery order. Throws
/// CapExceededError once more than `cap` pairs are discovered.
template <GameRules G, typename Visitor>
void for_each_reachable(Player mover, const typename G::Config& c, const G& rules,
                        std::size_t cap, Visitor&& visit) {
    using Key = typename G::Key;
    std::set<std::pair<Player, Key>> seen;
    std::queue<std::pair<Player, typename G::Config>> frontier;

    const auto discover = [&](Player p, const typename G::Config& cfg) {
        if (!seen.emplace(p, rules.canonical_key(cfg)).second) return;
        if (seen.size() > cap) throw CapExceededError(cap);
        visit(p, cfg);
        frontier.emplace(p, cfg);
    };

    discover(mover, c);
    while (!frontier.empty()) {
        const auto [p, cfg] = frontier.front();
        frontier.pop();
        for (const typename G::Config& succ : rules.next_configs(p, cfg)) discover(other(p), succ);
    }
}

/// The set of (mover, canonical key) pairs reachable from the start.
template <GameRules G>
std::set<std::pair<Player, typename G::Key>> reachable_states(Player mover,
                                                              const typename G::Config& c,
                                                              const G& rules, std::size_t cap) {
    std::set<std::pair<Player, typename G::Key>> out;
    for_each_reachable(mover, c, rules, cap, [&](Player p, const typename G::Config& cfg) {
        out.emplace(p, rules.canonical_key(cfg));
    });
    return out;
}

}  // namespace strategem
