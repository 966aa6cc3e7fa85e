#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strategem/analysis.hpp"
#include "strategem/strategy.hpp"

namespace strategem {

template <typename G>
concept RenderableRules = GameRules<G> && requires(const G& g, const typename G::Config& c) {
    { g.config_text(c) } -> std::same_as<std::string>;
};

/// Header `k,n,benny_wins`, then one 0/1 row per cell, k ascending in the
/// outer loop. LF line endings, nothing after the final LF.
inline std::string render_csv(const SweepGrid& grid) {
    std::string out = "k,n,benny_wins\n";
    for (std::int64_t k = 0; k <= grid.max_size(); ++k)
        for (std::int64_t n = 0; n <= grid.max_size(); ++n) {
            out += std::to_string(k);
            out += ',';
            out += std::to_string(n);
            out += ',';
            out += grid.benny_wins(k, n) ? '1' : '0';
            out += '\n';
        }
    return out;
}

/// Inverse of render_csv. Rejects anything that render_csv cannot have
/// produced.
inline SweepGrid parse_grid_csv(std::string_view text) {
    const auto take_line = [&text]() {
        const std::size_t eol = text.find('\n');
        if (eol == std::string_view::npos) throw InvalidConfigError("grid csv: missing newline");
        const std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol + 1);
        return line;
    };
    const auto parse_int = [](std::string_view field) {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0)
            throw InvalidConfigError("grid csv: bad integer field");
        return value;
    };

    if (take_line() != "k,n,benny_wins") throw InvalidConfigError("grid csv: bad header");
    std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, bool>> rows;
    std::int64_t max_seen = 0;
    while (!text.empty()) {
        const std::string_view line = take_line();
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.rfind(',');
        if (c1 == std::string_view::npos || c2 == c1)
            throw InvalidConfigError("grid csv: bad row");
        const std::int64_t k = parse_int(line.substr(0, c1));
        const std::int64_t n = parse_int(line.substr(c1 + 1, c2 - c1 - 1));
        const std::string_view v = line.substr(c2 + 1);
        if (v != "0" && v != "1") throw InvalidConfigError("grid csv: cell must be 0 or 1");
        rows.push_back({{k, n}, v == "1"});
        max_seen = std::max({max_seen, k, n});
    }
    const std::size_t expect =
        static_cast<std::size_t>(max_seen + 1) * static_cast<std::size_t>(max_seen + 1);
    if (rows.size() != expect) throw InvalidConfigError("grid csv: wrong number of rows");
    SweepGrid grid(max_seen);
    for (const auto& [cell, value] : rows) grid.set(cell.first, cell.second, value);
    return grid;
}

/// Plain PGM with maxval 1. Rows top-down hold n = max..0 so the heap size
/// grows upward; 0 (black) marks Benny-winning cells.
inline std::string render_pgm(const SweepGrid& grid) {
    const std::int64_t side = grid.max_size() + 1;
    std::string out = "P2\n" + std::to_string(side) + ' ' + std::to_string(side) + "\n1\n";
    for (std::int64_t n = grid.max_size(); n >= 0; --n) {
        for (std::int64_t k = 0; k <= grid.max_size(); ++k) {
            if (k > 0) out += ' ';
            out += grid.benny_wins(k, n) ? '0' : '1';
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::string dot_escape(const std::string& text) {
    std::string out;
    for (const char ch : text) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

template <RenderableRules G>
void dot_node(const StrategyNode<typename G::Config>& node, const G& rules, const std::string& id,
              std::string& out) {
    std::string label = dot_escape(std::string(1, player_char(node.mover)) + ':' +
                                   rules.config_text(node.config));
    if (node.children.empty())
        label += std::string("\\n") + outcome_name(rules.leaf_outcome(node.mover, node.config));
    out += "  " + id + " [label=\"" + label + "\"];\n";
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        const std::string child_id = id + '_' + std::to_string(i);
        out += "  " + id + " -> " + child_id + ";\n";
        dot_node(node.children[i], rules, child_id, out);
    }
}

}  // namespace detail

/// One node per tree node with path-based identifiers, so repeated
/// configurations stay distinct; children appear in canonical order and
/// leaves carry their outcome.
template <RenderableRules G>
std::string render_dot(const StrategyTree<typename G::Config>& tree, const G& rules) {
    std::string out = "digraph strategy {\n  node [shape=box];\n";
    detail::dot_node(tree.root, rules, "n0", out);
    out += "}\n";
    return out;
}

}  // namespace strategem
