#pragma once

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strategem/engine.hpp"

namespace strategem {

/// Two heaps of tokens, kept ordered so that a <= b.
struct HeapsConfig {
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend auto operator<=>(const HeapsConfig&, const HeapsConfig&) = default;
};

inline HeapsConfig normalize(std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0) throw InvalidConfigError("heap sizes must be non-negative");
    return x <= y ? HeapsConfig{x, y} : HeapsConfig{y, x};
}

/// All pairs (a, b - k*m) for k = 1, 2, ... while k*m <= b. Results are raw
/// pairs, not reordered.
inline std::vector<std::pair<std::int64_t, std::int64_t>> sub(const HeapsConfig& c,
                                                              std::int64_t m) {
    assert(m >= 1);
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t t = m; t <= c.b; t += m) out.emplace_back(c.a, c.b - t);
    return out;
}

/// Positions reachable in one move. A mover may remove any positive multiple
/// of either current heap size from one heap; with a <= b this collapses to
/// emptying either heap plus sub(c, a) on the larger one.
inline std::vector<HeapsConfig> next_heaps(const HeapsConfig& c) {
    if (c.a == 0 && c.b == 0) return {};
    if (c.a == 0) return {HeapsConfig{0, 0}};
    if (c.a == c.b) return {HeapsConfig{0, c.a}};
    std::vector<HeapsConfig> out{HeapsConfig{0, c.a}, HeapsConfig{0, c.b}};
    for (const auto& [x, y] : sub(c, c.a)) out.push_back(normalize(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool halted_heaps(Player /*p*/, const HeapsConfig& c) { return c.a == 0 && c.b == 0; }

/// The mover facing empty heaps lost: the previous player took the last token.
inline Outcome leaf_outcome_heaps(Player p, const HeapsConfig& c) {
    if (!halted_heaps(p, c)) throw std::logic_error("leaf_outcome_heaps: position is not halted");
    return p == Player::B ? Outcome::RWin : Outcome::BWin;
}

class HeapsGame {
public:
    using Config = HeapsConfig;
    using Key = HeapsConfig;

    bool halted(Player p, const Config& c) const { return halted_heaps(p, c); }
    Outcome leaf_outcome(Player p, const Config& c) const { return leaf_outcome_heaps(p, c); }
    std::vector<Config> next_configs(Player /*p*/, const Config& c) const { return next_heaps(c); }
    Key canonical_key(const Config& c) const { return c; }
    std::string config_text(const Config& c) const {
        return std::to_string(c.a) + ' ' + std::to_string(c.b);
    }
};

/// Parses the CLI position format: two base-10 integers separated by a single
/// space, e.g. "2 5". The result is normalized.
inline HeapsConfig parse_heaps_position(std::string_view text) {
    const auto parse_int = [](std::string_view field) {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size())
            throw InvalidConfigError("malformed heaps position field");
        return value;
    };
    const std::size_t space = text.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 >= text.size())
        throw InvalidConfigError("heaps position must be two integers separated by one space");
    return normalize(parse_int(text.substr(0, space)), parse_int(text.substr(space + 1)));
}

}  // namespace strategem
