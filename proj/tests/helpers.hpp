#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "strategem/engine.hpp"
#include "strategem/heaps.hpp"

namespace strategem::testing {

/// Independent move generator straight from the problem statement: remove any
/// positive multiple of either current heap size from one of the heaps.
inline std::vector<HeapsConfig> brute_force_heap_moves(const HeapsConfig& c) {
    std::set<HeapsConfig> out;
    for (const std::int64_t base : {c.a, c.b}) {
        if (base <= 0) continue;
        for (std::int64_t take = base; take <= c.a; take += base)
            out.insert(normalize(c.a - take, c.b));
        for (std::int64_t take = base; take <= c.b; take += base)
            out.insert(normalize(c.a, c.b - take));
    }
    return {out.begin(), out.end()};
}

/// A single forced line of the given length; position k needs k more moves
/// to halt, and the player stuck at 0 loses.
struct LineGame {
    using Config = int;
    using Key = int;
    int length = 8;

    bool halted(Player, const Config& c) const { return c == 0; }
    Outcome leaf_outcome(Player p, const Config& c) const {
        if (c != 0) throw std::logic_error("not halted");
        return p == Player::B ? Outcome::RWin : Outcome::BWin;
    }
    std::vector<Config> next_configs(Player, const Config& c) const {
        return c == 0 ? std::vector<Config>{} : std::vector<Config>{c - 1};
    }
    Key canonical_key(const Config& c) const { return c; }
    std::string config_text(const Config& c) const { return std::to_string(c); }
};

/// Deliberately ill-formed: the single position repeats forever.
struct LoopGame {
    using Config = int;
    using Key = int;

    bool halted(Player, const Config&) const { return false; }
    Outcome leaf_outcome(Player, const Config&) const {
        throw std::logic_error("loop game has no leaves");
    }
    std::vector<Config> next_configs(Player, const Config& c) const { return {c}; }
    Key canonical_key(const Config& c) const { return c; }
};

}  // namespace strategem::testing
