#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strategem/board.hpp"
#include "strategem/engine.hpp"
#include "strategem/heaps.hpp"

namespace strategem {

/// Exact floor square root: returns s with s*s <= m < (s+1)*(s+1).
/// Newton iteration from above, then a correction step; division-based
/// comparisons keep everything inside 64 bits.
inline std::uint64_t isqrt(std::uint64_t m) {
    if (m < 2) return m;
    std::uint64_t x = std::uint64_t{1} << ((std::bit_width(m) + 1) / 2);
    std::uint64_t y = (x + m / x) / 2;
    while (y < x) {
        x = y;
        y = (x + m / x) / 2;
    }
    while (x > m / x) --x;
    while (x + 1 <= m / (x + 1)) ++x;
    return x;
}

struct PhiBounds {
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend bool operator==(const PhiBounds&, const PhiBounds&) = default;
};

/// a = ceil(n/phi) and b = floor(phi*n), evaluated exactly through
/// s = isqrt(5*n^2) = floor(n*sqrt(5)). No floating point anywhere.
inline PhiBounds phi_bounds(std::int64_t n) {
    if (n < 0) throw InvalidConfigError("phi_bounds: n must be non-negative");
    if (n > 1'900'000'000) throw InvalidConfigError("phi_bounds: 5*n^2 would overflow");
    if (n == 0) return {0, 0};
    const auto s = static_cast<std::int64_t>(isqrt(5ull * static_cast<std::uint64_t>(n) *
                                                   static_cast<std::uint64_t>(n)));
    return {(s - n) / 2 + 1, (n + s) / 2};
}

/// L: the mover loses (the opponent owns the region n/phi < k < phi*n,
/// together with (0,0)); W: the mover wins.
enum class PositionClass : std::uint8_t { L, W };

inline PositionClass classify(std::int64_t k, std::int64_t n) {
    const HeapsConfig c = normalize(k, n);
    const PhiBounds pb = phi_bounds(c.b);
    return pb.a <= c.a && c.a <= pb.b ? PositionClass::L : PositionClass::W;
}

/// cells[k][n] = Benny has a winning strategy when the heaps start (k, n) and
/// Rebecca moves first.
class SweepGrid {
public:
    explicit SweepGrid(std::int64_t max_size)
        : max_size_(max_size),
          cells_(static_cast<std::size_t>(max_size + 1) * static_cast<std::size_t>(max_size + 1), 0) {
        if (max_size < 0) throw InvalidConfigError("SweepGrid: max size must be non-negative");
    }

    std::int64_t max_size() const { return max_size_; }
    bool benny_wins(std::int64_t k, std::int64_t n) const { return cells_[index(k, n)] != 0; }
    void set(std::int64_t k, std::int64_t n, bool value) { cells_[index(k, n)] = value ? 1 : 0; }

    friend bool operator==(const SweepGrid&, const SweepGrid&) = default;

private:
    std::size_t index(std::int64_t k, std::int64_t n) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(max_size_ + 1) +
               static_cast<std::size_t>(n);
    }

    std::int64_t max_size_;
    std::vector<std::uint8_t> cells_;
};

/// Fills the whole grid with one shared transposition table.
inline SweepGrid sweep(std::int64_t max_size, const EngineOptions& opt = {}) {
    SweepGrid grid(max_size);
    const HeapsGame rules;
    ValuationCache<HeapsConfig> cache;
    for (std::int64_t n = 0; n <= max_size; ++n)
        for (std::int64_t k = 0; k <= n; ++k) {
            const bool won = wins_for(Player::B, Player::R, HeapsConfig{k, n}, rules, cache, opt);
            grid.set(k, n, won);
            grid.set(n, k, won);
        }
    return grid;
}

/// Per-column extremes of the Benny-winning band. a[n] exists for every
/// column; b[n] is emitted only for the prefix of columns whose band top lies
/// strictly inside the grid (a band touching the edge may be truncated).
struct SequencePair {
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    std::vector<bool> contiguous;
};

inline SequencePair extract_sequences(const SweepGrid& grid) {
    const std::int64_t max = grid.max_size();
    SequencePair out;
    bool b_certain = true;
    for (std::int64_t n = 0; n <= max; ++n) {
        std::int64_t lo = -1, hi = -1;
        for (std::int64_t k = 0; k <= max; ++k)
            if (grid.benny_wins(k, n)) {
                if (lo < 0) lo = k;
                hi = k;
            }
        if (lo < 0) throw std::logic_error("extract_sequences: column " + std::to_string(n) +
                                           " has no winning cell");
        out.a.push_back(lo);
        bool contiguous = true;
        for (std::int64_t k = 0; k <= max; ++k)
            if (grid.benny_wins(k, n) != (lo <= k && k <= hi)) contiguous = false;
        out.contiguous.push_back(contiguous);
        if (b_certain && hi < max)
            out.b.push_back(hi);
        else
            b_certain = false;
    }
    return out;
}

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Corollary: the solved grid and the closed-form classification agree cell
/// by cell.
inline CheckResult check_grid_matches_law(const SweepGrid& grid) {
    CheckResult result{"golden-ratio-law", true, {}};
    for (std::int64_t k = 0; k <= grid.max_size(); ++k)
        for (std::int64_t n = 0; n <= grid.max_size(); ++n)
            if (grid.benny_wins(k, n) != (classify(k, n) == PositionClass::L)) {
                result.passed = false;
                result.detail = "mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n);
                return result;
            }
    result.detail = "checked " + std::to_string((grid.max_size() + 1) * (grid.max_size() + 1)) +
                    " cells";
    return result;
}

/// Proposition part 1: from every W position some move lands in L.
inline CheckResult check_w_positions_reach_l(std::int64_t max_size) {
    CheckResult result{"w-can-reach-l", true, {}};
    for (std::int64_t n = 0; n <= max_size; ++n)
        for (std::int64_t k = 0; k <= n; ++k) {
            if (classify(k, n) != PositionClass::W) continue;
            bool found = false;
            for (const HeapsConfig& succ : next_heaps(HeapsConfig{k, n}))
                if (classify(succ.a, succ.b) == PositionClass::L) {
                    found = true;
                    break;
                }
            if (!found) {
                result.passed = false;
                result.detail = "no L successor from k=" + std::to_string(k) +
                                " n=" + std::to_string(n);
                return result;
            }
        }
    result.detail = "max size " + std::to_string(max_size);
    return result;
}

/// Proposition part 2: every move out of an L position lands in W.
inline CheckResult check_l_positions_reach_only_w(std::int64_t max_size) {
    CheckResult result{"l-moves-only-to-w", true, {}};
    for (std::int64_t n = 0; n <= max_size; ++n)
        for (std::int64_t k = 0; k <= n; ++k) {
            if (classify(k, n) != PositionClass::L) continue;
            for (const HeapsConfig& succ : next_heaps(HeapsConfig{k, n}))
                if (classify(succ.a, succ.b) != PositionClass::W) {
                    result.passed = false;
                    result.detail = "L position k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                    " reaches L successor " + std::to_string(succ.a) + " " +
                                    std::to_string(succ.b);
                    return result;
                }
        }
    result.detail = "max size " + std::to_string(max_size);
    return result;
}

namespace detail {

template <GameRules G>
bool duality_holds_from(Player mover, const typename G::Config& start, const G& rules,
                        ValuationCache<typename G::Key>& cache, const EngineOptions& opt,
                        std::size_t cap, std::string& counterexample) {
    bool ok = true;
    for_each_reachable(mover, start, rules, cap, [&](Player p, const typename G::Config& c) {
        if (!ok) return;
        const bool r_wins = wins_for(Player::R, p, c, rules, cache, opt);
        const bool b_safe = nonlosing_for(Player::B, p, c, rules, cache, opt);
        const bool b_wins = wins_for(Player::B, p, c, rules, cache, opt);
        const bool r_safe = nonlosing_for(Player::R, p, c, rules, cache, opt);
        if (r_wins == b_safe || b_wins == r_safe) {
            ok = false;
            counterexample = "mover " + std::string(1, player_char(p));
        }
    });
    return ok;
}

}  // namespace detail

/// Zermelo duality: one side's winning valuation is the negation of the other
/// side's non-losing valuation, at every reachable state.
inline CheckResult check_duality(std::int64_t heaps_max, int board_max,
                                 const EngineOptions& opt = {}) {
    CheckResult result{"win-nonloss-duality", true, {}};
    constexpr std::size_t kCap = 50'000'000;

    const HeapsGame heaps;
    ValuationCache<HeapsConfig> heaps_cache;
    for (std::int64_t n = 0; n <= heaps_max && result.passed; ++n)
        for (std::int64_t k = 0; k <= n && result.passed; ++k) {
            std::string detail;
            if (!detail::duality_holds_from(Player::R, HeapsConfig{k, n}, heaps, heaps_cache, opt,
                                            kCap, detail)) {
                result.passed = false;
                result.detail = "heaps start " + std::to_string(k) + " " + std::to_string(n) + ", " +
                                detail;
            }
        }

    for (int size = 1; size <= board_max && result.passed; ++size) {
        const BoardGame board(size);
        ValuationCache<BoardConfig> board_cache;
        std::string detail;
        if (!detail::duality_holds_from(Player::B, BoardConfig{}, board, board_cache, opt, kCap,
                                        detail)) {
            result.passed = false;
            result.detail = "board size " + std::to_string(size) + ", " + detail;
        }
    }
    if (result.passed)
        result.detail = "heaps starts up to " + std::to_string(heaps_max) + ", boards up to " +
                        std::to_string(board_max);
    return result;
}

/// The three observed sequence facts: per-column contiguity, a_n <= n <= b_n
/// and b_n - a_n = n - 1. The grid must be tall enough to certify b_n for
/// every checked column.
inline CheckResult check_sequence_observations(const SweepGrid& grid, std::int64_t limit) {
    CheckResult result{"sequence-observations", true, {}};
    const SequencePair seq = extract_sequences(grid);
    if (static_cast<std::int64_t>(seq.b.size()) <= limit) {
        result.passed = false;
        result.detail = "grid certifies b only below " + std::to_string(seq.b.size());
        return result;
    }
    for (std::int64_t n = 1; n <= limit; ++n) {
        const std::int64_t a = seq.a[static_cast<std::size_t>(n)];
        const std::int64_t b = seq.b[static_cast<std::size_t>(n)];
        if (!seq.contiguous[static_cast<std::size_t>(n)] || a > n || n > b || b - a != n - 1) {
            result.passed = false;
            result.detail = "n=" + std::to_string(n) + " a=" + std::to_string(a) +
                            " b=" + std::to_string(b);
            return result;
        }
    }
    result.detail = "columns 1.." + std::to_string(limit);
    return result;
}

/// Rebecca wins the empty board exactly when its size is odd.
inline CheckResult check_board_parity(int board_max, const EngineOptions& opt = {}) {
    CheckResult result{"board-odd-parity", true, {}};
    for (int size = 1; size <= board_max; ++size) {
        const BoardGame board(size);
        ValuationCache<BoardConfig> cache;
        const Outcome value = game_value(Player::B, BoardConfig{}, board, cache, opt);
        if ((value == Outcome::RWin) != (size % 2 == 1)) {
            result.passed = false;
            result.detail = "size " + std::to_string(size) + " has value " + outcome_name(value);
            return result;
        }
    }
    result.detail = "sizes 1.." + std::to_string(board_max);
    return result;
}

/// Runs the whole battery. Failures land in the report, never in exceptions.
inline Report verify_all(std::int64_t max_size, int board_max, const EngineOptions& opt = {}) {
    Report report;
    const SweepGrid grid = sweep(max_size, opt);
    report.checks.push_back(check_grid_matches_law(grid));
    report.checks.push_back(check_w_positions_reach_l(max_size));
    report.checks.push_back(check_l_positions_reach_only_w(max_size));
    report.checks.push_back(check_duality(std::min<std::int64_t>(max_size, 30), board_max, opt));
    // b_n reaches phi*n, so certifying columns up to max_size takes a taller grid
    const SweepGrid tall = sweep(phi_bounds(max_size).b + 1, opt);
    report.checks.push_back(check_sequence_observations(tall, max_size));
    report.checks.push_back(check_board_parity(board_max, opt));
    return report;
}

}  // namespace strategem
