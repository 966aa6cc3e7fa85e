#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "strategem/engine.hpp"

namespace strategem {

/// Colouring state of an n x n board, one bit per cell in row-major order.
/// Cells outside both masks are still uncoloured.
struct BoardConfig {
    std::uint64_t blue = 0;
    std::uint64_t red = 0;
    friend auto operator<=>(const BoardConfig&, const BoardConfig&) = default;
};

/// Benny paints free 2x2 blocks blue, Rebecca paints single free cells red;
/// the game halts as soon as the mover has no move, and every cell still free
/// at that point scores as red.
class BoardGame {
public:
    using Config = BoardConfig;
    using Key = BoardConfig;

    static constexpr int kMaxSize = 8;  // cell masks are 64-bit
    static constexpr int kTransforms = 8;

    explicit BoardGame(int size, bool reduce_symmetry = true)
        : size_(size), reduce_symmetry_(reduce_symmetry) {
        if (size < 1 || size > kMaxSize)
            throw InvalidConfigError("board size must be between 1 and 8");
        for (int r = 0; r + 1 < size; ++r)
            for (int c = 0; c + 1 < size; ++c)
                blocks_.push_back(cell_bit(r, c) | cell_bit(r, c + 1) | cell_bit(r + 1, c) |
                                  cell_bit(r + 1, c + 1));
        // the dihedral group of the square: bit 2 transposes, bits 0/1 flip
        for (int t = 0; t < kTransforms; ++t)
            for (int r = 0; r < size; ++r)
                for (int c = 0; c < size; ++c) {
                    int rr = r, cc = c;
                    if (t & 4) std::swap(rr, cc);
                    if (t & 1) cc = size - 1 - cc;
                    if (t & 2) rr = size - 1 - rr;
                    perms_[t][cell_index(r, c)] = static_cast<std::uint8_t>(cell_index(rr, cc));
                }
    }

    int size() const { return size_; }
    bool reduces_symmetry() const { return reduce_symmetry_; }
    std::uint64_t full_mask() const {
        const int cells = size_ * size_;
        return cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
    }

    /// One successor per 2x2 block whose four cells are all uncoloured.
    std::vector<Config> blue_moves(const Config& c) const {
        const std::uint64_t occupied = c.blue | c.red;
        std::vector<Config> out;
        for (const std::uint64_t block : blocks_)
            if ((block & occupied) == 0) out.push_back(Config{c.blue | block, c.red});
        return out;
    }

    /// One successor per uncoloured cell.
    std::vector<Config> red_moves(const Config& c) const {
        std::uint64_t free = full_mask() & ~(c.blue | c.red);
        std::vector<Config> out;
        while (free) {
            const std::uint64_t cell = free & (~free + 1);
            out.push_back(Config{c.blue, c.red | cell});
            free ^= cell;
        }
        return out;
    }

    bool halted(Player p, const Config& c) const {
        const std::uint64_t occupied = c.blue | c.red;
        if (p == Player::R) return occupied == full_mask();
        for (const std::uint64_t block : blocks_)
            if ((block & occupied) == 0) return false;
        return true;
    }

    Outcome leaf_outcome(Player p, const Config& c) const {
        if (!halted(p, c)) throw std::logic_error("leaf_outcome: position is not halted");
        const int blue = std::popcount(c.blue);
        const int red = size_ * size_ - blue;  // free cells fall to red at the end
        return blue > red ? Outcome::BWin : red > blue ? Outcome::RWin : Outcome::Draw;
    }

    std::uint64_t transform_mask(std::uint64_t mask, int transform) const {
        const auto& perm = perms_[transform];
        std::uint64_t out = 0;
        while (mask) {
            const int i = std::countr_zero(mask);
            out |= std::uint64_t{1} << perm[i];
            mask &= mask - 1;
        }
        return out;
    }

    /// Lexicographically least (blue, red) pair over the 8 dihedral images, so
    /// symmetric positions share one transposition-table entry.
    Key canonical_key(const Config& c) const {
        if (!reduce_symmetry_) return c;
        Config best = c;
        for (int t = 1; t < kTransforms; ++t) {
            const Config image{transform_mask(c.blue, t), transform_mask(c.red, t)};
            if (image < best) best = image;
        }
        return best;
    }

    std::vector<Config> next_configs(Player p, const Config& c) const {
        std::vector<Config> out = p == Player::B ? blue_moves(c) : red_moves(c);
        std::sort(out.begin(), out.end(), [this](const Config& lhs, const Config& rhs) {
            const Key lk = canonical_key(lhs), rk = canonical_key(rhs);
            return lk != rk ? lk < rk : lhs < rhs;
        });
        return out;
    }

    /// Rows joined by '/', one of B, R or '.' per cell.
    std::string config_text(const Config& c) const {
        std::string out;
        for (int r = 0; r < size_; ++r) {
            if (r > 0) out += '/';
            for (int col = 0; col < size_; ++col) {
                const std::uint64_t bit = cell_bit(r, col);
                out += (c.blue & bit) ? 'B' : (c.red & bit) ? 'R' : '.';
            }
        }
        return out;
    }

private:
    int cell_index(int r, int c) const { return r * size_ + c; }
    std::uint64_t cell_bit(int r, int c) const { return std::uint64_t{1} << cell_index(r, c); }

    int size_;
    bool reduce_symmetry_;
    std::vector<std::uint64_t> blocks_;
    std::array<std::array<std::uint8_t, 64>, kTransforms> perms_{};
};

}  // namespace strategem
