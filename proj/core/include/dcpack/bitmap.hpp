#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dcpack {

// Row-major bitmap over an nx-by-ny index rectangle. Each row starts on a
// fresh 64-bit word so that row spans can be cleared with word masks.
class Bitmap2D {
 public:
  Bitmap2D() = default;
  Bitmap2D(int nx, int ny)
      : nx_(nx),
        ny_(ny),
        words_per_row_((nx + 63) / 64),
        words_(static_cast<std::size_t>(words_per_row_) * ny, 0) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int words_per_row() const { return words_per_row_; }
  bool in_range(int i, int j) const {
    return i >= 0 && j >= 0 && i < nx_ && j < ny_;
  }

  bool test(int i, int j) const {
    return (word(i, j) >> (i & 63)) & 1u;
  }
  void set(int i, int j) { word(i, j) |= std::uint64_t{1} << (i & 63); }
  void reset(int i, int j) { word(i, j) &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(int i, int j, bool value) {
    if (value) {
      set(i, j);
    } else {
      reset(i, j);
    }
  }

  std::size_t count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }
  bool any() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  bool none() const { return !any(); }

  std::span<std::uint64_t> row(int j) {
    return {words_.data() + static_cast<std::size_t>(j) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }
  std::span<const std::uint64_t> row(int j) const {
    return {words_.data() + static_cast<std::size_t>(j) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }
  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  // Clears columns [i0, i1] of row j (clipped to the bitmap). Returns the
  // number of bits that were set.
  std::size_t clear_span(int j, int i0, int i1);

  // Leftmost and rightmost set column of row j.
  std::optional<std::pair<int, int>> row_extent(int j) const;

  // Calls f(i, j) for every set bit in row-major order.
  template <typename F>
  void for_each(F&& f) const {
    for (int j = 0; j < ny_; ++j) {
      const auto r = row(j);
      for (int w = 0; w < words_per_row_; ++w) {
        std::uint64_t bits = r[w];
        while (bits != 0) {
          const int b = std::countr_zero(bits);
          f(w * 64 + b, j);
          bits &= bits - 1;
        }
      }
    }
  }

  Bitmap2D& operator&=(const Bitmap2D& other);
  Bitmap2D& operator|=(const Bitmap2D& other);
  bool is_subset_of(const Bitmap2D& other) const;
  friend bool operator==(const Bitmap2D&, const Bitmap2D&) = default;

 private:
  std::uint64_t& word(int i, int j) {
    return words_[static_cast<std::size_t>(j) * words_per_row_ + (i >> 6)];
  }
  const std::uint64_t& word(int i, int j) const {
    return words_[static_cast<std::size_t>(j) * words_per_row_ + (i >> 6)];
  }

  int nx_ = 0;
  int ny_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

// Mask with bits [lo, hi] set, 0 <= lo <= hi < 64.
inline std::uint64_t span_mask(int lo, int hi) {
  const std::uint64_t upper =
      hi >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (hi + 1)) - 1;
  return upper & (~std::uint64_t{0} << lo);
}

}  // namespace dcpack
