#include "dcpack/bitmap.hpp"

#include <algorithm>
#include <cassert>

namespace dcpack {

std::size_t Bitmap2D::clear_span(int j, int i0, int i1) {
  if (j < 0 || j >= ny_) return 0;
  i0 = std::max(i0, 0);
  i1 = std::min(i1, nx_ - 1);
  if (i0 > i1) return 0;
  auto r = row(j);
  std::size_t cleared = 0;
  const int w0 = i0 >> 6;
  const int w1 = i1 >> 6;
  for (int w = w0; w <= w1; ++w) {
    const int lo = w == w0 ? (i0 & 63) : 0;
    const int hi = w == w1 ? (i1 & 63) : 63;
    const std::uint64_t mask = span_mask(lo, hi);
    cleared += std::popcount(r[w] & mask);
    r[w] &= ~mask;
  }
  return cleared;
}

std::optional<std::pair<int, int>> Bitmap2D::row_extent(int j) const {
  const auto r = row(j);
  int first = -1;
  for (int w = 0; w < words_per_row_; ++w) {
    if (r[w] != 0) {
      first = w * 64 + std::countr_zero(r[w]);
      break;
    }
  }
  if (first < 0) return std::nullopt;
  for (int w = words_per_row_ - 1; w >= 0; --w) {
    if (r[w] != 0) {
      return std::pair{first, w * 64 + 63 - std::countl_zero(r[w])};
    }
  }
  return std::nullopt;
}

Bitmap2D& Bitmap2D::operator&=(const Bitmap2D& other) {
  assert(nx_ == other.nx_ && ny_ == other.ny_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

Bitmap2D& Bitmap2D::operator|=(const Bitmap2D& other) {
  assert(nx_ == other.nx_ && ny_ == other.ny_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

bool Bitmap2D::is_subset_of(const Bitmap2D& other) const {
  if (nx_ != other.nx_ || ny_ != other.ny_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

}  // namespace dcpack
