#include "core/determinants.hpp"

#include "core/error.hpp"

namespace entcorr {

DeterminantSpace DeterminantSpace::enumerate(std::size_t m_spatial) {
  require(m_spatial >= 1, ErrorCode::invalid_argument,
          "determinant space needs at least one spatial orbital");
  require(2 * m_spatial <= 64, ErrorCode::unsupported,
          "more than 32 spatial orbitals (", m_spatial, ") not supported");
  DeterminantSpace space;
  space.m_ = m_spatial;
  const int n = static_cast<int>(2 * m_spatial);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) space.dets_.emplace_back(a, b);
  return space;
}

std::size_t DeterminantSpace::index_of(int mode_low, int mode_high) const {
  const int n = static_cast<int>(mode_count());
  require(mode_low >= 0 && mode_high > mode_low && mode_high < n,
          ErrorCode::invalid_argument, "determinant modes (", mode_low, ",",
          mode_high, ") outside 0..", n - 1);
  // Lexicographic rank of the ordered pair.
  const auto a = static_cast<std::size_t>(mode_low);
  const auto b = static_cast<std::size_t>(mode_high);
  const auto nn = static_cast<std::size_t>(n);
  return a * nn - a * (a + 1) / 2 + (b - a - 1);
}

}  // namespace entcorr
