#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace entcorr {

// All two-electron determinants over 2m interleaved spin modes, ordered
// lexicographically by (lower mode, higher mode). With an aufbau reference
// the doubly occupied first spatial orbital sits at index 0.
class DeterminantSpace {
 public:
  static DeterminantSpace enumerate(std::size_t m_spatial);

  std::size_t m() const { return m_; }
  std::size_t mode_count() const { return 2 * m_; }
  std::size_t size() const { return dets_.size(); }

  std::pair<int, int> modes(std::size_t index) const { return dets_[index]; }
  std::uint64_t bitmask(std::size_t index) const {
    return (std::uint64_t{1} << dets_[index].first) |
           (std::uint64_t{1} << dets_[index].second);
  }

  std::size_t index_of(int mode_low, int mode_high) const;

  // Index of the determinant occupying both spins of the first spatial
  // orbital, the aufbau reference for every system this engine treats.
  std::size_t reference_index() const { return index_of(0, 1); }

 private:
  std::size_t m_ = 0;
  std::vector<std::pair<int, int>> dets_;
};

}  // namespace entcorr
