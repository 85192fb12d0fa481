// Finite posets presented by their covering relations.

#ifndef SHEAFKIT_POSET_HPP
#define SHEAFKIT_POSET_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace sheafkit {

/// A cover lo < hi with nothing strictly between.
struct Cover {
  std::size_t lo;
  std::size_t hi;
};

class Poset {
 public:
  Poset() = default;

  /// Throws std::invalid_argument if the covers contain a cycle or an
  /// out-of-range element.
  Poset(std::size_t n, std::vector<Cover> covers);

  std::size_t size() const { return n_; }
  const std::vector<Cover>& covers() const { return covers_; }
  const Cover& cover(std::size_t c) const { return covers_[c]; }

  /// Indices of covers with `lo == x` (resp. `hi == x`), ascending.
  const std::vector<std::size_t>& up_covers(std::size_t x) const { return up_[x]; }
  const std::vector<std::size_t>& down_covers(std::size_t x) const { return down_[x]; }

  bool leq(std::size_t a, std::size_t b) const { return above_[a][b]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && above_[a][b]; }

  /// {y : x <= y} and {y : y <= x}, ascending.
  std::vector<std::size_t> up_set(std::size_t x) const;
  std::vector<std::size_t> down_set(std::size_t x) const;

  /// Elements in an order compatible with <= (smaller first).
  const std::vector<std::size_t>& linear_extension() const { return order_; }

  /// Same elements, every cover reversed. Cover indices are preserved.
  Poset opposite() const;

  /// Covers of the subposet induced on `members` (a boolean mask). For up-sets,
  /// down-sets and other convex subsets these are the ambient covers inside.
  std::vector<Cover> induced_covers(const std::vector<bool>& members) const;

  /// A saturated chain from a to b (a <= b), as a list of cover indices.
  std::vector<std::size_t> chain(std::size_t a, std::size_t b) const;

 private:
  std::size_t n_ = 0;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<boost::dynamic_bitset<>> above_;  // above_[a][b] iff a <= b
  std::vector<std::size_t> order_;
};

}  // namespace sheafkit

#endif  // SHEAFKIT_POSET_HPP
