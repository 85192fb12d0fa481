// Cochain complexes of finite-dimensional vector spaces, chain maps, mapping
// cones and totalization of double complexes.
//
// Grading is cohomological throughout: d(n) maps degree n to degree n + 1.
// Homological gradings are views obtained with `to_homological`.

#ifndef SHEAFKIT_CHAIN_HPP
#define SHEAFKIT_CHAIN_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sheafkit/matrix.hpp"

namespace sheafkit {

/// Per-degree dimensions; degrees with dimension zero are omitted.
using GradedDims = std::map<int, Index>;

/// H_i := H^{-i}. The single place where homological reindexing happens.
inline GradedDims to_homological(const GradedDims& cohomological) {
  GradedDims out;
  for (const auto& [deg, dim] : cohomological) out[-deg] = dim;
  return out;
}

inline long long euler_characteristic(const GradedDims& dims) {
  long long chi = 0;
  for (const auto& [deg, dim] : dims) chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long long>(dim);
  return chi;
}

inline std::string format_dims(const GradedDims& dims) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [deg, dim] : dims) {
    os << (first ? "" : ", ") << deg << ": " << dim;
    first = false;
  }
  os << "}";
  return os.str();
}

class ChainError : public std::runtime_error {
 public:
  ChainError(const std::string& what, int degree) : std::runtime_error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

template <class S>
class ChainComplex {
 public:
  ChainComplex() = default;

  /// `dims[k]` is the dimension in degree `lo + k`; `diffs[k]` maps degree
  /// `lo + k` to `lo + k + 1` and must have shape dims[k+1] x dims[k]
  /// (`diffs` has one entry fewer than `dims`).
  ChainComplex(int lo, std::vector<Index> dims, std::vector<SpMat<S>> diffs)
      : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.empty()) {
      diffs_.clear();
      return;
    }
    if (diffs_.size() + 1 != dims_.size()) throw ShapeError("chain complex: need one differential per gap");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      if (diffs_[k].rows() != dims_[k + 1] || diffs_[k].cols() != dims_[k]) {
        throw ShapeError("chain complex: differential in degree " + std::to_string(lo_ + static_cast<int>(k)) +
                         " has shape " + std::to_string(diffs_[k].rows()) + "x" +
                         std::to_string(diffs_[k].cols()) + ", expected " + std::to_string(dims_[k + 1]) + "x" +
                         std::to_string(dims_[k]));
      }
    }
  }

  bool empty() const { return dims_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }

  Index dim(int n) const {
    if (dims_.empty() || n < lo() || n > hi()) return 0;
    return dims_[static_cast<std::size_t>(n - lo_)];
  }

  /// Differential from degree n to n + 1 (a zero map outside the range).
  SpMat<S> d(int n) const {
    if (n >= lo() && n < hi()) return diffs_[static_cast<std::size_t>(n - lo_)];
    return SpMat<S>(dim(n + 1), dim(n));
  }

  /// First degree n with d(n+1) d(n) != 0, if any.
  std::optional<int> square_violation() const {
    for (int n = lo(); n + 1 < hi(); ++n) {
      if (!is_zero(multiply(d(n + 1), d(n)))) return n;
    }
    return std::nullopt;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (int n = lo(); n <= hi(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(dim(n));
    return chi;
  }

  /// Same complex with every degree shifted by `k` (C[k]^n = C^{n+k}).
  ChainComplex shifted(int k) const {
    ChainComplex out = *this;
    out.lo_ -= k;
    if (k % 2 != 0)
      for (auto& m : out.diffs_) m = -m;
    return out;
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    int lo = std::min(a.empty() ? 0 : a.lo(), b.empty() ? 0 : b.lo());
    int hi = std::max(a.empty() ? 0 : a.hi(), b.empty() ? 0 : b.hi());
    for (int n = lo; n <= hi; ++n) {
      if (a.dim(n) != b.dim(n)) return false;
      SpMat<S> diff = a.d(n) - b.d(n);
      if (!is_zero(diff)) return false;
    }
    return true;
  }

 private:
  int lo_ = 0;
  std::vector<Index> dims_;
  std::vector<SpMat<S>> diffs_;
};

/// Builds a complex from a degree -> (dim) map and degree -> differential map.
template <class S>
ChainComplex<S> make_complex(int lo, int hi, const std::map<int, Index>& dims, std::map<int, SpMat<S>> diffs) {
  if (hi < lo) return {};
  std::vector<Index> d;
  std::vector<SpMat<S>> m;
  for (int n = lo; n <= hi; ++n) {
    auto it = dims.find(n);
    d.push_back(it == dims.end() ? 0 : it->second);
  }
  for (int n = lo; n < hi; ++n) {
    auto it = diffs.find(n);
    Index rows = d[static_cast<std::size_t>(n + 1 - lo)], cols = d[static_cast<std::size_t>(n - lo)];
    m.push_back(it == diffs.end() ? SpMat<S>(rows, cols) : std::move(it->second));
  }
  return ChainComplex<S>(lo, std::move(d), std::move(m));
}

/// dim ker d(n) - rank d(n-1) for every degree. Throws ChainError when the
/// input is not a complex.
template <class S>
GradedDims homology(const ChainComplex<S>& c) {
  GradedDims out;
  if (c.empty()) return out;
  if (auto bad = c.square_violation()) {
    throw ChainError("d(" + std::to_string(*bad + 1) + ") * d(" + std::to_string(*bad) + ") != 0", *bad);
  }
  std::vector<Index> ranks;
  for (int n = c.lo() - 1; n <= c.hi(); ++n) ranks.push_back(rank(c.d(n)));
  for (int n = c.lo(); n <= c.hi(); ++n) {
    std::size_t k = static_cast<std::size_t>(n - c.lo()) + 1;
    Index h = c.dim(n) - ranks[k] - ranks[k - 1];
    if (h != 0) out[n] = h;
  }
  return out;
}

template <class S>
class ChainMap {
 public:
  ChainMap() = default;

  /// `components` maps each degree to a dim_target(n) x dim_source(n) matrix;
  /// missing degrees are zero.
  ChainMap(ChainComplex<S> source, ChainComplex<S> target, std::map<int, SpMat<S>> components)
      : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
    for (const auto& [n, m] : f_) {
      if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n)) {
        throw ShapeError("chain map component in degree " + std::to_string(n) + " has wrong shape");
      }
    }
  }

  const ChainComplex<S>& source() const { return source_; }
  const ChainComplex<S>& target() const { return target_; }

  SpMat<S> f(int n) const {
    auto it = f_.find(n);
    if (it != f_.end()) return it->second;
    return SpMat<S>(target_.dim(n), source_.dim(n));
  }

  int lo() const { return std::min(source_.empty() ? 0 : source_.lo(), target_.empty() ? 0 : target_.lo()); }
  int hi() const { return std::max(source_.empty() ? 0 : source_.hi(), target_.empty() ? 0 : target_.hi()); }

  /// First degree n where f(n+1) d_src(n) != d_tgt(n) f(n), if any.
  std::optional<int> square_violation() const {
    for (int n = lo() - 1; n <= hi(); ++n) {
      SpMat<S> lhs = multiply(f(n + 1), source_.d(n));
      SpMat<S> rhs = multiply(target_.d(n), f(n));
      if (!is_zero(SpMat<S>(lhs - rhs))) return n;
    }
    return std::nullopt;
  }

 private:
  ChainComplex<S> source_;
  ChainComplex<S> target_;
  std::map<int, SpMat<S>> f_;
};

template <class S>
ChainMap<S> identity_map(const ChainComplex<S>& c) {
  std::map<int, SpMat<S>> f;
  for (int n = c.lo(); n <= c.hi(); ++n) f[n] = sparse_identity<S>(c.dim(n));
  return ChainMap<S>(c, c, std::move(f));
}

template <class S>
ChainMap<S> compose(const ChainMap<S>& g, const ChainMap<S>& f) {
  std::map<int, SpMat<S>> h;
  for (int n = std::min(f.lo(), g.lo()); n <= std::max(f.hi(), g.hi()); ++n) h[n] = multiply(g.f(n), f.f(n));
  return ChainMap<S>(f.source(), g.target(), std::move(h));
}

/// Cone(f)^n = src^{n+1} (+) tgt^n with d = [[-d_src, 0], [f, d_tgt]].
template <class S>
ChainComplex<S> cone(const ChainMap<S>& f) {
  if (auto bad = f.square_violation()) {
    throw ChainError("not a chain map: square fails in degree " + std::to_string(*bad), *bad);
  }
  const auto& src = f.source();
  const auto& tgt = f.target();
  int lo = f.lo() - 1;
  int hi = f.hi();
  std::map<int, Index> dims;
  std::map<int, SpMat<S>> diffs;
  for (int n = lo; n <= hi; ++n) dims[n] = src.dim(n + 1) + tgt.dim(n);
  for (int n = lo; n < hi; ++n) {
    std::vector<Triplet<S>> t;
    Index a0 = src.dim(n + 1), b1 = src.dim(n + 2);
    add_block(t, 0, 0, src.d(n + 1), S(-1));
    add_block(t, b1, 0, f.f(n + 1));
    add_block(t, b1, a0, tgt.d(n));
    diffs[n] = from_triplets<S>(dims[n + 1], dims[n], t);
  }
  return make_complex<S>(lo, hi, dims, std::move(diffs));
}

template <class S>
bool is_acyclic(const ChainComplex<S>& c) {
  return homology(c).empty();
}

template <class S>
bool is_quasi_iso(const ChainMap<S>& f) {
  return is_acyclic(cone(f));
}

/// A first-quadrant-style grid of spaces V(p, q) with horizontal maps
/// (p, q) -> (p, q + 1) and vertical maps (p, q) -> (p + 1, q). Squares are
/// required to commute; the totalization supplies the signs.
template <class S>
struct DoubleComplex {
  int p_lo = 0, p_hi = -1, q_lo = 0, q_hi = -1;
  std::map<std::pair<int, int>, Index> dims;
  std::map<std::pair<int, int>, SpMat<S>> horizontal;
  std::map<std::pair<int, int>, SpMat<S>> vertical;

  Index dim(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
  }
  SpMat<S> h(int p, int q) const {
    auto it = horizontal.find({p, q});
    return it == horizontal.end() ? SpMat<S>(dim(p, q + 1), dim(p, q)) : it->second;
  }
  SpMat<S> v(int p, int q) const {
    auto it = vertical.find({p, q});
    return it == vertical.end() ? SpMat<S>(dim(p + 1, q), dim(p, q)) : it->second;
  }
};

/// Tot^n = (+)_{p+q=n} V(p, q), ordered by increasing p, with
/// d = horizontal + (-1)^q vertical. Throws ChainError naming the first
/// non-commuting square or non-complex row/column.
template <class S>
ChainComplex<S> total_complex(const DoubleComplex<S>& dc) {
  if (dc.p_hi < dc.p_lo || dc.q_hi < dc.q_lo) return {};
  for (int p = dc.p_lo; p <= dc.p_hi; ++p) {
    for (int q = dc.q_lo; q <= dc.q_hi; ++q) {
      auto where = "(" + std::to_string(p) + ", " + std::to_string(q) + ")";
      if (!is_zero(multiply(dc.h(p, q + 1), dc.h(p, q))))
        throw ChainError("row is not a complex at " + where, p + q);
      if (!is_zero(multiply(dc.v(p + 1, q), dc.v(p, q))))
        throw ChainError("column is not a complex at " + where, p + q);
      SpMat<S> sq = multiply(dc.v(p, q + 1), dc.h(p, q)) - multiply(dc.h(p + 1, q), dc.v(p, q));
      if (!is_zero(sq)) throw ChainError("square does not commute at " + where, p + q);
    }
  }
  int lo = dc.p_lo + dc.q_lo, hi = dc.p_hi + dc.q_hi;
  std::map<int, Index> dims;
  std::map<std::pair<int, int>, Index> offset;
  for (int n = lo; n <= hi; ++n) {
    Index off = 0;
    for (int p = dc.p_lo; p <= dc.p_hi; ++p) {
      int q = n - p;
      if (q < dc.q_lo || q > dc.q_hi) continue;
      offset[{p, q}] = off;
      off += dc.dim(p, q);
    }
    dims[n] = off;
  }
  std::map<int, SpMat<S>> diffs;
  for (int n = lo; n < hi; ++n) {
    std::vector<Triplet<S>> t;
    for (int p = dc.p_lo; p <= dc.p_hi; ++p) {
      int q = n - p;
      if (q < dc.q_lo || q > dc.q_hi) continue;
      Index col = offset[{p, q}];
      if (q + 1 <= dc.q_hi) add_block(t, offset[{p, q + 1}], col, dc.h(p, q));
      if (p + 1 <= dc.p_hi) add_block(t, offset[{p + 1, q}], col, dc.v(p, q), S(q % 2 == 0 ? 1 : -1));
    }
    diffs[n] = from_triplets<S>(dims[n + 1], dims[n], t);
  }
  return make_complex<S>(lo, hi, dims, std::move(diffs));
}

}  // namespace sheafkit

#endif  // SHEAFKIT_CHAIN_HPP
