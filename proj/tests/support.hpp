// Shared helpers for the test binaries: random sheaves, random cell maps and
// a dense rank oracle that does not go through the library's row reducer.

#ifndef SHEAFKIT_TESTS_SUPPORT_HPP
#define SHEAFKIT_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "sheafkit/cell_complex.hpp"
#include "sheafkit/corpus.hpp"
#include "sheafkit/functors.hpp"
#include "sheafkit/sheaf.hpp"

namespace sheafkit::testing {

using Rng = std::mt19937;

template <class S>
S small_scalar(Rng& rng, int lo = -2, int hi = 2) {
  return S(std::uniform_int_distribution<int>(lo, hi)(rng));
}

template <class S>
Mat<S> random_matrix(Rng& rng, Index rows, Index cols) {
  Mat<S> m = zeros<S>(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = small_scalar<S>(rng);
  return m;
}

/// Plain Gaussian elimination on a dense copy.
template <class S>
Index dense_rank(Mat<S> m) {
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(r));
    for (Index i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      S f = m(i, c) / m(r, c);
      for (Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

template <class S>
Mat<S> random_invertible(Rng& rng, Index n) {
  for (;;) {
    Mat<S> m = random_matrix<S>(rng, n, n);
    if (dense_rank(m) == n) return m;
  }
}

/// F(sigma) = (U_sigma + K_sigma) / K_sigma inside k^n, where U and K are
/// spanned by random vectors attached to the cells of the closure of sigma,
/// so sigma <= tau gives U_sigma <= U_tau and K_sigma <= K_tau and the
/// identity of k^n induces the restriction maps. Each stalk then gets a
/// random change of basis.
template <class S>
Sheaf<S> random_sheaf(const ComplexPtr& x, Rng& rng, Index n = 3) {
  const std::size_t N = x->size();
  std::vector<Mat<S>> u_gen(N), k_gen(N);
  std::bernoulli_distribution has_k(0.35);
  for (std::size_t s = 0; s < N; ++s) {
    u_gen[s] = random_matrix<S>(rng, n, std::uniform_int_distribution<int>(0, 2)(rng));
    k_gen[s] = random_matrix<S>(rng, n, has_k(rng) ? 1 : 0);
  }
  auto span_over_closure = [&](std::size_t s, const std::vector<Mat<S>>& gen) {
    std::vector<Mat<S>> parts;
    Index cols = 0;
    for (std::size_t c : closure(*x, s)) {
      parts.push_back(gen[c]);
      cols += gen[c].cols();
    }
    Mat<S> m = zeros<S>(n, cols);
    Index at = 0;
    for (const auto& p : parts) {
      m.block(0, at, n, p.cols()) = p;
      at += p.cols();
    }
    return m;
  };
  std::vector<Quotient<S>> quot(N);
  std::vector<Mat<S>> basis(N);  // columns: basis of F(s) inside k^n / K_s
  std::vector<Mat<S>> change(N);
  std::vector<Index> dims(N);
  for (std::size_t s = 0; s < N; ++s) {
    quot[s] = cokernel(sparse(span_over_closure(s, k_gen)));
    Mat<S> u = dense(multiply(quot[s].projection, sparse(span_over_closure(s, u_gen))));
    basis[s] = dense(image(sparse(u)).basis);
    dims[s] = basis[s].cols();
    change[s] = random_invertible<S>(rng, dims[s]);
  }
  std::vector<Mat<S>> maps;
  for (std::size_t c = 0; c < x->num_covers(); ++c) {
    const Incidence& in = x->incidence(c);
    Mat<S> lifted = dense(quot[in.lo].section) * basis[in.lo];
    Mat<S> pushed = dense(quot[in.hi].projection) * lifted;
    Mat<S> coords = *solve(basis[in.hi], pushed);
    Mat<S> inv = *solve(change[in.lo], identity<S>(dims[in.lo]));
    maps.push_back(change[in.hi] * coords * inv);
  }
  return make_object<S, Variance::sheaf>(x, dims, maps);
}

template <class S>
Cosheaf<S> random_cosheaf(const ComplexPtr& x, Rng& rng, Index n = 3) {
  return linear_dual(random_sheaf<S>(x, rng, n));
}

/// Valid corpus complexes small enough for exhaustive property tests.
inline std::vector<ComplexPtr> small_complexes() {
  std::vector<ComplexPtr> out;
  for (const auto& e : corpus::entries())
    if (e.valid && e.name != "projective-plane") out.push_back(share(e.make()));
  return out;
}

inline std::vector<ComplexPtr> valid_complexes() {
  std::vector<ComplexPtr> out;
  for (const auto& e : corpus::entries())
    if (e.valid) out.push_back(share(e.make()));
  return out;
}

inline ComplexPtr named(const std::string& name) {
  for (const auto& e : corpus::entries())
    if (e.name == name) return share(e.make());
  throw std::invalid_argument("no corpus entry " + name);
}

/// A random order-preserving map out of or into `y`: y -> point, a
/// subdivision map onto y (compact y only), the inclusion of a closed cell or of the compact
/// part, or the identity.
inline PosetMap random_map(const ComplexPtr& y, Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
      return to_point(y);
    case 1:
      if (y->has_infinity()) return identity_map(y);
      return barycentric_subdivision(y).map;
    case 2: {
      std::size_t s = std::uniform_int_distribution<std::size_t>(0, y->size() - 1)(rng);
      if (!has_compact_closure(*y, s)) return identity_map(y);
      return restrict_to(y, closure(*y, s)).inclusion;
    }
    case 3:
      return compact_subcomplex(y).inclusion;
    default:
      return identity_map(y);
  }
}

}  // namespace sheafkit::testing

#endif  // SHEAFKIT_TESTS_SUPPORT_HPP
