#include "sheafkit/functors.hpp"

#include <sstream>

namespace sheafkit {

namespace {

std::vector<bool> mask_of(std::size_t n, const std::vector<std::size_t>& cells) {
  std::vector<bool> m(n, false);
  for (std::size_t c : cells) m.at(c) = true;
  return m;
}

void require_map(const PosetMap& f) {
  if (f.assignment.size() != f.source->size()) throw std::invalid_argument("map does not cover every source cell");
  for (std::size_t y : f.assignment)
    if (y >= f.target->size()) throw std::invalid_argument("map sends a cell outside the target");
}

}  // namespace

template <class S, Variance V>
LimitData<S> limit_over(const Cellular<S, V>& f, const std::vector<std::size_t>& cells) {
  return limit(f.data, mask_of(f.data.size(), cells));
}

template <class S, Variance V>
ColimitData<S> colimit_over(const Cellular<S, V>& f, const std::vector<std::size_t>& cells) {
  return colimit(f.data, mask_of(f.data.size(), cells));
}

template <class S, Variance V>
Cellular<S, V> pullback(const PosetMap& f, const Cellular<S, V>& g) {
  require_map(f);
  if (g.base != f.target) throw std::invalid_argument("pullback: object does not live on the target");
  return {f.source, pullback(g.data, f.assignment, poset_of<V>(f.source))};
}

template <class S, Variance V>
Cellular<S, V> pushforward(const PosetMap& f, const Cellular<S, V>& x) {
  require_map(f);
  if (x.base != f.source) throw std::invalid_argument("pushforward: object does not live on the source");
  if constexpr (V == Variance::sheaf) {
    return {f.target, right_kan(x.data, f.assignment, poset_of<V>(f.target))};
  } else {
    return {f.target, left_kan(x.data, f.assignment, poset_of<V>(f.target))};
  }
}

template <class S, Variance V>
Cellular<S, V> dagger_pushforward(const PosetMap& f, const Cellular<S, V>& x) {
  require_map(f);
  if (x.base != f.source) throw std::invalid_argument("pushforward: object does not live on the source");
  if constexpr (V == Variance::sheaf) {
    return {f.target, left_kan(x.data, f.assignment, poset_of<V>(f.target))};
  } else {
    return {f.target, right_kan(x.data, f.assignment, poset_of<V>(f.target))};
  }
}

template <class S>
Morphism<S> pushforward_unit(const PosetMap& f, const Sheaf<S>& g) {
  require_map(f);
  return right_kan_unit(g.data, f.assignment, poset_of<Variance::sheaf>(f.source));
}

std::string AdjunctionReport::to_string() const {
  std::ostringstream os;
  for (const auto& l : lines) os << l.name << ": " << l.lhs << " vs " << l.rhs << (l.ok() ? "" : "  MISMATCH") << "\n";
  return os.str();
}

template <class S, Variance V>
AdjunctionReport check_adjunction(const PosetMap& f, const Cellular<S, V>& a, const Cellular<S, V>& b) {
  AdjunctionReport r;
  Cellular<S, V> fb = pullback(f, b);
  Cellular<S, V> push = pushforward(f, a);
  Cellular<S, V> dag = dagger_pushforward(f, a);
  if constexpr (V == Variance::sheaf) {
    r.lines.push_back({"Hom(f^*G, F) = Hom(G, f_*F)", hom_space(fb, a).dim(), hom_space(b, push).dim()});
    r.lines.push_back({"Hom(f_+F, G) = Hom(F, f^*G)", hom_space(dag, b).dim(), hom_space(a, fb).dim()});
  } else {
    r.lines.push_back({"Hom(f_*F, G) = Hom(F, f^*G)", hom_space(push, b).dim(), hom_space(a, fb).dim()});
    r.lines.push_back({"Hom(f^*G, F) = Hom(G, f_+F)", hom_space(fb, a).dim(), hom_space(b, dag).dim()});
  }
  return r;
}

#define SHEAFKIT_INSTANTIATE_FUNCTORS(S, V)                                                             \
  template LimitData<S> limit_over(const Cellular<S, V>&, const std::vector<std::size_t>&);            \
  template ColimitData<S> colimit_over(const Cellular<S, V>&, const std::vector<std::size_t>&);        \
  template Cellular<S, V> pullback(const PosetMap&, const Cellular<S, V>&);                            \
  template Cellular<S, V> pushforward(const PosetMap&, const Cellular<S, V>&);                         \
  template Cellular<S, V> dagger_pushforward(const PosetMap&, const Cellular<S, V>&);                  \
  template AdjunctionReport check_adjunction(const PosetMap&, const Cellular<S, V>&, const Cellular<S, V>&);

SHEAFKIT_INSTANTIATE_FUNCTORS(Rational, Variance::sheaf)
SHEAFKIT_INSTANTIATE_FUNCTORS(Rational, Variance::cosheaf)
SHEAFKIT_INSTANTIATE_FUNCTORS(ModP, Variance::sheaf)
SHEAFKIT_INSTANTIATE_FUNCTORS(ModP, Variance::cosheaf)

template Morphism<Rational> pushforward_unit(const PosetMap&, const Sheaf<Rational>&);
template Morphism<ModP> pushforward_unit(const PosetMap&, const Sheaf<ModP>&);

}  // namespace sheafkit
