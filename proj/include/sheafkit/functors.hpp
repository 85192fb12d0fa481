// Pullback, pushforward and pushforward with open supports along maps of
// cell complexes, (co)limits over sets of cells, and adjunction checks.
//
// For a sheaf f_* is the right Kan extension and f_dagger the left one; for a
// cosheaf the roles swap (colimit over {x : f(x) >= y}, limit over
// {x : f(x) <= y}).

#ifndef SHEAFKIT_FUNCTORS_HPP
#define SHEAFKIT_FUNCTORS_HPP

#include <string>
#include <vector>

#include "sheafkit/sheaf.hpp"

namespace sheafkit {

/// (Co)limit of the object over a set of cells; the empty set gives the zero
/// space.
template <class S, Variance V>
LimitData<S> limit_over(const Cellular<S, V>& f, const std::vector<std::size_t>& cells);
template <class S, Variance V>
ColimitData<S> colimit_over(const Cellular<S, V>& f, const std::vector<std::size_t>& cells);

/// Global sections: lim over X (sheaf) and colim over X (cosheaf).
template <class S>
LimitData<S> global_sections(const Sheaf<S>& f) {
  return limit(f.data);
}
template <class S>
ColimitData<S> global_sections(const Cosheaf<S>& f) {
  return colimit(f.data);
}

/// (f^* G)(sigma) = G(f(sigma)).
template <class S, Variance V>
Cellular<S, V> pullback(const PosetMap& f, const Cellular<S, V>& g);

template <class S, Variance V>
Cellular<S, V> pushforward(const PosetMap& f, const Cellular<S, V>& x);

template <class S, Variance V>
Cellular<S, V> dagger_pushforward(const PosetMap& f, const Cellular<S, V>& x);

/// Unit G -> f_* f^* G of a sheaf on the target.
template <class S>
Morphism<S> pushforward_unit(const PosetMap& f, const Sheaf<S>& g);

struct AdjunctionLine {
  std::string name;  // e.g. "Hom(f^*G, F) = Hom(G, f_*F)"
  Index lhs = 0;
  Index rhs = 0;
  bool ok() const { return lhs == rhs; }
};

struct AdjunctionReport {
  std::vector<AdjunctionLine> lines;
  bool ok() const {
    for (const auto& l : lines)
      if (!l.ok()) return false;
    return true;
  }
  std::string to_string() const;
};

/// Both adjunctions for `f : X -> Y`, with `a` on X and `b` on Y.
template <class S, Variance V>
AdjunctionReport check_adjunction(const PosetMap& f, const Cellular<S, V>& a, const Cellular<S, V>& b);

}  // namespace sheafkit

#endif  // SHEAFKIT_FUNCTORS_HPP
