// Named example complexes shipped with the library.

#ifndef SHEAFKIT_CORPUS_HPP
#define SHEAFKIT_CORPUS_HPP

#include <functional>
#include <string>
#include <vector>

#include "sheafkit/cell_complex.hpp"

namespace sheafkit::corpus {

CellComplex point();
/// x --a-- y with [x:a] = -1, [y:a] = +1.
CellComplex interval();
/// [0,1) as {x, a} with a's missing endpoint at infinity, [x:a] = -1.
CellComplex half_open_interval();
/// Open interval as two open edges and a middle vertex; both ends at infinity.
CellComplex open_interval();
/// A single 1-cell with no vertices. Not a cell complex.
CellComplex bare_open_interval();
/// Two vertices, two edges.
CellComplex circle();
CellComplex triangle();
/// interval x interval.
CellComplex square();
/// Boundary of the 3-simplex.
CellComplex sphere();
/// circle x circle, f-vector (4, 8, 4).
CellComplex torus();
/// Six-vertex triangulation of the real projective plane.
CellComplex projective_plane();
/// Two circles sharing one vertex (valence 4 there).
CellComplex wedge_of_circles();
/// Two vertices joined by three edges (valence 3 at both).
CellComplex theta_graph();
/// A square 2-cell with one incidence sign flipped.
CellComplex sign_broken_square();
/// A bigon whose two edges meet the face with the same sign.
CellComplex bigon_matching_signs();

struct Entry {
  std::string name;
  std::function<CellComplex()> make;
  bool valid;        // passes validate()
  int manifold_dim;  // -1 unless a closed manifold of that dimension
};

const std::vector<Entry>& entries();

}  // namespace sheafkit::corpus

#endif  // SHEAFKIT_CORPUS_HPP
