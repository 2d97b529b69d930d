#pragma once

#include <vector>

#include "momc/moment_complex.hpp"
#include "momc/sym_polynomial.hpp"

namespace momc {

// Weight list with multiplicities for class computations; characters must be
// pairwise distinct and nonzero.
struct WeightedChar {
    Character chi;
    Int mult = 1;
};
using PhiList = std::vector<WeightedChar>;

// First Chern class of the character: the linear form with chi's coordinates.
SymPolynomial char_to_linear(const Character& chi);

// Class of the coordinate-subspace orbit closure picked out by a linearly
// independent subset I of the weights:
//   prod_{chi in Phi \ I} chi^{m_chi} * prod_{chi in I} chi^{m_chi - 1}.
// I empty gives the full Euler product (class of the origin).
SymPolynomial simplicial_cone_class(const std::vector<Character>& I, const PhiList& phi);

// Cycle class of the strictly convex cone spanned by the rays: triangulate
// by weights of phi on the extremal rays and sum
// torsion_order(piece) * simplicial_cone_class(piece) over the simplicial
// pieces. Independent of the triangulation. The empty ray list is the zero
// cone (full Euler product).
SymPolynomial cone_class(const std::vector<Character>& rays, const PhiList& phi);

// Same, but triangulating through an explicit marker set (each marker must
// be a weight of phi; markers must cover the extremal rays).
SymPolynomial cone_class_with_markers(const std::vector<Character>& rays, const PhiList& phi,
                                      const std::vector<Character>& markers);

// Sum of the cone classes of a complete fan; the caller asserts zero.
// Throws InputError when the cones do not tile the whole space.
SymPolynomial verify_fan_vanishing(const std::vector<Cone>& cones, const PhiList& phi);

// Localized equivariant class: one polynomial per fixed component, zero off
// the cell. Stores the Sym X*(T) Kunneth factor only; for components of
// multiplicity > 1 the common fixed-component factor is normalized away.
class Fingerprint {
public:
    Fingerprint(int components, int rank)
        : entries_(components, SymPolynomial(rank)) {}

    int components() const { return static_cast<int>(entries_.size()); }
    const SymPolynomial& at(int i) const { return entries_[i]; }
    SymPolynomial& at(int i) { return entries_[i]; }

    bool operator==(const Fingerprint&) const = default;

private:
    std::vector<SymPolynomial> entries_;
};

// Tangent weights at component i: chi_j - chi_i with multiplicity m_j for
// every other component j (the zero weights along the component itself are
// excluded).
PhiList normal_weights_at(const WeightConfiguration& cfg, int i);

// Class of a cell: at each vertex component, the cone class of the edge
// directions of the cell polytope at that vertex over the component's
// tangent weights.
Fingerprint cell_fingerprint(const MomentComplex& cx, int cell);

// Class of s.(orbit closure) for an orbit with the given support, computed
// from the support's own difference cone at each vertex. Agrees with
// cell_fingerprint(cell_of_support(s)).
Fingerprint support_class(const MomentComplex& cx, const Support& s);

// Per-component residual fingerprint(cell) - sum of fingerprints of the
// maximal cells of the subdivision; expected all zero.
std::vector<SymPolynomial> verify_fingerprint_additivity(const MomentComplex& cx, int cell,
                                                         const CellSubdivision& sub);

} // namespace momc
