#pragma once

#include <optional>
#include <vector>

#include "momc/lattice.hpp"
#include "momc/numeric.hpp"

namespace momc {

// Convex polytope given by a finite list of distinct rational points
// (possibly redundant generators). All derived data is exact: vertices,
// facet inequalities, faces, normalized volume against the lattice of the
// affine span.
class Polytope {
public:
    explicit Polytope(std::vector<VecQ> points);
    static Polytope from_characters(const std::vector<Character>& points);

    int ambient_rank() const { return ambient_; }
    int dim() const { return dim_; }
    const std::vector<VecQ>& generators() const { return gens_; }

    // Indices of generators that are vertices of the hull (a point is a
    // vertex iff it is not a convex combination of the others).
    const std::vector<int>& vertex_indices() const { return vertices_; }
    std::vector<VecQ> vertex_points() const;

    // All faces, each as the sorted set of generator indices lying on it.
    // Includes the vertices and the improper face, excludes the empty face.
    std::vector<std::vector<int>> faces() const;
    // Faces of the given dimension.
    std::vector<std::vector<int>> faces_of_dim(int d) const;

    bool contains(const VecQ& q) const;
    bool relint_contains(const VecQ& q) const;

    // Dimension-factorial times euclidean volume measured against the
    // saturated lattice of the affine span; an integer for lattice points.
    Rat normalized_volume() const;

    // Affine hull equations g.x = c and facet inequalities a.x <= b in
    // ambient coordinates.
    struct LinearForm {
        VecQ normal;
        Rat offset;
    };
    const std::vector<LinearForm>& hull_equations() const { return equations_; }
    const std::vector<LinearForm>& facet_cuts() const { return cuts_; }

    // Relative-interior witness: centroid of the vertices.
    VecQ relint_point() const;

    bool same_vertex_set(const Polytope& o) const;

private:
    struct Facet {
        VecQ normal; // in chart coordinates, canonical integer primitive
        Rat offset;  // normal.t <= offset
        std::vector<int> on; // generator indices with equality
    };

    std::optional<VecQ> chart_coords(const VecQ& q) const; // nullopt if off the affine hull
    void compute_facets();
    void compute_ambient_forms();

    int ambient_ = 0;
    int dim_ = 0;
    std::vector<VecQ> gens_;
    VecQ base_;
    std::vector<VecI> basis_;      // saturated lattice basis of the direction space
    std::vector<VecQ> chart_;      // chart coordinates of the generators
    std::vector<int> vertices_;
    std::vector<Facet> facets_;
    std::vector<LinearForm> equations_;
    std::vector<LinearForm> cuts_;
};

// Vertices of the intersection of two polytopes (empty list if disjoint).
std::vector<VecQ> intersection_vertices(const Polytope& a, const Polytope& b);
// Dimension of the intersection; -1 when empty.
int intersection_dim(const Polytope& a, const Polytope& b);
// True iff the relative interiors meet.
bool relint_overlap(const Polytope& a, const Polytope& b);

// Indices of points that are vertices of conv(points).
std::vector<int> vertex_set(const std::vector<Character>& points);

struct Subdivision {
    Polytope parent;
    std::vector<Polytope> maximal_pieces;
    std::vector<Polytope> internal_faces; // derived; deduped by vertex set
    std::optional<bool> regular;          // set when the provenance is known
};

struct SubdivisionCheck {
    bool ok = false;
    std::string report;
    std::optional<Subdivision> subdivision;
};

// Checks that the pieces tile the parent: each piece has the parent's
// dimension and lies inside it, pairwise intersections are lower-dimensional,
// and normalized volumes add up. On success derives the internal faces (faces
// of pieces whose relative interior meets the parent's relative interior) and
// verifies they are pairwise relint-disjoint, so that the relative interiors
// of pieces and internal faces partition the parent's relative interior.
SubdivisionCheck is_subdivision(const Polytope& parent, const std::vector<Polytope>& pieces);

// All subdivisions of conv(points) whose maximal pieces come from
// allowed_pieces, by exact backtracking; includes the trivial subdivision
// when the parent itself is among the allowed pieces.
std::vector<Subdivision> enumerate_subdivisions(const std::vector<Character>& points,
                                                const std::vector<Polytope>& allowed_pieces,
                                                int max_points = 8);

// Regular subdivision induced by the lower hull of the points lifted to
// height -valuation: pieces are the domains of linearity of the maximal
// convex function v with v(p) <= -valuation(p).
Subdivision regular_subdivision(const std::vector<Character>& points, const std::vector<Rat>& valuation);

// Rational polyhedral cone spanned by integer ray generators. The empty ray
// list is the zero cone.
class Cone {
public:
    Cone() = default;
    explicit Cone(std::vector<Character> rays);

    int ambient_rank() const { return ambient_; }
    int dim() const { return dim_; }
    const std::vector<Character>& rays() const { return rays_; }

    bool strictly_convex() const; // contains no line
    bool contains(const Character& q) const;
    bool contains(const VecQ& q) const;

    // Minimal generating set up to positive scaling, each primitive, sorted.
    std::vector<Character> extremal_rays() const;

    // Facet inequalities n.x >= 0 valid on the cone (full list for the cone
    // within its span); only for strictly convex cones.
    std::vector<VecQ> facet_normals_ambient() const;

private:
    int ambient_ = 0;
    int dim_ = 0;
    std::vector<Character> rays_;
};

// Deterministic subdivision of a strictly convex cone into simplicial cones
// spanned by subsets of the markers. Markers must lie in the cone, must
// include a generator on every extremal ray, and collinear markers collapse
// to the one closest to the origin. Pieces are returned as index sets into
// the deduped marker list paired with the markers themselves.
struct ConeTriangulation {
    std::vector<Character> markers;              // deduped, in insertion order
    std::vector<std::vector<int>> pieces;        // each: independent marker indices
};
ConeTriangulation triangulate_cone(const Cone& cone, const std::vector<Character>& markers);

// True iff the cones are strictly convex of full dimension and tile the
// whole space exactly (checked by tiling the [-1,1]^r box with the cone
// truncations).
bool is_complete_fan(const std::vector<Cone>& cones, int rank, std::string* why = nullptr);

} // namespace momc
