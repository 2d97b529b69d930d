#pragma once

#include <map>
#include <optional>
#include <vector>

#include "momc/polyhedral.hpp"

namespace momc {

struct WeightComponent {
    Character chi;
    Int mult = 1;
    bool operator==(const WeightComponent&) const = default;
};

struct Limits {
    int max_components = 10;
    int max_subdivision_points = 8;
    int max_cells = 20;
    bool operator==(const Limits&) const = default;
};

// The weight configuration Phi(V) with multiplicities: the full model of
// P(V) with its linear torus action. Components are sorted lexicographically
// by character and pairwise distinct.
class WeightConfiguration {
public:
    WeightConfiguration(int rank, std::vector<WeightComponent> components);

    int rank() const { return rank_; }
    const std::vector<WeightComponent>& components() const { return comps_; }
    int component_count() const { return static_cast<int>(comps_.size()); }
    const Character& weight(int i) const { return comps_[i].chi; }
    const Int& mult(int i) const { return comps_[i].mult; }
    Int dim_v() const { return dim_; } // dimension of V

    bool operator==(const WeightConfiguration&) const = default;

private:
    int rank_;
    std::vector<WeightComponent> comps_;
    Int dim_;
};

// Nonempty sorted set of component indices.
using Support = std::vector<int>;

struct Cell {
    std::vector<int> comps; // sorted component indices, weights in convex position
    int dim = 0;
};

// One subdivision of a cell, in cell ids: the maximal pieces together with
// the derived internal-face cells.
struct CellSubdivision {
    std::vector<int> maximal;
    std::vector<int> internal;
    bool operator==(const CellSubdivision&) const = default;
};

// One fixed component per distinct character, labeled by its weight.
std::vector<std::pair<int, Character>> fixed_components(const WeightConfiguration& cfg);

class MomentComplex {
public:
    // Cells are exactly the convex-position subsets of component weights;
    // face relation and subdivision catalogue are populated from the
    // polyhedral layer.
    static MomentComplex build(WeightConfiguration cfg, Limits limits = {});

    // Abstract input mode: a user-supplied cell list. Validates convex
    // position and face closedness only; no geometric realizability claim.
    static MomentComplex from_cells(WeightConfiguration cfg, std::vector<std::vector<int>> cells,
                                    Limits limits = {});

    const WeightConfiguration& config() const { return cfg_; }
    const Limits& limits() const { return limits_; }
    bool abstract_mode() const { return abstract_; }

    int cell_count() const { return static_cast<int>(cells_.size()); }
    const Cell& cell(int id) const { return cells_[id]; }
    std::optional<int> cell_id(const std::vector<int>& comps) const;
    const Polytope& realization(int id) const { return realizations_[id]; }
    int generic_cell() const { return generic_; }

    // Face cell ids of a cell, including the cell itself; sorted.
    const std::vector<int>& faces_of(int id) const { return faces_[id]; }
    bool is_face(int sub, int super) const;

    const std::vector<CellSubdivision>& subdivisions_of(int id) const { return subs_[id]; }

    std::vector<Character> weights_of(const std::vector<int>& comps) const;

    // Vertex-set cell of conv(weights of s).
    int cell_of_support(const Support& s) const;
    // Cells of the orbit closure: vertex sets of the faces of conv(weights
    // of s), the improper face included.
    std::vector<int> orbit_closure_cells(const Support& s) const;
    int orbit_dimension(const Support& s) const;

    // Every nonempty support in canonical (size, then lex) order.
    std::vector<Support> all_supports() const;

private:
    MomentComplex(WeightConfiguration cfg, Limits limits) : cfg_(std::move(cfg)), limits_(limits) {}

    void finalize(); // realizations, faces, generic cell, subdivision catalogue
    std::vector<int> vertex_comps(const Polytope& p) const;

    WeightConfiguration cfg_;
    Limits limits_;
    bool abstract_ = false;
    std::vector<Cell> cells_;
    std::map<std::vector<int>, int> id_by_comps_;
    std::vector<Polytope> realizations_;
    std::vector<std::vector<int>> faces_;
    std::vector<std::vector<CellSubdivision>> subs_;
    int generic_ = -1;
    std::map<Support, int> support_cell_; // precomputed in build mode
};

} // namespace momc
