#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "momc/moment_complex.hpp"

namespace momc {

// How strictly a {0,1} assignment on cells is checked:
//   literal    - additivity over a subdivision only required when the
//                subdivided cell has value 1;
//   additive   - additivity required for every cell and every subdivision;
//   normalized - additive, plus unit mass on the closed generic polytope
//                (the generic cell together with its proper-face cells).
enum class ValidationMode { literal, additive, normalized };

std::string mode_name(ValidationMode m);
std::optional<ValidationMode> mode_from_name(const std::string& s);

class MomentMeasure {
public:
    MomentMeasure(const MomentComplex& cx, std::vector<std::uint8_t> values, ValidationMode mode);
    static MomentMeasure from_one_cells(const MomentComplex& cx, const std::vector<int>& one_cells,
                                        ValidationMode mode);

    const MomentComplex& complex() const { return *cx_; }
    ValidationMode mode() const { return mode_; }
    bool value(int cell) const { return values_[cell] != 0; }
    const std::vector<std::uint8_t>& values() const { return values_; }
    std::vector<int> one_cells() const; // sorted cell ids with value 1

    bool operator==(const MomentMeasure& o) const {
        return values_ == o.values_ && mode_ == o.mode_;
    }

private:
    const MomentComplex* cx_;
    std::vector<std::uint8_t> values_;
    ValidationMode mode_;
};

struct MeasureViolation {
    int cell = -1;        // subdivided cell, or -1 for a global constraint
    int subdivision = -1; // index into the cell's catalogue, or -1
    std::string detail;
};

// Violations of the given mode; empty means valid.
std::vector<MeasureViolation> validate(const MomentMeasure& m, ValidationMode mode);
std::vector<MeasureViolation> validate(const MomentMeasure& m);
bool is_valid(const MomentMeasure& m, ValidationMode mode);

// True iff every value-1 cell has the generic cell's dimension.
bool is_geometric(const MomentMeasure& m);

// All valid measures in canonical order (sorted by their value-1 cell id
// lists), by backtracking with constraint propagation over the subdivision
// catalogue.
std::vector<MomentMeasure> enumerate_measures(const MomentComplex& cx, ValidationMode mode,
                                              bool geometric_only);

// True iff some cell of the orbit closure of the support carries value 1.
bool u_membership(const MomentMeasure& m, const Support& s);

struct SupportFamily {
    std::vector<Support> supports; // canonical order
    bool upward_closed = false;    // equivalent to openness of U_(m)
    bool operator==(const SupportFamily&) const = default;
};
SupportFamily u_supports(const MomentMeasure& m);

// Chamber measure of a generic rational character: value 1 exactly on the
// top-dimensional cells whose realization's relative interior contains chi.
// Throws ValidationError when chi lies on a lower-dimensional cell (a wall)
// or outside the generic polytope.
MomentMeasure git_measure(const MomentComplex& cx, const VecQ& chi);

struct ClosedOrbitCell {
    std::optional<int> cell; // unique minimal value-1 closure cell, if any
    bool unique = true;      // false when incomparable value-1 closure cells exist
};
ClosedOrbitCell closed_orbit_cell(const MomentMeasure& m, const Support& s);

// Diagnostic: for each cell, the total measure of the cells whose
// realization lies inside its closed polytope.
std::vector<Int> closed_mass_report(const MomentMeasure& m);

} // namespace momc
