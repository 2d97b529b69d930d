#pragma once

#include <compare>
#include <string>
#include <vector>

#include "momc/numeric.hpp"

namespace momc {

// Point of the character lattice Z^r. Value-semantic and ordered
// lexicographically so that set-valued outputs have a canonical order.
struct Character {
    VecI coords;

    Character() = default;
    explicit Character(VecI c) : coords(std::move(c)) {}

    int rank() const { return static_cast<int>(coords.size()); }
    bool operator==(const Character& o) const = default;
    bool operator<(const Character& o) const { return coords < o.coords; }

    Character operator-(const Character& o) const { return Character(sub(coords, o.coords)); }
    std::string str() const;
};

struct Cocharacter {
    VecI coords;

    Cocharacter() = default;
    explicit Cocharacter(VecI c) : coords(std::move(c)) {}

    int rank() const { return static_cast<int>(coords.size()); }
    bool operator==(const Cocharacter& o) const = default;
};

struct IntegerMatrix {
    std::vector<VecI> rows;

    IntegerMatrix() = default;
    explicit IntegerMatrix(std::vector<VecI> r);

    int row_count() const { return static_cast<int>(rows.size()); }
    int col_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }

    static IntegerMatrix from_columns(const std::vector<VecI>& cols, int height);
};

// Natural pairing <chi, lambda>.
Int pair(const Character& chi, const Cocharacter& lam);

struct SmithResult {
    std::vector<Int> diag; // nonzero invariant factors d_1 | d_2 | ..., all positive
    int rank = 0;
    // Rows of the inverse of the accumulated column transform. With
    // U*M*V = S the first `rank` rows of V^{-1} are a basis of the
    // saturation of the row lattice of M inside Z^cols.
    std::vector<VecI> col_inv;
};

SmithResult smith_normal_form(const IntegerMatrix& m);

// Z-basis of span_Q(rows) ∩ Z^n, i.e. the saturation of the row lattice.
std::vector<VecI> saturated_basis(const std::vector<VecI>& rows, int n);

// Order of the torsion subgroup of Z^r / Span(weights): the product of the
// invariant factors of the matrix with the weights as columns.
Int torsion_order(const std::vector<Character>& weights);

// Rank of the rational span of the weights.
int span_rank(const std::vector<Character>& weights);

} // namespace momc
