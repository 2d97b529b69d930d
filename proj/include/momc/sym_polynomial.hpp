#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "momc/lattice.hpp"
#include "momc/numeric.hpp"

namespace momc {

// Element of Sym X*(T): sparse multivariate polynomial in x1..xr with exact
// rational coefficients. Zero coefficients are never stored.
class SymPolynomial {
public:
    using Exponents = std::vector<int>;

    SymPolynomial() : rank_(0) {}
    explicit SymPolynomial(int rank) : rank_(rank) {}

    static SymPolynomial constant(int rank, const Rat& c);
    // The homogeneous linear form with chi's coordinates (first Chern class
    // of the character's line bundle).
    static SymPolynomial linear(const Character& chi);

    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }

    // Homogeneous degree, or nullopt if terms of mixed degree (zero counts as
    // homogeneous of any degree and reports degree 0).
    std::optional<int> homogeneous_degree() const;

    SymPolynomial operator+(const SymPolynomial& o) const;
    SymPolynomial operator-(const SymPolynomial& o) const;
    SymPolynomial operator-() const;
    SymPolynomial operator*(const SymPolynomial& o) const;
    SymPolynomial operator*(const Rat& c) const;
    SymPolynomial pow(int e) const;

    bool operator==(const SymPolynomial& o) const = default;

    const std::map<Exponents, Rat>& terms() const { return terms_; }
    void add_term(const Exponents& e, const Rat& c);

    std::string str() const;

private:
    int rank_;
    std::map<Exponents, Rat> terms_;
};

} // namespace momc
