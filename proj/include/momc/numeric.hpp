#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <vector>

#include "momc/errors.hpp"

namespace momc {

// All arithmetic in this library is exact: arbitrary-precision integers and
// rationals, never floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using VecI = std::vector<Int>;
using VecQ = std::vector<Rat>;
using MatQ = std::vector<VecQ>; // row major

VecQ to_rat(const VecI& v);

Int vec_gcd(const VecI& v);

// v divided by the gcd of its entries; rejects the zero vector.
VecI primitive(const VecI& v);

bool is_zero(const VecI& v);
bool is_zero(const VecQ& v);

VecI sub(const VecI& a, const VecI& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ add(const VecQ& a, const VecQ& b);
VecQ scale(const VecQ& a, const Rat& c);

Int dot(const VecI& a, const VecI& b);
Rat dot(const VecQ& a, const VecQ& b);

// True when a == c*b for some c > 0 (both nonzero).
bool positively_collinear(const VecI& a, const VecI& b);

// In-place reduced row echelon form; returns the rank. Pivot column indices
// are appended to *pivots when given.
int rref(MatQ& m, std::vector<int>* pivots = nullptr);

int rank_of(MatQ m);

// Any solution of a*x = b (free variables set to 0), or nullopt if
// inconsistent.
std::optional<VecQ> solve_linear(MatQ a, VecQ b);

// Basis of {x : a*x = 0}.
std::vector<VecQ> nullspace(MatQ a);

Rat det(MatQ a);

// Calls fn with every size-k index subset of {0,..,n-1} in lexicographic
// order until fn returns false; returns false iff some call did.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

} // namespace momc
