#pragma once

// Test-only oracles, kept independent of the library's implementation paths.

#include <algorithm>
#include <vector>

#include "momc/numeric.hpp"

namespace oracle {

using momc::Int;
using momc::Rat;
using momc::VecI;
using momc::VecQ;

// Exact determinant by Laplace expansion (independent of the library's
// rational elimination).
inline Int laplace_det(const std::vector<VecI>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Int total = 0;
    for (int j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<VecI> minor;
        for (int r = 1; r < n; ++r) {
            VecI row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Int term = m[0][j] * laplace_det(minor);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

// Smith diagonal via determinantal divisors: d_k = gcd of all k x k minors,
// invariant factors d_k / d_{k-1}.
inline std::pair<std::vector<Int>, int> minors_snf(const std::vector<VecI>& m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<Int> dets{Int(1)}; // d_0 = 1
    int rank = 0;
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        Int g = 0;
        std::vector<int> ri(k), ci(k);
        for (int i = 0; i < k; ++i) ri[i] = i;
        bool more_rows = true;
        while (more_rows) {
            for (int i = 0; i < k; ++i) ci[i] = i;
            bool more_cols = true;
            while (more_cols) {
                std::vector<VecI> sub(k, VecI(k));
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
                g = boost::multiprecision::gcd(g, laplace_det(sub));
                int i = k - 1;
                while (i >= 0 && ci[i] == cols - k + i) --i;
                if (i < 0) more_cols = false;
                else {
                    ++ci[i];
                    for (int j = i + 1; j < k; ++j) ci[j] = ci[j - 1] + 1;
                }
            }
            int i = k - 1;
            while (i >= 0 && ri[i] == rows - k + i) --i;
            if (i < 0) more_rows = false;
            else {
                ++ri[i];
                for (int j = i + 1; j < k; ++j) ri[j] = ri[j - 1] + 1;
            }
        }
        if (g == 0) break;
        dets.push_back(g);
        rank = k;
    }
    std::vector<Int> diag;
    for (int k = 1; k <= rank; ++k) diag.push_back(dets[k] / dets[k - 1]);
    return {diag, rank};
}

// Convex-hull membership for ranks 1 and 2, via interval and triangle
// decomposition with exact signs.
inline bool hull_contains_rk1(const std::vector<Rat>& pts, const Rat& q) {
    Rat lo = pts[0], hi = pts[0];
    for (const Rat& p : pts) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return lo <= q && q <= hi;
}

inline Rat cross(const VecQ& o, const VecQ& a, const VecQ& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline bool point_in_triangle(const VecQ& a, const VecQ& b, const VecQ& c, const VecQ& q) {
    Rat d1 = cross(q, a, b), d2 = cross(q, b, c), d3 = cross(q, c, a);
    bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(has_neg && has_pos);
}

inline bool on_segment(const VecQ& a, const VecQ& b, const VecQ& q) {
    if (cross(a, b, q) != 0) return false;
    return std::min(a[0], b[0]) <= q[0] && q[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= q[1] && q[1] <= std::max(a[1], b[1]);
}

// Caratheodory in the plane: q is in the hull iff it equals a point, lies on
// a segment, or lies in a non-degenerate triangle of input points.
inline bool hull_contains_rk2(const std::vector<VecQ>& pts, const VecQ& q) {
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        if (pts[i] == q) return true;
        for (int j = i + 1; j < n; ++j) {
            if (on_segment(pts[i], pts[j], q)) return true;
            for (int k = j + 1; k < n; ++k)
                if (cross(pts[i], pts[j], pts[k]) != 0 &&
                    point_in_triangle(pts[i], pts[j], pts[k], q))
                    return true;
        }
    }
    return false;
}

} // namespace oracle
