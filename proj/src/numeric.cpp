#include "momc/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

namespace momc {

VecQ to_rat(const VecI& v) {
    VecQ out;
    out.reserve(v.size());
    for (const Int& x : v) out.emplace_back(x);
    return out;
}

Int vec_gcd(const VecI& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

VecI primitive(const VecI& v) {
    Int g = vec_gcd(v);
    if (g == 0) throw InputError("primitive: zero vector");
    VecI out = v;
    for (Int& x : out) x /= g;
    return out;
}

bool is_zero(const VecI& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const VecQ& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

VecI sub(const VecI& a, const VecI& b) {
    VecI out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

VecQ sub(const VecQ& a, const VecQ& b) {
    VecQ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

VecQ add(const VecQ& a, const VecQ& b) {
    VecQ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

VecQ scale(const VecQ& a, const Rat& c) {
    VecQ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
    return out;
}

Int dot(const VecI& a, const VecI& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const VecQ& a, const VecQ& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool positively_collinear(const VecI& a, const VecI& b) {
    if (is_zero(a) || is_zero(b)) return false;
    if (primitive(a) != primitive(b)) return false;
    // Same primitive direction; same orientation by construction of primitive.
    return true;
}

int rref(MatQ& m, std::vector<int>* pivots) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        Rat inv = m[rank][col];
        for (int c = col; c < cols; ++c) m[rank][c] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

int rank_of(MatQ m) { return rref(m); }

std::optional<VecQ> solve_linear(MatQ a, VecQ b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int r = 0; r < rows; ++r) a[r].push_back(b[r]);
    std::vector<int> pivots;
    int rank = rref(a, &pivots);
    // A pivot in the augmented column means inconsistency.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    VecQ x(cols, Rat(0));
    for (int i = 0; i < rank; ++i) x[pivots[i]] = a[i][cols];
    return x;
}

std::vector<VecQ> nullspace(MatQ a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    std::vector<int> pivots;
    int rank = rref(a, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<VecQ> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        VecQ v(cols, Rat(0));
        v[free] = 1;
        for (int i = 0; i < rank; ++i) v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat det(MatQ a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Rat result = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            result = -result;
        }
        result *= a[col][col];
        Rat inv = a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / inv;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return result;
}

bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return true;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace momc
