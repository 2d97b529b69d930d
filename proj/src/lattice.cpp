#include "momc/lattice.hpp"

#include <sstream>

namespace momc {

std::string Character::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ',';
        os << coords[i];
    }
    os << ')';
    return os.str();
}

IntegerMatrix::IntegerMatrix(std::vector<VecI> r) : rows(std::move(r)) {
    for (const VecI& row : rows)
        if (row.size() != rows[0].size())
            throw InputError("IntegerMatrix: ragged rows");
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<VecI>& cols, int height) {
    std::vector<VecI> rows(height, VecI(cols.size(), Int(0)));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != height)
            throw InputError("IntegerMatrix: column height mismatch");
        for (int i = 0; i < height; ++i) rows[i][j] = cols[j][i];
    }
    return IntegerMatrix(std::move(rows));
}

Int pair(const Character& chi, const Cocharacter& lam) {
    if (chi.coords.size() != lam.coords.size())
        throw InputError("pair: character and cocharacter rank mismatch");
    return dot(chi.coords, lam.coords);
}

namespace {

struct SnfState {
    std::vector<VecI> a;       // working matrix, m x n
    std::vector<VecI> col_inv; // n x n, inverse of accumulated column transform
    int m, n;

    explicit SnfState(std::vector<VecI> mat) : a(std::move(mat)) {
        m = static_cast<int>(a.size());
        n = m ? static_cast<int>(a[0].size()) : 0;
        col_inv.assign(n, VecI(n, Int(0)));
        for (int i = 0; i < n; ++i) col_inv[i][i] = 1;
    }

    void swap_rows(int i, int j) { std::swap(a[i], a[j]); }

    void add_row(int dst, int src, const Int& q) { // row_dst += q*row_src
        for (int c = 0; c < n; ++c) a[dst][c] += q * a[src][c];
    }

    void swap_cols(int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
        std::swap(col_inv[i], col_inv[j]);
    }

    void add_col(int dst, int src, const Int& q) { // col_dst += q*col_src
        for (int r = 0; r < m; ++r) a[r][dst] += q * a[r][src];
        // inverse transform acts on rows: row_src -= q*row_dst
        for (int c = 0; c < n; ++c) col_inv[src][c] -= q * col_inv[dst][c];
    }
};

// Diagonalize with unimodular row/column operations, tracking the inverse of
// the column transform. Diagonal entries are nonzero but not yet folded into
// the divisibility chain.
void diagonalize(SnfState& s, std::vector<Int>& diag) {
    const int m = s.m, n = s.n;
    int t = 0;
    while (t < m && t < n) {
        int pr = -1, pc = -1;
        Int best = 0;
        for (int r = t; r < m; ++r)
            for (int c = t; c < n; ++c) {
                Int v = boost::multiprecision::abs(s.a[r][c]);
                if (v != 0 && (pr < 0 || v < best)) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;
        s.swap_rows(t, pr);
        s.swap_cols(t, pc);

        bool reduced = false;
        while (!reduced) {
            reduced = true;
            for (int r = t + 1; r < m; ++r) {
                if (s.a[r][t] == 0) continue;
                Int q = s.a[r][t] / s.a[t][t];
                s.add_row(r, t, -q);
                if (s.a[r][t] != 0) { // remainder is a strictly smaller pivot
                    s.swap_rows(t, r);
                    reduced = false;
                }
            }
            for (int c = t + 1; c < n; ++c) {
                if (s.a[t][c] == 0) continue;
                Int q = s.a[t][c] / s.a[t][t];
                s.add_col(c, t, -q);
                if (s.a[t][c] != 0) {
                    s.swap_cols(t, c);
                    reduced = false;
                }
            }
        }
        ++t;
    }
    for (int i = 0; i < t; ++i) diag.push_back(boost::multiprecision::abs(s.a[i][i]));
}

// diag(a,b) is equivalent to diag(gcd,lcm); iterate until d_i | d_{i+1}.
void fold_divisibility(std::vector<Int>& d) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < d.size(); ++i)
            for (size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] == 0) continue;
                Int g = boost::multiprecision::gcd(d[i], d[j]);
                Int l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
    }
}

} // namespace

SmithResult smith_normal_form(const IntegerMatrix& mat) {
    SnfState s(mat.rows);
    SmithResult out;
    diagonalize(s, out.diag);
    fold_divisibility(out.diag);
    out.rank = static_cast<int>(out.diag.size());
    out.col_inv = std::move(s.col_inv);
    return out;
}

std::vector<VecI> saturated_basis(const std::vector<VecI>& rows, int n) {
    std::vector<VecI> clean;
    for (const VecI& r : rows) {
        if (static_cast<int>(r.size()) != n) throw InputError("saturated_basis: width mismatch");
        if (!is_zero(r)) clean.push_back(r);
    }
    if (clean.empty()) return {};
    SnfState s(clean);
    std::vector<Int> diag;
    diagonalize(s, diag);
    // With U*A*V = D we have D*V^{-1} = U*A, so the first rank rows of V^{-1}
    // span the rational row space; being part of a Z^n basis they generate
    // its saturation.
    std::vector<VecI> basis;
    for (size_t i = 0; i < diag.size(); ++i) basis.push_back(s.col_inv[i]);
    return basis;
}

Int torsion_order(const std::vector<Character>& weights) {
    if (weights.empty()) throw InputError("torsion_order: empty weight list");
    const int r = weights[0].rank();
    std::vector<VecI> cols;
    for (const Character& w : weights) {
        if (w.rank() != r) throw InputError("torsion_order: mixed ranks");
        cols.push_back(w.coords);
    }
    SmithResult s = smith_normal_form(IntegerMatrix::from_columns(cols, r));
    Int product = 1;
    for (const Int& d : s.diag) product *= d;
    return product;
}

int span_rank(const std::vector<Character>& weights) {
    if (weights.empty()) return 0;
    MatQ m;
    for (const Character& w : weights) m.push_back(to_rat(w.coords));
    return rank_of(std::move(m));
}

} // namespace momc
