#include "momc/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace momc {

namespace {

VecI to_int_scaled(const VecQ& v) {
    Int l = 1;
    for (const Rat& x : v) {
        Int d = boost::multiprecision::denominator(x);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    VecI out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(l);
        out[i] = boost::multiprecision::numerator(s);
    }
    return out;
}

// Scale a rational vector to a primitive integer vector (direction only).
VecQ canonical_primitive(const VecQ& v) {
    VecI z = to_int_scaled(v);
    return to_rat(primitive(z));
}

int affine_rank(const std::vector<VecQ>& pts) {
    if (pts.empty()) return -1;
    MatQ diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    if (diffs.empty()) return 0;
    return rank_of(std::move(diffs));
}

VecQ centroid(const std::vector<VecQ>& pts) {
    VecQ c(pts[0].size(), Rat(0));
    for (const VecQ& p : pts) c = add(c, p);
    return scale(c, Rat(1, static_cast<unsigned>(pts.size())));
}

// Exact convex-hull membership by Caratheodory enumeration over affinely
// independent subsets. Used for cones and as a cross-check oracle; polytopes
// answer membership through their facet systems.
bool point_in_hull(const std::vector<VecQ>& pts, const VecQ& q) {
    if (pts.empty()) return false;
    const int n = static_cast<int>(pts.size());
    const int dim = static_cast<int>(q.size());
    const int a = affine_rank(pts);
    bool found = false;
    for_each_subset(n, std::min(a + 1, n), [&](const std::vector<int>& idx) {
        MatQ sys(dim + 1, VecQ(idx.size(), Rat(0)));
        for (size_t j = 0; j < idx.size(); ++j) {
            for (int i = 0; i < dim; ++i) sys[i][j] = pts[idx[j]][i];
            sys[dim][j] = 1;
        }
        VecQ rhs = q;
        rhs.push_back(Rat(1));
        auto sol = solve_linear(sys, rhs);
        if (!sol) return true;
        for (const Rat& l : *sol)
            if (l < 0) return true;
        found = true;
        return false;
    });
    return found;
}

struct HalfSpace {
    VecQ normal; // normal.x <= offset
    Rat offset;
};

// Vertices of {x : eq.normal*x == eq.offset, hs.normal*x <= hs.offset} by
// enumerating basic solutions. The set must be bounded.
std::vector<VecQ> hpoly_vertices(const std::vector<HalfSpace>& eqs, const std::vector<HalfSpace>& ineqs,
                                 int r) {
    MatQ emat;
    VecQ erhs;
    for (const HalfSpace& e : eqs) {
        emat.push_back(e.normal);
        erhs.push_back(e.offset);
    }
    int rho = emat.empty() ? 0 : rank_of(emat);
    int need = r - rho;
    std::set<VecQ> verts;
    const int m = static_cast<int>(ineqs.size());
    if (need > m && need > 0) return {};
    for_each_subset(m, std::max(need, 0), [&](const std::vector<int>& idx) {
        MatQ sys = emat;
        VecQ rhs = erhs;
        for (int j : idx) {
            sys.push_back(ineqs[j].normal);
            rhs.push_back(ineqs[j].offset);
        }
        if (rank_of(sys) < r) return true;
        auto x = solve_linear(sys, rhs);
        if (!x) return true;
        for (const HalfSpace& h : ineqs)
            if (dot(h.normal, *x) > h.offset) return true;
        verts.insert(*x);
        return true;
    });
    return {verts.begin(), verts.end()};
}

} // namespace

Polytope::Polytope(std::vector<VecQ> points) : gens_(std::move(points)) {
    if (gens_.empty()) throw InputError("Polytope: no points");
    ambient_ = static_cast<int>(gens_[0].size());
    for (const VecQ& p : gens_)
        if (static_cast<int>(p.size()) != ambient_) throw InputError("Polytope: mixed ranks");
    {
        std::set<VecQ> seen(gens_.begin(), gens_.end());
        if (seen.size() != gens_.size()) throw InputError("Polytope: duplicate points");
    }
    base_ = gens_[0];
    std::vector<VecI> dirs;
    for (size_t i = 1; i < gens_.size(); ++i) {
        VecQ d = sub(gens_[i], base_);
        if (!is_zero(d)) dirs.push_back(to_int_scaled(d));
    }
    basis_ = saturated_basis(dirs, ambient_);
    dim_ = static_cast<int>(basis_.size());
    for (const VecQ& g : gens_) {
        auto t = chart_coords(g);
        if (!t) throw std::logic_error("Polytope: generator off its own affine hull");
        chart_.push_back(*t);
    }
    compute_facets();
    if (dim_ == 0) {
        vertices_ = {0};
    } else {
        // A generator is a vertex iff the facets through it cut down to a point.
        for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
            MatQ normals;
            for (const Facet& f : facets_)
                if (std::find(f.on.begin(), f.on.end(), i) != f.on.end()) normals.push_back(f.normal);
            if (!normals.empty() && rank_of(std::move(normals)) == dim_) vertices_.push_back(i);
        }
    }
    compute_ambient_forms();
}

Polytope Polytope::from_characters(const std::vector<Character>& points) {
    std::vector<VecQ> pts;
    pts.reserve(points.size());
    for (const Character& c : points) pts.push_back(to_rat(c.coords));
    return Polytope(std::move(pts));
}

std::optional<VecQ> Polytope::chart_coords(const VecQ& q) const {
    VecQ rhs = sub(q, base_);
    if (dim_ == 0) {
        if (is_zero(rhs)) return VecQ{};
        return std::nullopt;
    }
    MatQ sys(ambient_, VecQ(dim_, Rat(0)));
    for (int i = 0; i < ambient_; ++i)
        for (int j = 0; j < dim_; ++j) sys[i][j] = Rat(basis_[j][i]);
    return solve_linear(std::move(sys), std::move(rhs));
}

void Polytope::compute_facets() {
    if (dim_ == 0) return;
    const int n = static_cast<int>(gens_.size());
    const int k = dim_;
    std::set<std::pair<VecQ, Rat>> seen;
    auto consider = [&](const VecQ& normal_raw, const Rat& offset_raw) {
        // Rescale to a primitive integer normal with a matching offset.
        VecQ nrm = canonical_primitive(normal_raw);
        Rat s = 1;
        for (size_t i = 0; i < nrm.size(); ++i)
            if (nrm[i] != 0) {
                s = normal_raw[i] / nrm[i];
                break;
            }
        Rat off = offset_raw / s;
        // Orientation: keep if every chart point satisfies <=; flip if every
        // point satisfies >=.
        bool all_le = true, all_ge = true;
        for (const VecQ& t : chart_) {
            Rat v = dot(nrm, t);
            if (v > off) all_le = false;
            if (v < off) all_ge = false;
        }
        if (!all_le && !all_ge) return;
        if (!all_le) {
            for (Rat& x : nrm) x = -x;
            off = -off;
        }
        if (!seen.insert({nrm, off}).second) return;
        Facet f;
        f.normal = nrm;
        f.offset = off;
        for (int i = 0; i < n; ++i)
            if (dot(nrm, chart_[i]) == off) f.on.push_back(i);
        facets_.push_back(std::move(f));
    };

    if (k == 1) {
        for (int i = 0; i < n; ++i) consider(VecQ{Rat(1)}, chart_[i][0]);
        return;
    }
    for_each_subset(n, k, [&](const std::vector<int>& idx) {
        MatQ diffs;
        for (size_t j = 1; j < idx.size(); ++j) diffs.push_back(sub(chart_[idx[j]], chart_[idx[0]]));
        MatQ copy = diffs;
        if (rref(copy) != k - 1) return true;
        std::vector<VecQ> ns = nullspace(std::move(diffs));
        if (ns.size() != 1) return true;
        consider(ns[0], dot(ns[0], chart_[idx[0]]));
        return true;
    });
}

void Polytope::compute_ambient_forms() {
    // Affine hull: independent forms vanishing on the direction space.
    MatQ bt(dim_, VecQ(ambient_, Rat(0)));
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < ambient_; ++i) bt[j][i] = Rat(basis_[j][i]);
    for (const VecQ& g : nullspace(bt)) equations_.push_back({g, dot(g, base_)});
    // Facet inequalities pushed to ambient coordinates through a left inverse
    // of the basis.
    if (dim_ > 0) {
        MatQ gram(dim_, VecQ(dim_, Rat(0)));
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) gram[i][j] = Rat(dot(basis_[i], basis_[j]));
        for (const Facet& f : facets_) {
            auto y = solve_linear(gram, f.normal);
            if (!y) throw std::logic_error("Polytope: singular gram matrix");
            VecQ alpha(ambient_, Rat(0));
            for (int j = 0; j < dim_; ++j)
                for (int i = 0; i < ambient_; ++i) alpha[i] += (*y)[j] * Rat(basis_[j][i]);
            cuts_.push_back({alpha, f.offset + dot(alpha, base_)});
        }
    }
}

std::vector<VecQ> Polytope::vertex_points() const {
    std::vector<VecQ> out;
    for (int i : vertices_) out.push_back(gens_[i]);
    return out;
}

std::vector<std::vector<int>> Polytope::faces() const {
    std::set<std::vector<int>> result;
    std::vector<int> improper(gens_.size());
    for (size_t i = 0; i < gens_.size(); ++i) improper[i] = static_cast<int>(i);
    result.insert(improper);
    std::vector<std::vector<int>> work;
    for (const Facet& f : facets_)
        if (result.insert(f.on).second) work.push_back(f.on);
    // Every proper face is an intersection of facets; close under pairwise
    // intersection.
    std::vector<std::vector<int>> frontier = work;
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& f : frontier)
            for (const Facet& g : facets_) {
                std::vector<int> inter;
                std::set_intersection(f.begin(), f.end(), g.on.begin(), g.on.end(),
                                      std::back_inserter(inter));
                if (inter.empty()) continue;
                if (result.insert(inter).second) next.push_back(std::move(inter));
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> out(result.begin(), result.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<int>> Polytope::faces_of_dim(int d) const {
    std::vector<std::vector<int>> out;
    for (const auto& f : faces()) {
        std::vector<VecQ> pts;
        for (int i : f) pts.push_back(gens_[i]);
        if (affine_rank(pts) == d) out.push_back(f);
    }
    return out;
}

bool Polytope::contains(const VecQ& q) const {
    auto t = chart_coords(q);
    if (!t) return false;
    for (const Facet& f : facets_)
        if (dot(f.normal, *t) > f.offset) return false;
    return true;
}

bool Polytope::relint_contains(const VecQ& q) const {
    auto t = chart_coords(q);
    if (!t) return false;
    for (const Facet& f : facets_)
        if (dot(f.normal, *t) >= f.offset) return false;
    return true;
}

VecQ Polytope::relint_point() const { return centroid(vertex_points()); }

bool Polytope::same_vertex_set(const Polytope& o) const {
    std::vector<VecQ> a = vertex_points(), b = o.vertex_points();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace {

// Fan triangulation pulled from the lexicographically smallest vertex;
// recursion over facet sub-polytopes. Simplices are generator index sets.
std::vector<std::vector<int>> triangulate_polytope(const Polytope& p) {
    if (p.dim() == 0) return {{0}};
    const auto& gens = p.generators();
    int v0 = p.vertex_indices()[0];
    for (int v : p.vertex_indices())
        if (gens[v] < gens[v0]) v0 = v;
    std::vector<std::vector<int>> out;
    for (const auto& f : p.faces_of_dim(p.dim() - 1)) {
        if (std::find(f.begin(), f.end(), v0) != f.end()) continue;
        std::vector<VecQ> sub_pts;
        for (int i : f) sub_pts.push_back(gens[i]);
        Polytope sub(sub_pts);
        for (const auto& s : triangulate_polytope(sub)) {
            std::vector<int> simplex{v0};
            for (int local : s) simplex.push_back(f[local]);
            std::sort(simplex.begin(), simplex.end());
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

} // namespace

Rat Polytope::normalized_volume() const {
    if (dim_ == 0) return 1;
    Rat vol = 0;
    for (const auto& s : triangulate_polytope(*this)) {
        MatQ m;
        for (size_t j = 1; j < s.size(); ++j) m.push_back(sub(chart_[s[j]], chart_[s[0]]));
        Rat d = det(std::move(m));
        vol += d < 0 ? -d : d;
    }
    return vol;
}

std::vector<VecQ> intersection_vertices(const Polytope& a, const Polytope& b) {
    std::vector<HalfSpace> eqs, ineqs;
    for (const auto& e : a.hull_equations()) eqs.push_back({e.normal, e.offset});
    for (const auto& e : b.hull_equations()) eqs.push_back({e.normal, e.offset});
    for (const auto& c : a.facet_cuts()) ineqs.push_back({c.normal, c.offset});
    for (const auto& c : b.facet_cuts()) ineqs.push_back({c.normal, c.offset});
    std::vector<VecQ> verts = hpoly_vertices(eqs, ineqs, a.ambient_rank());
    std::vector<VecQ> keep;
    for (const VecQ& v : verts)
        if (a.contains(v) && b.contains(v)) keep.push_back(v);
    return keep;
}

int intersection_dim(const Polytope& a, const Polytope& b) {
    std::vector<VecQ> verts = intersection_vertices(a, b);
    if (verts.empty()) return -1;
    return affine_rank(verts);
}

bool relint_overlap(const Polytope& a, const Polytope& b) {
    std::vector<VecQ> verts = intersection_vertices(a, b);
    if (verts.empty()) return false;
    VecQ z = centroid(verts);
    return a.relint_contains(z) && b.relint_contains(z);
}

std::vector<int> vertex_set(const std::vector<Character>& points) {
    if (points.empty()) throw InputError("vertex_set: no points");
    return Polytope::from_characters(points).vertex_indices();
}

namespace {

// Interior-overlap test for polytopes of equal dimension k in a common
// affine hull. Vertex-inclusion and facet separation decide almost every
// pair; facet separation is complete for k <= 2 (a separating line between
// properly separated polygons can be taken along an edge), so the expensive
// intersection route only runs in higher dimension.
bool interiors_overlap_same_hull(const Polytope& a, const Polytope& b, int k) {
    for (const VecQ& v : b.vertex_points())
        if (a.relint_contains(v)) return true;
    for (const VecQ& v : a.vertex_points())
        if (b.relint_contains(v)) return true;
    auto separated = [](const Polytope& p, const Polytope& q) {
        for (const auto& cut : p.facet_cuts()) {
            bool all_out = true;
            for (const VecQ& v : q.vertex_points())
                if (dot(cut.normal, v) < cut.offset) {
                    all_out = false;
                    break;
                }
            if (all_out) return true;
        }
        return false;
    };
    if (separated(a, b) || separated(b, a)) return false;
    if (k <= 2) return true;
    return relint_overlap(a, b);
}

} // namespace

namespace {

std::vector<VecQ> sorted_vertex_points(const Polytope& p) {
    std::vector<VecQ> v = p.vertex_points();
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

SubdivisionCheck is_subdivision(const Polytope& parent, const std::vector<Polytope>& pieces) {
    SubdivisionCheck out;
    if (pieces.empty()) {
        out.report = "no pieces";
        return out;
    }
    const int k = parent.dim();
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].dim() != k) {
            out.report = "piece " + std::to_string(i) + " has dimension " +
                         std::to_string(pieces[i].dim()) + " != parent dimension " + std::to_string(k);
            return out;
        }
        for (const VecQ& g : pieces[i].generators())
            if (!parent.contains(g)) {
                out.report = "piece " + std::to_string(i) + " is not contained in the parent";
                return out;
            }
    }
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j)
            if (interiors_overlap_same_hull(pieces[i], pieces[j], k)) {
                out.report = "pieces " + std::to_string(i) + " and " + std::to_string(j) +
                             " have overlapping interiors";
                return out;
            }
    Rat total = 0;
    for (const Polytope& p : pieces) total += p.normalized_volume();
    Rat want = parent.normalized_volume();
    if (total != want) {
        std::ostringstream os;
        os << "piece volumes sum to " << total << " but parent volume is " << want;
        out.report = os.str();
        return out;
    }
    // Internal faces: proper faces of pieces whose relative interior meets
    // the parent's relative interior (witnessed by the vertex centroid).
    std::vector<Polytope> internals;
    std::vector<std::vector<VecQ>> internal_keys;
    for (const Polytope& p : pieces) {
        auto all = p.faces();
        for (const auto& f : all) {
            if (f.size() == p.generators().size()) continue; // improper face
            std::vector<VecQ> pts;
            for (int i : f) pts.push_back(p.generators()[i]);
            Polytope face(pts);
            if (!parent.relint_contains(face.relint_point())) continue;
            std::vector<VecQ> key = sorted_vertex_points(face);
            if (std::find(internal_keys.begin(), internal_keys.end(), key) != internal_keys.end())
                continue;
            internal_keys.push_back(std::move(key));
            internals.push_back(std::move(face));
        }
    }
    // The relative interiors of pieces and internal faces must partition the
    // parent's relative interior; with interior-disjoint equal-volume pieces
    // the only way this can fail is internal faces overlapping.
    for (size_t i = 0; i < internals.size(); ++i)
        for (size_t j = i + 1; j < internals.size(); ++j)
            if (relint_overlap(internals[i], internals[j])) {
                out.report = "internal faces overlap (pieces do not meet face-to-face)";
                return out;
            }
    out.ok = true;
    out.subdivision = Subdivision{parent, pieces, std::move(internals), std::nullopt};
    return out;
}

std::vector<Subdivision> enumerate_subdivisions(const std::vector<Character>& points,
                                                const std::vector<Polytope>& allowed_pieces,
                                                int max_points) {
    if (static_cast<int>(points.size()) > max_points)
        throw ResourceError("enumerate_subdivisions: " + std::to_string(points.size()) +
                            " points exceed the limit of " + std::to_string(max_points));
    Polytope parent = Polytope::from_characters(points);
    const int k = parent.dim();
    std::vector<Polytope> cands;
    std::vector<std::vector<VecQ>> keys;
    for (const Polytope& p : allowed_pieces) {
        if (p.dim() != k) continue;
        bool inside = true;
        for (const VecQ& g : p.generators())
            if (!parent.contains(g)) {
                inside = false;
                break;
            }
        if (!inside) continue;
        std::vector<VecQ> key = sorted_vertex_points(p);
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
        keys.push_back(std::move(key));
        cands.push_back(p);
    }
    // Canonical candidate order for deterministic output.
    std::vector<int> order(cands.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });

    Rat want = parent.normalized_volume();
    std::vector<Rat> vols;
    for (const Polytope& c : cands) vols.push_back(c.normalized_volume());

    // Pairwise interior-disjointness is the hot check; compute each pair once.
    const int nc = static_cast<int>(cands.size());
    std::vector<signed char> disjoint_cache(static_cast<size_t>(nc) * nc, -1);
    auto pair_disjoint = [&](int a, int b) {
        signed char& slot = disjoint_cache[static_cast<size_t>(a) * nc + b];
        if (slot < 0) {
            bool d = !interiors_overlap_same_hull(cands[a], cands[b], k);
            slot = d ? 1 : 0;
            disjoint_cache[static_cast<size_t>(b) * nc + a] = slot;
        }
        return slot == 1;
    };

    std::vector<Subdivision> found;
    std::vector<int> chosen;
    auto dfs = [&](auto&& self, size_t pos, const Rat& acc) -> void {
        if (acc == want) {
            std::vector<Polytope> pieces;
            for (int i : chosen) pieces.push_back(cands[i]);
            SubdivisionCheck chk = is_subdivision(parent, pieces);
            if (chk.ok) found.push_back(std::move(*chk.subdivision));
            return;
        }
        for (size_t p = pos; p < order.size(); ++p) {
            int c = order[p];
            if (acc + vols[c] > want) continue;
            bool disjoint = true;
            for (int prev : chosen)
                if (!pair_disjoint(prev, c)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            chosen.push_back(c);
            self(self, p + 1, acc + vols[c]);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, Rat(0));
    return found;
}

Subdivision regular_subdivision(const std::vector<Character>& points, const std::vector<Rat>& valuation) {
    if (points.size() != valuation.size())
        throw InputError("regular_subdivision: valuation must cover all points");
    Polytope parent = Polytope::from_characters(points);
    const int k = parent.dim();
    if (k == 0) return Subdivision{parent, {parent}, {}, true};

    const int n = static_cast<int>(points.size());
    std::vector<VecQ> chart;
    {
        // Work in the parent's chart so the lifted hull is full-dimensional.
        Polytope& p = parent;
        for (const VecQ& g : p.generators()) chart.push_back(g);
    }
    // Use chart coordinates by re-deriving them: interpolate affine functions
    // on the ambient coordinates restricted to the affine hull. Affine
    // functions on the hull are determined by values at k+1 affinely
    // independent points, so enumerate those.
    std::vector<Rat> height(n);
    for (int i = 0; i < n; ++i) height[i] = -valuation[i];

    std::set<std::vector<int>> contacts;
    for_each_subset(n, k + 1, [&](const std::vector<int>& idx) {
        // Solve for lambda: the affine function value at any hull point x is
        // sum lambda_j h_j where x = sum lambda_j p_j, sum lambda_j = 1 over
        // the subset; this is well-defined iff the subset is affinely
        // independent.
        std::vector<VecQ> sub;
        for (int i : idx) sub.push_back(chart[i]);
        if (affine_rank(sub) != k) return true;
        // Express every point barycentrically over the subset and evaluate.
        const int r = static_cast<int>(chart[0].size());
        MatQ sys(r + 1, VecQ(k + 1, Rat(0)));
        for (int j = 0; j <= k; ++j) {
            for (int i = 0; i < r; ++i) sys[i][j] = chart[idx[j]][i];
            sys[r][j] = 1;
        }
        std::vector<int> contact;
        bool feasible = true;
        std::vector<Rat> values(n);
        for (int i = 0; i < n && feasible; ++i) {
            VecQ rhs = chart[i];
            rhs.push_back(Rat(1));
            auto lam = solve_linear(sys, rhs);
            if (!lam) { feasible = false; break; } // off the hull: impossible
            Rat v = 0;
            for (int j = 0; j <= k; ++j) v += (*lam)[j] * height[idx[j]];
            values[i] = v;
            if (v > height[i]) feasible = false;
        }
        if (!feasible) return true;
        for (int i = 0; i < n; ++i)
            if (values[i] == height[i]) contact.push_back(i);
        std::vector<VecQ> cpts;
        for (int i : contact) cpts.push_back(chart[i]);
        if (affine_rank(cpts) == k) contacts.insert(contact);
        return true;
    });

    std::vector<Polytope> pieces;
    std::vector<std::vector<VecQ>> piece_keys;
    for (const auto& c : contacts) {
        std::vector<VecQ> pts;
        for (int i : c) pts.push_back(chart[i]);
        Polytope piece(pts);
        std::vector<VecQ> key = sorted_vertex_points(piece);
        if (std::find(piece_keys.begin(), piece_keys.end(), key) != piece_keys.end()) continue;
        piece_keys.push_back(std::move(key));
        pieces.push_back(std::move(piece));
    }
    SubdivisionCheck chk = is_subdivision(parent, pieces);
    if (!chk.ok) throw std::logic_error("regular_subdivision produced an invalid subdivision: " + chk.report);
    chk.subdivision->regular = true;
    return std::move(*chk.subdivision);
}

Cone::Cone(std::vector<Character> rays) : rays_(std::move(rays)) {
    if (rays_.empty()) return;
    ambient_ = rays_[0].rank();
    for (const Character& r : rays_) {
        if (r.rank() != ambient_) throw InputError("Cone: mixed ranks");
        if (is_zero(r.coords)) throw InputError("Cone: zero ray");
    }
    dim_ = span_rank(rays_);
}

bool Cone::strictly_convex() const {
    if (rays_.empty()) return true;
    std::vector<VecQ> pts;
    for (const Character& r : rays_) pts.push_back(to_rat(r.coords));
    VecQ zero(ambient_, Rat(0));
    return !point_in_hull(pts, zero);
}

bool Cone::contains(const Character& q) const { return contains(to_rat(q.coords)); }

bool Cone::contains(const VecQ& q) const {
    if (is_zero(q)) return true;
    if (rays_.empty()) return false;
    const int n = static_cast<int>(rays_.size());
    const int d = dim_;
    bool found = false;
    for_each_subset(n, std::min(d, n), [&](const std::vector<int>& idx) {
        MatQ sys(ambient_, VecQ(idx.size(), Rat(0)));
        for (size_t j = 0; j < idx.size(); ++j)
            for (int i = 0; i < ambient_; ++i) sys[i][j] = Rat(rays_[idx[j]].coords[i]);
        MatQ copy = sys;
        if (rank_of(std::move(copy)) != static_cast<int>(idx.size())) return true;
        auto lam = solve_linear(sys, q);
        if (!lam) return true;
        for (const Rat& l : *lam)
            if (l < 0) return true;
        found = true;
        return false;
    });
    return found;
}

std::vector<Character> Cone::extremal_rays() const {
    if (!strictly_convex()) throw InputError("extremal_rays: cone contains a line");
    std::vector<Character> prims;
    for (const Character& r : rays_) {
        Character p(primitive(r.coords));
        if (std::find(prims.begin(), prims.end(), p) == prims.end()) prims.push_back(p);
    }
    std::vector<Character> out;
    for (size_t i = 0; i < prims.size(); ++i) {
        std::vector<Character> others;
        for (size_t j = 0; j < prims.size(); ++j)
            if (j != i) others.push_back(prims[j]);
        if (others.empty() || !Cone(others).contains(prims[i])) out.push_back(prims[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VecQ> Cone::facet_normals_ambient() const {
    if (!strictly_convex()) throw InputError("facet_normals: cone contains a line");
    std::vector<Character> ext = extremal_rays();
    const int r = ambient_;
    if (dim_ != r) throw InputError("facet_normals: cone is not full-dimensional");
    if (r == 1) return {to_rat(ext[0].coords)};
    std::set<VecQ> seen;
    std::vector<VecQ> out;
    const int n = static_cast<int>(ext.size());
    for_each_subset(n, r - 1, [&](const std::vector<int>& idx) {
        MatQ rows;
        for (int i : idx) rows.push_back(to_rat(ext[i].coords));
        MatQ copy = rows;
        if (rank_of(std::move(copy)) != r - 1) return true;
        std::vector<VecQ> ns = nullspace(std::move(rows));
        if (ns.size() != 1) return true;
        VecQ nrm = canonical_primitive(ns[0]);
        bool all_ge = true, all_le = true;
        for (const Character& ray : ext) {
            Rat v = dot(nrm, to_rat(ray.coords));
            if (v > 0) all_le = false;
            if (v < 0) all_ge = false;
        }
        if (!all_ge && !all_le) return true;
        if (!all_ge)
            for (Rat& x : nrm) x = -x;
        if (seen.insert(nrm).second) out.push_back(nrm);
        return true;
    });
    return out;
}

namespace {

// Facets of cone(rays[idx]) as subsets of idx; valid for cones of dim >= 2
// within their span.
std::vector<std::vector<int>> cone_facet_onsets(const std::vector<Character>& rays,
                                                const std::vector<int>& idx) {
    std::vector<VecQ> pts;
    for (int i : idx) pts.push_back(to_rat(rays[i].coords));
    MatQ all;
    for (const VecQ& p : pts) all.push_back(p);
    const int k = rank_of(all);
    const int n = static_cast<int>(idx.size());
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    for_each_subset(n, k - 1, [&](const std::vector<int>& sub) {
        MatQ rows;
        for (int j : sub) rows.push_back(pts[j]);
        {
            MatQ copy = rows;
            if (rank_of(std::move(copy)) != k - 1) return true;
        }
        // Normal within the span of the cone: v = sum c_i b_i over a span
        // basis with v.ray = 0 for the facet rays.
        std::vector<VecQ> span_basis;
        {
            MatQ m = all;
            int rk = rref(m);
            for (int i = 0; i < rk; ++i) span_basis.push_back(m[i]);
        }
        MatQ sys;
        for (int j : sub) {
            VecQ row(span_basis.size(), Rat(0));
            for (size_t bi = 0; bi < span_basis.size(); ++bi) row[bi] = dot(span_basis[bi], pts[j]);
            sys.push_back(row);
        }
        std::vector<VecQ> ns = nullspace(std::move(sys));
        if (ns.size() != 1) return true;
        VecQ nrm(pts[0].size(), Rat(0));
        for (size_t bi = 0; bi < span_basis.size(); ++bi)
            nrm = add(nrm, scale(span_basis[bi], ns[0][bi]));
        bool all_ge = true, all_le = true;
        for (const VecQ& p : pts) {
            Rat v = dot(nrm, p);
            if (v > 0) all_le = false;
            if (v < 0) all_ge = false;
        }
        if (!all_ge && !all_le) return true;
        if (!all_ge)
            for (Rat& x : nrm) x = -x;
        std::vector<int> on;
        for (int j = 0; j < n; ++j)
            if (dot(nrm, pts[j]) == 0) on.push_back(idx[j]);
        if (seen.insert(on).second) out.push_back(on);
        return true;
    });
    return out;
}

// Pulling triangulation over the given marker indices (distinct directions).
std::vector<std::vector<int>> pull_cone(const std::vector<Character>& markers,
                                        const std::vector<int>& idx) {
    std::vector<Character> sel;
    for (int i : idx) sel.push_back(markers[i]);
    int k = span_rank(sel);
    if (k == 1) {
        if (idx.size() != 1)
            throw std::logic_error("pull_cone: collinear markers survived dedup");
        return {{idx[0]}};
    }
    int v0 = idx[0];
    for (int i : idx)
        if (markers[i].coords < markers[v0].coords) v0 = i;
    std::vector<std::vector<int>> out;
    for (const auto& f : cone_facet_onsets(markers, idx)) {
        if (std::find(f.begin(), f.end(), v0) != f.end()) continue;
        for (auto s : pull_cone(markers, f)) {
            s.push_back(v0);
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace

ConeTriangulation triangulate_cone(const Cone& cone, const std::vector<Character>& markers_in) {
    if (cone.rays().empty()) throw InputError("triangulate_cone: zero cone");
    if (!cone.strictly_convex()) throw InputError("triangulate_cone: cone is not strictly convex");
    for (const Character& m : markers_in) {
        if (is_zero(m.coords)) throw InputError("triangulate_cone: zero marker");
        if (!cone.contains(m)) throw InputError("triangulate_cone: marker " + m.str() + " outside the cone");
    }
    // Collapse collinear markers to the representative closest to the origin.
    std::vector<Character> markers;
    for (const Character& m : markers_in) {
        bool merged = false;
        for (Character& have : markers) {
            if (!positively_collinear(have.coords, m.coords)) continue;
            Int cm = vec_gcd(m.coords), ch = vec_gcd(have.coords);
            if (cm < ch) have = m;
            merged = true;
            break;
        }
        if (!merged) markers.push_back(m);
    }
    std::vector<Character> ext = cone.extremal_rays();
    std::vector<int> ext_idx;
    std::vector<bool> used(markers.size(), false);
    for (const Character& e : ext) {
        int found = -1;
        for (size_t i = 0; i < markers.size(); ++i)
            if (positively_collinear(markers[i].coords, e.coords)) {
                found = static_cast<int>(i);
                break;
            }
        if (found < 0)
            throw InputError("triangulate_cone: no marker on extremal ray " + e.str());
        ext_idx.push_back(found);
        used[found] = true;
    }
    std::sort(ext_idx.begin(), ext_idx.end());
    std::vector<std::vector<int>> pieces = pull_cone(markers, ext_idx);

    // Insert the remaining markers by stellar subdivision, in a
    // deterministic order.
    std::vector<int> rest;
    for (size_t i = 0; i < markers.size(); ++i)
        if (!used[i]) rest.push_back(static_cast<int>(i));
    std::sort(rest.begin(), rest.end(),
              [&](int a, int b) { return markers[a].coords < markers[b].coords; });
    for (int mi : rest) {
        VecQ m = to_rat(markers[mi].coords);
        std::vector<std::vector<int>> next;
        for (const auto& piece : pieces) {
            MatQ sys(cone.ambient_rank(), VecQ(piece.size(), Rat(0)));
            for (size_t j = 0; j < piece.size(); ++j)
                for (int i = 0; i < cone.ambient_rank(); ++i)
                    sys[i][j] = Rat(markers[piece[j]].coords[i]);
            auto lam = solve_linear(sys, m);
            bool inside = lam.has_value();
            if (inside)
                for (const Rat& l : *lam)
                    if (l < 0) inside = false;
            if (!inside) {
                next.push_back(piece);
                continue;
            }
            for (size_t j = 0; j < piece.size(); ++j) {
                if ((*lam)[j] == 0) continue;
                std::vector<int> repl;
                for (size_t t = 0; t < piece.size(); ++t)
                    if (t != j) repl.push_back(piece[t]);
                repl.push_back(mi);
                std::sort(repl.begin(), repl.end());
                next.push_back(std::move(repl));
            }
        }
        pieces = std::move(next);
    }
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    return ConeTriangulation{std::move(markers), std::move(pieces)};
}

bool is_complete_fan(const std::vector<Cone>& cones, int rank, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (cones.empty()) return fail("no cones");
    std::vector<Polytope> truncations;
    for (size_t i = 0; i < cones.size(); ++i) {
        const Cone& c = cones[i];
        if (c.ambient_rank() != rank)
            return fail("cone " + std::to_string(i) + " lives in the wrong ambient rank");
        if (c.dim() != rank) return fail("cone " + std::to_string(i) + " is not full-dimensional");
        if (!c.strictly_convex()) return fail("cone " + std::to_string(i) + " is not strictly convex");
        std::vector<HalfSpace> ineqs;
        for (const VecQ& n : c.facet_normals_ambient()) {
            VecQ neg = n;
            for (Rat& x : neg) x = -x;
            ineqs.push_back({neg, Rat(0)}); // n.x >= 0
        }
        for (int j = 0; j < rank; ++j) {
            VecQ e(rank, Rat(0));
            e[j] = 1;
            ineqs.push_back({e, Rat(1)});
            for (Rat& x : e) x = -x;
            ineqs.push_back({e, Rat(1)});
        }
        std::vector<VecQ> verts = hpoly_vertices({}, ineqs, rank);
        if (verts.empty()) return fail("cone " + std::to_string(i) + " has empty box truncation");
        truncations.emplace_back(std::move(verts));
    }
    std::vector<VecQ> corners;
    for (int mask = 0; mask < (1 << rank); ++mask) {
        VecQ p(rank);
        for (int j = 0; j < rank; ++j) p[j] = (mask >> j) & 1 ? 1 : -1;
        corners.push_back(std::move(p));
    }
    Polytope box(corners);
    for (size_t i = 0; i < truncations.size(); ++i)
        for (size_t j = i + 1; j < truncations.size(); ++j)
            if (intersection_dim(truncations[i], truncations[j]) >= rank)
                return fail("cones " + std::to_string(i) + " and " + std::to_string(j) +
                            " have overlapping interiors");
    Rat total = 0;
    for (const Polytope& t : truncations) total += t.normalized_volume();
    if (total != box.normalized_volume()) return fail("cones do not cover the space");
    return true;
}

} // namespace momc
