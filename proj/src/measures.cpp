#include "momc/measures.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace momc {

std::string mode_name(ValidationMode m) {
    switch (m) {
        case ValidationMode::literal: return "literal";
        case ValidationMode::additive: return "additive";
        case ValidationMode::normalized: return "normalized";
    }
    return "?";
}

std::optional<ValidationMode> mode_from_name(const std::string& s) {
    if (s == "literal") return ValidationMode::literal;
    if (s == "additive") return ValidationMode::additive;
    if (s == "normalized") return ValidationMode::normalized;
    return std::nullopt;
}

MomentMeasure::MomentMeasure(const MomentComplex& cx, std::vector<std::uint8_t> values,
                             ValidationMode mode)
    : cx_(&cx), values_(std::move(values)), mode_(mode) {
    if (static_cast<int>(values_.size()) != cx.cell_count())
        throw InputError("measure must assign a value to every cell");
    for (std::uint8_t v : values_)
        if (v > 1) throw InputError("measure values must be 0 or 1");
}

MomentMeasure MomentMeasure::from_one_cells(const MomentComplex& cx, const std::vector<int>& one_cells,
                                            ValidationMode mode) {
    std::vector<std::uint8_t> vals(cx.cell_count(), 0);
    for (int id : one_cells) {
        if (id < 0 || id >= cx.cell_count())
            throw InputError("cell id " + std::to_string(id) + " out of range");
        vals[id] = 1;
    }
    return MomentMeasure(cx, std::move(vals), mode);
}

std::vector<int> MomentMeasure::one_cells() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(values_.size()); ++i)
        if (values_[i]) out.push_back(i);
    return out;
}

namespace {

std::string cell_str(const MomentComplex& cx, int id) {
    std::ostringstream os;
    os << '{';
    const auto& comps = cx.cell(id).comps;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) os << ',';
        os << comps[i];
    }
    os << '}';
    return os.str();
}

// Normalization collection: the generic cell and the proper-face cells of
// the generic polytope; their relative interiors partition the closed
// generic polytope.
std::vector<int> normalization_cells(const MomentComplex& cx) {
    return cx.faces_of(cx.generic_cell());
}

} // namespace

std::vector<MeasureViolation> validate(const MomentMeasure& m, ValidationMode mode) {
    const MomentComplex& cx = m.complex();
    std::vector<MeasureViolation> out;
    bool any = false;
    for (int i = 0; i < cx.cell_count(); ++i) any = any || m.value(i);
    if (!any) out.push_back({-1, -1, "measure is identically zero"});

    for (int c = 0; c < cx.cell_count(); ++c) {
        const auto& subs = cx.subdivisions_of(c);
        for (size_t si = 0; si < subs.size(); ++si) {
            const CellSubdivision& s = subs[si];
            if (s.maximal.size() == 1 && s.internal.empty() && s.maximal[0] == c)
                continue; // trivial subdivision
            int target = m.value(c) ? 1 : 0;
            if (mode == ValidationMode::literal && target == 0) continue;
            int sum = 0;
            for (int id : s.maximal) sum += m.value(id) ? 1 : 0;
            for (int id : s.internal) sum += m.value(id) ? 1 : 0;
            if (sum != target) {
                std::ostringstream os;
                os << "cell " << cell_str(cx, c) << " subdivision #" << si << ": m(cell)=" << target
                   << " but the subdivision cells sum to " << sum;
                out.push_back({c, static_cast<int>(si), os.str()});
            }
        }
    }
    if (mode == ValidationMode::normalized) {
        int mass = 0;
        for (int id : normalization_cells(cx)) mass += m.value(id) ? 1 : 0;
        if (mass != 1) {
            std::ostringstream os;
            os << "closed generic polytope has measure mass " << mass << " (expected 1)";
            out.push_back({cx.generic_cell(), -1, os.str()});
        }
    }
    return out;
}

std::vector<MeasureViolation> validate(const MomentMeasure& m) { return validate(m, m.mode()); }

bool is_valid(const MomentMeasure& m, ValidationMode mode) { return validate(m, mode).empty(); }

bool is_geometric(const MomentMeasure& m) {
    const MomentComplex& cx = m.complex();
    int top = cx.cell(cx.generic_cell()).dim;
    for (int id : m.one_cells())
        if (cx.cell(id).dim != top) return false;
    return true;
}

namespace {

struct Constraint {
    int target;               // cell id whose value bounds the sum
    std::vector<int> members; // subdivision collection
};

// Prune test on a partial assignment (-1 = unassigned).
bool partial_ok(const std::vector<int>& vals, const Constraint& c, ValidationMode mode) {
    int tv = vals[c.target];
    int min = 0, unknown = 0;
    for (int id : c.members) {
        if (vals[id] < 0) ++unknown;
        else min += vals[id];
    }
    int max = min + unknown;
    if (mode == ValidationMode::literal) {
        if (tv == 1 && (min > 1 || max < 1)) return false;
        return true;
    }
    if (tv < 0) return min <= 1; // target unknown: the sum must stay reachable
    return min <= tv && tv <= max;
}

} // namespace

std::vector<MomentMeasure> enumerate_measures(const MomentComplex& cx, ValidationMode mode,
                                              bool geometric_only) {
    const int n = cx.cell_count();
    if (n > cx.limits().max_cells)
        throw ResourceError("complex has " + std::to_string(n) + " cells; limit is " +
                            std::to_string(cx.limits().max_cells));

    std::vector<Constraint> constraints;
    for (int c = 0; c < n; ++c) {
        for (const CellSubdivision& s : cx.subdivisions_of(c)) {
            if (s.maximal.size() == 1 && s.internal.empty() && s.maximal[0] == c) continue;
            Constraint con;
            con.target = c;
            con.members = s.maximal;
            con.members.insert(con.members.end(), s.internal.begin(), s.internal.end());
            constraints.push_back(std::move(con));
        }
    }
    std::vector<int> norm_members = cx.faces_of(cx.generic_cell());

    const int top = cx.cell(cx.generic_cell()).dim;
    std::vector<int> vals(n, -1);
    if (geometric_only)
        for (int i = 0; i < n; ++i)
            if (cx.cell(i).dim != top) vals[i] = 0;

    // Constraints indexed by the cells they mention, for incremental checks.
    std::vector<std::vector<int>> touching(n);
    for (size_t ci = 0; ci < constraints.size(); ++ci) {
        touching[constraints[ci].target].push_back(static_cast<int>(ci));
        for (int id : constraints[ci].members) touching[id].push_back(static_cast<int>(ci));
    }

    std::vector<MomentMeasure> found;
    auto norm_ok = [&]() {
        int min = 0, unknown = 0;
        for (int id : norm_members) {
            if (vals[id] < 0) ++unknown;
            else min += vals[id];
        }
        return min <= 1 && min + unknown >= 1;
    };
    auto dfs = [&](auto&& self, int pos) -> void {
        while (pos < n && vals[pos] >= 0) ++pos;
        if (pos == n) {
            bool any = false;
            for (int v : vals) any = any || v == 1;
            if (!any) return;
            std::vector<std::uint8_t> bytes(n);
            for (int i = 0; i < n; ++i) bytes[i] = static_cast<std::uint8_t>(vals[i]);
            MomentMeasure m(cx, std::move(bytes), mode);
            if (!validate(m, mode).empty()) return;
            found.push_back(std::move(m));
            return;
        }
        for (int v = 0; v <= 1; ++v) {
            vals[pos] = v;
            bool ok = true;
            for (int ci : touching[pos])
                if (!partial_ok(vals, constraints[ci], mode)) {
                    ok = false;
                    break;
                }
            if (ok && mode == ValidationMode::normalized) ok = norm_ok();
            if (ok) self(self, pos + 1);
            vals[pos] = -1;
        }
    };
    dfs(dfs, 0);

    std::sort(found.begin(), found.end(), [](const MomentMeasure& a, const MomentMeasure& b) {
        return a.one_cells() < b.one_cells();
    });
    return found;
}

bool u_membership(const MomentMeasure& m, const Support& s) {
    for (int id : m.complex().orbit_closure_cells(s))
        if (m.value(id)) return true;
    return false;
}

SupportFamily u_supports(const MomentMeasure& m) {
    const MomentComplex& cx = m.complex();
    SupportFamily fam;
    std::set<Support> members;
    for (const Support& s : cx.all_supports())
        if (u_membership(m, s)) {
            fam.supports.push_back(s);
            members.insert(s);
        }
    fam.upward_closed = true;
    const int n = cx.config().component_count();
    for (const Support& s : fam.supports) {
        for (int j = 0; j < n && fam.upward_closed; ++j) {
            if (std::binary_search(s.begin(), s.end(), j)) continue;
            Support bigger = s;
            bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), j), j);
            if (!members.count(bigger)) fam.upward_closed = false;
        }
        if (!fam.upward_closed) break;
    }
    return fam;
}

MomentMeasure git_measure(const MomentComplex& cx, const VecQ& chi) {
    if (static_cast<int>(chi.size()) != cx.config().rank())
        throw InputError("chi must have the configuration rank");
    const int top = cx.cell(cx.generic_cell()).dim;
    for (int id = 0; id < cx.cell_count(); ++id) {
        if (cx.cell(id).dim >= top) continue;
        if (cx.realization(id).contains(chi))
            throw ValidationError("chi lies on the wall cell " + cell_str(cx, id));
    }
    if (!cx.realization(cx.generic_cell()).contains(chi))
        throw ValidationError("chi lies outside the generic polytope; no chamber contains it");
    std::vector<std::uint8_t> vals(cx.cell_count(), 0);
    for (int id = 0; id < cx.cell_count(); ++id)
        if (cx.cell(id).dim == top && cx.realization(id).relint_contains(chi)) vals[id] = 1;
    MomentMeasure m(cx, std::move(vals), ValidationMode::normalized);
    if (!validate(m).empty() || !is_geometric(m))
        throw std::logic_error("chamber measure failed validation");
    return m;
}

ClosedOrbitCell closed_orbit_cell(const MomentMeasure& m, const Support& s) {
    const MomentComplex& cx = m.complex();
    std::vector<int> ones;
    for (int id : cx.orbit_closure_cells(s))
        if (m.value(id)) ones.push_back(id);
    if (ones.empty()) return {std::nullopt, true};
    for (size_t i = 0; i < ones.size(); ++i)
        for (size_t j = i + 1; j < ones.size(); ++j)
            if (!cx.is_face(ones[i], ones[j]) && !cx.is_face(ones[j], ones[i]))
                return {std::nullopt, false};
    // Pairwise comparable, so there is a unique minimum in the face order.
    int best = ones[0];
    for (int id : ones)
        if (cx.is_face(id, best)) best = id;
    return {best, true};
}

std::vector<Int> closed_mass_report(const MomentMeasure& m) {
    const MomentComplex& cx = m.complex();
    std::vector<Int> out(cx.cell_count(), Int(0));
    for (int c = 0; c < cx.cell_count(); ++c) {
        const Polytope& parent = cx.realization(c);
        for (int other = 0; other < cx.cell_count(); ++other) {
            if (!m.value(other)) continue;
            bool inside = true;
            for (const VecQ& g : cx.realization(other).generators())
                if (!parent.contains(g)) {
                    inside = false;
                    break;
                }
            if (inside) out[c] += 1;
        }
    }
    return out;
}

} // namespace momc
