#include "momc/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace momc {

PhiList difference_weights(const WeightConfiguration& cfg) {
    std::map<Character, Int> mult;
    for (int i = 0; i < cfg.component_count(); ++i)
        for (int j = 0; j < cfg.component_count(); ++j) {
            if (i == j) continue;
            mult[cfg.weight(j) - cfg.weight(i)] += cfg.mult(i) * cfg.mult(j);
        }
    PhiList out;
    for (const auto& [chi, m] : mult) out.push_back({chi, m});
    return out;
}

namespace {

// Exact angular order on nonzero integer plane vectors.
bool angular_less(const VecI& a, const VecI& b) {
    auto half = [](const VecI& v) { return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Int cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

} // namespace

std::vector<Cone> difference_fan(const WeightConfiguration& cfg) {
    const int r = cfg.rank();
    if (r > 2) throw InputError("difference_fan: rank above 2");
    std::set<VecI> dirs;
    for (int i = 0; i < cfg.component_count(); ++i)
        for (int j = 0; j < cfg.component_count(); ++j) {
            if (i == j) continue;
            dirs.insert(primitive((cfg.weight(j) - cfg.weight(i)).coords));
        }
    if (dirs.empty()) throw InputError("difference_fan: a single weight has no differences");
    if (r == 1)
        return {Cone({Character(VecI{Int(1)})}), Cone({Character(VecI{Int(-1)})})};
    std::vector<VecI> sorted(dirs.begin(), dirs.end());
    {
        MatQ m;
        for (const VecI& d : sorted) m.push_back(to_rat(d));
        if (rank_of(std::move(m)) < 2)
            throw InputError("difference_fan: directions span a line, not the plane");
    }
    std::sort(sorted.begin(), sorted.end(), angular_less);
    std::vector<Cone> fan;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const VecI& a = sorted[i];
        const VecI& b = sorted[(i + 1) % sorted.size()];
        fan.emplace_back(std::vector<Character>{Character(a), Character(b)});
    }
    return fan;
}

std::vector<VecQ> sample_generic_characters(const MomentComplex& cx, int count, std::uint64_t seed) {
    const WeightConfiguration& cfg = cx.config();
    const int r = cfg.rank();
    VecQ lo(r), hi(r);
    for (int j = 0; j < r; ++j) {
        Int mn = cfg.weight(0).coords[j], mx = mn;
        for (int i = 1; i < cfg.component_count(); ++i) {
            mn = std::min(mn, cfg.weight(i).coords[j]);
            mx = std::max(mx, cfg.weight(i).coords[j]);
        }
        lo[j] = mn;
        hi[j] = mx;
    }
    const int top = cx.cell(cx.generic_cell()).dim;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(1, 1008);
    std::vector<VecQ> out;
    for (int attempt = 0; attempt < count * 40 && static_cast<int>(out.size()) < count; ++attempt) {
        VecQ chi(r);
        for (int j = 0; j < r; ++j)
            chi[j] = lo[j] + Rat(pick(rng), 1009) * (hi[j] - lo[j]);
        bool generic = cx.realization(cx.generic_cell()).contains(chi);
        for (int id = 0; generic && id < cx.cell_count(); ++id)
            if (cx.cell(id).dim < top && cx.realization(id).contains(chi)) generic = false;
        if (generic) out.push_back(std::move(chi));
    }
    return out;
}

namespace {

std::string comps_str(const MomentComplex& cx, int id) {
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

} // namespace

std::vector<PropertyResult> verify_config(const MomentComplex& cx, int chamber_samples,
                                          std::uint64_t seed) {
    std::vector<PropertyResult> out;
    const WeightConfiguration& cfg = cx.config();

    // 1. Complete-fan vanishing over the weight-difference fan.
    {
        PropertyResult p{"fan_vanishing", "pass", ""};
        if (cfg.rank() > 2) {
            p.status = "skip";
            p.detail = "exact fan construction implemented for ranks 1 and 2";
        } else if (cfg.component_count() < 2) {
            p.status = "skip";
            p.detail = "a single component has no difference directions";
        } else {
            try {
                std::vector<Cone> fan = difference_fan(cfg);
                SymPolynomial sum = verify_fan_vanishing(fan, difference_weights(cfg));
                if (!sum.is_zero()) {
                    p.status = "fail";
                    p.detail = "difference fan classes sum to " + sum.str();
                } else {
                    p.detail = std::to_string(fan.size()) + " cones, sum = 0";
                }
            } catch (const InputError& e) {
                p.status = "skip";
                p.detail = e.what();
            }
        }
        out.push_back(std::move(p));
    }

    // 2. Fingerprint additivity over the whole subdivision catalogue.
    {
        PropertyResult p{"fingerprint_additivity", "pass", ""};
        int checked = 0;
        for (int c = 0; c < cx.cell_count() && p.status == "pass"; ++c) {
            for (const CellSubdivision& s : cx.subdivisions_of(c)) {
                ++checked;
                for (const SymPolynomial& res : verify_fingerprint_additivity(cx, c, s))
                    if (!res.is_zero()) {
                        p.status = "fail";
                        p.detail = "cell " + comps_str(cx, c) + " has residual " + res.str();
                        break;
                    }
                if (p.status != "pass") break;
            }
        }
        if (p.status == "pass")
            p.detail = std::to_string(checked) + " (cell, subdivision) pairs";
        out.push_back(std::move(p));
    }

    // 3. Class determined by the cell, over every support.
    {
        PropertyResult p{"support_class_by_cell", "pass", ""};
        int checked = 0;
        try {
            for (const Support& s : cx.all_supports()) {
                ++checked;
                Fingerprint via_support = support_class(cx, s);
                Fingerprint via_cell = cell_fingerprint(cx, cx.cell_of_support(s));
                if (!(via_support == via_cell)) {
                    std::ostringstream os;
                    os << "support {";
                    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
                    os << "} disagrees with its cell";
                    p.status = "fail";
                    p.detail = os.str();
                    break;
                }
            }
        } catch (const InputError& e) {
            // abstract sub-complexes reject supports whose closure escapes
            p.status = "skip";
            p.detail = e.what();
        }
        if (p.status == "pass") p.detail = std::to_string(checked) + " supports";
        out.push_back(std::move(p));
    }

    // Shared enumeration for the remaining properties.
    std::vector<MomentMeasure> enumerated;
    bool enumerated_ok = false;
    std::string enum_err;
    try {
        enumerated = enumerate_measures(cx, ValidationMode::normalized, false);
        enumerated_ok = true;
    } catch (const ResourceError& e) {
        enum_err = e.what();
    }

    // 4. Chamber oracle soundness on sampled generic characters.
    {
        PropertyResult p{"chamber_oracle", "pass", ""};
        std::vector<VecQ> samples = sample_generic_characters(cx, chamber_samples, seed);
        if (samples.empty()) {
            p.status = "skip";
            p.detail = "no generic rational characters found";
        } else {
            std::set<std::vector<int>> chambers;
            for (const VecQ& chi : samples) {
                MomentMeasure m = git_measure(cx, chi);
                if (!validate(m).empty() || !is_geometric(m)) {
                    p.status = "fail";
                    p.detail = "a chamber measure failed validation";
                    break;
                }
                if (enumerated_ok &&
                    std::none_of(enumerated.begin(), enumerated.end(),
                                 [&](const MomentMeasure& e) { return e.values() == m.values(); })) {
                    p.status = "fail";
                    p.detail = "a chamber measure is missing from the enumeration";
                    break;
                }
                chambers.insert(m.one_cells());
            }
            if (p.status == "pass")
                p.detail = std::to_string(samples.size()) + " samples, " +
                           std::to_string(chambers.size()) + " distinct chambers";
        }
        out.push_back(std::move(p));
    }

    // 5. Openness of every enumerated measure.
    {
        PropertyResult p{"openness", "pass", ""};
        if (!enumerated_ok) {
            p.status = "skip";
            p.detail = enum_err;
        } else {
            try {
                for (const MomentMeasure& m : enumerated) {
                    SupportFamily fam = u_supports(m);
                    if (!fam.upward_closed) {
                        p.status = "fail";
                        p.detail = "a measure has a non-upward-closed support family";
                        break;
                    }
                }
            } catch (const InputError& e) {
                p.status = "skip";
                p.detail = e.what();
            }
            if (p.status == "pass") p.detail = std::to_string(enumerated.size()) + " measures";
        }
        out.push_back(std::move(p));
    }

    // 6. Distinct measures give distinct support families.
    {
        PropertyResult p{"distinct_support_families", "pass", ""};
        if (!enumerated_ok) {
            p.status = "skip";
            p.detail = enum_err;
        } else {
            try {
                std::set<std::vector<Support>> families;
                for (const MomentMeasure& m : enumerated) {
                    SupportFamily fam = u_supports(m);
                    if (!families.insert(fam.supports).second) {
                        p.status = "fail";
                        p.detail = "two distinct measures define the same support family";
                        break;
                    }
                }
            } catch (const InputError& e) {
                p.status = "skip";
                p.detail = e.what();
            }
            if (p.status == "pass") p.detail = std::to_string(enumerated.size()) + " families";
        }
        out.push_back(std::move(p));
    }

    return out;
}

} // namespace momc
