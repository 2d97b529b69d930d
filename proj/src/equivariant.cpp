#include "momc/equivariant.hpp"

#include <algorithm>
#include <map>

namespace momc {

SymPolynomial char_to_linear(const Character& chi) { return SymPolynomial::linear(chi); }

namespace {

void check_phi(const PhiList& phi) {
    for (size_t i = 0; i < phi.size(); ++i) {
        if (is_zero(phi[i].chi.coords))
            throw ValidationError("weight list contains the zero character");
        if (phi[i].mult < 1) throw InputError("weight multiplicities must be positive");
        for (size_t j = i + 1; j < phi.size(); ++j)
            if (phi[i].chi == phi[j].chi)
                throw InputError("weight list contains duplicate character " + phi[i].chi.str());
    }
}

int find_weight(const PhiList& phi, const Character& chi) {
    for (size_t i = 0; i < phi.size(); ++i)
        if (phi[i].chi == chi) return static_cast<int>(i);
    return -1;
}

int int_of(const Int& v) { return static_cast<int>(v); }

} // namespace

SymPolynomial simplicial_cone_class(const std::vector<Character>& I, const PhiList& phi) {
    check_phi(phi);
    if (phi.empty()) throw InputError("empty weight list");
    const int rank = phi[0].chi.rank();
    std::vector<bool> in_I(phi.size(), false);
    for (const Character& chi : I) {
        int idx = find_weight(phi, chi);
        if (idx < 0) throw InputError("subset weight " + chi.str() + " is not in the weight list");
        if (in_I[idx]) throw InputError("subset repeats weight " + chi.str());
        in_I[idx] = true;
    }
    if (span_rank(I) != static_cast<int>(I.size()))
        throw ValidationError("subset weights are linearly dependent (cone is not simplicial)");
    SymPolynomial out = SymPolynomial::constant(rank, 1);
    for (size_t i = 0; i < phi.size(); ++i) {
        int e = in_I[i] ? int_of(phi[i].mult) - 1 : int_of(phi[i].mult);
        if (e > 0) out = out * char_to_linear(phi[i].chi).pow(e);
    }
    return out;
}

namespace {

SymPolynomial class_from_triangulation(const ConeTriangulation& tri, const PhiList& phi, int rank) {
    SymPolynomial total(rank);
    for (const auto& piece : tri.pieces) {
        std::vector<Character> I;
        for (int idx : piece) I.push_back(tri.markers[idx]);
        total = total + simplicial_cone_class(I, phi) * Rat(torsion_order(I));
    }
    return total;
}

void check_rays_in_span(const std::vector<Character>& rays, const PhiList& phi) {
    std::vector<Character> all;
    for (const WeightedChar& w : phi) all.push_back(w.chi);
    int phi_rank = span_rank(all);
    for (const Character& r : rays) all.push_back(r);
    if (span_rank(all) != phi_rank)
        throw ValidationError("cone rays leave the span of the weight directions");
}

} // namespace

SymPolynomial cone_class(const std::vector<Character>& rays, const PhiList& phi) {
    check_phi(phi);
    if (phi.empty()) throw InputError("empty weight list");
    const int rank = phi[0].chi.rank();
    if (rays.empty()) return simplicial_cone_class({}, phi);
    check_rays_in_span(rays, phi);
    Cone cone(rays);
    if (!cone.strictly_convex()) throw ValidationError("cone is not strictly convex");
    // Canonical markers: on each extremal ray the phi weight closest to the
    // origin.
    std::vector<Character> markers;
    for (const Character& e : cone.extremal_rays()) {
        int best = -1;
        for (size_t i = 0; i < phi.size(); ++i) {
            if (!positively_collinear(phi[i].chi.coords, e.coords)) continue;
            if (best < 0 || vec_gcd(phi[i].chi.coords) < vec_gcd(phi[best].chi.coords))
                best = static_cast<int>(i);
        }
        if (best < 0)
            throw ValidationError("extremal ray " + e.str() + " carries no weight of the list");
        markers.push_back(phi[best].chi);
    }
    return class_from_triangulation(triangulate_cone(cone, markers), phi, rank);
}

SymPolynomial cone_class_with_markers(const std::vector<Character>& rays, const PhiList& phi,
                                      const std::vector<Character>& markers) {
    check_phi(phi);
    if (phi.empty()) throw InputError("empty weight list");
    const int rank = phi[0].chi.rank();
    if (rays.empty()) {
        if (!markers.empty()) throw InputError("zero cone admits no markers");
        return simplicial_cone_class({}, phi);
    }
    check_rays_in_span(rays, phi);
    for (const Character& m : markers)
        if (find_weight(phi, m) < 0)
            throw InputError("marker " + m.str() + " is not a weight of the list");
    Cone cone(rays);
    if (!cone.strictly_convex()) throw ValidationError("cone is not strictly convex");
    return class_from_triangulation(triangulate_cone(cone, markers), phi, rank);
}

SymPolynomial verify_fan_vanishing(const std::vector<Cone>& cones, const PhiList& phi) {
    check_phi(phi);
    if (phi.empty()) throw InputError("empty weight list");
    const int rank = phi[0].chi.rank();
    std::string why;
    if (!is_complete_fan(cones, rank, &why)) throw InputError("not a complete fan: " + why);
    SymPolynomial total(rank);
    for (const Cone& c : cones) total = total + cone_class(c.rays(), phi);
    return total;
}

PhiList normal_weights_at(const WeightConfiguration& cfg, int i) {
    PhiList phi;
    for (int j = 0; j < cfg.component_count(); ++j) {
        if (j == i) continue;
        phi.push_back({cfg.weight(j) - cfg.weight(i), cfg.mult(j)});
    }
    return phi;
}

Fingerprint cell_fingerprint(const MomentComplex& cx, int cell) {
    const WeightConfiguration& cfg = cx.config();
    Fingerprint fp(cfg.component_count(), cfg.rank());
    const Cell& c = cx.cell(cell);
    const Polytope& poly = cx.realization(cell);
    auto edges = poly.faces_of_dim(1);
    for (size_t local = 0; local < c.comps.size(); ++local) {
        int i = c.comps[local];
        PhiList phi = normal_weights_at(cfg, i);
        if (phi.empty()) {
            // A single fixed component: no tangent torus weights survive the
            // normalization and the class is the empty product.
            fp.at(i) = SymPolynomial::constant(cfg.rank(), 1);
            continue;
        }
        std::vector<Character> rays;
        for (const auto& edge : edges) {
            auto it = std::find(edge.begin(), edge.end(), static_cast<int>(local));
            if (it == edge.end()) continue;
            for (int other : edge)
                if (other != static_cast<int>(local))
                    rays.push_back(cfg.weight(c.comps[other]) - cfg.weight(i));
        }
        std::sort(rays.begin(), rays.end());
        fp.at(i) = cone_class(rays, phi);
    }
    return fp;
}

Fingerprint support_class(const MomentComplex& cx, const Support& s) {
    const WeightConfiguration& cfg = cx.config();
    Support sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    int cell = cx.cell_of_support(sorted);
    Fingerprint fp(cfg.component_count(), cfg.rank());
    // At each vertex of the support's cell, the full difference cone of the
    // support; its class depends only on the extremal rays, which the cell
    // determines.
    for (int i : cx.cell(cell).comps) {
        PhiList phi = normal_weights_at(cfg, i);
        if (phi.empty()) {
            fp.at(i) = SymPolynomial::constant(cfg.rank(), 1);
            continue;
        }
        std::vector<Character> rays;
        for (int j : sorted)
            if (j != i) rays.push_back(cfg.weight(j) - cfg.weight(i));
        fp.at(i) = cone_class(rays, phi);
    }
    return fp;
}

std::vector<SymPolynomial> verify_fingerprint_additivity(const MomentComplex& cx, int cell,
                                                         const CellSubdivision& sub) {
    const WeightConfiguration& cfg = cx.config();
    Fingerprint total = cell_fingerprint(cx, cell);
    std::vector<SymPolynomial> residual(cfg.component_count(), SymPolynomial(cfg.rank()));
    for (int i = 0; i < cfg.component_count(); ++i) residual[i] = total.at(i);
    for (int piece : sub.maximal) {
        Fingerprint fp = cell_fingerprint(cx, piece);
        for (int i = 0; i < cfg.component_count(); ++i) residual[i] = residual[i] - fp.at(i);
    }
    return residual;
}

} // namespace momc
