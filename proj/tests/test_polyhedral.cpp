#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "momc/polyhedral.hpp"
#include "oracles.hpp"

using namespace momc;

namespace {

Character chr(std::initializer_list<long long> xs) {
    VecI v;
    for (long long x : xs) v.push_back(Int(x));
    return Character(v);
}

std::vector<Character> chars1(std::initializer_list<long long> xs) {
    std::vector<Character> out;
    for (long long x : xs) out.push_back(chr({x}));
    return out;
}

const std::vector<Character> square_pts = {chr({0, 0}), chr({1, 0}), chr({0, 1}), chr({1, 1})};

std::vector<Polytope> hull_pieces(const std::vector<Character>& pts,
                                  std::initializer_list<std::vector<int>> sets) {
    std::vector<Polytope> out;
    for (const auto& s : sets) {
        std::vector<Character> sel;
        for (int i : s) sel.push_back(pts[i]);
        out.push_back(Polytope::from_characters(sel));
    }
    return out;
}

Int cross2(const VecI& a, const VecI& b) { return a[0] * b[1] - a[1] * b[0]; }

} // namespace

TEST_CASE("vertex_set") {
    CHECK(vertex_set(chars1({0, 1, 2})) == std::vector<int>{0, 2});
    CHECK(vertex_set({chr({5, 7})}) == std::vector<int>{0});
    CHECK(vertex_set(square_pts) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("vertex_set agrees with the planar hull oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        std::set<std::pair<int, int>> seen;
        std::vector<Character> pts;
        while (static_cast<int>(pts.size()) < n) {
            int x = static_cast<int>(rng() % 5) - 2, y = static_cast<int>(rng() % 5) - 2;
            if (seen.insert({x, y}).second) pts.push_back(chr({x, y}));
        }
        std::vector<int> verts = vertex_set(pts);
        std::vector<VecQ> rats;
        for (const Character& p : pts) rats.push_back(to_rat(p.coords));
        for (int i = 0; i < n; ++i) {
            std::vector<VecQ> others;
            for (int j = 0; j < n; ++j)
                if (j != i) others.push_back(rats[j]);
            bool inside = oracle::hull_contains_rk2(others, rats[i]);
            bool is_vertex = std::binary_search(verts.begin(), verts.end(), i);
            CHECK(is_vertex == !inside);
        }
    }
}

TEST_CASE("faces") {
    {
        Polytope seg = Polytope::from_characters(chars1({0, 1}));
        auto f = seg.faces();
        REQUIRE(f.size() == 3);
        CHECK(f[0] == std::vector<int>{0});
        CHECK(f[1] == std::vector<int>{1});
        CHECK(f[2] == std::vector<int>{0, 1});
    }
    {
        Polytope pt = Polytope::from_characters({chr({3})});
        CHECK(pt.faces() == std::vector<std::vector<int>>{{0}});
    }
    {
        Polytope tri = Polytope::from_characters({chr({0, 0}), chr({1, 0}), chr({0, 1})});
        CHECK(tri.faces().size() == 7); // 3 vertices + 3 edges + improper
    }
}

TEST_CASE("relint_contains") {
    Polytope seg = Polytope::from_characters(chars1({0, 2}));
    CHECK(seg.relint_contains(VecQ{Rat(1)}));
    CHECK(!seg.relint_contains(VecQ{Rat(0)}));
    CHECK(seg.relint_contains(VecQ{Rat(1, 2)}));
    CHECK(!seg.relint_contains(VecQ{Rat(3)}));
    Polytope pt = Polytope::from_characters({chr({2})});
    CHECK(pt.relint_contains(VecQ{Rat(2)}));
    CHECK(!pt.relint_contains(VecQ{Rat(1)}));
}

TEST_CASE("normalized volume") {
    CHECK(Polytope::from_characters(chars1({0, 2})).normalized_volume() == 2);
    CHECK(Polytope::from_characters(square_pts).normalized_volume() == 2); // 2! * area 1
    CHECK(Polytope::from_characters({chr({0, 0}), chr({1, 0}), chr({0, 1})}).normalized_volume() == 1);
    CHECK(Polytope::from_characters({chr({4})}).normalized_volume() == 1);
    // measured against the lattice of the affine span
    CHECK(Polytope::from_characters({chr({0, 0}), chr({2, 4})}).normalized_volume() == 2);
}

TEST_CASE("is_subdivision") {
    auto seg = chars1({0, 1, 2});
    Polytope parent = Polytope::from_characters(chars1({0, 2}));
    {
        auto chk = is_subdivision(parent, hull_pieces(seg, {{0, 1}, {1, 2}}));
        REQUIRE(chk.ok);
        REQUIRE(chk.subdivision->internal_faces.size() == 1);
        CHECK(chk.subdivision->internal_faces[0].generators() == std::vector<VecQ>{{Rat(1)}});
    }
    {
        auto chk = is_subdivision(parent, hull_pieces(seg, {{0, 1}}));
        CHECK(!chk.ok); // volume deficit
    }
    {
        Polytope sq = Polytope::from_characters(square_pts);
        auto chk = is_subdivision(
            sq, hull_pieces(square_pts, {{0, 1, 3}, {0, 2, 3}})); // split along (0,0)-(1,1)
        REQUIRE(chk.ok);
        REQUIRE(chk.subdivision->internal_faces.size() == 1);
        CHECK(chk.subdivision->internal_faces[0].vertex_points().size() == 2);
    }
    {
        // dimension-mismatched pieces are rejected with a report
        auto chk = is_subdivision(parent, hull_pieces(seg, {{1}}));
        CHECK(!chk.ok);
        CHECK(!chk.report.empty());
    }
}

TEST_CASE("enumerate_subdivisions") {
    {
        auto all = hull_pieces(chars1({0, 1, 2}), {{0, 1}, {1, 2}, {0, 2}});
        auto subs = enumerate_subdivisions(chars1({0, 2}), all);
        CHECK(subs.size() == 2); // trivial + the midpoint split
    }
    {
        auto all = hull_pieces(chars1({0, 1}), {{0, 1}});
        CHECK(enumerate_subdivisions(chars1({0, 1}), all).size() == 1);
    }
    {
        std::vector<Polytope> all;
        all.push_back(Polytope::from_characters(square_pts));
        int idx[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
        for (auto& t : idx) {
            std::vector<Character> tri = {square_pts[t[0]], square_pts[t[1]], square_pts[t[2]]};
            all.push_back(Polytope::from_characters(tri));
        }
        CHECK(enumerate_subdivisions(square_pts, all).size() == 3); // trivial + two diagonal splits
    }
    {
        std::vector<Character> many = chars1({0, 1, 2, 3, 4, 5, 6, 7, 8});
        CHECK_THROWS_AS(enumerate_subdivisions(many, {}), ResourceError);
    }
}

TEST_CASE("regular_subdivision examples") {
    {
        Subdivision s = regular_subdivision(chars1({0, 1, 2}), {Rat(0), Rat(1), Rat(0)});
        REQUIRE(s.maximal_pieces.size() == 2);
        CHECK(s.maximal_pieces[0].normalized_volume() == 1);
        CHECK(s.internal_faces.size() == 1);
    }
    {
        Subdivision s = regular_subdivision(chars1({0, 1, 2}), {Rat(0), Rat(0), Rat(0)});
        CHECK(s.maximal_pieces.size() == 1); // trivial
    }
    {
        // valuation 1 at (0,0), 0 elsewhere: the lower hull of the points
        // lifted to height -v splits along the diagonal through (0,0),(1,1)
        Subdivision s = regular_subdivision(square_pts, {Rat(1), Rat(0), Rat(0), Rat(0)});
        REQUIRE(s.maximal_pieces.size() == 2);
        REQUIRE(s.internal_faces.size() == 1);
        auto diag = s.internal_faces[0].vertex_points();
        std::sort(diag.begin(), diag.end());
        CHECK(diag == std::vector<VecQ>{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    }
}

TEST_CASE("regular subdivisions validate and appear in the enumeration") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        int rank = 1 + static_cast<int>(rng() % 2);
        int n = 3 + static_cast<int>(rng() % (rank == 1 ? 3 : 4));
        std::set<VecI> seen;
        std::vector<Character> pts;
        while (static_cast<int>(pts.size()) < n) {
            VecI v(rank);
            for (auto& x : v) x = static_cast<int>(rng() % 5) - 2;
            if (seen.insert(v).second) pts.push_back(Character(v));
        }
        std::vector<Rat> val;
        for (int i = 0; i < n; ++i) val.emplace_back(static_cast<int>(rng() % 7) - 3);
        Subdivision s = regular_subdivision(pts, val);
        CHECK(is_subdivision(s.parent, s.maximal_pieces).ok);

        std::vector<Polytope> allowed;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<Character> sel;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) sel.push_back(pts[i]);
            Polytope p = Polytope::from_characters(sel);
            if (p.dim() == s.parent.dim()) allowed.push_back(std::move(p));
        }
        auto subs = enumerate_subdivisions(pts, allowed);
        bool found = false;
        for (const Subdivision& cand : subs) {
            if (cand.maximal_pieces.size() != s.maximal_pieces.size()) continue;
            bool same = true;
            for (const Polytope& a : s.maximal_pieces) {
                bool here = false;
                for (const Polytope& b : cand.maximal_pieces) here = here || a.same_vertex_set(b);
                same = same && here;
            }
            found = found || same;
        }
        CHECK(found);
    }
}

TEST_CASE("extremal rays") {
    CHECK(Cone(chars1({1, 2})).extremal_rays() == chars1({1}));
    CHECK(Cone({chr({1, 0}), chr({1, 1}), chr({0, 1})}).extremal_rays() ==
          std::vector<Character>{chr({0, 1}), chr({1, 0})});
    CHECK(Cone({chr({1, 0}), chr({0, 1})}).extremal_rays() ==
          std::vector<Character>{chr({0, 1}), chr({1, 0})});
    CHECK(Cone({chr({2, 4})}).extremal_rays() == std::vector<Character>{chr({1, 2})});
    CHECK_THROWS_AS(Cone(chars1({1, -1})).extremal_rays(), InputError);
}

TEST_CASE("extremal rays are idempotent and scale-invariant") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        int rank = 2 + static_cast<int>(rng() % 2);
        std::vector<Character> rays;
        int n = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) {
            VecI v(rank, Int(0));
            v[0] = 1 + static_cast<int>(rng() % 3); // positive first coordinate: strictly convex
            for (int j = 1; j < rank; ++j) v[j] = static_cast<int>(rng() % 7) - 3;
            rays.push_back(Character(v));
        }
        Cone c(rays);
        auto ext = c.extremal_rays();
        CHECK(Cone(ext).extremal_rays() == ext);
        std::vector<Character> scaled;
        for (const Character& r : rays) {
            VecI v = r.coords;
            Int f = 1 + static_cast<int>(rng() % 3);
            for (Int& x : v) x *= f;
            scaled.push_back(Character(v));
        }
        CHECK(Cone(scaled).extremal_rays() == ext);
    }
}

TEST_CASE("triangulate_cone") {
    {
        Cone c({chr({1, 0}), chr({0, 1})});
        auto t = triangulate_cone(c, {chr({1, 0}), chr({0, 1})});
        CHECK(t.pieces.size() == 1);
    }
    {
        Cone c({chr({1, 0}), chr({0, 1})});
        auto t = triangulate_cone(c, {chr({1, 0}), chr({0, 1}), chr({1, 1})});
        REQUIRE(t.pieces.size() == 2);
        std::set<std::set<std::string>> got;
        for (const auto& piece : t.pieces) {
            std::set<std::string> s;
            for (int i : piece) s.insert(t.markers[i].str());
            got.insert(s);
        }
        CHECK(got == std::set<std::set<std::string>>{{"(1,0)", "(1,1)"}, {"(0,1)", "(1,1)"}});
    }
    {
        Cone ray(chars1({2}));
        auto t = triangulate_cone(ray, chars1({1, 2}));
        CHECK(t.pieces.size() == 1);
        CHECK(t.pieces[0].size() == 1);
    }
    CHECK_THROWS_AS(triangulate_cone(Cone({chr({1, 0}), chr({0, 1})}), {chr({1, 0})}), InputError);
    CHECK_THROWS_AS(triangulate_cone(Cone({chr({1, 0}), chr({0, 1})}),
                                     {chr({1, 0}), chr({0, 1}), chr({-1, 0})}),
                    InputError);
}

TEST_CASE("rank-2 triangulations chain around the cone exactly") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 80; ++trial) {
        std::set<VecI> seen;
        std::vector<Character> markers;
        int n = 2 + static_cast<int>(rng() % 4);
        while (static_cast<int>(markers.size()) < n) {
            VecI v{Int(1 + static_cast<int>(rng() % 4)), Int(static_cast<int>(rng() % 9) - 4)};
            if (seen.insert(v).second) markers.push_back(Character(v));
        }
        Cone cone(markers);
        if (cone.dim() != 2) continue;
        auto ext = cone.extremal_rays();
        REQUIRE(ext.size() == 2);
        auto tri = triangulate_cone(cone, markers);

        // Orient each piece (a, b) with cross(a, b) > 0 and sort angularly:
        // the pieces must chain from one extremal ray to the other with no
        // gap or overlap. An independent exact tiling check.
        std::vector<std::pair<VecI, VecI>> arcs;
        for (const auto& piece : tri.pieces) {
            REQUIRE(piece.size() == 2);
            VecI a = tri.markers[piece[0]].coords, b = tri.markers[piece[1]].coords;
            Int cr = cross2(a, b);
            REQUIRE(cr != 0);
            if (cr < 0) std::swap(a, b);
            arcs.emplace_back(primitive(a), primitive(b));
        }
        std::sort(arcs.begin(), arcs.end(),
                  [](const auto& p, const auto& q) { return cross2(p.first, q.first) > 0; });
        VecI lo = primitive(ext[0].coords), hi = primitive(ext[1].coords);
        if (cross2(lo, hi) < 0) std::swap(lo, hi);
        CHECK(arcs.front().first == lo);
        CHECK(arcs.back().second == hi);
        for (size_t i = 0; i + 1 < arcs.size(); ++i) CHECK(arcs[i].second == arcs[i + 1].first);
    }
}

TEST_CASE("complete fan detection") {
    std::string why;
    CHECK(is_complete_fan({Cone(chars1({1})), Cone(chars1({-1}))}, 1, &why));
    CHECK(is_complete_fan({Cone(chars1({2})), Cone(chars1({-3}))}, 1, &why));
    CHECK(!is_complete_fan({Cone(chars1({1}))}, 1, &why));
    std::vector<Cone> quad = {Cone({chr({1, 0}), chr({0, 1})}), Cone({chr({0, 1}), chr({-1, 0})}),
                              Cone({chr({-1, 0}), chr({0, -1})}), Cone({chr({0, -1}), chr({1, 0})})};
    CHECK(is_complete_fan(quad, 2, &why));
    quad.pop_back();
    CHECK(!is_complete_fan(quad, 2, &why)); // gap
    std::vector<Cone> overlap = {Cone({chr({1, 0}), chr({0, 1})}), Cone({chr({1, 1}), chr({-1, 0})}),
                                 Cone({chr({-1, 0}), chr({0, -1})}), Cone({chr({0, -1}), chr({1, 0})})};
    CHECK(!is_complete_fan(overlap, 2, &why)); // overlap
}

TEST_CASE("polytope rejects duplicates and empty input") {
    CHECK_THROWS_AS(Polytope::from_characters({}), InputError);
    CHECK_THROWS_AS(Polytope::from_characters({chr({1}), chr({1})}), InputError);
}

TEST_CASE("volume additivity over enumerated subdivisions") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        std::set<VecI> seen;
        std::vector<Character> pts;
        int n = 4 + static_cast<int>(rng() % 2);
        while (static_cast<int>(pts.size()) < n) {
            VecI v{Int(static_cast<int>(rng() % 4) - 1), Int(static_cast<int>(rng() % 4) - 1)};
            if (seen.insert(v).second) pts.push_back(Character(v));
        }
        Polytope parent = Polytope::from_characters(pts);
        std::vector<Polytope> allowed;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<Character> sel;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) sel.push_back(pts[i]);
            Polytope p = Polytope::from_characters(sel);
            if (p.dim() == parent.dim()) allowed.push_back(std::move(p));
        }
        for (const Subdivision& s : enumerate_subdivisions(pts, allowed)) {
            Rat total = 0;
            for (const Polytope& p : s.maximal_pieces) total += p.normalized_volume();
            CHECK(total == parent.normalized_volume());
            for (const Polytope& f : s.internal_faces)
                CHECK(parent.relint_contains(f.relint_point()));
        }
    }
}

TEST_CASE("non-face-to-face piece sets are rejected") {
    // T-junction: the left column meets two right boxes along half-edges;
    // piece volumes and interior-disjointness hold but the derived internal
    // faces overlap, so the collection is not a subdivision.
    std::vector<Character> pts = {chr({0, 0}), chr({2, 0}), chr({0, 2}), chr({2, 2}),
                                  chr({1, 0}), chr({1, 2}), chr({1, 1}), chr({2, 1})};
    Polytope parent = Polytope::from_characters({chr({0, 0}), chr({2, 0}), chr({0, 2}), chr({2, 2})});
    std::vector<Polytope> pieces = {
        Polytope::from_characters({chr({0, 0}), chr({1, 0}), chr({0, 2}), chr({1, 2})}),
        Polytope::from_characters({chr({1, 0}), chr({2, 0}), chr({1, 1}), chr({2, 1})}),
        Polytope::from_characters({chr({1, 1}), chr({2, 1}), chr({1, 2}), chr({2, 2})})};
    Rat total = 0;
    for (const Polytope& p : pieces) total += p.normalized_volume();
    CHECK(total == parent.normalized_volume()); // volumes alone would pass
    auto chk = is_subdivision(parent, pieces);
    CHECK(!chk.ok);
    CHECK(chk.report.find("internal faces") != std::string::npos);
}
