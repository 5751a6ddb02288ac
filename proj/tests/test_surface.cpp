#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "support.hpp"

using namespace curvekit;
using namespace fixtures;

namespace {

// Faces straight from the ladder: darts (column, port) with ports W,S,E,N
// counterclockwise; W carries w^{j+1}, E carries w^{j+2}, N the top label and
// S the bottom label. Faces are orbits of rotation after edge pairing.
std::vector<int> oracle_face_sizes(const Ladder& l) {
    int n = l.n;
    std::map<std::pair<char, int>, std::vector<int>> by_edge;
    for (int j = 0; j < n; ++j) {
        by_edge[{'w', j % n + 1}].push_back(4 * j + 0);
        by_edge[{'w', (j + 1) % n + 1}].push_back(4 * j + 2);
        by_edge[{'v', l.bottom[j]}].push_back(4 * j + 1);
        by_edge[{'v', l.top[j]}].push_back(4 * j + 3);
    }
    std::vector<int> pair(4 * n, -1);
    for (auto& [key, ds] : by_edge) {
        REQUIRE(ds.size() == 2);
        pair[ds[0]] = ds[1];
        pair[ds[1]] = ds[0];
    }
    auto rot = [](int d) { return d - d % 4 + (d % 4 + 1) % 4; };
    std::vector<bool> seen(4 * n);
    std::vector<int> sizes;
    for (int d = 0; d < 4 * n; ++d) {
        if (seen[d]) continue;
        int len = 0;
        for (int x = d; !seen[x]; x = rot(pair[x])) seen[x] = true, ++len;
        sizes.push_back(len);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

// components after cutting along one curve: faces glued across the other
int components_cut_along(const SurfaceComplex& c, bool cut_v) {
    std::vector<int> parent(c.num_faces());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int d = 0; d < 4 * c.n; ++d)
        if (c.edge[d].is_v != cut_v) parent[find(c.face_of[d])] = find(c.face_of[c.alpha[d]]);
    int k = 0;
    for (int f = 0; f < c.num_faces(); ++f) k += find(f) == f;
    return k;
}

Ladder reverse_v(const Ladder& l) {
    Ladder o = l;
    for (auto* row : {&o.top, &o.bottom})
        for (int& x : *row) x = l.n + 1 - x;
    return o;
}

}  // namespace

TEST_CASE("L10 builds a genus 2 complex") {
    auto c = build_complex(l10());
    CHECK(c.n == 10);
    CHECK(c.num_faces() == 8);
    CHECK(c.genus == 2);
    CHECK(c.n - 2 * c.n + c.num_faces() == 2 - 2 * c.genus);
    auto d = decomposition(c);
    CHECK(d.i == 10);
    CHECK(d.count(4) == 4);
    CHECK(d.count(6) == 4);
    CHECK(d.i == d.count(4) + 3 * d.count(6) / 2);
    CHECK(check_nonseparating(c, Curve::v));
    CHECK(check_nonseparating(c, Curve::w));
}

TEST_CASE("bigons are rejected") {
    // v runs back and forth across the same w-arc
    bool found = false;
    std::mt19937 rng(3);
    for (int t = 0; t < 500 && !found; ++t) {
        Ladder l = random_ladder(rng, 3);
        if (std::find(oracle_face_sizes(l).begin(), oracle_face_sizes(l).end(), 2) == oracle_face_sizes(l).end())
            continue;
        found = true;
        try {
            build_complex(l);
            FAIL("bigon accepted: " << serialize(l));
        } catch (const Error& e) {
            CHECK(e.code() == Errc::bigon_found);
        }
    }
    CHECK(found);
}

TEST_CASE("face tracing matches the dart permutation oracle") {
    std::mt19937 rng(17);
    int built = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Ladder l = random_ladder(rng, 4 + trial % 16);
        auto sizes = oracle_face_sizes(l);
        bool bigon = sizes.front() == 2;
        try {
            auto c = build_complex(l);
            CHECK_FALSE(bigon);
            std::vector<int> got;
            for (const auto& f : c.faces) got.push_back(static_cast<int>(f.size()));
            std::sort(got.begin(), got.end());
            CHECK(got == sizes);
            ++built;
        } catch (const Error& e) {
            CHECK(bigon);
            CHECK(e.code() == Errc::bigon_found);
        }
    }
    CHECK(built > 100);
}

TEST_CASE("decomposition identities on generated ladders") {
    std::mt19937 rng(2024);
    int checked = 0, small_faces = 0;
    while (checked < 1000) {
        auto l = random_valid(rng, 4 + checked % 20);
        if (!l) continue;
        auto c = build_complex(*l);
        auto d = decomposition(c);
        int g = d.genus;
        long eq2 = 0, eq3x2 = 0, eq5 = 0;
        for (int k = 2; k <= 4 * g - 2; ++k) {
            int F = d.count(2 * k);
            eq2 += static_cast<long>(k - 2) * F;
            eq3x2 += (k == 2 ? 2L : static_cast<long>(k)) * F;
            eq5 += static_cast<long>(k) * F;
        }
        CHECK(eq2 == 4 * g - 4);
        CHECK(eq3x2 == 2 * d.i);
        CHECK(eq5 == 2 * d.i);
        int largest = 0, total = 0;
        for (const auto& f : c.faces) {
            largest = std::max<int>(largest, f.size());
            total += f.size();
        }
        CHECK(largest <= 8 * g - 4);
        CHECK(total / 2 == 2 * d.i);  // E
        if (d.only_4_6()) {
            ++small_faces;
            CHECK(d.count(4) == d.i - 6 * g + 6);
        }
        CHECK(std::abs(d.hempel_bound - (2 * std::log2(d.i) + 2)) < 1e-12);
        ++checked;
    }
    CHECK(small_faces > 0);
}

TEST_CASE("every edge borders two face sides") {
    auto c = build_complex(l10_prime());
    std::map<EdgeRef, int> sides;
    for (const auto& f : c.faces)
        for (int d : f) ++sides[c.edge[d]];
    CHECK(sides.size() == 2u * c.n);
    for (auto& [e, k] : sides) CHECK(k == 2);
}

TEST_CASE("nonseparating test agrees with a component count") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 600; ++trial) {
        auto l = random_valid(rng, 4 + trial % 10);
        if (!l) continue;
        auto c = build_complex(*l);
        bool v = components_cut_along(c, true) == 1, w = components_cut_along(c, false) == 1;
        CHECK(check_nonseparating(c, Curve::v) == v);
        CHECK(check_nonseparating(c, Curve::w) == w);
    }
    // v separates: every crossing of w with v changes sides
    auto c = build_complex(parse_ladder("4,2,3,6,2,1\n5,1,4,5,3,6"));
    CHECK(components_cut_along(c, true) == 2);
    CHECK_FALSE(check_nonseparating(c, Curve::v));
}

TEST_CASE("bicorns of L10") {
    auto c = build_complex(l10());
    auto bs = find_bicorns(c);
    auto has = [&](int a, int b) {
        return std::any_of(bs.begin(), bs.end(), [&](const Bicorn& x) { return x.v_arc == a && x.w_arc == b; });
    };
    CHECK(has(2, 5));
    CHECK(has(7, 10));
    // endpoints agree
    for (const auto& b : bs) {
        auto [v0, v1] = c.darts_of({true, b.v_arc});
        auto [w0, w1] = c.darts_of({false, b.w_arc});
        std::set<int> vc{v0 / 4, v1 / 4}, wc{w0 / 4, w1 / 4};
        CHECK(vc == wc);
    }
    std::mt19937 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto l = random_valid(rng, 5 + trial % 10);
        if (!l) continue;
        auto canon = canonical_form(*l).canonical_ladder;
        CHECK(find_bicorns(build_complex(*l)).size() == find_bicorns(build_complex(canon)).size());
    }
}

TEST_CASE("a ladder without bicorns") {
    std::mt19937 rng(21);
    bool found = false;
    for (int t = 0; t < 300 && !found; ++t) {
        auto l = random_valid(rng, 8);
        if (!l) continue;
        auto c = build_complex(*l);
        std::set<std::set<int>> vpairs, wpairs;
        for (int a = 1; a <= c.n; ++a) {
            auto [v0, v1] = c.darts_of({true, a});
            auto [w0, w1] = c.darts_of({false, a});
            vpairs.insert({v0 / 4, v1 / 4});
            wpairs.insert({w0 / 4, w1 / 4});
        }
        bool shared = false;
        for (const auto& p : vpairs) shared = shared || wpairs.count(p);
        if (shared) continue;
        found = true;
        CHECK(find_bicorns(c).empty());
    }
    CHECK(found);
}

TEST_CASE("equivalence") {
    Ladder l = l10();
    CHECK(equivalent(l, rotate_columns(rotate_labels(l, 2), 7)));
    CHECK_FALSE(equivalent(l, add_at_bicorn(l, 2, 5)));
    // equal vectors, different classes
    std::mt19937 rng(99);
    std::map<std::vector<int>, Ladder> first;
    bool found = false;
    for (int t = 0; t < 2000 && !found; ++t) {
        auto m = random_valid(rng, 8);
        if (!m) continue;
        auto d = decomposition(build_complex(*m));
        auto key = d.F;
        key.push_back(d.genus);
        auto [it, fresh] = first.emplace(key, *m);
        if (fresh) continue;
        if (canonical_form(it->second).canonical_ladder == canonical_form(*m).canonical_ladder) continue;
        CHECK_FALSE(equivalent(it->second, *m));
        found = true;
    }
    CHECK(found);
}

TEST_CASE("reversing the labels of v keeps the invariants") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto l = random_valid(rng, 4 + trial % 12);
        if (!l) continue;
        Ladder r = reverse_v(*l);
        auto a = decomposition(build_complex(*l)), b = decomposition(build_complex(r));
        CHECK(a.genus == b.genus);
        CHECK(a.F == b.F);
        CHECK(find_bicorns(build_complex(*l)).size() == find_bicorns(build_complex(r)).size());
    }
}
