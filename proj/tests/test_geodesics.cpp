#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"

using namespace curvekit;
using namespace fixtures;

namespace {

// filling pairs: nothing misses both curves, so nothing is at distance <= 2
bool fills_pair(const SurfaceComplex& c) {
    CurveSet none;
    return complement(c, none, {true, true}).all_discs();
}

bool hempel(int d, int i) { return d <= 2 * std::log2(static_cast<double>(i)) + 2 + 1e-9; }

}  // namespace

TEST_CASE("L10 is at distance 3") {
    Ladder l = l10();
    auto c = build_complex(l);
    REQUIRE(fills_pair(c));
    auto r = distance(l);
    CHECK(r.exact);
    CHECK(r.d == 3);
    CHECK(r.kind() == "EXACT");
    CHECK(r.witness.length() == 3);
    CHECK(verify_path(c, r.witness));
    CHECK(hempel(r.d, l.n));
    CHECK(within_hempel_bound(r.d, l.n));
}

TEST_CASE("two additions push L10 to distance 4") {
    Ladder l = l10_prime();
    auto c = build_complex(l);
    auto dec = decomposition(c);
    CHECK(l.n == 12);
    CHECK(dec.genus == 2);
    CHECK(dec.count(4) == 6);
    CHECK(dec.count(6) == 4);
    REQUIRE(fills_pair(c));
    auto r = distance(l);
    CHECK(r.exact);
    CHECK(r.d == 4);
    CHECK(r.witness.length() == 4);
    CHECK(verify_path(c, r.witness));
    CHECK(hempel(r.d, l.n));

    DistanceOptions o;
    o.max_d = 3;
    auto capped = distance(l, o);
    CHECK_FALSE(capped.exact);
    CHECK(capped.kind() == "AT_LEAST");
    CHECK(capped.d == 4);
}

TEST_CASE("a single addition keeps distance 3") {
    auto r = distance(l10_single());
    CHECK(r.exact);
    CHECK(r.d == 3);
}

TEST_CASE("large faces are refused") {
    std::mt19937 rng(8);
    int seen = 0;
    for (int t = 0; t < 40; ++t) {
        auto l = random_valid(rng, 9);
        if (!l || only_4_6(*l)) continue;
        ++seen;
        try {
            distance(*l);
            FAIL("distance ran on an 8-gon decomposition");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::unsupported_decomposition);
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("Hempel bound on every exact distance") {
    std::vector<Ladder> all = d3_spiral_pairs();
    all.push_back(l10());
    all.push_back(l10_prime());
    int exact = 0;
    for (const auto& l : all) {
        auto r = distance(l);
        if (!r.exact) continue;
        ++exact;
        CHECK(hempel(r.d, l.n));
        CHECK(within_hempel_bound(r.d, l.n));
    }
    CHECK(exact == static_cast<int>(all.size()));
    // the bound itself
    CHECK(within_hempel_bound(3, 2));
    CHECK_FALSE(within_hempel_bound(5, 2));
    CHECK(within_hempel_bound(8, 8));
    CHECK_FALSE(within_hempel_bound(9, 8));
}

TEST_CASE("witness paths are genuine") {
    for (const auto& l : d3_spiral_pairs()) {
        auto c = build_complex(l);
        auto r = distance(l);
        REQUIRE(r.exact);
        CHECK(verify_path(c, r.witness));
        // consecutive disjointness checked directly
        const auto& p = r.witness;
        REQUIRE(p.curves.size() == 2);
        CHECK(disjoint_from(c, p.curves[0], Curve::v));
        CHECK(disjoint_from(c, p.curves[1], Curve::w));
        CHECK(intersection_number(c, p.curves[0], p.curves[1]) == 0);
        CHECK(is_nonseparating(c, p.curves[0]));
        CHECK(is_nonseparating(c, p.curves[1]));
    }
}

TEST_CASE("efficient geodesics") {
    std::vector<Ladder> all = d3_spiral_pairs();
    all.push_back(l10());
    for (const auto& l : all) {
        auto c = build_complex(l);
        auto set = enumerate_efficient_geodesics(l);
        CHECK(set.d == 3);
        REQUIRE(set.size() > 0);
        CHECK_FALSE(set.truncated);
        std::set<std::vector<int>> distinct;
        for (const auto& p : set.paths) {
            CHECK(verify_path(c, p));
            auto rep = is_efficient(c, p);
            CHECK(rep.efficient);
            for (const auto& ch : rep.checks) CHECK(ch.ok());
            // first vertex meets every reference arc at most d-1 times
            CHECK(reference_load(c, p.curves[0], Curve::v) <= 2);
            auto key = p.curves[0].darts;
            key.push_back(-1);
            key.insert(key.end(), p.curves[1].darts.begin(), p.curves[1].darts.end());
            distinct.insert(key);
        }
        CHECK(distinct.size() == set.paths.size());
    }
}

TEST_CASE("efficient geodesics at distance 4") {
    Ladder l = l10_prime();
    auto c = build_complex(l);
    GeodesicOptions o;
    o.limit = 5;
    auto set = enumerate_efficient_geodesics(l, o);
    CHECK(set.d == 4);
    REQUIRE(set.size() > 0);
    CHECK(set.size() <= 5);
    for (const auto& p : set.paths) {
        CHECK(p.length() == 4);
        CHECK(verify_path(c, p));
        CHECK(is_efficient(c, p).efficient);
    }
}

TEST_CASE("i_min table") {
    auto t = IminTable::builtin();
    auto a = t.lookup(4, 2, {4, 0, 0, 0});
    REQUIRE(a);
    CHECK(a->exact);
    CHECK(a->value == 12);
    auto b = t.lookup(4, 2, {0, 0, 0, 1});
    REQUIRE(b);
    CHECK_FALSE(b->exact);
    CHECK(b->value == 13);
    // trailing zeros do not matter
    CHECK(IminTable::key(4, 2, {4}) == IminTable::key(4, 2, {4, 0, 0, 0}));
    CHECK_FALSE(t.lookup(9, 7, {1}));

    nlohmann::json j;
    j[IminTable::key(3, 2, {4})] = {{"kind", "exact"}, {"value", 10}, {"source", "test"}};
    t.merge(j);
    auto c = t.lookup(3, 2, {4, 0, 0, 0});
    REQUIRE(c);
    CHECK(c->value == 10);
    CHECK(to_json(*c)["kind"] == "exact");
    CHECK(t.lookup(4, 2, {4, 0, 0, 0})->value == 12);
}

TEST_CASE("intersection sequences") {
    for (const auto& l : d3_spiral_pairs()) {
        auto c = build_complex(l);
        auto set = enumerate_efficient_geodesics(l);
        for (const auto& p : set.paths) {
            for (int k = 1; k <= c.n; ++k) {
                auto s = intersection_sequence(c, p, k);
                CHECK(s.arc == k);
                // d = 3: only v_1 appears
                CHECK(static_cast<int>(s.entries.size()) == reference_count(c, p.curves[0], k));
                for (int e : s.entries) CHECK(e == 1);
                auto x = extended_sequence(c, p, k);
                CHECK(x.extended);
                std::vector<int> expect{0};
                expect.insert(expect.end(), s.entries.begin(), s.entries.end());
                expect.push_back(0);
                auto s2 = intersection_sequence(c, p, k % c.n + 1);
                expect.insert(expect.end(), s2.entries.begin(), s2.entries.end());
                expect.push_back(0);
                CHECK(x.entries == expect);
            }
            CHECK_THROWS_AS(intersection_sequence(c, p, 0), Error);
        }
    }
    auto set4 = enumerate_efficient_geodesics(l10_prime(), {{}, 1});
    REQUIRE(set4.size() == 1);
    if (set4.paths[0].frame) CHECK_THROWS_AS(intersection_sequence(build_complex(l10_prime()), set4.paths[0], 1), Error);
}

TEST_CASE("dot graphs over a spiral are rigid at distance 3") {
    int paths = 0, spirals = 0;
    for (const auto& l : d3_spiral_pairs()) {
        auto c = build_complex(l);
        auto set = enumerate_efficient_geodesics(l);
        for (const auto& sp : find_spirals(c)) {
            ++spirals;
            auto arcs = spiral_arcs(c, sp);
            REQUIRE_FALSE(arcs.empty());
            for (const auto& p : set.paths) {
                ++paths;
                std::vector<std::vector<int>> h;
                for (int k : arcs) h.push_back(build_dot_graph(intersection_sequence(c, p, k)).heights);
                for (size_t a = 0; a < h.size(); ++a)
                    for (size_t b = a + 1; b < h.size(); ++b) {
                        auto rev = h[b];
                        std::reverse(rev.begin(), rev.end());
                        CHECK((h[a] == h[b] || h[a] == rev));
                    }
            }
        }
    }
    CHECK(spirals > 0);
    CHECK(paths > 0);
}

TEST_CASE("simultaneous surgery") {
    int tried = 0, ok = 0, hex = 0;
    for (const auto& l : d3_spiral_pairs()) {
        auto c = build_complex(l);
        auto set = enumerate_efficient_geodesics(l);
        for (const auto& p : set.paths)
            for (int k = 1; k <= c.n; ++k) {
                auto g = build_dot_graph(extended_sequence(c, p, k));
                for (const auto& reg : g.regions) {
                    if (!reg.admissible()) {
                        CHECK_THROWS_AS(simultaneous_surgery(c, p, k, reg), Error);
                        continue;
                    }
                    if (reg.kind == RegionKind::hex1 || reg.kind == RegionKind::hex2) {
                        ++hex;
                        try {
                            simultaneous_surgery(c, p, k, reg);
                            FAIL("hexagonal region surgered");
                        } catch (const Error& e) {
                            CHECK(e.code() == Errc::unsupported);
                        }
                        continue;
                    }
                    ++tried;
                    auto r = simultaneous_surgery(c, p, k, reg);
                    CHECK(r.curves.size() == p.curves.size());
                    if (!r.path_ok) continue;
                    ++ok;
                    CHECK(r.i_after <= r.i_before);
                    CHECK(intersection_number(c, r.curves[0], r.curves[1]) == 0);
                    CHECK(disjoint_from(c, r.curves.back(), Curve::w));
                    if (r.v_ladder) CHECK(r.v_ladder->n == r.i_after);
                }
            }
    }
    MESSAGE("regions surgered: " << tried << ", valid paths: " << ok << ", hexagons: " << hex);
    CHECK(tried > 0);
    CHECK(ok > 0);

    // a region from somewhere else
    Ladder l = l10_single();
    auto c = build_complex(l);
    auto set = enumerate_efficient_geodesics(l);
    REQUIRE(set.size() > 0);
    Region bogus;
    bogus.x0 = 40;
    bogus.x1 = 41;
    try {
        simultaneous_surgery(c, set.paths[0], 1, bogus);
        FAIL("bogus region accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::region_invalid);
    }
}

namespace {

void check_trace(const ReductionTrace& t) {
    static const std::set<std::string> refusals{"width_bound", "no_stacked_region", "distance_veto"};
    for (const auto& s : t.steps) {
        CHECK(s.d_before == t.d);
        CHECK(s.i_after == s.i_before - s.width);
        if (s.accepted) {
            CHECK(s.reason == "accepted");
            REQUIRE(s.d_after);
            CHECK(s.d_after_exact);
            CHECK(*s.d_after == s.d_before);
            // recomputed from scratch here too
            auto again = distance(parse_ladder(s.ladder_after));
            CHECK(again.exact);
            CHECK(again.d == s.d_before);
        } else {
            CHECK(refusals.count(s.reason) == 1);
            if (s.reason == "distance_veto") {
                REQUIRE(s.d_after);
                CHECK((!s.d_after_exact || *s.d_after != s.d_before));
            }
            if (s.reason == "width_bound") {
                REQUIRE(s.i_min);
                CHECK(s.width > s.i_before - *s.i_min);
            }
            if (s.reason == "no_stacked_region") CHECK(s.hypothesis == "failed");
        }
    }
    auto j = to_json(t);
    CHECK(j["steps"].size() == t.steps.size());
}

}  // namespace

TEST_CASE("reduction traces explain every step") {
    auto table = IminTable::builtin();
    std::vector<Ladder> all = d3_spiral_pairs();
    all.push_back(l10_prime());
    int steps = 0;
    for (const auto& l : all) {
        auto t = reduce_intersections(l, table);
        CHECK(t.supported);
        CHECK(t.d_exact);
        steps += static_cast<int>(t.steps.size());
        check_trace(t);
        CHECK(t.result.n <= l.n);
        if (t.accepted() == 0) CHECK(t.result == l);
    }
    CHECK(steps > 0);
}

TEST_CASE("width bound refusals") {
    // pretend the pair is already minimal
    Ladder l = l10_prime();
    auto c = build_complex(l);
    auto dec = decomposition(c);
    auto table = IminTable::builtin();
    nlohmann::json j;
    j[IminTable::key(4, 2, dec.vector_above_4())] = {{"kind", "exact"}, {"value", l.n}, {"source", "test"}};
    table.merge(j);
    auto t = reduce_intersections(l, table);
    REQUIRE_FALSE(t.steps.empty());
    for (const auto& s : t.steps) {
        CHECK_FALSE(s.accepted);
        CHECK(s.reason == "width_bound");
        // refused steps still get a diagnostic recheck
        CHECK(s.d_after);
    }
    check_trace(t);
    CHECK(t.result == l);

    ReduceOptions quiet;
    quiet.diagnose_refusals = false;
    auto t2 = reduce_intersections(l, table, quiet);
    for (const auto& s : t2.steps) CHECK_FALSE(s.d_after);
}

TEST_CASE("reduction needs small faces") {
    std::mt19937 rng(4);
    for (int t = 0; t < 50; ++t) {
        auto l = random_valid(rng, 9);
        if (!l || only_4_6(*l)) continue;
        auto tr = reduce_intersections(*l, IminTable::builtin());
        CHECK_FALSE(tr.supported);
        CHECK(tr.steps.empty());
        return;
    }
}
