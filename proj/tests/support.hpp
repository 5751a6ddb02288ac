#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "curvekit/geodesics.hpp"

namespace fixtures {

using namespace curvekit;

inline const char* kL10 = "1,5,9,3,2,6,10,4,7,6\n10,4,8,2,1,5,9,3,8,7\n";

inline Ladder l10() { return parse_ladder(kL10); }

inline Ladder add_at_bicorn(const Ladder& l, int v_arc, int w_arc, int m = 1) {
    for (const auto& b : find_bicorns(build_complex(l)))
        if (b.v_arc == v_arc && b.w_arc == w_arc) {
            AdditionSite s;
            s.bicorn = b;
            return spiral_addition(l, s, m).ladder;
        }
    throw std::runtime_error("no such bicorn");
}

// L10 with both bicorn additions; labels shift after the first one, so the
// (v^7, w^10) addition goes first and the second bicorn is looked up again
inline Ladder l10_prime() { return add_at_bicorn(add_at_bicorn(l10(), 7, 10), 2, 5); }

// L10 with one addition: a distance 3 pair carrying a width 1 spiral
inline Ladder l10_single() { return add_at_bicorn(l10(), 2, 5); }

// Uniform crossing sequence: v visits the columns in a random order.
inline Ladder random_ladder(std::mt19937& rng, int n) {
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::vector<Crossing> seq;
    for (int c : cols) seq.push_back({c, static_cast<bool>(rng() & 1)});
    return from_v_sequence(seq);
}

// random ladders that build (no bigons)
inline std::optional<Ladder> random_valid(std::mt19937& rng, int n, int tries = 200) {
    for (int t = 0; t < tries; ++t) {
        Ladder l = random_ladder(rng, n);
        try {
            build_complex(l);
            return l;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

// Crossings c_s and c_{s+width} sit in adjacent columns for a run of s, which
// makes a band of rectangles whose long sides are v^s and v^{s+width}; the
// rest of v is random. Returns a ladder whose largest spiral has this width
// and at least this length.
inline std::optional<Ladder> spiral_ladder(std::mt19937& rng, int width, int length, int extra, int tries = 2000) {
    int chunk = length + width + 1;
    int n = chunk + extra;
    int per = (chunk + width - 1) / width;
    for (int t = 0; t < tries; ++t) {
        std::vector<int> cols(n, -1);
        std::vector<bool> used(n, false);
        // starting columns for the width residues, spaced so runs do not collide
        std::vector<int> free_cols;
        bool ok = true;
        int gap = per + static_cast<int>(rng() % 2);
        int base = static_cast<int>(rng() % n);
        for (int s = 0; s < chunk && ok; ++s) {
            int col = (base + (s % width) * gap + s / width) % n;
            if (used[col]) ok = false;
            cols[s] = col;
            used[col] = true;
        }
        if (!ok || width * gap > n) continue;
        for (int x = 0; x < n; ++x)
            if (!used[x]) free_cols.push_back(x);
        std::shuffle(free_cols.begin(), free_cols.end(), rng);
        for (int s = chunk; s < n; ++s) cols[s] = free_cols[s - chunk];
        bool up = rng() & 1;
        std::vector<Crossing> seq;
        for (int s = 0; s < n; ++s) seq.push_back({cols[s], s < chunk ? up : static_cast<bool>(rng() & 1)});
        try {
            Ladder l = from_v_sequence(seq);
            auto c = build_complex(l);
            for (const auto& sp : find_spirals(c))
                if (sp.band.width == width && sp.band.length >= length && !sp.band.closed) return l;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

inline bool only_4_6(const Ladder& l) {
    auto c = build_complex(l);
    for (const auto& f : c.faces)
        if (f.size() > 6) return false;
    return true;
}

// Distance 3 pairs carrying spirals: L10 with additions at its bicorns, then
// along the bands those create.
inline std::vector<Ladder> constructed_d3() {
    std::vector<Ladder> out;
    std::set<Ladder> seen;
    auto keep = [&](const Ladder& l) {
        if (!only_4_6(l) || !seen.insert(canonical_form(l).canonical_ladder).second) return false;
        DistanceOptions o;
        o.max_d = 3;
        auto d = distance(l, o);
        if (!d.exact || d.d != 3) return false;
        out.push_back(l);
        return true;
    };
    Ladder base = l10();
    for (const auto& b : find_bicorns(build_complex(base)))
        for (int m = 1; m <= 3; ++m) {
            AdditionSite s;
            s.bicorn = b;
            Ladder a = spiral_addition(base, s, m).ladder;
            if (!keep(a)) continue;
            for (const auto& sp : find_spirals(build_complex(a))) {
                AdditionSite e;
                e.band_edge = sp.band.w_edges[0];
                try {
                    keep(spiral_addition(a, e, 1).ladder);
                } catch (const Error&) {
                }
            }
        }
    return out;
}

inline const std::vector<Ladder>& d3_spiral_pairs() {
    static const std::vector<Ladder> v = constructed_d3();
    return v;
}


inline std::vector<int> above_4(const Decomposition& d) { return d.vector_above_4(); }

}  // namespace fixtures
