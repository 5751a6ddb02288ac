#include "curvekit/dotgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "curvekit/error.hpp"

namespace curvekit {

bool is_sawtooth(const std::vector<int>& s) {
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] < s[i + 1] && s[i + 1] != s[i] + 1) return false;
    return true;
}

std::vector<int> sawtooth(std::vector<int> s) {
    for (size_t i = 0; i + 1 < s.size();) {
        if (s[i + 1] - s[i] >= 2) {
            std::swap(s[i], s[i + 1]);
            i = i > 0 ? i - 1 : 0;
        } else {
            ++i;
        }
    }
    return s;
}

IntersectionSequence sawtooth(const IntersectionSequence& s) {
    IntersectionSequence out = s;
    std::vector<int> order(s.entries.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    // same bubbling, carrying provenance along
    for (size_t i = 0; i + 1 < out.entries.size();) {
        if (out.entries[i + 1] - out.entries[i] >= 2) {
            std::swap(out.entries[i], out.entries[i + 1]);
            std::swap(order[i], order[i + 1]);
            i = i > 0 ? i - 1 : 0;
        } else {
            ++i;
        }
    }
    if (s.provenance.size() == s.entries.size())
        for (size_t i = 0; i < order.size(); ++i) out.provenance[i] = s.provenance[order[i]];
    return out;
}

std::vector<int> extend(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out{0};
    out.insert(out.end(), a.begin(), a.end());
    out.push_back(0);
    out.insert(out.end(), b.begin(), b.end());
    out.push_back(0);
    return out;
}

IntersectionSequence extend(const IntersectionSequence& a, const IntersectionSequence& b, int arc_count) {
    if (a.arc < 1 || b.arc < 1 || b.arc != a.arc % arc_count + 1)
        throw Error(Errc::not_consecutive,
                    "arcs " + std::to_string(a.arc) + " and " + std::to_string(b.arc) + " are not consecutive");
    IntersectionSequence out;
    out.arc = a.arc;
    out.extended = true;
    out.entries = extend(a.entries, b.entries);
    if (a.provenance.size() == a.entries.size() && b.provenance.size() == b.entries.size()) {
        out.provenance = extend(a.provenance, b.provenance);
        for (size_t i = 0; i < out.entries.size(); ++i)
            if (out.entries[i] == 0) out.provenance[i] = -1;
    }
    return out;
}

const char* region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::box: return "BOX";
        case RegionKind::hex1: return "HEX1";
        case RegionKind::hex2: return "HEX2";
        case RegionKind::degenerate_00: return "DEGENERATE_00";
    }
    return "?";
}

namespace {

struct P {
    long x, y;
};

long cross(P o, P a, P b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(P a, P b, P p) {
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// 1 inside, 0 on the boundary, -1 outside
int locate(const std::vector<P>& poly, P p) {
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i)
        if (on_segment(poly[i], poly[(i + 1) % n], p)) return 0;
    // doubled coordinates keep the ray off lattice points
    bool in = false;
    for (int i = 0; i < n; ++i) {
        P a = poly[i], b = poly[(i + 1) % n];
        double ay = a.y, by = b.y, py = p.y + 0.5e-3;
        if ((ay > py) != (by > py)) {
            double x = a.x + (py - ay) * (b.x - a.x) / (by - ay);
            if (x > p.x) in = !in;
        }
    }
    return in ? 1 : -1;
}

void flag(const DotGraph& g, Region& r, const std::vector<P>& poly) {
    int n = static_cast<int>(g.heights.size());
    r.empty = true;
    r.unpierced = true;
    for (int x = 1; x <= n; ++x) {
        P p{x, g.heights[x - 1]};
        if (locate(poly, p) == 1) r.empty = false;
        for (const auto& e : r.edges)
            if (p.y == e.y && e.x0 < p.x && p.x < e.x1) r.unpierced = false;
    }
    r.x0 = poly[0].x;
    r.x1 = poly[0].x;
    for (auto q : poly) {
        r.x0 = std::min<long>(r.x0, q.x);
        r.x1 = std::max<long>(r.x1, q.x);
    }
    // a reflex corner whose exterior angle is acute
    int m = static_cast<int>(poly.size());
    long area2 = 0;
    for (int i = 0; i < m; ++i) area2 += poly[i].x * poly[(i + 1) % m].y - poly[(i + 1) % m].x * poly[i].y;
    for (int i = 0; i < m; ++i) {
        P a = poly[(i + m - 1) % m], b = poly[i], c = poly[(i + 1) % m];
        long turn = cross(a, b, c);
        if (turn == 0 || (turn > 0) == (area2 > 0)) continue;
        // reflex: exterior angle acute when the edges fold back on each other
        long dot = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
        if (dot < 0) r.acute_exterior = true;
    }
}

}  // namespace

DotGraph build_dot_graph(const std::vector<int>& seq) {
    DotGraph g;
    g.heights = sawtooth(seq);
    int n = static_cast<int>(g.heights.size());
    for (int i = 0; i < n;) {
        int j = i;
        while (j + 1 < n && g.heights[j + 1] == g.heights[j] + 1) ++j;
        g.runs.push_back({i + 1, j + 1, g.heights[i], g.heights[j]});
        i = j + 1;
    }
    g.regions = find_regions(g);
    return g;
}

DotGraph build_dot_graph(const IntersectionSequence& seq) {
    DotGraph g = build_dot_graph(seq.entries);
    g.extended = seq.extended;
    return g;
}

std::vector<Region> find_regions(const DotGraph& g) {
    std::vector<Region> out;
    const auto& R = g.runs;
    int nr = static_cast<int>(R.size());
    for (int i = 0; i < nr; ++i)
        for (int j = i + 1; j < nr; ++j) {
            const Run &a = R[i], &b = R[j];
            if (a.lo == b.lo && a.hi == b.hi && a.lo < a.hi) {
                Region r;
                r.kind = RegionKind::box;
                r.left = i;
                r.right = j;
                r.edges = {{a.lo, a.x0, b.x0}, {a.hi, a.x1, b.x1}};
                std::vector<P> poly{{a.x0, a.lo}, {b.x0, b.lo}, {b.x1, b.hi}, {a.x1, a.hi}};
                flag(g, r, poly);
                out.push_back(r);
                continue;
            }
            bool bottom = a.lo == b.lo && a.hi != b.hi;
            bool top = a.hi == b.hi && a.lo != b.lo;
            if (!bottom && !top) continue;
            if (a.lo == a.hi || b.lo == b.hi) continue;
            int y0 = bottom ? std::min(a.hi, b.hi) : std::min(a.lo, b.lo);
            int y1 = bottom ? std::max(a.hi, b.hi) : std::max(a.lo, b.lo);
            for (int m = i + 1; m < j; ++m) {
                const Run& c = R[m];
                if (c.lo > y0 || c.hi < y1) continue;
                long k1 = a.k(), k2 = b.k(), km = c.k();
                if (!(k1 < km && km < k2)) continue;
                Region r;
                r.kind = bottom ? RegionKind::hex1 : RegionKind::hex2;
                r.left = i;
                r.right = j;
                r.closure = m;
                std::vector<P> poly;
                if (bottom) {
                    long s = a.lo;
                    poly = {{k1 + s, s}, {k2 + s, s}, {k2 + b.hi, b.hi}, {km + b.hi, b.hi}, {km + a.hi, a.hi},
                            {k1 + a.hi, a.hi}};
                    r.edges = {{a.lo, static_cast<int>(k1 + s), static_cast<int>(k2 + s)},
                               {b.hi, static_cast<int>(km + b.hi), static_cast<int>(k2 + b.hi)},
                               {a.hi, static_cast<int>(k1 + a.hi), static_cast<int>(km + a.hi)}};
                } else {
                    long t = a.hi;
                    poly = {{k1 + a.lo, a.lo}, {km + a.lo, a.lo}, {km + b.lo, b.lo}, {k2 + b.lo, b.lo},
                            {k2 + t, t}, {k1 + t, t}};
                    r.edges = {{static_cast<int>(t), static_cast<int>(k1 + t), static_cast<int>(k2 + t)},
                               {a.lo, static_cast<int>(k1 + a.lo), static_cast<int>(km + a.lo)},
                               {b.lo, static_cast<int>(km + b.lo), static_cast<int>(k2 + b.lo)}};
                }
                for (auto& e : r.edges)
                    if (e.x0 > e.x1) std::swap(e.x0, e.x1);
                flag(g, r, poly);
                out.push_back(r);
            }
        }
    int n = static_cast<int>(g.heights.size());
    for (int x = 1; x < n; ++x)
        if (g.heights[x - 1] == 0 && g.heights[x] == 0) {
            Region r;
            r.kind = RegionKind::degenerate_00;
            r.x0 = x;
            r.x1 = x + 1;
            out.push_back(r);
        }
    return out;
}

StackedDotGraph stack(const std::vector<DotGraph>& layers) {
    StackedDotGraph s;
    s.layers = layers;
    if (layers.empty()) return s;
    std::vector<std::vector<int>> zeros;
    int before = 0, gap = 0;
    for (const auto& g : layers) {
        std::vector<int> z;
        for (size_t x = 0; x < g.heights.size(); ++x) {
            s.r = std::max(s.r, g.heights[x]);
            if (g.heights[x] == 0) z.push_back(static_cast<int>(x));
        }
        if (!zeros.empty() && z.size() != zeros[0].size())
            throw Error(Errc::misaligned, "layers carry different numbers of zero points");
        if (!z.empty()) {
            before = std::max(before, z[0]);
            for (size_t k = 0; k + 1 < z.size(); ++k) gap = std::max(gap, z[k + 1] - z[k] - 1);
        }
        zeros.push_back(z);
    }
    int spacing = std::max(s.r, gap) + 1;
    for (size_t l = 0; l < layers.size(); ++l) {
        const auto& h = layers[l].heights;
        const auto& z = zeros[l];
        std::vector<int> xs(h.size());
        if (z.empty()) {
            for (size_t x = 0; x < h.size(); ++x) xs[x] = static_cast<int>(x) + 1;
        } else {
            int zi = -1;
            int base = before + 1;
            for (size_t x = 0; x < h.size(); ++x) {
                if (zi + 1 < static_cast<int>(z.size()) && static_cast<int>(x) == z[zi + 1]) {
                    ++zi;
                    xs[x] = base + zi * spacing;
                } else if (zi < 0) {
                    xs[x] = base - (z[0] - static_cast<int>(x));
                } else {
                    xs[x] = base + zi * spacing + (static_cast<int>(x) - z[zi]);
                }
            }
        }
        s.x_of.push_back(xs);
    }
    return s;
}

std::vector<LayerRegion> common_regions(const StackedDotGraph& s, bool aligned) {
    std::vector<LayerRegion> out;
    if (s.layers.empty()) return out;
    if (!aligned) {
        for (size_t l = 0; l < s.layers.size(); ++l) {
            bool any = false;
            for (const auto& r : s.layers[l].regions)
                if (r.admissible()) {
                    out.push_back({static_cast<int>(l), r});
                    any = true;
                }
            if (!any) return {};
        }
        return out;
    }
    auto key = [&](size_t l, const Region& r) {
        const auto& xs = s.x_of[l];
        return std::tuple(static_cast<int>(r.kind), xs[r.x0 - 1], xs[r.x1 - 1]);
    };
    std::map<std::tuple<int, int, int>, int> seen;
    for (size_t l = 0; l < s.layers.size(); ++l) {
        std::set<std::tuple<int, int, int>> here;
        for (const auto& r : s.layers[l].regions)
            if (r.admissible()) here.insert(key(l, r));
        for (auto& k : here) ++seen[k];
    }
    for (size_t l = 0; l < s.layers.size(); ++l)
        for (const auto& r : s.layers[l].regions)
            if (r.admissible() && seen[key(l, r)] == static_cast<int>(s.layers.size()))
                out.push_back({static_cast<int>(l), r});
    return out;
}

nlohmann::json to_json(const DotGraph& g) {
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    for (size_t x = 0; x < g.heights.size(); ++x) j["points"].push_back({x + 1, g.heights[x]});
    j["runs"] = nlohmann::json::array();
    for (const auto& r : g.runs) j["runs"].push_back({{"x", {r.x0, r.x1}}, {"y", {r.lo, r.hi}}});
    j["regions"] = nlohmann::json::array();
    for (const auto& r : g.regions)
        j["regions"].push_back({{"kind", region_kind_name(r.kind)},
                                {"x", {r.x0, r.x1}},
                                {"empty", r.empty},
                                {"unpierced", r.unpierced},
                                {"acute_exterior", r.acute_exterior}});
    return j;
}

nlohmann::json to_json(const StackedDotGraph& s) {
    nlohmann::json j;
    j["r"] = s.r;
    j["layers"] = nlohmann::json::array();
    for (size_t l = 0; l < s.layers.size(); ++l) {
        auto lj = to_json(s.layers[l]);
        lj["aligned_x"] = s.x_of[l];
        j["layers"].push_back(lj);
    }
    return j;
}

std::string plot(const DotGraph& g) {
    if (g.heights.empty()) return "";
    int top = *std::max_element(g.heights.begin(), g.heights.end());
    std::ostringstream os;
    for (int y = top; y >= 0; --y) {
        os << y << " |";
        for (int h : g.heights) os << (h == y ? " *" : "  ");
        os << "\n";
    }
    return os.str();
}

}  // namespace curvekit
