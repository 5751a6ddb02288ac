#include "curvekit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <queue>

namespace curvekit {

std::vector<Segment> segments(const SurfaceComplex& c, const TransverseCurve& t) {
    std::vector<Segment> out;
    int m = t.size();
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        int in = c.alpha[t.darts[i]];
        out.push_back({c.face_of[in], in, t.slots[i], t.darts[j], t.slots[j]});
    }
    return out;
}

CurveSet CurveSet::stack(const SurfaceComplex& c, std::vector<TransverseCurve> curves) {
    CurveSet s;
    s.curves = std::move(curves);
    for (int i = 0; i < static_cast<int>(s.curves.size()); ++i) {
        const auto& t = s.curves[i];
        std::map<int, std::vector<std::pair<int, int>>> mine;
        for (int k = 0; k < t.size(); ++k) mine[edge_key(c, t.darts[k])].push_back({t.slots[k], k});
        for (auto& [e, pts] : mine) {
            std::sort(pts.begin(), pts.end());
            for (auto& [slot, k] : pts) s.order[e].push_back({i, k});
        }
    }
    return s;
}

void CurveSet::rebuild_slots(const SurfaceComplex& c) {
    (void)c;
    for (auto& t : curves) t.slots.assign(t.darts.size(), -1);
    for (auto& [e, pts] : order) {
        std::map<int, int> next;
        for (auto& p : pts) curves[p.curve].slots[p.index] = next[p.curve]++;
    }
}

CurveSet with_pushoff(const SurfaceComplex& c, const TransverseCurve& t) {
    CurveSet s = CurveSet::stack(c, {t});
    s.curves.push_back(t);
    for (auto& [e, pts] : s.order) {
        std::vector<CurveSet::Point> out;
        for (auto p : pts) {
            CurveSet::Point q{1, p.index};
            // the right-hand side of a crossing faces the far end of its dart
            bool after = t.darts[p.index] == e;
            if (after) {
                out.push_back(p);
                out.push_back(q);
            } else {
                out.push_back(q);
                out.push_back(p);
            }
        }
        pts = out;
    }
    s.rebuild_slots(c);
    return s;
}

std::vector<ReferenceArc> reference_arcs(const SurfaceComplex& c) {
    for (const auto& f : c.faces)
        if (f.size() > 6)
            throw Error(Errc::unsupported_decomposition,
                        "reference arcs need a decomposition of 4-gons and 6-gons only");
    std::vector<ReferenceArc> out;
    for (int k = 1; k <= c.n; ++k) {
        int right = k - 1, left = (right + c.n - 1) % c.n;
        int d = 4 * left + E;  // the face below w^k
        int f = c.face_of[d];
        const auto& cyc = c.faces[f];
        int p = c.pos_in_face[d];
        int L = static_cast<int>(cyc.size());
        out.push_back({f, c.edge[cyc[(p + L - 1) % L]].label, c.edge[cyc[(p + 1) % L]].label, k});
    }
    return out;
}

int reference_count(const SurfaceComplex& c, const TransverseCurve& t, int k) {
    int right = k - 1, left = (right + c.n - 1) % c.n;
    int below = 4 * left + E;
    int f = c.face_of[below];
    int count = 0;
    auto segs = segments(c, t);
    for (const auto& s : segs) {
        if (s.face != f) continue;
        bool a = s.entry_dart == below, b = s.exit_dart == below;
        if (a != b) ++count;
    }
    return count;
}

int crossings_with(const SurfaceComplex& c, const TransverseCurve& t, Curve which) {
    int k = 0;
    for (int d : t.darts)
        if (c.edge[d].is_v == (which == Curve::v)) ++k;
    return k;
}

bool disjoint_from(const SurfaceComplex& c, const TransverseCurve& t, Curve which) {
    return crossings_with(c, t, which) == 0;
}

TransverseCurve pushoff_of(const SurfaceComplex& c, Curve which, int side) {
    int n = c.n;
    // (crossing dart, dart of the edge end the point sits next to)
    std::vector<std::pair<int, int>> pts;
    if (which == Curve::v) {
        auto seq = v_sequence(c.ladder);
        for (const auto& x : seq) {
            int col = x.column;
            bool west = (x.up == (side > 0));
            int ed = west ? 4 * ((col + n - 1) % n) + E : 4 * col + E;
            int wd = west ? 4 * col + W : 4 * ((col + 1) % n) + W;
            int near = west ? 4 * col + W : 4 * col + E;
            pts.push_back({x.up ? ed : wd, near});
        }
    } else {
        for (int j = 0; j < n; ++j) {
            int d = side > 0 ? 4 * j + N : 4 * j + S;
            pts.push_back({side > 0 ? c.alpha[d] : d, d});
        }
    }
    TransverseCurve t;
    std::map<int, std::vector<std::pair<int, int>>> on_edge;  // edge -> (near-lo?, index)
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        t.darts.push_back(pts[i].first);
        int e = edge_key(c, pts[i].first);
        on_edge[e].push_back({pts[i].second == e ? 0 : 1, i});
    }
    t.slots.assign(t.darts.size(), 0);
    for (auto& [e, v] : on_edge) {
        std::sort(v.begin(), v.end());
        for (int r = 0; r < static_cast<int>(v.size()); ++r) t.slots[v[r].second] = r;
    }
    return t;
}

bool is_nonseparating(const SurfaceComplex& c, const TransverseCurve& t) {
    std::vector<int> parity(4 * c.n, 0);
    for (int d : t.darts) parity[edge_key(c, d)] ^= 1;
    std::vector<int> h(c.n, -1);
    h[0] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int p = 0; p < 4; ++p) {
            int d = 4 * u + p;
            int x = c.alpha[d] / 4;
            int want = h[u] ^ parity[edge_key(c, d)];
            if (h[x] < 0) {
                h[x] = want;
                q.push(x);
            } else if (h[x] != want) {
                return true;
            }
        }
    }
    return false;
}

namespace {

struct Pt {
    double x, y, t;
};

struct Geometry {
    // per curve, per crossing: index along its edge
    std::vector<std::vector<int>> pos;
    std::map<int, int> count;

    Geometry(const SurfaceComplex& c, const CurveSet& s) {
        (void)c;
        pos.resize(s.curves.size());
        for (size_t i = 0; i < s.curves.size(); ++i) pos[i].assign(s.curves[i].darts.size(), -1);
        for (const auto& [e, pts] : s.order) {
            count[e] = static_cast<int>(pts.size());
            for (int r = 0; r < static_cast<int>(pts.size()); ++r) pos[pts[r].curve][pts[r].index] = r;
        }
    }

    // boundary point of face_of[side] where the crossing sits
    Pt point(const SurfaceComplex& c, int side, int edge_pos) const {
        int e = edge_key(c, side);
        int m = count.at(e);
        int off = side == e ? edge_pos : m - 1 - edge_pos;
        double L = static_cast<double>(c.faces[c.face_of[side]].size());
        double frac = std::fmod(0.6180339887 * (side * 131 + off * 17 + 7), 1.0);
        double t = (c.pos_in_face[side] + (off + 1 + 0.2 * (frac - 0.5)) / (m + 1)) / L;
        double ang = -2.0 * M_PI * t;
        return {std::cos(ang), std::sin(ang), t};
    }
};

struct Chord {
    int curve, index, face;
    Pt p, q;
};

std::vector<Chord> chords_of(const SurfaceComplex& c, const CurveSet& s, const Geometry& g, int i) {
    std::vector<Chord> out;
    const auto& t = s.curves[i];
    int m = t.size();
    for (int k = 0; k < m; ++k) {
        int j = (k + 1) % m;
        int in = c.alpha[t.darts[k]];
        out.push_back({i, k, c.face_of[in], g.point(c, in, g.pos[i][k]), g.point(c, t.darts[j], g.pos[i][j])});
    }
    return out;
}

bool between(double a, double b, double x) {
    if (a > b) std::swap(a, b);
    return a < x && x < b;
}

bool chords_cross(const Chord& a, const Chord& b) {
    return between(a.p.t, a.q.t, b.p.t) != between(a.p.t, a.q.t, b.q.t);
}

// parameters (ta, tb) of the intersection of two crossing chords
std::pair<double, double> intersect(const Chord& a, const Chord& b) {
    double rx = a.q.x - a.p.x, ry = a.q.y - a.p.y;
    double sx = b.q.x - b.p.x, sy = b.q.y - b.p.y;
    double den = rx * sy - ry * sx;
    double qpx = b.p.x - a.p.x, qpy = b.p.y - a.p.y;
    return {(qpx * sy - qpy * sx) / den, (qpx * ry - qpy * rx) / den};
}

}  // namespace

std::vector<CrossingPoint> crossings(const SurfaceComplex& c, const CurveSet& s, int a, int b) {
    Geometry g(c, s);
    auto ca = chords_of(c, s, g, a), cb = chords_of(c, s, g, b);
    std::map<int, std::vector<int>> by_face;
    for (int k = 0; k < static_cast<int>(cb.size()); ++k) by_face[cb[k].face].push_back(k);
    std::vector<CrossingPoint> out;
    for (const auto& x : ca) {
        auto it = by_face.find(x.face);
        if (it == by_face.end()) continue;
        for (int k : it->second) {
            const auto& y = cb[k];
            if (!chords_cross(x, y)) continue;
            auto [ta, tb] = intersect(x, y);
            double ux = x.q.x - x.p.x, uy = x.q.y - x.p.y;
            double vx = y.q.x - y.p.x, vy = y.q.y - y.p.y;
            out.push_back({x.index, y.index, ta, tb, vx * uy - vy * ux > 0});
        }
    }
    return out;
}

std::vector<Crossing> pair_sequence(const SurfaceComplex& c, const CurveSet& s, int a, int b) {
    auto xs = crossings(c, s, a, b);
    int m = static_cast<int>(xs.size());
    std::vector<int> ia(m), ib(m);
    std::iota(ia.begin(), ia.end(), 0);
    std::iota(ib.begin(), ib.end(), 0);
    std::sort(ia.begin(), ia.end(), [&](int x, int y) {
        return std::pair(xs[x].chord_a, xs[x].at_a) < std::pair(xs[y].chord_a, xs[y].at_a);
    });
    std::sort(ib.begin(), ib.end(), [&](int x, int y) {
        return std::pair(xs[x].chord_b, xs[x].at_b) < std::pair(xs[y].chord_b, xs[y].at_b);
    });
    std::vector<int> col(m);
    for (int r = 0; r < m; ++r) col[ib[r]] = r;
    std::vector<Crossing> out;
    for (int r = 0; r < m; ++r) out.push_back({col[ia[r]], xs[ia[r]].a_left});
    return out;
}

std::vector<Crossing> sequence_against(const SurfaceComplex& c, const TransverseCurve& t, Curve which) {
    int n = c.n;
    // (position along the other curve, slot along the way, order along t, up)
    std::vector<std::tuple<int, int, int, bool>> pts;
    std::vector<int> own(4 * n, 0);
    for (int d : t.darts) ++own[edge_key(c, d)];
    if (which == Curve::w) {
        for (int k = 0; k < t.size(); ++k) {
            int d = t.darts[k];
            if (c.edge[d].is_v) continue;
            int ed = (c.port(d) == E) ? d : c.alpha[d];  // E dart at the left column
            int j = ed / 4;
            int e = edge_key(c, d);
            int along = (e == ed) ? t.slots[k] : own[e] - 1 - t.slots[k];
            pts.push_back({j, along, k, d == ed});
        }
    } else {
        auto seq = v_sequence(c.ladder);
        std::vector<int> leaving(n + 1), index_of(4 * n, -1);
        for (int s = 1; s <= n; ++s) {
            const auto& from = seq[(s + n - 2) % n];
            leaving[s] = 4 * from.column + (from.up ? N : S);
        }
        for (int k = 0; k < t.size(); ++k) {
            int d = t.darts[k];
            if (!c.edge[d].is_v) continue;
            int s = c.edge[d].label;
            int l = leaving[s];
            int e = edge_key(c, d);
            int along = (e == l) ? t.slots[k] : own[e] - 1 - t.slots[k];
            pts.push_back({s, along, k, d == l});
        }
    }
    int m = static_cast<int>(pts.size());
    std::vector<int> ord(m);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        return std::pair(std::get<0>(pts[a]), std::get<1>(pts[a])) <
               std::pair(std::get<0>(pts[b]), std::get<1>(pts[b]));
    });
    std::vector<int> col(m);
    for (int r = 0; r < m; ++r) col[ord[r]] = r;
    std::vector<int> by_t(m);
    std::iota(by_t.begin(), by_t.end(), 0);
    std::sort(by_t.begin(), by_t.end(), [&](int a, int b) { return std::get<2>(pts[a]) < std::get<2>(pts[b]); });
    std::vector<Crossing> out;
    for (int r : by_t) out.push_back({col[r], std::get<3>(pts[r])});
    return out;
}

bool fills(const SurfaceComplex& c, const std::vector<Crossing>& seq) {
    if (seq.empty()) return false;
    return trace_ribbon(seq).chi() == c.chi();
}

}  // namespace curvekit

namespace curvekit {
namespace {

// The full cell structure on S cut by v, w and every curve of a set:
// vertices of Dec(v,w), curve points on its edges, and chord crossings.
struct Arrangement {
    enum Kind { v_piece, w_piece, curve_piece };
    enum VKind { dec_vertex, curve_point, chord_crossing };

    std::vector<int> vert, mate, kind, curve, chord, dec;
    std::vector<char> fwd;
    std::vector<int> vkind, vcurve, vindex;
    std::vector<std::vector<std::pair<double, int>>> rot;
    std::vector<int> sig, face;
    int faces = 0;

    int add_vertex(int k, int cv = -1, int idx = -1) {
        vkind.push_back(k);
        vcurve.push_back(cv);
        vindex.push_back(idx);
        rot.emplace_back();
        return static_cast<int>(vkind.size()) - 1;
    }

    int add_dart(int v, int k, int cv, int ch, bool f, double key) {
        int d = static_cast<int>(vert.size());
        vert.push_back(v);
        mate.push_back(-1);
        kind.push_back(k);
        curve.push_back(cv);
        chord.push_back(ch);
        dec.push_back(-1);
        fwd.push_back(f);
        rot[v].push_back({key, d});
        return d;
    }

    int add_edge(int a, double ka, int b, double kb, int k, int cv = -1, int ch = -1) {
        int x = add_dart(a, k, cv, ch, true, ka);
        int y = add_dart(b, k, cv, ch, false, kb);
        mate[x] = y;
        mate[y] = x;
        return x;
    }

    Arrangement(const SurfaceComplex& c, const CurveSet& s) {
        int n = c.n;
        for (int j = 0; j < n; ++j) add_vertex(dec_vertex);
        std::vector<std::vector<int>> pid(s.curves.size());
        for (size_t i = 0; i < s.curves.size(); ++i)
            for (int t = 0; t < s.curves[i].size(); ++t)
                pid[i].push_back(add_vertex(curve_point, static_cast<int>(i), t));

        for (int lo = 0; lo < 4 * n; ++lo) {
            int hi = c.alpha[lo];
            if (hi < lo) continue;
            int k = c.edge[lo].is_v ? v_piece : w_piece;
            int prev = lo / 4;
            double pk = lo % 4;
            auto it = s.order.find(lo);
            if (it != s.order.end()) {
                for (const auto& p : it->second) {
                    int x = pid[p.curve][p.index];
                    int e = add_edge(prev, pk, x, 2, k);
                    dec[e] = dec[e + 1] = lo;
                    prev = x;
                    pk = 0;
                }
            }
            int e = add_edge(prev, pk, hi / 4, hi % 4, k);
            dec[e] = dec[e + 1] = lo;
        }

        Geometry g(c, s);
        std::map<int, std::vector<Chord>> by_face;
        for (size_t i = 0; i < s.curves.size(); ++i)
            for (auto& ch : chords_of(c, s, g, static_cast<int>(i))) by_face[ch.face].push_back(ch);
        for (auto& [f, list] : by_face) {
            int m = static_cast<int>(list.size());
            std::vector<std::vector<std::pair<double, int>>> along(m);
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    if (!chords_cross(list[a], list[b])) continue;
                    auto [ta, tb] = intersect(list[a], list[b]);
                    int x = add_vertex(chord_crossing);
                    along[a].push_back({ta, x});
                    along[b].push_back({tb, x});
                }
            for (int a = 0; a < m; ++a) {
                const auto& ch = list[a];
                const auto& t = s.curves[ch.curve];
                int nxt = (ch.index + 1) % t.size();
                int d0 = t.darts[ch.index], d1 = t.darts[nxt];
                double k0 = (d0 == edge_key(c, d0)) ? 1 : 3;
                double k1 = (d1 == edge_key(c, d1)) ? 3 : 1;
                double ang = std::atan2(ch.q.y - ch.p.y, ch.q.x - ch.p.x);
                if (ang < 0) ang += 2 * M_PI;
                double back = std::fmod(ang + M_PI, 2 * M_PI);
                auto& xs = along[a];
                std::sort(xs.begin(), xs.end());
                int prev = pid[ch.curve][ch.index];
                double pk = k0;
                for (auto& [tt, x] : xs) {
                    add_edge(prev, pk, x, back, curve_piece, ch.curve, ch.index);
                    prev = x;
                    pk = ang;
                }
                add_edge(prev, pk, pid[ch.curve][nxt], k1, curve_piece, ch.curve, ch.index);
            }
        }

        sig.assign(vert.size(), -1);
        for (auto& r : rot) {
            std::sort(r.begin(), r.end());
            for (size_t k = 0; k < r.size(); ++k) sig[r[k].second] = r[(k + 1) % r.size()].second;
        }
        face.assign(vert.size(), -1);
        for (size_t d0 = 0; d0 < vert.size(); ++d0) {
            if (face[d0] >= 0) continue;
            for (int d = static_cast<int>(d0); face[d] < 0; d = sig[mate[d]]) face[d] = faces;
            ++faces;
        }
    }
};

struct Region {
    int euler = 0;
    std::vector<std::vector<int>> walks;  // boundary walks, region on the right
};

struct Cut {
    std::vector<Region> regions;
    std::vector<int> region_of_face;
};

Cut cut(const Arrangement& a, CurveSelection with) {
    auto in_g = [&](int d) {
        int k = a.kind[d];
        return k == Arrangement::curve_piece || (k == Arrangement::v_piece && with.v) ||
               (k == Arrangement::w_piece && with.w);
    };
    int D = static_cast<int>(a.vert.size());
    std::vector<int> uf(a.faces);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (int d = 0; d < D; ++d)
        if (!in_g(d)) uf[find(a.face[d])] = find(a.face[a.mate[d]]);
    std::map<int, int> id;
    for (int f = 0; f < a.faces; ++f) id.emplace(find(f), static_cast<int>(id.size()));
    Cut out;
    out.regions.resize(id.size());
    auto reg = [&](int d) { return id[find(a.face[d])]; };
    for (int f = 0; f < a.faces; ++f) out.region_of_face.push_back(id[find(f)]);
    std::vector<char> seen_face(a.faces, 0);
    for (int d = 0; d < D; ++d) {
        if (!seen_face[a.face[d]]) {
            seen_face[a.face[d]] = 1;
            ++out.regions[reg(d)].euler;
        }
        if (!in_g(d) && d < a.mate[d]) --out.regions[reg(d)].euler;
    }
    for (size_t v = 0; v < a.rot.size(); ++v) {
        bool any = false;
        for (auto& [k, d] : a.rot[v]) any = any || in_g(d);
        if (!any && !a.rot[v].empty()) ++out.regions[reg(a.rot[v][0].second)].euler;
    }
    // boundary walks of G with the induced rotation
    std::vector<int> sig_g(D, -1);
    for (const auto& r : a.rot) {
        std::vector<int> g;
        for (auto& [k, d] : r)
            if (in_g(d)) g.push_back(d);
        for (size_t k = 0; k < g.size(); ++k) sig_g[g[k]] = g[(k + 1) % g.size()];
    }
    std::vector<char> used(D, 0);
    for (int d0 = 0; d0 < D; ++d0) {
        if (!in_g(d0) || used[d0]) continue;
        std::vector<int> walk;
        for (int d = d0; !used[d]; d = sig_g[a.mate[d]]) {
            used[d] = 1;
            walk.push_back(d);
        }
        out.regions[reg(d0)].walks.push_back(std::move(walk));
    }
    return out;
}

ComplementComponent classify(const Arrangement& a, const Region& r) {
    ComplementComponent c;
    for (const auto& w : r.walks) {
        int cv = a.curve[w[0]];
        for (int d : w)
            if (a.curve[d] != cv || a.kind[d] != Arrangement::curve_piece) cv = -1;
        c.boundary_curves.push_back(cv);
    }
    c.euler = r.euler;
    c.boundaries = static_cast<int>(r.walks.size());
    c.genus = (2 - c.euler - c.boundaries) / 2;
    if (c.euler == 1 && c.boundaries == 1)
        c.kind = "disc";
    else if (c.euler == 0 && c.boundaries == 2)
        c.kind = "annulus";
    else
        c.kind = "other";
    return c;
}

}  // namespace

bool ComplementReport::all_discs() const {
    return std::all_of(components.begin(), components.end(), [](auto& c) { return c.kind == "disc"; });
}

int ComplementReport::euler_total() const {
    int x = 0;
    for (auto& c : components) x += c.euler;
    return x;
}

ComplementReport complement(const SurfaceComplex& c, const CurveSet& s, CurveSelection with) {
    Arrangement a(c, s);
    ComplementReport r;
    for (const auto& reg : cut(a, with).regions) r.components.push_back(classify(a, reg));
    return r;
}

}  // namespace curvekit

namespace curvekit {
namespace {

struct Bigon {
    std::vector<int> walk;
};

std::optional<Bigon> find_bigon(const Arrangement& a, const Cut& cu) {
    for (const auto& r : cu.regions) {
        if (r.euler != 1 || r.walks.size() != 1) continue;
        const auto& w = r.walks[0];
        int corners = 0;
        std::set<int> cs;
        for (int d : w) {
            if (a.vkind[a.vert[a.mate[d]]] == Arrangement::chord_crossing) ++corners;
            cs.insert(a.curve[d]);
        }
        if (corners == 2 && cs.size() == 2) return Bigon{w};
    }
    return std::nullopt;
}

// Pushes the arc of curve `mover` on the bigon boundary across the bigon.
CurveSet reroute(const SurfaceComplex& c, const CurveSet& s, const Arrangement& a, const Bigon& b, int mover) {
    const auto& w = b.walk;
    int L = static_cast<int>(w.size());
    // rotate the walk so that it starts on the mover's arc
    int start = -1;
    for (int k = 0; k < L; ++k)
        if (a.curve[w[k]] == mover && a.curve[w[(k + L - 1) % L]] != mover) start = k;
    std::vector<int> mine, other;
    for (int k = 0; k < L; ++k) {
        int d = w[(start + k) % L];
        (a.curve[d] == mover ? mine : other).push_back(d);
    }
    const auto& t = s.curves[mover];
    int m = t.size();
    bool forward = a.fwd[mine.front()];
    int t1 = forward ? a.chord[mine.front()] : a.chord[mine.back()];
    int t2 = forward ? a.chord[mine.back()] : a.chord[mine.front()];
    int gone = ((t2 - t1) % m + m) % m;

    int fixed = a.curve[other.front()];
    const auto& u = s.curves[fixed];
    // points of the fixed curve along the bigon side, in walk order
    struct Copy {
        int at;  // index on the fixed curve
        int dart;
        bool before;
    };
    std::vector<Copy> copies;
    for (size_t k = 0; k + 1 < other.size(); ++k) {
        int x = a.vert[a.mate[other[k]]];
        if (a.vkind[x] != Arrangement::curve_point) continue;
        int idx = a.vindex[x];
        int dw = a.fwd[other[k]] ? u.darts[idx] : c.alpha[u.darts[idx]];
        copies.push_back({idx, forward ? c.alpha[dw] : dw, dw == edge_key(c, dw)});
    }
    // the mover runs along that side in the opposite sense to the walk when
    // the walk follows it forward
    if (forward) std::reverse(copies.begin(), copies.end());

    TransverseCurve nt;
    std::vector<int> new_index(m, -1);
    std::map<int, std::pair<int, bool>> copy_at;  // fixed idx -> (new idx, before)
    for (auto& cp : copies) {
        copy_at[cp.at] = {nt.size(), cp.before};
        nt.darts.push_back(cp.dart);
    }
    for (int k = 1; k <= m - gone; ++k) {
        int old = (t2 + k) % m;
        new_index[old] = nt.size();
        nt.darts.push_back(t.darts[old]);
    }
    if (nt.darts.empty()) throw std::logic_error("bigon reduction emptied a curve");
    CurveSet out;
    out.curves = s.curves;
    out.curves[mover] = nt;
    for (const auto& [e, pts] : s.order) {
        auto& dst = out.order[e];
        for (auto p : pts) {
            if (p.curve == mover) {
                if (new_index[p.index] >= 0) dst.push_back({mover, new_index[p.index]});
                continue;
            }
            auto it = p.curve == fixed ? copy_at.find(p.index) : copy_at.end();
            if (it != copy_at.end() && it->second.second) dst.push_back({mover, it->second.first});
            dst.push_back(p);
            if (it != copy_at.end() && !it->second.second) dst.push_back({mover, it->second.first});
        }
        if (dst.empty()) out.order.erase(e);
    }
    out.rebuild_slots(c);
    return out;
}

}  // namespace

CurveSet reduce_bigons(const SurfaceComplex& c, CurveSet s, int fixed) {
    for (;;) {
        Arrangement a(c, s);
        auto b = find_bigon(a, cut(a, {}));
        if (!b) return s;
        int mover = a.curve[b->walk.front()];
        if (mover == fixed)
            for (int d : b->walk)
                if (a.curve[d] != fixed) mover = a.curve[d];
        s = reroute(c, s, a, *b, mover);
    }
}

int geometric_count(const SurfaceComplex& c, const CurveSet& s, int a, int b) {
    return static_cast<int>(crossings(c, s, a, b).size());
}

int intersection_number(const SurfaceComplex& c, const CurveSet& s) {
    CurveSet pair;
    pair.curves = {s.curves[0], s.curves[1]};
    for (const auto& [e, pts] : s.order)
        for (auto p : pts)
            if (p.curve < 2) pair.order[e].push_back(p);
    return geometric_count(c, reduce_bigons(c, pair), 0, 1);
}

int intersection_number(const SurfaceComplex& c, const TransverseCurve& a, const TransverseCurve& b) {
    return intersection_number(c, CurveSet::stack(c, {a, b}));
}

}  // namespace curvekit

namespace curvekit {
// largest number of crossings with an arc joining two base sides of a face
int reference_load(const SurfaceComplex& c, const TransverseCurve& t, Curve base) {
    bool base_v = base == Curve::v;
    auto segs = segments(c, t);
    int worst = 0;
    for (size_t f = 0; f < c.faces.size(); ++f) {
        const auto& cyc = c.faces[f];
        int L = static_cast<int>(cyc.size());
        std::vector<int> base_pos;
        for (int p = 0; p < L; ++p)
            if (c.edge[cyc[p]].is_v == base_v) base_pos.push_back(p);
        for (size_t i = 0; i < base_pos.size(); ++i)
            for (size_t j = i + 1; j < base_pos.size(); ++j) {
                int n = 0;
                for (const auto& sg : segs) {
                    if (sg.face != static_cast<int>(f)) continue;
                    int a = c.pos_in_face[sg.entry_dart], b = c.pos_in_face[sg.exit_dart];
                    bool ia = base_pos[i] < a && a < base_pos[j];
                    bool ib = base_pos[i] < b && b < base_pos[j];
                    if (ia != ib) ++n;
                }
                worst = std::max(worst, n);
            }
    }
    return worst;
}

namespace {

// boundary position: (dart of the face side, slot along the edge)
using Spot = std::pair<int, int>;

void matchings(const std::vector<int>& side, int lo, int hi, std::vector<std::pair<int, int>>& cur,
               std::vector<std::vector<std::pair<int, int>>>& out) {
    if (lo >= hi) {
        out.push_back(cur);
        return;
    }
    for (int p = lo + 1; p < hi; p += 2) {
        if (side[p] == side[lo]) continue;
        std::vector<std::vector<std::pair<int, int>>> inner;
        std::vector<std::pair<int, int>> tmp;
        matchings(side, lo + 1, p, tmp, inner);
        for (auto& in : inner) {
            auto base = cur;
            base.push_back({lo, p});
            base.insert(base.end(), in.begin(), in.end());
            matchings(side, p + 1, hi, base, out);
        }
    }
}

struct Enumerator {
    const SurfaceComplex& c;
    Curve base;
    EnumerateOptions opt;
    std::vector<int> edges;          // crossable edge keys
    std::vector<int> index_of;       // edge key -> position in `edges`
    std::vector<std::vector<int>> face_sides;  // crossable side darts per face
    std::vector<std::vector<int>> closing;     // faces completed at each edge position
    std::vector<int> x;
    TransverseCurve excluded[2];
    const std::function<bool(const TransverseCurve&)>& fn;
    bool stopped = false;

    Enumerator(const SurfaceComplex& cx, Curve b, const EnumerateOptions& o,
               const std::function<bool(const TransverseCurve&)>& f)
        : c(cx), base(b), opt(o), fn(f) {
        bool cross_v = base == Curve::w;
        index_of.assign(4 * c.n, -1);
        for (int d = 0; d < 4 * c.n; ++d)
            if (d == edge_key(c, d) && c.edge[d].is_v == cross_v) {
                index_of[d] = static_cast<int>(edges.size());
                edges.push_back(d);
            }
        face_sides.resize(c.faces.size());
        closing.resize(edges.size());
        for (size_t f = 0; f < c.faces.size(); ++f) {
            int last = -1;
            for (int d : c.faces[f])
                if (c.edge[d].is_v == cross_v) {
                    face_sides[f].push_back(d);
                    last = std::max(last, index_of[edge_key(c, d)]);
                }
            if (last >= 0) closing[last].push_back(static_cast<int>(f));
        }
        x.assign(edges.size(), 0);
        excluded[0] = canonical(pushoff_of(c, base, 1));
        excluded[1] = canonical(pushoff_of(c, base, -1));
    }

    TransverseCurve canonical(const TransverseCurve& t) const {
        int m = t.size(), best = 0;
        for (int k = 1; k < m; ++k)
            if (std::pair(edge_key(c, t.darts[k]), t.slots[k]) < std::pair(edge_key(c, t.darts[best]), t.slots[best]))
                best = k;
        TransverseCurve out;
        bool flip = t.darts[best] != edge_key(c, t.darts[best]);
        for (int k = 0; k < m; ++k) {
            int i = flip ? ((best - k) % m + m) % m : (best + k) % m;
            out.darts.push_back(flip ? c.alpha[t.darts[i]] : t.darts[i]);
            out.slots.push_back(t.slots[i]);
        }
        return out;
    }

    int count(int d) const { return x[index_of[edge_key(c, d)]]; }

    bool face_ok(int f) const {
        int sum = 0, mx = 0;
        for (int d : face_sides[f]) {
            sum += count(d);
            mx = std::max(mx, count(d));
        }
        return sum % 2 == 0 && 2 * mx <= sum;
    }

    void run() {
        int E = static_cast<int>(edges.size());
        for (int total = 1; total <= opt.bound * E && !stopped; ++total) vectors(0, total);
    }

    void vectors(int i, int left) {
        if (stopped) return;
        int E = static_cast<int>(edges.size());
        if (i == E) {
            if (left == 0) systems();
            return;
        }
        int rest = (E - i - 1) * opt.bound;
        for (int val = 0; val <= opt.bound && val <= left; ++val) {
            if (left - val > rest) continue;
            x[i] = val;
            bool ok = true;
            for (int f : closing[i]) ok = ok && face_ok(f);
            if (ok) vectors(i + 1, left - val);
            if (stopped) return;
        }
        x[i] = 0;
    }

    // spots of a face in boundary order
    std::vector<Spot> spots(int f) const {
        std::vector<Spot> out;
        for (int d : c.faces[f]) {
            if (std::find(face_sides[f].begin(), face_sides[f].end(), d) == face_sides[f].end()) continue;
            int m = count(d);
            for (int k = 0; k < m; ++k) out.push_back({d, d == edge_key(c, d) ? k : m - 1 - k});
        }
        return out;
    }

    void systems() {
        int F = static_cast<int>(c.faces.size());
        std::vector<std::vector<Spot>> sp(F);
        std::vector<std::vector<std::vector<std::pair<int, int>>>> options(F);
        std::vector<int> active;
        for (int f = 0; f < F; ++f) {
            sp[f] = spots(f);
            if (sp[f].empty()) continue;
            std::vector<int> side;
            for (auto& s : sp[f]) side.push_back(s.first);
            std::vector<std::pair<int, int>> cur;
            matchings(side, 0, static_cast<int>(side.size()), cur, options[f]);
            if (options[f].empty()) return;
            active.push_back(f);
        }
        std::vector<size_t> pick(active.size(), 0);
        for (;;) {
            std::map<Spot, Spot> partner;
            for (size_t a = 0; a < active.size(); ++a) {
                int f = active[a];
                for (auto [p, q] : options[f][pick[a]]) {
                    partner[sp[f][p]] = sp[f][q];
                    partner[sp[f][q]] = sp[f][p];
                }
            }
            glue(partner);
            if (stopped) return;
            size_t a = 0;
            while (a < active.size() && ++pick[a] == options[active[a]].size()) pick[a++] = 0;
            if (a == active.size()) return;
        }
    }

    void glue(const std::map<Spot, Spot>& partner) {
        int points = 0;
        for (int v : x) points += v;
        int e0 = -1;
        for (size_t i = 0; i < edges.size() && e0 < 0; ++i)
            if (x[i] > 0) e0 = edges[i];
        TransverseCurve t;
        int d = e0, k = 0;
        do {
            t.darts.push_back(d);
            t.slots.push_back(k);
            auto [d2, k2] = partner.at({c.alpha[d], k});
            d = d2;
            k = k2;
        } while (!(d == e0 && k == 0) && t.size() <= points);
        if (t.size() != points) return;  // more than one component
        if (t == excluded[0] || t == excluded[1]) return;
        if (opt.nonseparating_only && !is_nonseparating(c, t)) return;
        if (!within_bound(t)) return;
        if (!fn(t)) stopped = true;
    }

    bool within_bound(const TransverseCurve& t) const { return reference_load(c, t, base) <= opt.bound; }
};

}  // namespace

void for_each_disjoint_curve(const SurfaceComplex& c, Curve base, const EnumerateOptions& opt,
                             const std::function<bool(const TransverseCurve&)>& fn) {
    if (opt.require_small_faces)
        for (const auto& f : c.faces)
            if (f.size() > 6)
                throw Error(Errc::unsupported_decomposition,
                            "curve enumeration needs a decomposition of 4-gons and 6-gons only");
    if (opt.bound <= 0) return;
    Enumerator e(c, base, opt, fn);
    e.run();
}

std::vector<TransverseCurve> enumerate_disjoint_curves(const SurfaceComplex& c, Curve base, int bound) {
    std::vector<TransverseCurve> out;
    EnumerateOptions opt;
    opt.bound = bound;
    for_each_disjoint_curve(c, base, opt, [&](const TransverseCurve& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

}  // namespace curvekit

namespace curvekit {
namespace {

// Inserts a curve given as a list of crossed arrangement edges into the set.
CurveSet insert_dual_cycle(const SurfaceComplex& c, const CurveSet& s, const Arrangement& a,
                           const std::vector<int>& crossed) {
    CurveSet out = s;
    int id = static_cast<int>(out.curves.size());
    TransverseCurve t;
    // edge key -> (anchor index in the old order, -1 for the lo end) -> new point
    std::map<int, std::map<int, int>> after;
    for (int e : crossed) {
        int f = a.fwd[e] ? e : a.mate[e];  // the piece dart pointing toward hi
        int key = a.dec[e];
        t.darts.push_back(a.fwd[e] ? key : c.alpha[key]);
        int anchor = -1;
        int y = a.vert[f];
        if (a.vkind[y] == Arrangement::curve_point) {
            const auto& pts = s.order.at(key);
            for (size_t k = 0; k < pts.size(); ++k)
                if (pts[k].curve == a.vcurve[y] && pts[k].index == a.vindex[y]) anchor = static_cast<int>(k);
        }
        after[key][anchor] = t.size() - 1;
    }
    t.slots.assign(t.darts.size(), 0);
    out.curves.push_back(t);
    for (auto& [key, ins] : after) {
        auto& dst = out.order[key];
        std::vector<CurveSet::Point> merged;
        auto put = [&](int anchor) {
            auto it = ins.find(anchor);
            if (it != ins.end()) merged.push_back({id, it->second});
        };
        put(-1);
        for (size_t k = 0; k < dst.size(); ++k) {
            merged.push_back(dst[k]);
            put(static_cast<int>(k));
        }
        dst = merged;
    }
    out.rebuild_slots(c);
    return out;
}

}  // namespace

std::optional<CurveSet> curve_in_complement(const SurfaceComplex& c, const CurveSet& s, CurveSelection with) {
    Arrangement a(c, s);
    Cut cu = cut(a, with);
    auto in_g = [&](int d) {
        int k = a.kind[d];
        return k == Arrangement::curve_piece || (k == Arrangement::v_piece && with.v) ||
               (k == Arrangement::w_piece && with.w);
    };
    int D = static_cast<int>(a.vert.size());
    for (size_t r = 0; r < cu.regions.size(); ++r) {
        const auto& reg = cu.regions[r];
        if (reg.euler == 1 && reg.walks.size() == 1) continue;
        // spanning tree of the cells of this region
        std::vector<int> up(a.faces, -2), depth(a.faces, 0);
        int root = -1;
        for (int f = 0; f < a.faces && root < 0; ++f)
            if (cu.region_of_face[f] == static_cast<int>(r)) root = f;
        std::vector<std::vector<int>> links(a.faces);
        for (int d = 0; d < D; ++d)
            if (!in_g(d) && cu.region_of_face[a.face[d]] == static_cast<int>(r)) links[a.face[d]].push_back(d);
        up[root] = -1;
        std::queue<int> q;
        q.push(root);
        std::vector<char> tree(D, 0);
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int d : links[f]) {
                int g = a.face[a.mate[d]];
                if (up[g] != -2) continue;
                up[g] = a.mate[d];  // crossing from g to its parent
                depth[g] = depth[f] + 1;
                tree[d] = tree[a.mate[d]] = 1;
                q.push(g);
            }
        }
        for (int f = 0; f < a.faces; ++f) {
            for (int d : links[f]) {
                if (tree[d] || d > a.mate[d]) continue;
                // cross d from f into g, then walk the tree back to f
                int g = a.face[a.mate[d]];
                std::vector<int> rise, fall;
                int x = g, y = f;
                while (x != y) {
                    if (depth[x] >= depth[y]) {
                        rise.push_back(up[x]);
                        x = a.face[a.mate[up[x]]];
                    } else {
                        fall.push_back(a.mate[up[y]]);
                        y = a.face[a.mate[up[y]]];
                    }
                }
                std::vector<int> crossed{d};
                crossed.insert(crossed.end(), rise.begin(), rise.end());
                crossed.insert(crossed.end(), fall.rbegin(), fall.rend());
                CurveSet out = insert_dual_cycle(c, s, a, crossed);
                if (is_nonseparating(c, out.curves.back())) return out;
            }
        }
    }
    return std::nullopt;
}

Frame reframe(const SurfaceComplex& c, const CurveSet& s, int a, const std::vector<int>& carry) {
    int n = c.n;
    std::vector<CurveSet::Point> along;
    for (int j = 0; j < n; ++j) {
        int ed = 4 * j + E;
        int key = edge_key(c, ed);
        auto it = s.order.find(key);
        if (it == s.order.end()) continue;
        std::vector<CurveSet::Point> pts = it->second;
        if (key != ed) std::reverse(pts.begin(), pts.end());
        for (auto p : pts) along.push_back(p);
    }
    std::vector<int> keep(s.curves.size(), -1);
    for (size_t k = 0; k < carry.size(); ++k) keep[carry[k]] = static_cast<int>(k);

    std::vector<Crossing> seq = sequence_against(c, s.curves[a], Curve::w);
    Frame fr{from_v_sequence(seq), {}, {}};
    fr.complex = build_complex(fr.ladder);
    int n1 = fr.ladder.n;
    const auto& c1 = fr.complex;

    fr.curves.curves.resize(carry.size());
    // w-edge segment of the new frame for each carried point, in w order
    int seen = 0;
    std::map<int, std::vector<CurveSet::Point>> seg;  // left column -> points in w order
    std::vector<CurveSet::Point> head;
    for (auto p : along) {
        if (p.curve == a) {
            ++seen;
            continue;
        }
        if (keep[p.curve] < 0) continue;
        if (seen == 0)
            head.push_back(p);
        else
            seg[seen - 1].push_back(p);
    }
    auto& wrap_seg = seg[n1 - 1];
    wrap_seg.insert(wrap_seg.end(), head.begin(), head.end());

    std::vector<std::vector<int>> new_dart(s.curves.size());
    for (size_t i = 0; i < s.curves.size(); ++i) new_dart[i].assign(s.curves[i].darts.size(), -1);
    for (auto& [j, pts] : seg) {
        int ed = 4 * j + E, wd = 4 * ((j + 1) % n1) + W;
        int key = std::min(ed, wd);
        std::vector<CurveSet::Point> list;
        for (auto p : pts) {
            int d = s.curves[p.curve].darts[p.index];
            int old_e = 4 * (c.port(d) == E ? d / 4 : c.alpha[d] / 4) + E;
            new_dart[p.curve][p.index] = (d == old_e) ? ed : wd;
            list.push_back(p);
        }
        if (key != ed) std::reverse(list.begin(), list.end());
        fr.curves.order[key] = list;
    }
    // renumber: keep only crossings with w, in curve order
    std::vector<std::vector<int>> idx(s.curves.size());
    for (size_t i = 0; i < s.curves.size(); ++i) {
        if (keep[i] < 0) continue;
        auto& t = fr.curves.curves[keep[i]];
        idx[i].assign(s.curves[i].darts.size(), -1);
        for (int k = 0; k < s.curves[i].size(); ++k)
            if (new_dart[i][k] >= 0) {
                idx[i][k] = t.size();
                t.darts.push_back(new_dart[i][k]);
            }
    }
    for (auto& [key, pts] : fr.curves.order)
        for (auto& p : pts) p = {keep[p.curve], idx[p.curve][p.index]};
    fr.curves.rebuild_slots(c1);

    // remove innermost returns to the same side
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [key, pts] : fr.curves.order) {
            for (size_t k = 0; k + 1 < pts.size() && !changed; ++k) {
                auto p = pts[k], q = pts[k + 1];
                if (p.curve != q.curve) continue;
                auto& t = fr.curves.curves[p.curve];
                int m = t.size();
                int i = p.index, j = q.index;
                if ((i + 1) % m == j || (j + 1) % m == i) {
                    if ((i + 1) % m != j) std::swap(i, j);
                    if (t.darts[j] != c1.alpha[t.darts[i]]) continue;
                    std::vector<int> map(m, -1);
                    TransverseCurve nt;
                    for (int x = 0; x < m; ++x)
                        if (x != i && x != j) {
                            map[x] = nt.size();
                            nt.darts.push_back(t.darts[x]);
                        }
                    int cv = p.curve;
                    t = nt;
                    for (auto& [k2, list] : fr.curves.order) {
                        std::vector<CurveSet::Point> kept;
                        for (auto r : list) {
                            if (r.curve == cv) {
                                if (map[r.index] < 0) continue;
                                r.index = map[r.index];
                            }
                            kept.push_back(r);
                        }
                        list = kept;
                    }
                    changed = true;
                }
            }
            if (changed) break;
        }
        if (changed) fr.curves.rebuild_slots(c1);
    }
    for (auto it = fr.curves.order.begin(); it != fr.curves.order.end();)
        it = it->second.empty() ? fr.curves.order.erase(it) : std::next(it);
    return fr;
}

}  // namespace curvekit
