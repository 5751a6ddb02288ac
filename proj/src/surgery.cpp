#include "curvekit/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace curvekit {

const char* kind_name(SurgeryKind k) {
    switch (k) {
        case SurgeryKind::pp: return "++";
        case SurgeryKind::mm: return "--";
        case SurgeryKind::pm: return "+-";
        case SurgeryKind::mp: return "-+";
    }
    return "?";
}

std::optional<SurgeryKind> parse_kind(const std::string& s) {
    if (s == "++" || s == "pp") return SurgeryKind::pp;
    if (s == "--" || s == "mm") return SurgeryKind::mm;
    if (s == "+-" || s == "pm") return SurgeryKind::pm;
    if (s == "-+" || s == "mp") return SurgeryKind::mp;
    return std::nullopt;
}

namespace {

bool is_rect(const SurfaceComplex& c, int f) { return c.faces[f].size() == 4; }

// the other w-side of a rectangle
int opposite(const SurfaceComplex& c, int d) {
    const auto& f = c.faces[c.face_of[d]];
    return f[(c.pos_in_face[d] + 2) % 4];
}

std::set<int> side_vertices(const SurfaceComplex& c, const std::vector<int>& labels) {
    std::set<int> out;
    for (int a : labels) {
        auto [d1, d2] = c.darts_of(EdgeRef{true, a});
        out.insert(d1 / 4);
        out.insert(d2 / 4);
    }
    return out;
}

}  // namespace

std::vector<Band> find_bands(const SurfaceComplex& c) {
    std::vector<Band> out;
    std::vector<char> seen(c.num_faces(), 0);
    auto w_sides = [&](int f) {
        std::vector<int> ws;
        for (int d : c.faces[f])
            if (!c.edge[d].is_v) ws.push_back(d);
        return ws;
    };
    auto is_end = [&](int d) { return !is_rect(c, c.face_of[c.alpha[d]]); };
    // open bands first, walked from an end; whatever is left over is closed
    for (int pass = 0; pass < 2; ++pass) {
        for (int f0 = 0; f0 < c.num_faces(); ++f0) {
            if (seen[f0] || !is_rect(c, f0)) continue;
            auto ws = w_sides(f0);
            int d_in = -1;
            for (int d : ws)
                if (is_end(d)) {
                    d_in = d;
                    break;
                }
            if (pass == 0 && d_in < 0) continue;
            if (d_in < 0) d_in = ws[0];
            Band b;
            int f = f0;
            while (true) {
                seen[f] = 1;
                b.faces.push_back(f);
                b.w_edges.push_back(c.edge[d_in].label);
                const auto& cyc = c.faces[f];
                int p = c.pos_in_face[d_in];
                b.side_a.push_back(c.edge[cyc[(p + 1) % 4]].label);
                b.side_b.push_back(c.edge[cyc[(p + 3) % 4]].label);
                int d_out = opposite(c, d_in);
                int nd = c.alpha[d_out];
                int nf = c.face_of[nd];
                if (!is_rect(c, nf)) {
                    b.w_edges.push_back(c.edge[d_out].label);
                    break;
                }
                if (seen[nf]) {
                    b.closed = true;
                    b.w_edges.push_back(c.edge[d_out].label);
                    break;
                }
                f = nf;
                d_in = nd;
            }
            b.length = static_cast<int>(b.faces.size());
            b.m_v = std::abs(b.side_a[0] - b.side_b[0]);
            b.width = std::min(b.m_v, c.n - b.m_v);
            out.push_back(std::move(b));
        }
    }
    return out;
}

std::vector<Spiral> find_spirals(const SurfaceComplex& c) {
    auto bands = find_bands(c);
    // bands interleave when their v labels alternate around v
    int nb = static_cast<int>(bands.size());
    std::vector<int> group(nb);
    std::iota(group.begin(), group.end(), 0);
    auto find = [&](int x) {
        while (group[x] != x) x = group[x] = group[group[x]];
        return x;
    };
    std::vector<int> owner(c.n + 1, -1);
    for (int i = 0; i < nb; ++i)
        for (const auto* side : {&bands[i].side_a, &bands[i].side_b})
            for (int a : *side) owner[a] = i;
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            // count alternations between i and j reading labels cyclically
            std::vector<int> seq;
            for (int a = 1; a <= c.n; ++a)
                if (owner[a] == i || owner[a] == j)
                    if (seq.empty() || seq.back() != owner[a]) seq.push_back(owner[a]);
            if (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
            if (seq.size() >= 4) group[find(i)] = find(j);
        }
    std::vector<Spiral> out;
    auto seq = v_sequence(c.ladder);
    for (int i = 0; i < nb; ++i) {
        const Band& b = bands[i];
        if (b.width == 0) continue;
        auto va = side_vertices(c, b.side_a), vb = side_vertices(c, b.side_b);
        bool touch = std::any_of(va.begin(), va.end(), [&](int x) { return vb.count(x) > 0; });
        if (!touch) continue;
        Spiral sp;
        sp.band = b;
        for (int t = 0; t < b.length; ++t) {
            bool inner = b.closed || (t > 0 && t + 1 < b.length);
            for (int lab : {b.side_a[t], b.side_b[t]}) {
                auto [d1, d2] = c.darts_of(EdgeRef{true, lab});
                for (int d : {d1, d2}) {
                    int f = c.face_of[d];
                    if (std::find(b.faces.begin(), b.faces.end(), f) == b.faces.end()) inner = false;
                    if (f == b.faces[t] && c.face_of[c.alpha[d]] == f) inner = false;
                }
            }
            (inner ? sp.interior : sp.barrier).push_back(t);
        }
        int mult = 0;
        for (int j = 0; j < nb; ++j)
            if (find(j) == find(i)) ++mult;
        sp.multiplicity = mult;
        // kind forced by winding: read it off any w-edge of the band
        auto kinds = classify_surgery(c.ladder, b.w_edges[b.w_edges.size() / 2]);
        EdgeSite s = edge_site(c.ladder, b.w_edges[b.w_edges.size() / 2]);
        int dlt = ((s.s_right - s.s_left) % c.n + c.n) % c.n;
        bool forward = dlt == b.width;
        // kept arc attaches below at its arrival end when v crosses upward
        bool up = s.up_left;
        sp.kind = (forward == up) ? SurgeryKind::mp : SurgeryKind::pm;
        sp.winding = sp.kind == SurgeryKind::pm ? 1 : -1;
        (void)seq;
        (void)kinds;
        out.push_back(std::move(sp));
    }
    return out;
}

PairModel PairModel::from(const Ladder& l) {
    PairModel m;
    m.worder.resize(l.n);
    std::iota(m.worder.begin(), m.worder.end(), 0);
    m.up.assign(l.n, 1);
    auto seq = v_sequence(l);
    for (int s = 0; s < l.n; ++s) {
        m.vorder.push_back(seq[s].column);
        m.up[seq[s].column] = seq[s].up;
    }
    return m;
}

std::vector<Crossing> PairModel::sequence() const {
    std::vector<int> col(up.size(), -1);
    for (size_t j = 0; j < worder.size(); ++j) col[worder[j]] = static_cast<int>(j);
    std::vector<Crossing> out;
    for (int node : vorder) out.push_back({col[node], up[node] != 0});
    return out;
}

EdgeSite edge_site(const Ladder& l, int w_edge) {
    if (w_edge < 1 || w_edge > l.n) throw Error(Errc::not_in_spiral, "no w-edge " + std::to_string(w_edge));
    EdgeSite s;
    s.w_edge = w_edge;
    s.right_col = w_edge - 1;
    s.left_col = (s.right_col + l.n - 1) % l.n;
    auto seq = v_sequence(l);
    s.s_left = l.k_at(s.left_col);
    s.s_right = l.k_at(s.right_col);
    s.up_left = seq[s.s_left - 1].up;
    s.up_right = seq[s.s_right - 1].up;
    return s;
}

std::vector<SurgeryKind> classify_surgery(const Ladder& l, int w_edge) {
    EdgeSite s = edge_site(l, w_edge);
    if (s.left_col == s.right_col) return {};
    if (s.coherent()) return {SurgeryKind::pm, SurgeryKind::mp};
    return {SurgeryKind::pp, SurgeryKind::mm};
}

namespace {

SurgeryTrace base_trace(const std::string& op, int site, int width, const Ladder& before, const Ladder& after) {
    SurgeryTrace t;
    t.op = op;
    t.site = site;
    t.width = width;
    t.i_before = before.n;
    t.i_after = after.n;
    t.decomposition_before = decomposition(build_complex(before)).F;
    t.decomposition_after = decomposition(build_complex(after)).F;
    return t;
}

int pos_of(const std::vector<int>& v, int x) {
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
}

// w label of the edge joining worder positions p and p+1
int edge_label(int p, int n) { return (p + 1) % n + 1; }

}  // namespace

SurgeryResult spiral_surgery(const Ladder& l, const Spiral& sp, int w_edge) {
    const Band& b = sp.band;
    if (std::find(b.w_edges.begin(), b.w_edges.end(), w_edge) == b.w_edges.end())
        throw Error(Errc::not_in_spiral, "w" + std::to_string(w_edge) + " is not an edge of the spiral");
    EdgeSite s = edge_site(l, w_edge);
    if (!s.coherent()) throw Error(Errc::incompatible_kind, "strands at w" + std::to_string(w_edge) + " are opposite");
    int n = l.n, w = b.width;
    int dlt = ((s.s_right - s.s_left) % n + n) % n;
    int k;
    if (dlt == w) k = s.s_left;
    else if (n - dlt == w) k = s.s_right;
    else throw Error(Errc::not_in_spiral, "w" + std::to_string(w_edge) + " does not join strands one turn apart");
    if (n - w < 3) throw Error(Errc::unsupported, "surgery would leave fewer than three crossings");
    PairModel m = PairModel::from(l);
    int x = static_cast<int>(m.up.size());
    m.up.push_back(m.up[m.vorder[k - 1]]);
    std::set<int> gone;
    for (int t = 0; t <= w; ++t) gone.insert(m.vorder[(k - 1 + t) % n]);
    // the parallel copy of the surgery edge crosses w once, where the edge was
    m.worder.insert(m.worder.begin() + pos_of(m.worder, s.right_col), x);
    std::vector<int> wo, vo;
    for (int node : m.worder)
        if (!gone.count(node)) wo.push_back(node);
    for (int t = 0; t < n; ++t) {
        int node = m.vorder[(k - 1 + t) % n];
        if (t == 0) vo.push_back(x);
        else if (!gone.count(node)) vo.push_back(node);
    }
    m.worder = wo;
    m.vorder = vo;
    Ladder out = m.ladder();
    SurgeryResult r{out, base_trace("spiral_surgery", w_edge, w, l, out)};
    return r;
}

SurgeryResult spiral_surgery(const Ladder& l, int w_edge) {
    for (const auto& sp : find_spirals(build_complex(l))) {
        const auto& we = sp.band.w_edges;
        if (std::find(we.begin(), we.end(), w_edge) != we.end()) return spiral_surgery(l, sp, w_edge);
    }
    throw Error(Errc::not_in_spiral, "w" + std::to_string(w_edge) + " lies in no spiral");
}

namespace {

// Split node c_k into a run c_k .. c_{k+w}; inverse of spiral surgery.
Ladder split_run(const Ladder& l, int k, int w, int delta, int* inverse_edge) {
    PairModel m = PairModel::from(l);
    int n = l.n;
    auto at = [&](int s) { return m.vorder[((s - 1) % n + n) % n]; };
    int x = at(k);
    char o = m.up[x];
    std::vector<int> fresh(w + 1);
    fresh[0] = x;
    for (int t = 1; t <= w; ++t) {
        fresh[t] = static_cast<int>(m.up.size());
        m.up.push_back(o);
    }
    auto insert_next_to = [&](int anchor, int node, int side) {
        int p = pos_of(m.worder, anchor);
        m.worder.insert(m.worder.begin() + (side > 0 ? p + 1 : p), node);
    };
    for (int t = 1; t < w; ++t) insert_next_to(at(k + t - w), fresh[t], delta);
    insert_next_to(x, fresh[w], delta);
    int p = pos_of(m.vorder, x);
    m.vorder.insert(m.vorder.begin() + p + 1, fresh.begin() + 1, fresh.end());
    if (inverse_edge) {
        int a = pos_of(m.worder, fresh[0]), b = pos_of(m.worder, fresh[w]);
        *inverse_edge = edge_label(std::min(a, b), static_cast<int>(m.worder.size()));
    }
    return m.ladder();
}

}  // namespace

SurgeryResult spiral_addition(const Ladder& l, const AdditionSite& site, int m) {
    if (m < 0) throw Error(Errc::invalid_site, "negative multiplicity");
    if (m == 0) return {l, base_trace("spiral_addition", 0, 0, l, l)};
    SurfaceComplex c = build_complex(l);
    int n = l.n, w, k, delta, label;
    if (site.bicorn) {
        const Bicorn& bc = *site.bicorn;
        auto all = find_bicorns(c);
        if (std::find(all.begin(), all.end(), bc) == all.end())
            throw Error(Errc::invalid_site, "not a bicorn of this pair");
        if (!bc.coherent) throw Error(Errc::invalid_site, "bicorn strands cross w in opposite directions");
        EdgeSite s = edge_site(l, bc.w_arc);
        w = 1;
        label = bc.v_arc;
        // v^a runs from c_{a-1} to c_a
        k = wrap(bc.v_arc - 1, n);
        delta = (s.s_left == k) ? 1 : -1;
    } else if (site.band_edge) {
        int e = *site.band_edge;
        const Band* band = nullptr;
        auto bands = find_bands(c);
        for (const auto& b : bands)
            if (std::find(b.w_edges.begin(), b.w_edges.end(), e) != b.w_edges.end()) band = &b;
        if (!band) throw Error(Errc::invalid_site, "w" + std::to_string(e) + " lies in no band");
        EdgeSite s = edge_site(l, e);
        if (!s.coherent()) throw Error(Errc::invalid_site, "strands at w" + std::to_string(e) + " are opposite");
        w = band->width;
        label = e;
        int dlt = ((s.s_right - s.s_left) % n + n) % n;
        int start;
        if (dlt == w) {
            start = s.s_left;
            delta = 1;
        } else if (n - dlt == w) {
            start = s.s_right;
            delta = -1;
        } else {
            throw Error(Errc::invalid_site, "w" + std::to_string(e) + " does not join strands one turn apart");
        }
        k = wrap(start + w - 1, n);
    } else {
        throw Error(Errc::invalid_site, "no site given");
    }
    Ladder cur = l;
    int inv = 0;
    for (int rep = 0; rep < m; ++rep) {
        // each turn adds width crossings; later turns reuse the freshly split run
        cur = split_run(cur, k, w, delta, &inv);
    }
    SurgeryResult r{cur, base_trace("spiral_addition", label, w, l, cur)};
    r.trace.site = label;
    r.trace.inverse_site = inv;
    // on some short spirals the split run does not close up into new
    // rectangles; refuse rather than hand back a different surface
    if (site.band_edge) {
        auto before = decomposition(c);
        auto after = decomposition(build_complex(cur));
        bool kept = after.genus == before.genus && after.count(4) == before.count(4) + m * w;
        for (int sides = 6; kept && sides <= 8 * before.genus - 4; sides += 2)
            kept = after.count(sides) == before.count(sides);
        if (!kept) throw Error(Errc::invalid_site, "w" + std::to_string(label) + " does not extend its spiral");
    }
    return r;
}

}  // namespace curvekit

namespace curvekit {

int ribbon_chi(const std::vector<Crossing>& seq) {
    if (seq.empty()) return 2;
    return trace_ribbon(seq).chi();
}

bool fills_like(const std::vector<Crossing>& seq, const Ladder& reference) {
    return !seq.empty() && ribbon_chi(seq) == ribbon_chi(v_sequence(reference));
}

namespace {

// positions may be any increasing keys along w
std::vector<Crossing> rerank(const std::vector<std::pair<int, bool>>& pts) {
    std::vector<int> keys;
    for (auto& p : pts) keys.push_back(p.first);
    std::sort(keys.begin(), keys.end());
    std::vector<Crossing> out;
    for (auto& p : pts) {
        int c = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), p.first) - keys.begin());
        out.push_back({c, p.second});
    }
    return out;
}

std::optional<Ladder> try_ladder(const std::vector<Crossing>& seq) {
    try {
        return from_v_sequence(seq);
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool census_differs(const std::vector<int>& a, const std::vector<int>& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t k = 1; k < n; ++k) {
        int x = k < a.size() ? a[k] : 0, y = k < b.size() ? b[k] : 0;
        if (x != y) return true;
    }
    return false;
}

}  // namespace

std::vector<Crossing> remove_bigons(std::vector<Crossing> seq) {
    for (;;) {
        if (seq.size() < 2) return seq;
        RibbonFaces r = trace_ribbon(seq);
        const std::vector<int>* hit = nullptr;
        for (const auto& f : r.faces)
            if (f.size() == 2) hit = &f;
        if (!hit) return seq;
        int a = (*hit)[0] / 4, b = (*hit)[1] / 4;
        std::vector<std::pair<int, bool>> keep;
        for (auto& x : seq)
            if (x.column != a && x.column != b) keep.push_back({x.column, x.up});
        seq = rerank(keep);
    }
}

std::vector<SurgeredCurve> surger(const Ladder& l, int w_edge, SurgeryKind kind) {
    EdgeSite s = edge_site(l, w_edge);
    if (s.left_col == s.right_col || s.s_left == s.s_right)
        throw Error(Errc::incompatible_kind, "surgery arc endpoints coincide");
    auto seq = v_sequence(l);
    int n = l.n;
    // side of w each component leaves from, at the left and right endpoint
    struct Comp {
        int from, to;  // entries strictly between, cyclically
        bool start_left;
        bool top_left, top_right;
    };
    int a = s.s_left - 1, b = s.s_right - 1;
    Comp c1{a, b, true, s.up_left, !s.up_right};
    Comp c2{b, a, false, !s.up_left, s.up_right};
    auto kind_of = [](const Comp& c) {
        if (c.top_left && c.top_right) return SurgeryKind::pp;
        if (!c.top_left && !c.top_right) return SurgeryKind::mm;
        return c.top_left ? SurgeryKind::pm : SurgeryKind::mp;
    };
    std::vector<Comp> order;
    if (kind_of(c1) == kind) order = {c1, c2};
    else if (kind_of(c2) == kind) order = {c2, c1};
    else
        throw Error(Errc::incompatible_kind, std::string(kind_name(kind)) + " does not match the strands at w" +
                                                 std::to_string(w_edge));
    if (kind == SurgeryKind::pm || kind == SurgeryKind::mp) order.pop_back();
    int gap = s.right_col == s.left_col + 1 ? 2 * s.left_col + 1 : 2 * n - 1;
    std::vector<SurgeredCurve> out;
    for (const Comp& c : order) {
        std::vector<std::pair<int, bool>> pts;
        for (int t = (c.from + 1) % n; t != c.to; t = (t + 1) % n) pts.push_back({2 * seq[t].column, seq[t].up});
        bool top_start = c.start_left ? c.top_left : c.top_right;
        bool top_end = c.start_left ? c.top_right : c.top_left;
        // the closing run along the edge changes sides once if the ends disagree
        if (top_start != top_end) pts.push_back({gap, top_start});
        SurgeredCurve r;
        r.kind = kind_of(c);
        r.sequence = rerank(pts);
        r.fills = fills_like(r.sequence, l);
        if (r.fills) r.ladder = try_ladder(remove_bigons(r.sequence));
        out.push_back(std::move(r));
    }
    return out;
}

RectangleCheck forbidden_rectangle_surgery_check(const Ladder& l, int face, SurgeryKind kind) {
    SurfaceComplex c = build_complex(l);
    if (face < 0 || face >= c.num_faces() || c.faces[face].size() != 4)
        throw Error(Errc::invalid_site, "face " + std::to_string(face) + " is not a 4-gon");
    auto seq = v_sequence(l);
    int n = l.n;
    RectangleCheck r;
    r.face = face;
    r.kind = kind;
    r.F_before = decomposition(c).F;
    int got = 0;
    bool agree[2];
    for (int d : c.faces[face]) {
        if (!c.edge[d].is_v) continue;
        int lab = c.edge[d].label;
        r.v_sides[got] = lab;
        agree[got] = SurfaceComplex::column(d) == seq[(lab - 2 + n) % n].column;
        ++got;
    }
    r.parallel = agree[0] != agree[1];
    bool pm_kind = kind == SurgeryKind::pm || kind == SurgeryKind::mp;
    r.admissible = pm_kind == r.parallel;
    if (!r.admissible) return r;
    // cut v inside the two long sides; keep the arc starting on the first
    // side for ++ / +-, the other one otherwise
    int s1 = r.v_sides[0], s2 = r.v_sides[1];
    if (kind == SurgeryKind::mm || kind == SurgeryKind::mp) std::swap(s1, s2);
    std::vector<std::pair<int, bool>> pts;
    for (int t = s1 - 1; t != (s2 - 1 + n) % n; t = (t + 1) % n) pts.push_back({seq[t].column, seq[t].up});
    r.result.kind = kind;
    r.result.sequence = rerank(pts);
    r.result.fills = fills_like(r.result.sequence, l);
    r.non_filling = !r.result.fills;
    if (r.result.fills) {
        r.result.ladder = try_ladder(remove_bigons(r.result.sequence));
        if (r.result.ladder) {
            r.F_after = decomposition(build_complex(*r.result.ladder)).F;
            r.census_changed = census_differs(r.F_before, r.F_after);
        } else {
            r.non_filling = true;
        }
    }
    return r;
}

}  // namespace curvekit
