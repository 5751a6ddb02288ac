#include "curvekit/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <array>
#include <set>

namespace curvekit {

const char* mode_name(GraphMode m) { return m == GraphMode::nonseparating ? "nonseparating" : "essential"; }

bool within_hempel_bound(int d, int i) {
    if (i <= 0) return d <= 1;
    return d <= 2.0 * std::log2(static_cast<double>(i)) + 2.0 + 1e-9;
}

namespace {

void require_small_faces(const SurfaceComplex& c) {
    for (const auto& f : c.faces)
        if (f.size() > 6)
            throw Error(Errc::unsupported_decomposition, "distance needs a decomposition of 4-gons and 6-gons only");
}

EnumerateOptions enum_opts(int bound, const DistanceOptions& opt, bool small = true) {
    EnumerateOptions e;
    e.bound = bound;
    e.nonseparating_only = opt.mode == GraphMode::nonseparating;
    e.require_small_faces = small;
    return e;
}

CurveSet single(const SurfaceComplex& c, const TransverseCurve& t) { return CurveSet::stack(c, {t}); }

// a curve t disjoint from v (or w) whose union with the other one leaves a
// non-disc region, together with a curve in that region
std::optional<std::pair<TransverseCurve, TransverseCurve>> two_step(const SurfaceComplex& c, Curve from,
                                                                    const DistanceOptions& opt, bool small) {
    std::optional<std::pair<TransverseCurve, TransverseCurve>> out;
    CurveSelection other;
    (from == Curve::v ? other.w : other.v) = true;
    for_each_disjoint_curve(c, from, enum_opts(2, opt, small), [&](const TransverseCurve& t) {
        CurveSet s = single(c, t);
        if (complement(c, s, other).all_discs()) return true;
        auto more = curve_in_complement(c, s, other);
        if (!more) return true;
        out = std::make_pair(t, more->curves.back());
        return false;
    });
    return out;
}

std::vector<TransverseCurve> collect(const SurfaceComplex& c, Curve base, const EnumerateOptions& e) {
    std::vector<TransverseCurve> out;
    for_each_disjoint_curve(c, base, e, [&](const TransverseCurve& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

// distance-4 path through a pair (v1, v3) whose union does not fill
std::optional<GeodesicPath> witness_pair(const SurfaceComplex& c, const DistanceOptions& opt) {
    for (int b1 = 1; b1 <= 3; ++b1)
        for (int b3 = 1; b3 <= 2; ++b3) {
            auto ones = collect(c, Curve::v, enum_opts(b1, opt));
            auto threes = collect(c, Curve::w, enum_opts(b3, opt));
            for (const auto& a : ones)
                for (const auto& b : threes) {
                    CurveSet s = reduce_bigons(c, CurveSet::stack(c, {a, b}), 0);
                    if (geometric_count(c, s, 0, 1) == 0) continue;
                    if (complement(c, s).all_discs()) continue;
                    auto mid = curve_in_complement(c, s);
                    if (!mid) continue;
                    // move to the frame of v1 and pick v3 there
                    Frame fr = reframe(c, *mid, 0, {2});
                    CurveSelection sel;
                    sel.w = true;
                    auto last = curve_in_complement(fr.complex, fr.curves, sel);
                    if (!last) continue;
                    GeodesicPath p;
                    p.curves = {a, fr.curves.curves[0], last->curves.back()};
                    p.frame = std::move(fr);
                    return p;
                }
        }
    return std::nullopt;
}

}  // namespace

DistanceResult distance(const Ladder& l, const DistanceOptions& opt) {
    if (opt.max_d > 4) throw Error(Errc::unsupported, "distance search is capped at 4");
    SurfaceComplex c = build_complex(l);
    require_small_faces(c);
    DistanceResult r;
    r.mode = opt.mode;
    auto at_least = [&](int d) {
        r.exact = false;
        r.d = d;
        return r;
    };
    // a ladder always fills
    if (opt.max_d < 3) return at_least(3);
    if (auto t = two_step(c, Curve::v, opt, true)) {
        r.d = 3;
        r.witness.curves = {t->first, t->second};
        return r;
    }
    if (opt.max_d < 4) return at_least(4);
    if (auto p = witness_pair(c, opt)) {
        r.d = 4;
        r.witness = std::move(*p);
        return r;
    }
    // exhaustive: some v1 at distance 3 from w
    std::optional<GeodesicPath> found;
    for_each_disjoint_curve(c, Curve::v, enum_opts(3, opt), [&](const TransverseCurve& t) {
        Frame fr = reframe(c, single(c, t), 0, {});
        auto tail = two_step(fr.complex, Curve::v, opt, false);
        if (!tail) return true;
        GeodesicPath p;
        p.curves = {t, tail->first, tail->second};
        p.frame = std::move(fr);
        found = std::move(p);
        return false;
    });
    if (!found) return at_least(5);
    r.d = 4;
    r.witness = std::move(*found);
    return r;
}

DistanceResult distance(const SurfaceComplex& c, const TransverseCurve& a, const TransverseCurve& b,
                        const DistanceOptions& opt) {
    DistanceResult r;
    r.mode = opt.mode;
    CurveSet s = reduce_bigons(c, CurveSet::stack(c, {a, b}));
    if (geometric_count(c, s, 0, 1) == 0) {
        // isotopic curves cobound an annulus
        for (const auto& comp : complement(c, s).components)
            if (comp.kind == "annulus") {
                auto bc = comp.boundary_curves;
                std::sort(bc.begin(), bc.end());
                if (bc == std::vector<int>{0, 1}) {
                    r.d = 0;
                    return r;
                }
            }
        r.d = 1;
        return r;
    }
    if (!complement(c, s).all_discs()) {
        if (opt.max_d < 2) {
            r.exact = false;
            r.d = opt.max_d + 1;
            return r;
        }
        r.d = 2;
        if (auto m = curve_in_complement(c, s)) r.witness.curves = {m->curves.back()};
        return r;
    }
    return distance(from_v_sequence(pair_sequence(c, s, 0, 1)), opt);
}

}  // namespace curvekit

namespace curvekit {

bool verify_path(const SurfaceComplex& c, const GeodesicPath& p) {
    const auto& cv = p.curves;
    if (cv.empty()) return true;
    if (!disjoint_from(c, cv[0], Curve::v)) return false;
    if (!p.frame) {
        for (size_t k = 0; k + 1 < cv.size(); ++k)
            if (intersection_number(c, cv[k], cv[k + 1]) != 0) return false;
        return disjoint_from(c, cv.back(), Curve::w);
    }
    const Frame& fr = *p.frame;
    if (fr.ladder != from_v_sequence(sequence_against(c, cv[0], Curve::w))) return false;
    if (cv.size() == 1) return disjoint_from(c, cv[0], Curve::w);
    const auto& c1 = fr.complex;
    if (!disjoint_from(c1, cv[1], Curve::v)) return false;
    for (size_t k = 1; k + 1 < cv.size(); ++k)
        if (intersection_number(c1, cv[k], cv[k + 1]) != 0) return false;
    return disjoint_from(c1, cv.back(), Curve::w);
}

EfficiencyReport is_efficient(const SurfaceComplex& c, const GeodesicPath& p) {
    if (!verify_path(c, p)) throw Error(Errc::not_a_path, "consecutive curves are not disjoint");
    EfficiencyReport r;
    int d = p.length();
    if (d < 3) {
        r.efficient = true;
        return r;
    }
    if (d > 4) throw Error(Errc::unsupported, "efficiency checks stop at length 4");
    const auto& cv = p.curves;
    auto add = [&](std::string sub, std::string frame, int curve, int bound, int load) {
        r.checks.push_back({std::move(sub), std::move(frame), curve, bound, load});
    };
    add("v..w", "Dec(v,w)", 1, d - 1, reference_load(c, cv[0], Curve::v));
    if (d == 3) {
        add("w..v", "Dec(w,v)", 2, 2, reference_load(c, cv[1], Curve::w));
    } else {
        if (!p.frame) throw Error(Errc::unsupported, "the reversed tail needs v2, v3 carried by Dec(v1,w)");
        const auto& c1 = p.frame->complex;
        add("v1..w", "Dec(v1,w)", 2, 2, reference_load(c1, cv[1], Curve::v));
        add("w..v1", "Dec(w,v1)", 3, 2, reference_load(c1, cv[2], Curve::w));
    }
    r.efficient = std::all_of(r.checks.begin(), r.checks.end(), [](const EfficiencyCheck& x) { return x.ok(); });
    return r;
}

namespace {

std::vector<GeodesicPath> disjoint_pairs(const SurfaceComplex& c, const DistanceOptions& opt, bool small,
                                         size_t limit, bool& truncated) {
    auto first = collect(c, Curve::v, enum_opts(2, opt, small));
    auto last = collect(c, Curve::w, enum_opts(2, opt, small));
    std::vector<GeodesicPath> out;
    for (const auto& a : first)
        for (const auto& b : last) {
            if (intersection_number(c, a, b) != 0) continue;
            if (limit && out.size() >= limit) {
                truncated = true;
                return out;
            }
            GeodesicPath p;
            p.curves = {a, b};
            out.push_back(std::move(p));
        }
    return out;
}

}  // namespace

GeodesicSet enumerate_efficient_geodesics(const Ladder& l, const GeodesicOptions& opt) {
    DistanceResult dr = distance(l, opt.distance);
    if (!dr.exact) throw Error(Errc::unsupported, "distance beyond the search cap");
    SurfaceComplex c = build_complex(l);
    GeodesicSet set;
    set.d = dr.d;
    if (dr.d == 3) {
        set.paths = disjoint_pairs(c, opt.distance, true, opt.limit, set.truncated);
        return set;
    }
    for_each_disjoint_curve(c, Curve::v, enum_opts(3, opt.distance), [&](const TransverseCurve& t) {
        Frame fr = reframe(c, single(c, t), 0, {});
        size_t room = opt.limit ? opt.limit - set.paths.size() : 0;
        bool cut = false;
        for (auto& tail : disjoint_pairs(fr.complex, opt.distance, false, room ? room : 0, cut)) {
            GeodesicPath p;
            p.curves = {t, tail.curves[0], tail.curves[1]};
            p.frame = fr;
            set.paths.push_back(std::move(p));
        }
        if (cut || (opt.limit && set.paths.size() >= opt.limit)) {
            set.truncated = true;
            return false;
        }
        return true;
    });
    return set;
}

IntersectionSequence intersection_sequence(const SurfaceComplex& c, const GeodesicPath& p, int k) {
    if (p.frame) throw Error(Errc::unsupported, "intersection sequences need every curve in Dec(v,w)");
    if (k < 1 || k > c.n) throw Error(Errc::invalid_site, "no w-edge " + std::to_string(k));
    int inner = std::max(0, p.length() - 2);
    std::vector<TransverseCurve> list(p.curves.begin(), p.curves.begin() + inner);
    CurveSet s = CurveSet::stack(c, list);
    int left = (k - 2 + c.n) % c.n;
    int ed = 4 * left + E;
    IntersectionSequence out;
    out.arc = k;
    auto it = s.order.find(edge_key(c, ed));
    if (it == s.order.end()) return out;
    auto pts = it->second;
    if (edge_key(c, ed) != ed) std::reverse(pts.begin(), pts.end());
    for (auto q : pts) {
        out.entries.push_back(q.curve + 1);
        out.provenance.push_back(q.index);
    }
    return out;
}

IntersectionSequence extended_sequence(const SurfaceComplex& c, const GeodesicPath& p, int k) {
    return extend(intersection_sequence(c, p, k), intersection_sequence(c, p, k % c.n + 1), c.n);
}

}  // namespace curvekit

namespace curvekit {

std::string IminTable::key(int d, int g, const std::vector<int>& above_4) {
    std::vector<int> v = above_4;
    size_t len = g >= 2 ? static_cast<size_t>(4 * g - 4) : v.size();
    while (v.size() > len && v.back() == 0) v.pop_back();
    v.resize(std::max(len, v.size()), 0);
    std::string s = std::to_string(d) + "," + std::to_string(g) + ",[";
    for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "]";
}

IminTable IminTable::builtin() {
    IminTable t;
    const std::string src = "MICC census, genus 2";
    for (auto v : {std::vector<int>{4, 0, 0, 0}, {2, 1, 0, 0}, {0, 2, 0, 0}})
        t.entries_[key(4, 2, v)] = {true, 12, src};
    for (auto v : {std::vector<int>{0, 0, 0, 1}, {1, 0, 1, 0}})
        t.entries_[key(4, 2, v)] = {false, 13, src};
    return t;
}

void IminTable::merge(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(Errc::syntax, "i_min table must be a JSON object");
    for (auto& [k, e] : j.items()) {
        if (!e.is_object() || !e.contains("kind") || !e.contains("value"))
            throw Error(Errc::syntax, "i_min entry " + k + " needs kind and value");
        std::string kind = e.at("kind").get<std::string>();
        if (kind != "exact" && kind != "lower_bound") throw Error(Errc::syntax, "i_min kind " + kind);
        // normalise the key through the parser below
        int d = 0, g = 0;
        std::vector<int> vec;
        {
            auto c1 = k.find(','), c2 = k.find(',', c1 + 1);
            auto lb = k.find('['), rb = k.find(']');
            if (c1 == std::string::npos || c2 == std::string::npos || lb == std::string::npos ||
                rb == std::string::npos || lb < c2)
                throw Error(Errc::syntax, "bad i_min key " + k);
            try {
                d = std::stoi(k.substr(0, c1));
                g = std::stoi(k.substr(c1 + 1, c2 - c1 - 1));
                std::string body = k.substr(lb + 1, rb - lb - 1);
                size_t pos = 0;
                while (pos < body.size()) {
                    size_t nx = body.find(',', pos);
                    if (nx == std::string::npos) nx = body.size();
                    vec.push_back(std::stoi(body.substr(pos, nx - pos)));
                    pos = nx + 1;
                }
            } catch (const std::logic_error&) {
                throw Error(Errc::syntax, "bad i_min key " + k);
            }
        }
        entries_[key(d, g, vec)] = {kind == "exact", e.at("value").get<int>(), e.value("source", std::string())};
    }
}

void IminTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::syntax, "cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::syntax, path + ": " + e.what());
    }
    merge(j);
}

std::optional<IminEntry> IminTable::lookup(int d, int g, const std::vector<int>& above_4) const {
    auto it = entries_.find(key(d, g, above_4));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

nlohmann::json to_json(const IminEntry& e) {
    return {{"kind", e.exact ? "exact" : "lower_bound"}, {"value", e.value}, {"source", e.source}};
}

std::vector<int> spiral_arcs(const SurfaceComplex& c, const Spiral& sp) {
    std::set<int> faces;
    for (int t : sp.interior) faces.insert(sp.band.faces[t]);
    if (faces.empty()) faces.insert(sp.band.faces.begin(), sp.band.faces.end());
    std::vector<int> out;
    for (int k = 1; k <= c.n; ++k) {
        int left = (k - 2 + c.n) % c.n;
        if (faces.count(c.face_of[4 * left + E])) out.push_back(k);
    }
    return out;
}

bool stacked_region_available(const SurfaceComplex& c, const Spiral& sp, const GeodesicSet& set) {
    if (set.paths.empty()) return false;
    for (int k : spiral_arcs(c, sp)) {
        std::vector<DotGraph> layers;
        for (const auto& p : set.paths) layers.push_back(build_dot_graph(extended_sequence(c, p, k)));
        try {
            if (!common_regions(stack(layers)).empty()) return true;
        } catch (const Error&) {
        }
    }
    return false;
}

int ReductionTrace::accepted() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const ReductionStep& s) { return s.accepted; }));
}

ReductionTrace reduce_intersections(const Ladder& l, const IminTable& table, const ReduceOptions& opt) {
    ReductionTrace tr;
    tr.start = tr.result = l;
    {
        SurfaceComplex c = build_complex(l);
        for (const auto& f : c.faces)
            if (f.size() > 6) {
                tr.supported = false;
                return tr;
            }
    }
    DistanceResult d0 = distance(l, opt.distance);
    tr.d = d0.d;
    tr.d_exact = d0.exact;
    if (!d0.exact) return tr;
    Ladder cur = l;
    while (static_cast<int>(tr.steps.size()) < opt.max_steps) {
        SurfaceComplex c = build_complex(cur);
        auto spirals = find_spirals(c);
        if (spirals.empty()) break;
        Decomposition dec = decomposition(c);
        auto entry = table.lookup(tr.d, c.genus, dec.vector_above_4());
        std::optional<GeodesicSet> set;
        bool progressed = false;
        for (size_t si = 0; si < spirals.size() && !progressed; ++si) {
            const Spiral& sp = spirals[si];
            std::optional<SurgeryResult> res;
            int edge = 0;
            for (int e : sp.band.w_edges) {
                try {
                    res = spiral_surgery(cur, sp, e);
                    edge = e;
                    break;
                } catch (const Error&) {
                }
            }
            if (!res) continue;
            ReductionStep st;
            st.spiral = static_cast<int>(si);
            st.w_edge = edge;
            st.width = sp.band.width;
            st.i_before = cur.n;
            st.i_after = res->ladder.n;
            st.F_before = dec.F;
            st.F_after = res->trace.decomposition_after;
            st.d_before = tr.d;
            st.ladder_before = serialize(cur);
            st.ladder_after = serialize(res->ladder);
            if (entry) st.i_min = entry->value;
            auto recheck = [&] {
                DistanceResult d1 = distance(res->ladder, opt.distance);
                st.d_after = d1.d;
                st.d_after_exact = d1.exact;
                return d1.exact && d1.d == tr.d;
            };
            if (entry && st.width > cur.n - entry->value) {
                st.reason = "width_bound";
                st.hypothesis = "not_evaluated";
                if (opt.diagnose_refusals) recheck();
                tr.steps.push_back(st);
                continue;
            }
            if (tr.d == 3) {
                if (!set) set = enumerate_efficient_geodesics(cur, {opt.distance, 0});
                bool held = stacked_region_available(c, sp, *set);
                st.hypothesis = held ? "held" : "failed";
                if (!held) {
                    st.reason = "no_stacked_region";
                    if (opt.diagnose_refusals) recheck();
                    tr.steps.push_back(st);
                    continue;
                }
            } else {
                st.hypothesis = "not_evaluated";
            }
            if (recheck()) {
                st.accepted = true;
                st.reason = "accepted";
                cur = res->ladder;
                progressed = true;
            } else {
                st.reason = "distance_veto";
            }
            tr.steps.push_back(st);
        }
        if (!progressed) break;
    }
    tr.result = cur;
    return tr;
}

namespace {

nlohmann::json curve_json(const TransverseCurve& t) { return {{"crossings", t.size()}, {"darts", t.darts}}; }

}  // namespace

nlohmann::json to_json(const DistanceResult& r) {
    nlohmann::json j{{"kind", r.kind()}, {"d", r.d}, {"mode", mode_name(r.mode)}};
    if (r.exact) {
        nlohmann::json w{{"length", r.witness.length()}, {"framed", r.witness.frame.has_value()}};
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& t : r.witness.curves) cs.push_back(curve_json(t));
        w["curves"] = cs;
        if (r.witness.frame) w["frame_ladder"] = serialize(r.witness.frame->ladder);
        j["witness"] = w;
    }
    return j;
}

nlohmann::json to_json(const ReductionStep& s) {
    nlohmann::json j{{"spiral", s.spiral},       {"w_edge", s.w_edge},         {"width", s.width},
                     {"accepted", s.accepted},   {"reason", s.reason},         {"hypothesis", s.hypothesis},
                     {"i_before", s.i_before},   {"i_after", s.i_after},       {"F_before", s.F_before},
                     {"F_after", s.F_after},     {"d_before", s.d_before},     {"ladder_before", s.ladder_before},
                     {"ladder_after", s.ladder_after}};
    j["i_min"] = s.i_min ? nlohmann::json(*s.i_min) : nlohmann::json(nullptr);
    if (s.d_after) j["d_after"] = {{"kind", s.d_after_exact ? "EXACT" : "AT_LEAST"}, {"d", *s.d_after}};
    else j["d_after"] = nullptr;
    return j;
}

nlohmann::json to_json(const ReductionTrace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : t.steps) steps.push_back(to_json(s));
    return {{"start", serialize(t.start)}, {"result", serialize(t.result)}, {"d", t.d},
            {"d_kind", t.d_exact ? "EXACT" : "AT_LEAST"}, {"supported", t.supported}, {"accepted", t.accepted()}, {"steps", steps}};
}

namespace {

bool essential_simple(const SurfaceComplex& c, const TransverseCurve& t) {
    if (t.size() == 0) return false;
    CurveSet s = CurveSet::stack(c, {t});
    if (!crossings(c, s, 0, 0).empty()) return false;
    for (const auto& comp : complement(c, s).components)
        if (comp.euler == 1 && comp.boundaries == 1) return false;
    return true;
}

struct Cutter {
    const SurfaceComplex& c;
    const CurveSet& A;
    int R;  // column between the two arcs

    // position of every point of a curve along its edge
    std::map<std::pair<int, int>, int> rank;  // (curve, index) -> place in its edge list

    Cutter(const SurfaceComplex& cx, const CurveSet& a, int r) : c(cx), A(a), R(r) {
        for (const auto& [key, pts] : A.order)
            for (size_t q = 0; q < pts.size(); ++q) rank[{pts[q].curve, pts[q].index}] = static_cast<int>(q);
    }

    bool enters_below(int d) const {
        int left = c.port(d) == E ? d / 4 : c.alpha[d] / 4;
        return c.alpha[d] == 4 * left + E;
    }

    // the part of curve a from the cut near point i forward to the cut near
    // point j, closed along the reference arcs below w
    TransverseCurve piece(int a, int i, int j, bool forward_closing) const {
        const auto& t = A.curves[a];
        int m = t.size();
        int ci = 2 * i + (enters_below(t.darts[i]) ? 1 : -1);
        int cj = 2 * j + (enters_below(t.darts[j]) ? 1 : -1);
        int span = ((cj - ci) % (2 * m) + 2 * m) % (2 * m);
        int count = span / 2;
        int start = (ci + 1) / 2;
        std::vector<std::pair<int, int>> pts;  // (dart, place along edge)
        for (int q = 0; q < count; ++q) {
            int x = (start + q) % m;
            pts.push_back({t.darts[x], rank.at({a, x})});
        }
        int wi = c.edge[t.darts[i]].label, wj = c.edge[t.darts[j]].label;
        if (wi != wj) {
            int down = 4 * R + S;
            int d = forward_closing ? down : c.alpha[down];
            bool front = edge_key(c, down) == down;
            pts.push_back({d, front ? -1 : 1 << 20});
        }
        TransverseCurve out;
        std::map<int, std::vector<std::pair<int, int>>> by_edge;  // key -> (place, position in curve)
        for (size_t q = 0; q < pts.size(); ++q) {
            out.darts.push_back(pts[q].first);
            by_edge[edge_key(c, pts[q].first)].push_back({pts[q].second, static_cast<int>(q)});
        }
        out.slots.assign(pts.size(), 0);
        for (auto& [key, list] : by_edge) {
            std::sort(list.begin(), list.end());
            for (size_t r = 0; r < list.size(); ++r) out.slots[list[r].second] = static_cast<int>(r);
        }
        return out;
    }
};

}  // namespace

SimultaneousResult simultaneous_surgery(const SurfaceComplex& c, const GeodesicPath& p, int k, const Region& region) {
    if (p.frame) throw Error(Errc::unsupported, "simultaneous surgery needs every curve in Dec(v,w)");
    if (region.kind == RegionKind::hex1 || region.kind == RegionKind::hex2)
        throw Error(Errc::unsupported, "hexagonal regions are not surgered");
    int n = c.n;
    IntersectionSequence seq = extended_sequence(c, p, k);
    IntersectionSequence st = sawtooth(seq);
    DotGraph g = build_dot_graph(seq);
    bool found = false;
    for (const auto& r : g.regions) found = found || r == region;
    if (!found) throw Error(Errc::region_invalid, "region does not belong to this dot graph");
    if (!region.admissible()) throw Error(Errc::region_invalid, "region is not empty and unpierced");

    // horizontal surgery arcs (height, x, x'), x positions 1-based
    std::vector<std::tuple<int, int, int>> arcs;
    if (region.kind == RegionKind::degenerate_00) {
        arcs.push_back({0, region.x0, region.x1});
    } else {
        const Run &a = g.runs[region.left], &b = g.runs[region.right];
        for (int y = a.lo; y <= a.hi; ++y) arcs.push_back({y, a.x0 + y - a.lo, b.x0 + y - b.lo});
    }

    int L = (k - 2 + n) % n, R = (k - 1) % n, R2 = k % n;
    auto vs = v_sequence(c.ladder);
    std::vector<bool> up(n);
    for (const auto& x : vs) up[x.column] = x.up;
    std::vector<int> zero_no(st.entries.size() + 1, 0);
    for (size_t x = 0, z = 0; x < st.entries.size(); ++x)
        if (st.entries[x] == 0) zero_no[x + 1] = static_cast<int>(++z);

    // pushoff side so that v's copy meets the arcs where surgery needs it
    int side = -1;
    auto east = [&](int j, int s) { return s == -1 ? up[j] : !up[j]; };
    for (auto [y, xa, xb] : arcs) {
        if (y != 0) continue;
        if (zero_no[xa] == 1) side = east(L, -1) ? -1 : 1;
        else if (zero_no[xb] == 3) side = !east(R2, -1) ? -1 : 1;
    }
    TransverseCurve pv = pushoff_of(c, Curve::v, side);
    // column each crossing of the pushoff runs next to
    std::vector<int> beside(pv.size(), -1);
    for (int delta = 0; delta < n && beside[0] < 0; ++delta) {
        bool ok = pv.size() == n;
        for (int t = 0; t < pv.size() && ok; ++t) {
            int j = vs[(t + delta) % n].column;
            int want = east(j, side) ? 4 * j + E : 4 * j + W;
            ok = edge_key(c, pv.darts[t]) == edge_key(c, want);
        }
        if (ok)
            for (int t = 0; t < pv.size(); ++t) beside[t] = vs[(t + delta) % n].column;
    }
    if (beside[0] < 0) throw std::logic_error("pushoff does not follow v");

    CurveSet base = CurveSet::stack(c, p.curves);
    CurveSet A;
    A.curves.push_back(pv);
    for (const auto& t : p.curves) A.curves.push_back(t);
    for (const auto& [key, pts] : base.order)
        for (auto q : pts) A.order[key].push_back({q.curve + 1, q.index});
    for (int t = 0; t < pv.size(); ++t) {
        int key = edge_key(c, pv.darts[t]);
        auto& list = A.order[key];
        if (SurfaceComplex::column(key) == beside[t]) list.insert(list.begin(), {0, t});
        else list.push_back({0, t});
    }
    A.rebuild_slots(c);
    Cutter cut(c, A, R);

    auto spot = [&](int x) -> std::pair<int, int> {
        int y = st.entries[x - 1];
        if (y > 0) return {y, st.provenance[x - 1]};
        int col = zero_no[x] == 1 ? L : zero_no[x] == 2 ? R : R2;
        for (int t = 0; t < pv.size(); ++t)
            if (beside[t] == col) return {0, t};
        throw std::logic_error("no pushoff crossing near a zero");
    };

    SimultaneousResult res;
    res.i_before = n;
    int m = static_cast<int>(arcs.size());
    std::vector<std::array<TransverseCurve, 2>> options;
    for (auto [y, xa, xb] : arcs) {
        auto [a, i] = spot(xa);
        auto [a2, j] = spot(xb);
        if (a != a2) throw std::logic_error("surgery arc joins two curves");
        options.push_back({cut.piece(a, i, j, false), cut.piece(a, j, i, true)});
    }
    int d = p.length();
    std::vector<TransverseCurve> best;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<TransverseCurve> P = A.curves;
        bool ok = true;
        for (int e = 0; e < m && ok; ++e) {
            int y = std::get<0>(arcs[e]);
            P[y] = options[e][(mask >> e) & 1];
            ok = essential_simple(c, P[y]);
        }
        if (!ok) continue;
        if (best.empty()) best = P;
        for (int y = 0; y + 1 < d && ok; ++y) ok = intersection_number(c, P[y], P[y + 1]) == 0;
        ok = ok && disjoint_from(c, P[d - 1], Curve::w);
        if (ok) {
            best = P;
            res.path_ok = true;
            break;
        }
    }
    if (best.empty()) best = A.curves;
    for (auto [y, xa, xb] : arcs) {
        (void)xa;
        (void)xb;
        res.surgered.push_back(y);
        if (y == 0) res.v_surgered = true;
    }
    res.v_curve = best[0];
    res.curves.assign(best.begin() + 1, best.end());
    auto sw = sequence_against(c, res.v_curve, Curve::w);
    if (fills_like(sw, c.ladder)) {
        sw = remove_bigons(sw);
        try {
            res.v_ladder = from_v_sequence(sw);
        } catch (const Error&) {
        }
    }
    res.i_after = static_cast<int>(sw.size());
    return res;
}

}  // namespace curvekit
