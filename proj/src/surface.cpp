#include "curvekit/surface.hpp"

#include <cmath>
#include <numeric>

namespace curvekit {

std::pair<int, int> SurfaceComplex::darts_of(EdgeRef e) const {
    if (!e.is_v) {
        int right = (e.label - 1) % n;  // column p_label
        int left = (right + n - 1) % n;
        int a = 4 * left + E, b = 4 * right + W;
        return {std::min(a, b), std::max(a, b)};
    }
    int found[2], m = 0;
    for (int j = 0; j < n && m < 2; ++j) {
        if (ladder.top[j] == e.label) found[m++] = 4 * j + N;
        if (ladder.bottom[j] == e.label) found[m++] = 4 * j + S;
    }
    return {found[0], found[1]};
}

int SurfaceComplex::v_dart(int column, int label) const {
    if (ladder.top[column] == label) return 4 * column + N;
    if (ladder.bottom[column] == label) return 4 * column + S;
    return -1;
}

RibbonFaces trace_ribbon(const std::vector<Crossing>& seq) {
    int n = static_cast<int>(seq.size());
    RibbonFaces r;
    r.n = n;
    r.alpha.assign(4 * n, -1);
    r.edge.assign(4 * n, {});
    for (int j = 0; j < n; ++j) {
        int nxt = (j + 1) % n;
        r.alpha[4 * j + E] = 4 * nxt + W;
        r.alpha[4 * nxt + W] = 4 * j + E;
        // w^{j+2} runs from p_{j+1} to p_{j+2}
        r.edge[4 * j + E] = r.edge[4 * nxt + W] = EdgeRef{false, (j + 1) % n + 1};
    }
    for (int s = 1; s <= n; ++s) {
        const auto& from = seq[(s + n - 2) % n];
        const auto& to = seq[s - 1];
        int a = 4 * from.column + (from.up ? N : S);
        int b = 4 * to.column + (to.up ? S : N);
        r.alpha[a] = b;
        r.alpha[b] = a;
        r.edge[a] = r.edge[b] = EdgeRef{true, s};
    }
    r.face_of.assign(4 * n, -1);
    r.pos_in_face.assign(4 * n, -1);
    for (int d0 = 0; d0 < 4 * n; ++d0) {
        if (r.face_of[d0] >= 0) continue;
        std::vector<int> cyc;
        int f = static_cast<int>(r.faces.size());
        for (int d = d0; r.face_of[d] < 0; d = SurfaceComplex::sigma(r.alpha[d])) {
            r.face_of[d] = f;
            r.pos_in_face[d] = static_cast<int>(cyc.size());
            cyc.push_back(d);
        }
        r.faces.push_back(std::move(cyc));
    }
    return r;
}

bool RibbonFaces::has_bigon() const {
    for (const auto& f : faces)
        if (f.size() == 2) return true;
    return false;
}

SurfaceComplex build_complex(const Ladder& l) {
    validate(l);
    SurfaceComplex c;
    static_cast<RibbonFaces&>(c) = trace_ribbon(v_sequence(l));
    c.ladder = l;
    for (const auto& f : c.faces)
        if (f.size() == 2)
            throw Error(Errc::bigon_found, "face through column " + std::to_string(f[0] / 4 + 1) + " is a bigon");
    int chi = c.chi();
    if (chi % 2 != 0 || chi > 2) throw std::logic_error("Euler characteristic gives non-integer genus");
    c.genus = (2 - chi) / 2;
    return c;
}

int Decomposition::count(int sides) const {
    int k = sides / 2;
    if (sides % 2 || k < 2 || k - 2 >= static_cast<int>(F.size())) return 0;
    return F[k - 2];
}

bool Decomposition::only_4_6() const {
    for (size_t k = 2; k < F.size(); ++k)
        if (F[k]) return false;
    return true;
}

std::vector<int> Decomposition::vector_above_4() const {
    return std::vector<int>(F.begin() + (F.empty() ? 0 : 1), F.end());
}

Decomposition decomposition(const SurfaceComplex& c) {
    Decomposition d;
    d.genus = c.genus;
    d.i = c.n;
    int g = c.genus;
    int kmax = std::max(2, 4 * g - 2);
    d.F.assign(kmax - 1, 0);
    for (const auto& face : c.faces) {
        int sides = static_cast<int>(face.size());
        if (sides % 2 || sides < 4 || sides / 2 > kmax)
            throw std::logic_error("face with " + std::to_string(sides) + " sides");
        ++d.F[sides / 2 - 2];
        std::vector<EdgeRef> s;
        for (int dart : face) s.push_back(c.edge[dart]);
        d.face_sides.push_back(std::move(s));
    }
    // identities relating genus, intersection number and polygon counts
    long lhs2 = 0, twice_i = 0, sides_total = 0;
    for (int k = 2; k <= kmax; ++k) {
        lhs2 += static_cast<long>(k - 2) * d.F[k - 2];
        twice_i += static_cast<long>(k) * d.F[k - 2];
        sides_total += 2L * k * d.F[k - 2];
    }
    if (lhs2 != 4L * g - 4) throw std::logic_error("4g-4 identity failed");
    if (twice_i != 2L * d.i) throw std::logic_error("intersection/face identity failed");
    if (sides_total != 4L * d.i) throw std::logic_error("edge count identity failed");
    if (d.only_4_6() && d.F[0] != d.i - 6 * g + 6) throw std::logic_error("F4 identity failed");
    d.hempel_bound = 2.0 * std::log2(static_cast<double>(d.i)) + 2.0;
    return d;
}

bool check_nonseparating(const SurfaceComplex& c, Curve which) {
    // faces stay glued across edges of the other curve
    std::vector<int> parent(c.num_faces());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = c.num_faces();
    for (int d = 0; d < 4 * c.n; ++d) {
        if (c.edge[d].is_v == (which == Curve::v)) continue;
        int a = find(c.face_of[d]), b = find(c.face_of[c.alpha[d]]);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

std::vector<Bicorn> find_bicorns(const SurfaceComplex& c) {
    std::vector<Bicorn> out;
    int n = c.n;
    if (n < 3) return out;
    auto seq = v_sequence(c.ladder);
    for (int a = 1; a <= n; ++a) {
        const auto& p = seq[wrap(a - 1, n) - 1];
        const auto& q = seq[a - 1];
        int b = 0;
        if ((p.column + 1) % n == q.column) b = wrap(q.column + 1, n);
        else if ((q.column + 1) % n == p.column) b = wrap(p.column + 1, n);
        if (!b) continue;
        out.push_back({a, b, p.up == q.up, p.up});
    }
    return out;
}

bool equivalent(const Ladder& a, const Ladder& b) {
    if (a.n != b.n) return false;
    auto da = decomposition(build_complex(a));
    auto db = decomposition(build_complex(b));
    if (da.F != db.F) return false;
    return canonical_form(a).canonical_ladder == canonical_form(b).canonical_ladder;
}

}  // namespace curvekit
