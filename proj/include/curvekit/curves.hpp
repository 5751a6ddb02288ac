#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvekit/surface.hpp"

namespace curvekit {

// Edges of Dec(v,w) are keyed by their lower dart and run from the column
// of that dart to the column of the other one.
inline int edge_key(const SurfaceComplex& c, int d) { return std::min(d, c.alpha[d]); }

// A closed curve transverse to v ∪ w. Crossing t passes from
// face_of[darts[t]] into face_of[alpha[darts[t]]]; slots[t] is the position
// of that crossing along its edge among the curve's own crossings.
struct TransverseCurve {
    std::vector<int> darts;
    std::vector<int> slots;

    int size() const { return static_cast<int>(darts.size()); }
    friend bool operator==(const TransverseCurve&, const TransverseCurve&) = default;
};

struct Segment {
    int face;
    int entry_dart, entry_slot;
    int exit_dart, exit_slot;
};
std::vector<Segment> segments(const SurfaceComplex& c, const TransverseCurve& t);

// Several curves with a shared order of crossings along every edge.
struct CurveSet {
    struct Point {
        int curve;
        int index;
    };
    std::vector<TransverseCurve> curves;
    std::map<int, std::vector<Point>> order;  // edge key -> points, in edge direction

    // curves placed one after another along each edge
    static CurveSet stack(const SurfaceComplex& c, std::vector<TransverseCurve> curves);
    void rebuild_slots(const SurfaceComplex& c);
};

// curve plus a parallel copy on its right
CurveSet with_pushoff(const SurfaceComplex& c, const TransverseCurve& t);

struct ReferenceArc {
    int face = 0;
    int v_side_a = 0, v_side_b = 0;  // v labels joined
    int k = 0;                        // parallel w-arc
};
std::vector<ReferenceArc> reference_arcs(const SurfaceComplex& c);
// crossings of a curve with the reference arc parallel to w^k (curve disjoint from v)
int reference_count(const SurfaceComplex& c, const TransverseCurve& t, int k);

// crossings with each edge of the given curve
int crossings_with(const SurfaceComplex& c, const TransverseCurve& t, Curve which);
bool disjoint_from(const SurfaceComplex& c, const TransverseCurve& t, Curve which);

// v or w pushed slightly off itself to the left (+1) or right (-1)
TransverseCurve pushoff_of(const SurfaceComplex& c, Curve which, int side);

bool is_nonseparating(const SurfaceComplex& c, const TransverseCurve& t);

// Crossings between curves a and b of a set, in the geometric realization
// where every face is a convex polygon and arcs are straight chords.
struct CrossingPoint {
    int chord_a, chord_b;   // chord t joins crossings t and t+1
    double at_a, at_b;      // parameter along each chord
    bool a_left;            // a crosses b from its right to its left
};
std::vector<CrossingPoint> crossings(const SurfaceComplex& c, const CurveSet& s, int a, int b);

// Crossing sequence of curve a along curve b, in ladder form (b horizontal).
std::vector<Crossing> pair_sequence(const SurfaceComplex& c, const CurveSet& s, int a, int b);
// ... and of a curve against w (t disjoint from v) or v (t disjoint from w).
std::vector<Crossing> sequence_against(const SurfaceComplex& c, const TransverseCurve& t, Curve which);

// For curves already in minimal position: do they fill the surface?
bool fills(const SurfaceComplex& c, const std::vector<Crossing>& seq);

struct ComplementComponent {
    int euler = 0;
    int boundaries = 0;
    int genus = 0;
    std::string kind;  // disc, annulus, other
    std::vector<int> boundary_curves;  // per boundary: the curve it runs along, -1 if several
};
struct ComplementReport {
    std::vector<ComplementComponent> components;
    bool all_discs() const;
    int euler_total() const;
};

struct CurveSelection {
    bool v = false;
    bool w = false;
};
ComplementReport complement(const SurfaceComplex& c, const CurveSet& s, CurveSelection with = {});

// A nonseparating curve in the complement of the set (and v, w if selected),
// appended to the set; empty when every complementary region is a disc.
std::optional<CurveSet> curve_in_complement(const SurfaceComplex& c, const CurveSet& s, CurveSelection with = {});

// Dec(a, w) for curve a of the set, carrying the listed curves (each disjoint
// from a). Curve a must meet w minimally.
struct Frame {
    Ladder ladder;
    SurfaceComplex complex;
    CurveSet curves;
};
Frame reframe(const SurfaceComplex& c, const CurveSet& s, int a, const std::vector<int>& carry);

int intersection_number(const SurfaceComplex& c, const TransverseCurve& a, const TransverseCurve& b);
int intersection_number(const SurfaceComplex& c, const CurveSet& s);  // of curves 0 and 1
// curve `fixed` is never moved
CurveSet reduce_bigons(const SurfaceComplex& c, CurveSet s, int fixed = -1);
int geometric_count(const SurfaceComplex& c, const CurveSet& s, int a, int b);

// Most crossings of t with any arc joining two `base` sides of one face
// (the reference arcs, for 4-gons and 6-gons).
int reference_load(const SurfaceComplex& c, const TransverseCurve& t, Curve base);

// Essential curves disjoint from `base`, carried with at most `bound`
// crossings on every reference arc, one per isotopy class.
struct EnumerateOptions {
    int bound = 2;
    bool nonseparating_only = false;
    bool require_small_faces = true;  // reject decompositions with 8-gons or larger
};
// the callback returns false to stop
void for_each_disjoint_curve(const SurfaceComplex& c, Curve base, const EnumerateOptions& opt,
                             const std::function<bool(const TransverseCurve&)>& fn);
std::vector<TransverseCurve> enumerate_disjoint_curves(const SurfaceComplex& c, Curve base, int bound);

}  // namespace curvekit
