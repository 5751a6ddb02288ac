#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvekit/surface.hpp"

namespace curvekit {

// A chain of 4-gons glued along w-edges.
struct Band {
    std::vector<int> faces;    // rectangle face ids, in order
    std::vector<int> w_edges;  // w labels; faces[t] lies between w_edges[t] and w_edges[t+1]
    std::vector<int> side_a;   // v label of each rectangle on one long side
    std::vector<int> side_b;   // and on the other
    bool closed = false;
    int length = 0;
    int m_v = 0;
    int width = 0;
};

enum class SurgeryKind { pp, mm, pm, mp };  // ++, --, +-, -+
const char* kind_name(SurgeryKind k);
std::optional<SurgeryKind> parse_kind(const std::string& s);

struct Spiral {
    Band band;
    SurgeryKind kind = SurgeryKind::pm;  // the coherent kind forced by winding
    int winding = 1;                     // +1 when kind is +-, -1 otherwise
    std::vector<int> interior;           // indices into band.faces
    std::vector<int> barrier;
    int multiplicity = 1;                // size of the interleaving group it belongs to
};

std::vector<Band> find_bands(const SurfaceComplex& c);
std::vector<Spiral> find_spirals(const SurfaceComplex& c);

// Editable view of a pair: the crossings in order along w and along v.
struct PairModel {
    std::vector<int> worder;
    std::vector<int> vorder;
    std::vector<char> up;  // by node id

    static PairModel from(const Ladder& l);
    std::vector<Crossing> sequence() const;
    Ladder ladder() const { return from_v_sequence(sequence()); }
    int size() const { return static_cast<int>(vorder.size()); }
};

struct SurgeryTrace {
    std::string op;
    int site = 0;  // w label of the surgery edge, or v label of a bicorn
    int width = 0;
    int i_before = 0;
    int i_after = 0;
    int inverse_site = 0;  // w label where spiral surgery undoes an addition
    std::vector<int> decomposition_before;
    std::vector<int> decomposition_after;
};

struct SurgeryResult {
    Ladder ladder;
    SurgeryTrace trace;
};

// Ladder-level description of a surgery of v along a w-edge.
struct EdgeSite {
    int w_edge = 0;
    int left_col = 0, right_col = 0;  // 0-based columns joined by the edge
    int s_left = 0, s_right = 0;      // 1-based k of each column
    bool up_left = true, up_right = true;
    bool coherent() const { return up_left == up_right; }
};
EdgeSite edge_site(const Ladder& l, int w_edge);

// kinds admissible for surgery of v along the w-edge
std::vector<SurgeryKind> classify_surgery(const Ladder& l, int w_edge);

SurgeryResult spiral_surgery(const Ladder& l, const Spiral& sp, int w_edge);
SurgeryResult spiral_surgery(const Ladder& l, int w_edge);  // finds the spiral

struct AdditionSite {
    std::optional<Bicorn> bicorn;
    std::optional<int> band_edge;  // a w label inside a band
};
SurgeryResult spiral_addition(const Ladder& l, const AdditionSite& site, int m);

// Crossing sequences against w, in the same form v_sequence uses.
int ribbon_chi(const std::vector<Crossing>& seq);
bool fills_like(const std::vector<Crossing>& seq, const Ladder& reference);
// Drops innermost bigons with w; only meaningful when the sequence fills.
std::vector<Crossing> remove_bigons(std::vector<Crossing> seq);

struct SurgeredCurve {
    SurgeryKind kind = SurgeryKind::pp;
    std::vector<Crossing> sequence;  // before bigon removal
    bool fills = false;
    std::optional<Ladder> ladder;    // reduced, when it fills
};

// Surgery of v along the w-edge with the given label. ++ and -- hand back
// both components, the requested one first.
std::vector<SurgeredCurve> surger(const Ladder& l, int w_edge, SurgeryKind kind);

struct RectangleCheck {
    int face = 0;
    int v_sides[2] = {0, 0};
    bool parallel = false;    // v runs the same way along both long sides
    bool admissible = false;  // kind matches the side orientations
    SurgeryKind kind = SurgeryKind::pp;
    std::vector<int> F_before;
    SurgeredCurve result;
    std::vector<int> F_after;  // empty unless result fills
    bool census_changed = false;
    bool non_filling = false;
    // surgery went through and kept the 2k-gon census, k > 2
    bool preserved() const { return admissible && !non_filling && !census_changed; }
};

// Surgery of v along the reference arc crossing the 4-gon `face`.
RectangleCheck forbidden_rectangle_surgery_check(const Ladder& l, int face, SurgeryKind kind);

}  // namespace curvekit
