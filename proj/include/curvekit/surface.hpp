#pragma once

#include <compare>
#include <vector>

#include "curvekit/ladder.hpp"

namespace curvekit {

// ports in counterclockwise order around p_j
enum Port { W = 0, S = 1, E = 2, N = 3 };

struct EdgeRef {
    bool is_v = false;
    int label = 0;  // 1-based: v^label or w^label
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// Ribbon graph of v ∪ w. Dart 4*j+port sits at column j; faces are traced by
// d -> sigma(alpha(d)), which keeps the face on the right.
struct RibbonFaces {
    int n = 0;
    std::vector<int> alpha;      // edge involution
    std::vector<EdgeRef> edge;   // edge carrying each dart
    std::vector<std::vector<int>> faces;
    std::vector<int> face_of;    // dart -> face
    std::vector<int> pos_in_face;

    int num_faces() const { return static_cast<int>(faces.size()); }
    int chi() const { return num_faces() - n; }
    bool has_bigon() const;
};

// Faces of the ribbon graph of a crossing sequence; no validity checks.
RibbonFaces trace_ribbon(const std::vector<Crossing>& seq);

struct SurfaceComplex : RibbonFaces {
    Ladder ladder;
    int genus = 0;

    static int sigma(int d) { return d - d % 4 + (d % 4 + 1) % 4; }
    static int sigma_inv(int d) { return d - d % 4 + (d % 4 + 3) % 4; }
    static int column(int d) { return d / 4; }
    static int port(int d) { return d % 4; }
    int next_in_face(int d) const { return sigma(alpha[d]); }
    // the two darts of an edge, lower dart first
    std::pair<int, int> darts_of(EdgeRef e) const;
    int v_dart(int column, int label) const;
};

SurfaceComplex build_complex(const Ladder& l);

struct Decomposition {
    int genus = 0;
    int i = 0;
    std::vector<int> F;  // F[k-2] = number of 2k-gons, k = 2..4g-2
    std::vector<std::vector<EdgeRef>> face_sides;
    double hempel_bound = 0;  // 2 log2(i) + 2

    int count(int sides) const;
    bool only_4_6() const;
    // (F_6, F_8, ...)
    std::vector<int> vector_above_4() const;
};

Decomposition decomposition(const SurfaceComplex& c);

enum class Curve { v, w };
bool check_nonseparating(const SurfaceComplex& c, Curve which);

struct Bicorn {
    int v_arc = 0;
    int w_arc = 0;
    // v crosses w in the same direction at both ends of the v arc
    bool coherent = false;
    // side of w (top=true) from which v^a leaves its first endpoint
    bool leaves_top = false;
    friend bool operator==(const Bicorn&, const Bicorn&) = default;
};

std::vector<Bicorn> find_bicorns(const SurfaceComplex& c);

bool equivalent(const Ladder& a, const Ladder& b);

}  // namespace curvekit
