#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace curvekit {

struct IntersectionSequence {
    int arc = 0;                   // reference arc index, 0 if unspecified
    std::vector<int> entries;
    std::vector<int> provenance;   // crossing index on the curve of each entry
    bool extended = false;

    friend bool operator==(const IntersectionSequence&, const IntersectionSequence&) = default;
};

bool is_sawtooth(const std::vector<int>& s);
// bubble the leftmost ascending pair with gap >= 2 until none is left
std::vector<int> sawtooth(std::vector<int> s);
IntersectionSequence sawtooth(const IntersectionSequence& s);

std::vector<int> extend(const std::vector<int>& a, const std::vector<int>& b);
// arcs must be consecutive among `arc_count` arcs
IntersectionSequence extend(const IntersectionSequence& a, const IntersectionSequence& b, int arc_count);

struct Run {
    int x0 = 0, x1 = 0;  // inclusive x range
    int lo = 0, hi = 0;  // heights
    int k() const { return x0 - lo; }  // run lies on x - y = k
};

enum class RegionKind { box, hex1, hex2, degenerate_00 };
const char* region_kind_name(RegionKind k);

struct HorizontalEdge {
    int y;
    int x0, x1;
    friend bool operator==(const HorizontalEdge&, const HorizontalEdge&) = default;
};

struct Region {
    RegionKind kind = RegionKind::box;
    int left = -1, right = -1, closure = -1;  // run indices
    std::vector<HorizontalEdge> edges;
    bool empty = true;
    bool unpierced = true;
    bool acute_exterior = false;  // hexagon with a reflex corner of exterior angle < 90
    int x0 = 0, x1 = 0;           // horizontal extent

    bool admissible() const { return empty && unpierced && !acute_exterior; }
    friend bool operator==(const Region&, const Region&) = default;
};

struct DotGraph {
    std::vector<int> heights;  // point x has height heights[x - 1]
    std::vector<Run> runs;
    std::vector<Region> regions;
    bool extended = false;
};

DotGraph build_dot_graph(const std::vector<int>& seq);  // normalizes to sawtooth form first
DotGraph build_dot_graph(const IntersectionSequence& seq);
std::vector<Region> find_regions(const DotGraph& g);

struct StackedDotGraph {
    std::vector<DotGraph> layers;
    std::vector<std::vector<int>> x_of;  // aligned x of every point, per layer
    int r = 0;
};
StackedDotGraph stack(const std::vector<DotGraph>& layers);

struct LayerRegion {
    int layer;
    Region region;
};
// Every layer must hold an admissible region; with `aligned` the regions must
// also occupy the same aligned x-interval in all layers.
std::vector<LayerRegion> common_regions(const StackedDotGraph& s, bool aligned = false);

nlohmann::json to_json(const DotGraph& g);
nlohmann::json to_json(const StackedDotGraph& s);
std::string plot(const DotGraph& g);

}  // namespace curvekit
