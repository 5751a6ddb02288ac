#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvekit/curves.hpp"
#include "curvekit/dotgraph.hpp"
#include "curvekit/surgery.hpp"

namespace curvekit {

// Vertices of the curve graph: nonseparating curves only, or all essential ones.
enum class GraphMode { nonseparating, essential };
const char* mode_name(GraphMode m);

struct DistanceOptions {
    int max_d = 4;
    GraphMode mode = GraphMode::nonseparating;
};

// Intermediate curves v_1 .. v_{d-1} of a path from v to w. Without a frame
// every curve is carried by Dec(v,w). With one, curves[0] is carried by
// Dec(v,w) and the rest by the frame Dec(v_1, w).
struct GeodesicPath {
    std::vector<TransverseCurve> curves;
    std::optional<Frame> frame;

    int length() const { return static_cast<int>(curves.size()) + 1; }
};

struct DistanceResult {
    bool exact = true;
    int d = 0;  // the value, or the lower bound when not exact
    GraphMode mode = GraphMode::nonseparating;
    GeodesicPath witness;  // only for exact results
    std::string kind() const { return exact ? "EXACT" : "AT_LEAST"; }
};

DistanceResult distance(const Ladder& l, const DistanceOptions& opt = {});
// two curves carried by the same complex
DistanceResult distance(const SurfaceComplex& c, const TransverseCurve& a, const TransverseCurve& b,
                        const DistanceOptions& opt = {});

// consecutive curves disjoint, ends disjoint from v and w
bool verify_path(const SurfaceComplex& c, const GeodesicPath& p);

struct EfficiencyCheck {
    std::string subpath;  // e.g. "v1..w" or "w..v1"
    std::string frame;    // Dec(v,w), Dec(v1,w) or Dec(w,v1) ...
    int curve = 0;        // index of the tested curve, 1-based like v_k
    int bound = 0;
    int load = 0;         // most crossings with a single reference arc
    bool ok() const { return load <= bound; }
};
struct EfficiencyReport {
    bool efficient = false;
    std::vector<EfficiencyCheck> checks;
};
EfficiencyReport is_efficient(const SurfaceComplex& c, const GeodesicPath& p);

struct GeodesicSet {
    int d = 0;
    std::vector<GeodesicPath> paths;
    bool truncated = false;  // stopped at the requested limit
    int size() const { return static_cast<int>(paths.size()); }
};

struct GeodesicOptions {
    DistanceOptions distance;
    size_t limit = 0;  // 0: no limit
};
GeodesicSet enumerate_efficient_geodesics(const Ladder& l, const GeodesicOptions& opt = {});

// Curves v_1 .. v_{d-2} of an unframed path crossing the reference arc
// parallel to w^k, as heights in order along w.
IntersectionSequence intersection_sequence(const SurfaceComplex& c, const GeodesicPath& p, int k);
IntersectionSequence extended_sequence(const SurfaceComplex& c, const GeodesicPath& p, int k);  // over k, k+1

// Surgery on every curve of an unframed path along the horizontal edges of a
// region of its extended dot graph over the arcs k, k+1. Height 0 stands for
// v, represented by a pushoff. Boxes and 00 pairs only.
struct SimultaneousResult {
    bool v_surgered = false;
    TransverseCurve v_curve;         // v, or v' when surgered, carried by Dec(v,w)
    std::optional<Ladder> v_ladder;  // the pair (v', w), when v' fills with w
    int i_before = 0, i_after = 0;
    std::vector<TransverseCurve> curves;  // v_1' .. v_{d-1}'
    std::vector<int> surgered;            // heights that changed
    bool path_ok = false;                 // consecutive curves disjoint, last one off w
};
SimultaneousResult simultaneous_surgery(const SurfaceComplex& c, const GeodesicPath& p, int k, const Region& region);

struct IminEntry {
    bool exact = true;  // otherwise a lower bound
    int value = 0;
    std::string source;
};

class IminTable {
public:
    static IminTable builtin();
    static std::string key(int d, int g, const std::vector<int>& above_4);
    // JSON object of "d,g,[F6,...]" -> {"kind","value","source"}
    void load(const std::string& path);
    void merge(const nlohmann::json& j);
    std::optional<IminEntry> lookup(int d, int g, const std::vector<int>& above_4) const;
    const std::map<std::string, IminEntry>& entries() const { return entries_; }

private:
    std::map<std::string, IminEntry> entries_;
};
nlohmann::json to_json(const IminEntry& e);

struct ReductionStep {
    int spiral = 0;       // index into find_spirals of the pair at this step
    int w_edge = 0;
    int width = 0;
    bool accepted = false;
    std::string reason;   // accepted, width_bound, no_stacked_region, distance_veto
    std::string hypothesis;  // held, failed, not_evaluated
    int i_before = 0, i_after = 0;
    std::vector<int> F_before, F_after;
    int d_before = 0;
    std::optional<int> d_after;  // from the recheck, also run for diagnostics
    bool d_after_exact = true;
    std::optional<int> i_min;
    std::string ladder_before, ladder_after;
};

struct ReductionTrace {
    Ladder start, result;
    int d = 0;
    bool d_exact = true;
    bool supported = true;  // faces of at most 6 sides
    std::vector<ReductionStep> steps;
    int accepted() const;
};

struct ReduceOptions {
    DistanceOptions distance;
    bool diagnose_refusals = true;  // recheck distance on width-refused steps too
    int max_steps = 64;
};
ReductionTrace reduce_intersections(const Ladder& l, const IminTable& table, const ReduceOptions& opt = {});

// True when some interior arc pair holds an admissible region in every layer.
bool stacked_region_available(const SurfaceComplex& c, const Spiral& sp, const GeodesicSet& set);
// interior reference arcs of a spiral (w labels), band arcs when it has no interior
std::vector<int> spiral_arcs(const SurfaceComplex& c, const Spiral& sp);

nlohmann::json to_json(const DistanceResult& r);
nlohmann::json to_json(const ReductionStep& s);
nlohmann::json to_json(const ReductionTrace& t);

// d <= 2 log2(i) + 2
bool within_hempel_bound(int d, int i);

}  // namespace curvekit
