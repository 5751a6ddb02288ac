#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvekit/geodesics.hpp"

using namespace curvekit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = "curvekit/1";

enum Exit { ok = 0, bad_ladder = 1, capped = 2, precondition = 3 };

struct Outcome {
    json out;
    int code = ok;
};

// thrown when the input cannot be turned into a valid ladder
struct BadInput {
    std::string code, message;
};

Ladder load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput{"unreadable", "cannot read " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        Ladder l = parse_ladder(ss.str());
        validate(l);
        return l;
    } catch (const Error& e) {
        throw BadInput{errc_name(e.code()), e.what()};
    }
}

json envelope(const std::string& cmd) { return {{"schema", kSchema}, {"command", cmd}}; }

json error_json(const std::string& code, const std::string& msg) { return {{"code", code}, {"message", msg}}; }

std::vector<int> trimmed(std::vector<int> F) {
    while (F.size() > 2 && F.back() == 0) F.pop_back();
    return F;
}

json spiral_json(const Spiral& s) {
    const Band& b = s.band;
    return {{"faces", b.faces},         {"w_edges", b.w_edges},     {"side_a", b.side_a},
            {"side_b", b.side_b},       {"closed", b.closed},       {"length", b.length},
            {"m_v", b.m_v},             {"width", b.width},         {"kind", kind_name(s.kind)},
            {"winding", s.winding},     {"interior", s.interior},   {"barrier", s.barrier},
            {"multiplicity", s.multiplicity}};
}

json census(const std::vector<Spiral>& sp) {
    std::map<int, int> by_width;
    for (const auto& s : sp) ++by_width[s.band.width];
    json w = json::object();
    for (auto [k, v] : by_width) w[std::to_string(k)] = v;
    return {{"count", sp.size()}, {"by_width", w}};
}

json canonical_json(const CanonicalClass& cc) {
    return {{"ladder", serialize(cc.canonical_ladder)},
            {"rotation_v", cc.applied_rotation_v},
            {"rotation_w", cc.applied_rotation_w},
            {"mirrored", cc.mirrored},
            {"swapped", cc.swapped}};
}

json trace_json(const SurgeryTrace& t) {
    return {{"op", t.op},
            {"site", t.site},
            {"width", t.width},
            {"i_before", t.i_before},
            {"i_after", t.i_after},
            {"inverse_site", t.inverse_site},
            {"decomposition_before", trimmed(t.decomposition_before)},
            {"decomposition_after", trimmed(t.decomposition_after)}};
}

DistanceOptions dist_opts(int max_d) {
    DistanceOptions o;
    if (max_d > 4) {
        std::cerr << "note: distance search stops at 4, larger distances are reported as AT_LEAST(5)\n";
        max_d = 4;
    }
    o.max_d = max_d;
    return o;
}

// distance block, or an explanation when the pair is outside the search
json distance_block(const Ladder& l, const DistanceOptions& o, int& code) {
    try {
        DistanceResult r = distance(l, o);
        if (!r.exact) code = capped;
        return to_json(r);
    } catch (const Error& e) {
        return {{"kind", "UNSUPPORTED"}, {"reason", errc_name(e.code())}, {"message", e.what()}};
    }
}

Outcome analyze(const Ladder& l, int max_d) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    SurfaceComplex c = build_complex(l);
    Decomposition dec = decomposition(c);
    auto t1 = std::chrono::steady_clock::now();
    auto spirals = find_spirals(c);
    json j = envelope("analyze");
    j["ladder"] = serialize(l);
    j["genus"] = dec.genus;
    j["i"] = dec.i;
    j["decomposition"] = trimmed(dec.F);
    j["hempel_bound"] = dec.hempel_bound;
    j["canonical"] = canonical_json(canonical_form(l));
    j["spirals"] = census(spirals);
    j["distance"] = distance_block(l, dist_opts(max_d), o.code);
    auto t2 = std::chrono::steady_clock::now();
    std::chrono::duration<double> a = t1 - t0, b = t2 - t1;
    std::cerr << "genus " << dec.genus << ", i=" << dec.i << ", " << spirals.size() << " spiral(s), distance "
              << j["distance"]["kind"].get<std::string>();
    if (j["distance"].contains("d")) std::cerr << "(" << j["distance"]["d"] << ")";
    std::cerr << "  [decomposition " << a.count() << " s, rest " << b.count() << " s]\n";
    o.out = j;
    return o;
}

Outcome run_distance(const Ladder& l, int max_d) {
    Outcome o;
    json j = envelope("distance");
    j["ladder"] = serialize(l);
    j["distance"] = distance_block(l, dist_opts(max_d), o.code);
    std::cerr << "distance " << j["distance"]["kind"].get<std::string>() << "\n";
    o.out = j;
    return o;
}

Outcome run_spirals(const Ladder& l) {
    auto sp = find_spirals(build_complex(l));
    json list = json::array();
    for (const auto& s : sp) list.push_back(spiral_json(s));
    json j = envelope("spirals");
    j["ladder"] = serialize(l);
    j["census"] = census(sp);
    j["spirals"] = list;
    std::cerr << sp.size() << " spiral(s)\n";
    return {j, ok};
}

Outcome fail(json j, const std::string& code, const std::string& msg, int exit_code) {
    j["error"] = error_json(code, msg);
    std::cerr << "error: " << msg << "\n";
    return {j, exit_code};
}

Outcome run_surgery(const Ladder& l, std::optional<int> spiral, std::optional<int> edge) {
    json j = envelope("surgery");
    j["ladder"] = serialize(l);
    auto sp = find_spirals(build_complex(l));
    int si = spiral.value_or(0);
    if (si < 0 || si >= static_cast<int>(sp.size()))
        return fail(j, errc_name(Errc::not_in_spiral), "no spiral with index " + std::to_string(si), precondition);
    int e = edge.value_or(sp[si].band.w_edges.front());
    try {
        SurgeryResult r = spiral_surgery(l, sp[si], e);
        j["spiral"] = si;
        j["w_edge"] = e;
        j["result"] = serialize(r.ladder);
        j["trace"] = trace_json(r.trace);
        std::cerr << "i " << r.trace.i_before << " -> " << r.trace.i_after << "\n";
        return {j, ok};
    } catch (const Error& err) {
        return fail(j, errc_name(err.code()), err.what(), precondition);
    }
}

Outcome run_add(const Ladder& l, const std::string& bicorn, std::optional<int> band, int m) {
    json j = envelope("add");
    j["ladder"] = serialize(l);
    AdditionSite site;
    if (!bicorn.empty()) {
        int a = 0, b = 0;
        char comma = 0;
        std::istringstream in(bicorn);
        if (!(in >> a >> comma >> b) || comma != ',')
            return fail(j, errc_name(Errc::invalid_site), "bicorn must be given as v,w", precondition);
        for (const auto& bc : find_bicorns(build_complex(l)))
            if (bc.v_arc == a && bc.w_arc == b) site.bicorn = bc;
        if (!site.bicorn)
            return fail(j, errc_name(Errc::invalid_site), "(" + bicorn + ") is not a bicorn", precondition);
    } else if (band) {
        site.band_edge = *band;
    } else {
        return fail(j, errc_name(Errc::invalid_site), "give --bicorn or --band", precondition);
    }
    try {
        SurgeryResult r = spiral_addition(l, site, m);
        j["m"] = m;
        j["result"] = serialize(r.ladder);
        j["trace"] = trace_json(r.trace);
        std::cerr << "i " << r.trace.i_before << " -> " << r.trace.i_after << "\n";
        return {j, ok};
    } catch (const Error& err) {
        return fail(j, errc_name(err.code()), err.what(), precondition);
    }
}

Outcome run_reduce(const Ladder& l, const std::string& table_path, int max_d) {
    json j = envelope("reduce");
    IminTable table = IminTable::builtin();
    std::string path = table_path;
    if (path.empty())
        if (const char* env = std::getenv("CURVEKIT_IMIN_TABLE")) path = env;
    if (!path.empty()) {
        try {
            table.load(path);
        } catch (const std::exception& e) {
            return fail(j, "table", e.what(), bad_ladder);
        }
    }
    ReduceOptions opt;
    opt.distance = dist_opts(max_d);
    ReductionTrace tr = reduce_intersections(l, table, opt);
    j["trace"] = to_json(tr);
    std::cerr << tr.steps.size() << " step(s), " << tr.accepted() << " accepted, i " << l.n << " -> " << tr.result.n
              << "\n";
    return {j, tr.d_exact ? ok : capped};
}

Outcome run_canonical(const Ladder& l) {
    json j = envelope("canonical");
    j["ladder"] = serialize(l);
    j["canonical"] = canonical_json(canonical_form(l));
    std::cerr << j["canonical"]["ladder"].get<std::string>() << "\n";
    return {j, ok};
}

// wraps a command that reads one ladder file
template <class F>
Outcome with_ladder(const std::string& cmd, const std::string& path, F&& f) {
    try {
        return f(load(path));
    } catch (const BadInput& b) {
        json j = envelope(cmd);
        j["input"] = fs::path(path).filename().string();
        return fail(j, b.code, b.message, bad_ladder);
    }
}

void emit(const Outcome& o) { std::cout << o.out.dump() << "\n"; }

json schema() {
    json common = {{"schema", "string, always \"curvekit/1\""}, {"command", "string"}, {"error", "{code, message}, on failure"}};
    return {{"schema", kSchema},
            {"common", common},
            {"commands",
             {{"analyze", {"ladder", "genus", "i", "decomposition [F4, F6, ...]", "hempel_bound", "canonical",
                           "spirals {count, by_width}", "distance {kind, d, mode, witness}"}},
              {"distance", {"ladder", "distance"}},
              {"spirals", {"ladder", "census", "spirals[]"}},
              {"surgery", {"ladder", "spiral", "w_edge", "result", "trace"}},
              {"add", {"ladder", "m", "result", "trace"}},
              {"reduce", {"trace {start, result, d, d_kind, supported, accepted, steps[]}"}},
              {"canonical", {"ladder", "canonical"}},
              {"batch", "one analyze report per line, files in name order"}}},
            {"exit_codes", {{"0", "success"}, {"1", "invalid ladder"}, {"2", "distance cap exceeded"},
                            {"3", "surgery precondition failure"}}}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curves on surfaces from ladder-encoded filling pairs"};
    bool show_schema = false;
    unsigned seed = 0;
    app.add_flag("--schema", show_schema, "print the report schema and exit");
    app.add_option("--seed", seed, "tie-breaking seed (all searches are deterministic, so it has no effect)");

    std::string path;
    int max_d = 4;
    std::optional<int> spiral, edge, band;
    std::string bicorn, table;
    int m = 1;

    auto* a = app.add_subcommand("analyze", "full report for one ladder");
    a->add_option("path", path)->required();
    a->add_option("--max-d", max_d);
    auto* d = app.add_subcommand("distance", "curve graph distance");
    d->add_option("path", path)->required();
    d->add_option("--max-d", max_d);
    auto* s = app.add_subcommand("spirals", "list spirals");
    s->add_option("path", path)->required();
    auto* su = app.add_subcommand("surgery", "spiral surgery");
    su->add_option("path", path)->required();
    su->add_option("--spiral", spiral, "spiral index, 0-based");
    su->add_option("--edge", edge, "w label of the surgery edge");
    auto* ad = app.add_subcommand("add", "spiral addition");
    ad->add_option("path", path)->required();
    auto* bo = ad->add_option("--bicorn", bicorn, "v,w arc labels");
    auto* bd = ad->add_option("--band", band, "w label inside a band");
    bo->excludes(bd);
    ad->add_option("--m", m)->check(CLI::PositiveNumber);
    auto* r = app.add_subcommand("reduce", "reduction loop");
    r->add_option("path", path)->required();
    r->add_option("--imin-table", table);
    r->add_option("--max-d", max_d);
    auto* ca = app.add_subcommand("canonical", "canonical class");
    ca->add_option("path", path)->required();
    auto* ba = app.add_subcommand("batch", "analyze every file of a directory");
    ba->add_option("dir", path)->required()->check(CLI::ExistingDirectory);
    ba->add_option("--max-d", max_d);

    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);

    if (show_schema) {
        std::cout << schema().dump(2) << "\n";
        return ok;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return bad_ladder;
    }

    Outcome o;
    if (*a) o = with_ladder("analyze", path, [&](const Ladder& l) { return analyze(l, max_d); });
    else if (*d) o = with_ladder("distance", path, [&](const Ladder& l) { return run_distance(l, max_d); });
    else if (*s) o = with_ladder("spirals", path, [&](const Ladder& l) { return run_spirals(l); });
    else if (*su) o = with_ladder("surgery", path, [&](const Ladder& l) { return run_surgery(l, spiral, edge); });
    else if (*ad) o = with_ladder("add", path, [&](const Ladder& l) { return run_add(l, bicorn, band, m); });
    else if (*r) o = with_ladder("reduce", path, [&](const Ladder& l) { return run_reduce(l, table, max_d); });
    else if (*ca) o = with_ladder("canonical", path, [&](const Ladder& l) { return run_canonical(l); });
    else if (*ba) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        int worst = ok;
        for (const auto& f : files) {
            std::cerr << f.filename().string() << ": ";
            Outcome one = with_ladder("analyze", f.string(), [&](const Ladder& l) { return analyze(l, max_d); });
            emit(one);
            worst = std::max(worst, one.code);
        }
        return worst;
    }
    emit(o);
    return o.code;
}
