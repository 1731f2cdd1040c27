#pragma once

// Job runner behind the command-line tool. run_job is pure: it reads the
// inputs and returns the report, artifacts and exit code without touching
// the output paths.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "polytrop/galaxy.hpp"
#include "polytrop/io.hpp"
#include "polytrop/limit_toric.hpp"
#include "polytrop/ptrop_oracle.hpp"
#include "polytrop/stratified_map.hpp"
#include "polytrop/svg.hpp"
#include "polytrop/tropical.hpp"

namespace polytrop::cli {

using io::json;

enum ExitCode { kOk = 0, kValidation = 2, kParse = 3, kResource = 4 };

inline int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError: return kParse;
    case ErrorKind::ResourceCap:
    case ErrorKind::RankCap: return kResource;
    default: return kValidation;
    }
}

struct JobConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    std::string output;                // artifact or report file
    std::string svg;                   // picture file, 2-D inputs only
    unsigned seed = 1;
    std::optional<std::size_t> depth;  // oracle depth / tower depth cap
    Integer level = 2;                 // subdivision level N
    bool json = false;
    double cluster_threshold = 3e-3;
    std::size_t paths = 200;
    std::size_t parallel = 1;
    std::optional<std::string> mode;   // complex mode override
};

struct JobResult {
    int exit_code = kOk;
    json report;
    std::string text;
    std::string artifact; // written to the output path when set
    std::string svg;
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"trop",   "ptrop",    "fan-validate",    "refine",
                                                   "limit-point", "fiber-rank", "dualcx", "subdivide",
                                                   "rational-points", "map-fibers", "toric-fiber", "galaxy"};
    return names;
}

inline void check_config(const JobConfig& c) {
    const auto& names = subcommands();
    require(std::find(names.begin(), names.end(), c.subcommand) != names.end(), ErrorKind::ValidationError,
            "unknown subcommand " + c.subcommand);
    require(!c.inputs.empty(), ErrorKind::ValidationError, "no input files");
    require(c.cluster_threshold > 0, ErrorKind::ValidationError, "cluster threshold must be positive");
    require(c.paths > 0, ErrorKind::ValidationError, "oracle path count must be positive");
    require(c.level >= 1, ErrorKind::ValidationError, "level must be positive");
    require(c.parallel >= 1, ErrorKind::ValidationError, "--parallel needs at least one worker");
    if (c.depth)
        require(*c.depth >= 1 && *c.depth <= kDefaultDepthCap, ErrorKind::ResourceCap,
                "depth must lie in 1.." + std::to_string(kDefaultDepthCap));
}

// ---------------------------------------------------------------------------
// Formatting

inline std::string projective(const IntVec& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ":" : "") + r[i].str();
    return s + "]";
}

inline json cone_json(const Cone& c) {
    json rays = json::array();
    for (const auto& r : c.rays()) rays.push_back(io::to_json(r));
    json j;
    j["dim"] = c.dim();
    j["rays"] = rays;
    if (!c.lineality().empty()) {
        json lin = json::array();
        for (const auto& r : c.lineality()) lin.push_back(io::to_json(r));
        j["lineality"] = lin;
    }
    return j;
}

inline json ptrop_json(const PTropSet& s) {
    json cones = json::array();
    for (const auto& c : s.cones) {
        json rays = json::array();
        for (const auto& r : c.rays()) rays.push_back(projective(r));
        cones.push_back(rays);
    }
    json pts = json::array();
    for (const auto& p : s.points()) pts.push_back(projective(p));
    json j;
    j["cones"] = cones;
    j["points"] = pts;
    if (s.upper_bound) j["upper_bound"] = true;
    return j;
}

inline json doubles(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(io::format_double(x));
    return a;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

inline std::string fvec(const std::vector<std::size_t>& f) {
    std::vector<std::string> p;
    for (auto x : f) p.push_back(std::to_string(x));
    return "(" + join(p, ", ") + ")";
}

// ---------------------------------------------------------------------------
// Subcommands. Each fills report fields and a text summary.

struct Output {
    json report;
    std::vector<std::string> lines;
    std::string artifact;
    std::string svg;
    int exit_code = kOk;
};

inline void do_trop(const json& in, const JobConfig&, Output& out) {
    auto f = io::polynomial_from_json(in);
    auto h = trop_hypersurface(f);
    auto np = newton_polytope(f);
    json cells = json::array();
    for (const auto& c : h.cells) {
        json a = json::array();
        for (const auto& e : c.achievers) a.push_back(io::to_json(e));
        json cj;
        cj["achievers"] = a;
        cj["dim"] = c.dim();
        cj["recession"] = cone_json(c.recession);
        cells.push_back(cj);
    }
    json verts = json::array();
    for (const auto& v : np.vertices) verts.push_back(io::to_json(v));
    out.report["convention"] = TropicalPolynomial::convention();
    out.report["vars"] = f.vars();
    out.report["newton_vertices"] = verts;
    out.report["cells"] = cells;
    out.lines.push_back("tropical hypersurface (min-plus) in R^" + std::to_string(f.vars()) + ": " +
                        std::to_string(h.cells.size()) + " cells");
    if (f.vars() == 2) out.svg = svg::fan_svg(normal_fan(np));
}

inline void do_ptrop(const json& in, const JobConfig& cfg, Output& out) {
    OracleOptions opt;
    opt.seed = cfg.seed;
    opt.paths = cfg.paths;
    opt.cluster_threshold = cfg.cluster_threshold;
    if (cfg.depth) opt.depth = *cfg.depth;

    PTropSet exact;
    std::optional<OracleResult> oracle;
    std::string oracle_error;
    if (in.contains("generators")) {
        const auto& g = io::array_of(in["generators"], "generators");
        std::vector<TropicalPolynomial> gens;
        for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(io::polynomial_from_json(g[i], io::sub("generators", i)));
        bool basis = in.contains("tropical_basis") && in["tropical_basis"].is_boolean() && in["tropical_basis"].get<bool>();
        exact = ptrop_ideal(gens, basis);
        try {
            oracle = ptrop_sample_curve(gens, opt);
        } catch (const Error& e) {
            oracle_error = e.what();
        }
    } else {
        auto f = io::polynomial_from_json(in);
        exact = ptrop_normal_fan(f);
        auto via_recession = ptrop_recession(trop_hypersurface(f));
        out.report["routes_agree"] = exact == via_recession;
        try {
            oracle = ptrop_sample_oracle(f, opt);
        } catch (const Error& e) {
            oracle_error = e.what();
        }
    }
    out.report["ptrop"] = ptrop_json(exact);
    std::vector<std::string> pts;
    for (const auto& p : exact.points()) pts.push_back(projective(p));
    out.lines.push_back("PTrop: " + std::to_string(exact.cones.size()) + " cones; points " + join(pts, ", "));
    json oj;
    if (oracle) {
        json cl = json::array();
        double worst = 0;
        for (const auto& c : oracle->clusters) {
            double d = angular_distance(c.direction, exact);
            worst = std::max(worst, d);
            json cj;
            cj["direction"] = doubles(c.direction);
            cj["size"] = c.size;
            cj["radius"] = io::format_double(c.radius);
            cj["distance"] = io::format_double(d);
            cl.push_back(cj);
        }
        oj["samples"] = oracle->samples;
        oj["clusters"] = cl;
        oj["max_distance"] = io::format_double(worst);
        out.lines.push_back("oracle: " + std::to_string(oracle->clusters.size()) + " clusters, max angular distance " +
                            io::format_double(worst));
    } else {
        oj["error"] = oracle_error;
        out.lines.push_back("oracle: " + oracle_error);
    }
    out.report["oracle"] = oj;
}

inline void do_fan_validate(const json& in, const JobConfig&, Output& out) {
    auto [n, cones] = io::fan_cones_from_json(in);
    auto v = validate_fan(n, cones);
    out.report["valid"] = v.valid;
    out.report["complete"] = v.complete;
    out.report["violations"] = v.violations;
    if (v.fan) {
        out.report["maximal_cones"] = v.fan->maximal_cones().size();
        if (v.fan->pointed()) out.report["fan"] = io::fan_to_json(*v.fan);
        if (n == 2) out.svg = svg::fan_svg(*v.fan);
    }
    out.lines.push_back(std::string(v.valid ? "valid" : "invalid") + " fan of rank " + std::to_string(n) +
                        (v.complete ? ", complete" : ""));
    for (const auto& s : v.violations) out.lines.push_back("  " + s);
    if (!v.valid) out.exit_code = kValidation;
}

inline FanTower build_tower(const io::FanTowerInput& plan, const JobConfig& cfg) {
    FanTower t(plan.base, cfg.depth.value_or(kDefaultDepthCap));
    return extend_tower(t, plan.strategy, plan.steps);
}

inline void do_refine(const json& in, const JobConfig& cfg, Output& out) {
    auto plan = io::tower_from_json(in);
    require(plan.fan.has_value(), ErrorKind::ValidationError, "refine needs a fan tower");
    auto t = build_tower(*plan.fan, cfg);
    json levels = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        json l;
        l["tag"] = t.strategy_tag(i);
        l["maximal_cones"] = t.level(i).maximal_cones().size();
        l["rays"] = t.level(i).rays().size();
        l["boundary_stable"] = boundary_strata_at_level(t, i).stable;
        levels.push_back(l);
    }
    out.report["levels"] = levels;
    out.report["final"] = io::fan_to_json(t.last());
    out.artifact = io::dump(io::fan_to_json(t.last()));
    out.lines.push_back("tower of " + std::to_string(t.size()) + " levels; final fan has " +
                        std::to_string(t.last().maximal_cones().size()) + " maximal cones");
    if (t.rank() == 2) out.svg = svg::fan_svg(t.last());
}

inline void do_limit_point(const json& in, const JobConfig& cfg, Output& out) {
    auto plan = io::tower_from_json(io::field(in, "tower", "input"), "tower");
    require(plan.fan.has_value(), ErrorKind::ValidationError, "limit-point needs a fan tower");
    auto x = io::symbolic_from_json(io::field(in, "x", "input"), "x");
    auto t = build_tower(*plan.fan, cfg);
    auto chain = chain_toward(t, x);
    auto lp = resolve_direction(chain);
    json cj = json::array();
    for (const auto& [level, cone] : chain.entries()) {
        json e = cone_json(cone);
        e["level"] = level;
        cj.push_back(e);
    }
    out.report["chain"] = cj;
    out.report["resolved"] = lp.resolved();
    out.report["depth"] = lp.depth;
    out.report["limit"] = cone_json(lp.cone);
    if (lp.ray) out.report["ray"] = io::to_json(lp.ray->direction());
    out.lines.push_back(lp.resolved() ? "resolved to ray " + projective(lp.ray->direction()) + " at level " +
                                            std::to_string(lp.depth)
                                      : "unresolved: limit cone of dimension " + std::to_string(lp.cone.dim()));
}

inline void do_fiber_rank(const json& in, const JobConfig&, Output& out) {
    auto x = io::symbolic_from_json(io::field(in, "x", "input"), "x");
    std::size_t n = in.contains("n") ? io::count_of(in["n"], "n") : x.size();
    auto m = fiber_model(n, x);
    json u = json::array();
    for (const auto& row : m.normalizer) u.push_back(io::to_json(row));
    out.report["kind"] = m.kind;
    out.report["rank"] = m.r;
    out.report["fiber_dim"] = m.dim;
    out.report["normalizer"] = u;
    out.report["normalizer_det"] = to_string(determinant(m.normalizer));
    out.report["normalized"] = to_string(m.normalized);
    out.lines.push_back("rank " + std::to_string(m.r) + ", fiber dimension " + std::to_string(m.dim));
}

inline DeltaComplex load_complex(const json& in, const JobConfig& cfg) {
    if (cfg.mode && in.contains("strata")) {
        auto f = io::incidence_from_json(in);
        f.mode = io::mode_of(*cfg.mode, "--mode");
        return io::validated([&] { return from_incidence(f.data, f.mode); });
    }
    return io::complex_from_json(in);
}

inline json complex_summary(const DeltaComplex& c) {
    json j;
    j["mode"] = to_string(c.mode());
    j["f_vector"] = c.f_vector();
    j["euler"] = c.euler_characteristic().str();
    json labels = json::array();
    for (std::size_t d = 0; d <= c.dim() && !c.empty(); ++d)
        for (const auto& cell : c.cells(d)) labels.push_back(cell.label);
    j["labels"] = labels;
    return j;
}

inline void do_dualcx(const json& in, const JobConfig& cfg, Output& out) {
    auto c = load_complex(in, cfg);
    out.report["complex"] = complex_summary(c);
    out.artifact = io::dump(io::complex_to_json(c));
    out.lines.push_back(to_string(c.mode()) + " complex, f-vector " + fvec(c.f_vector()) + ", chi " +
                        c.euler_characteristic().str());
    if (c.dim() <= 2) out.svg = svg::complex_svg(c);
}

inline void do_subdivide(const json& in, const JobConfig& cfg, Output& out) {
    auto c = load_complex(in, cfg);
    auto s = scale_subdivide(c, cfg.level);
    auto r = component_ratio(c, cfg.level);
    out.report["level"] = cfg.level.str();
    out.report["before"] = complex_summary(c);
    out.report["after"] = complex_summary(s);
    out.report["top_cell_ratio"] = to_string(r.ratio);
    out.report["ratio_is_N_to_the_m"] = r.equal;
    out.artifact = io::dump(io::complex_to_json(s));
    out.lines.push_back("subdivided at N = " + cfg.level.str() + ": f-vector " + fvec(c.f_vector()) + " -> " +
                        fvec(s.f_vector()));
    if (s.dim() <= 2) out.svg = svg::complex_svg(s);
}

inline void do_rational_points(const json& in, const JobConfig& cfg, Output& out) {
    auto c = load_complex(in, cfg);
    auto pts = rational_points(c, cfg.level);
    json a = json::array();
    for (const auto& p : pts) {
        json pj;
        pj["carrier"] = c.cell(p.cell_dim, p.cell_id).label;
        pj["root"] = c.root().labels[p.where.dim][p.where.id];
        pj["coords"] = io::to_json(p.where.coords);
        a.push_back(pj);
    }
    out.report["level"] = cfg.level.str();
    out.report["count"] = pts.size();
    out.report["points"] = a;
    out.lines.push_back(std::to_string(pts.size()) + " rational points at level " + cfg.level.str());
}

inline TargetPoint point_from_json(const DeltaComplex& target, const json& p, const std::string& where) {
    if (p.contains("vertex")) {
        if (!p["vertex"].is_string()) io::parse_fail(where + ".vertex", "expected a string");
        return target_vertex(target, p["vertex"].get<std::string>());
    }
    const auto& cell = io::field(p, "cell", where);
    if (!cell.is_string()) io::parse_fail(where + ".cell", "expected a cell label");
    auto ref = target.find_label(cell.get<std::string>());
    require(ref.has_value(), ErrorKind::PointOutsideTarget, "target has no cell " + cell.get<std::string>());
    return target_point(target, {ref->first, ref->second}, io::rat_vector(io::field(p, "coords", where), where + ".coords"));
}

inline void do_map_fibers(const json& in, const JobConfig& cfg, Output& out) {
    auto src = load_complex(io::field(in, "source", "input"), cfg);
    auto tgt = load_complex(io::field(in, "target", "input"), cfg);
    const auto& vm = io::field(in, "vertex_map", "input");
    if (!vm.is_object()) io::parse_fail("vertex_map", "expected an object");
    std::map<std::string, std::string> assignment;
    for (auto it = vm.begin(); it != vm.end(); ++it) {
        if (!it.value().is_string()) io::parse_fail("vertex_map." + it.key(), "expected a string");
        assignment[it.key()] = it.value().get<std::string>();
    }
    auto m = induced_map(assignment, src, tgt);
    std::optional<DeltaComplex> supplied;
    if (in.contains("supplied")) supplied = load_complex(in["supplied"], cfg);
    const auto& pts = io::array_of(io::field(in, "points", "input"), "points");
    json fibers = json::array();
    bool any_mismatch = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto p = point_from_json(tgt, pts[i], io::sub("points", i));
        auto r = map_fiber(m, p, supplied);
        json fj;
        fj["point"] = pts[i];
        fj["f_vector"] = r.fiber.f_vector();
        fj["chi"] = r.chi.str();
        fj["dim"] = r.dim;
        if (r.supplied_chi) {
            fj["supplied_chi"] = r.supplied_chi->str();
            fj["supplied_dim"] = *r.supplied_dim;
            fj["mismatch"] = !r.matches_supplied;
            any_mismatch = any_mismatch || !r.matches_supplied;
        }
        fibers.push_back(fj);
        std::string line = "fiber " + std::to_string(i) + ": f-vector " + fvec(r.fiber.f_vector()) + ", chi " + r.chi.str();
        if (r.supplied_chi)
            line += r.matches_supplied ? " (matches supplied complex)"
                                       : " (MISMATCH: supplied complex has chi " + r.supplied_chi->str() + ")";
        out.lines.push_back(line);
    }
    out.report["surjective_on_cells"] = m.surjective_on_cells();
    out.report["fibers"] = fibers;
    out.report["mismatch"] = any_mismatch;
}

inline void do_toric_fiber(const json& in, const JobConfig&, Output& out) {
    IntMatrix map = io::int_matrix(io::field(in, "map", "input"), "map");
    Fan src = io::fan_from_json(io::field(in, "source", "input"), "source");
    Fan tgt = io::fan_from_json(io::field(in, "target", "input"), "target");
    IntMatrix base_gens = io::int_matrix(io::field(in, "base", "input"), "base");
    Cone base = base_gens.empty() ? Cone::zero(tgt.rank())
                                  : io::validated([&] { return cone_from_generators(base_gens); });
    auto fc = toric_fiber_complex(map, src, tgt, base);
    json cells = json::array();
    for (const auto& c : fc.cells) {
        json cj;
        cj["dim"] = c.dim;
        cj["cone"] = c.label;
        cells.push_back(cj);
    }
    out.report["cells"] = cells;
    out.report["f_vector"] = fc.f_vector();
    out.report["chi"] = fc.euler_characteristic().str();
    out.lines.push_back("toric fiber: f-vector " + fvec(fc.f_vector()) + ", chi " + fc.euler_characteristic().str());
}

inline GalaxyPoint galaxy_point(const json& p, const std::string& where) {
    if (p.is_string() || p.is_number_integer()) return GalaxyPoint::rational(io::rational_of(p, where));
    return GalaxyPoint::symbolic(io::symbolic_from_json(p, where));
}

inline void do_galaxy(const json& in, const JobConfig& cfg, Output& out) {
    if (!in.contains("elliptic")) {
        auto b = load_complex(in.contains("skeleton") ? in["skeleton"] : in, cfg);
        auto r = decomposition(b, cfg.level);
        json slots = json::array();
        for (const auto& s : r.slots) slots.push_back(s.tag);
        out.report["level"] = cfg.level.str();
        out.report["open_slots"] = slots;
        out.report["non_klt_cells"] = r.non_klt_cells;
        out.lines.push_back(std::to_string(r.slots.size()) + " open slots at level " + cfg.level.str() + ", " +
                            std::to_string(r.non_klt_cells) + " remaining cells");
        return;
    }
    auto plan = io::tower_from_json(in);
    require(plan.elliptic.has_value(), ErrorKind::ValidationError, "galaxy needs an elliptic tower or a skeleton");
    const auto& t = *plan.elliptic;
    json levels = json::array();
    for (std::size_t i = 0; i < t.levels(); ++i) levels.push_back(t.cycle_size(i));
    out.report["cycle_sizes"] = levels;
    json results = json::array();
    if (in.contains("points")) {
        const auto& pts = io::array_of(in["points"], "points");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto g = galaxy_point(pts[i], io::sub("points", i));
            json rj;
            rj["theta"] = g.to_string();
            try {
                auto c = classify_point(t, g);
                bool open = c.kind == Classification::Kind::Open;
                rj["kind"] = open ? "Open" : "Closed";
                rj["level"] = c.level;
                if (c.label) rj["label"] = to_string(*c.label);
                json ch = json::array();
                for (const auto& cell : c.chain)
                    ch.push_back(json::array({to_string(cell.lo), to_string(cell.hi)}));
                rj["chain"] = ch;
                out.lines.push_back("theta = " + g.to_string() + ": " + (open ? "Open" : "Closed") + " at level " +
                                    std::to_string(c.level));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::IncompleteTower) throw;
                rj["kind"] = "IncompleteTower";
                rj["error"] = e.what();
                out.lines.push_back("theta = " + g.to_string() + ": " + e.what());
                out.exit_code = kValidation;
            }
            results.push_back(rj);
        }
    }
    out.report["points"] = results;
    auto last = t.level(t.levels() - 1);
    out.artifact = io::dump(io::complex_to_json(last.complex()));
    out.svg = svg::complex_svg(last.complex());
}

inline const std::map<std::string, std::function<void(const json&, const JobConfig&, Output&)>>& handlers() {
    static const std::map<std::string, std::function<void(const json&, const JobConfig&, Output&)>> h = {
        {"trop", do_trop},
        {"ptrop", do_ptrop},
        {"fan-validate", do_fan_validate},
        {"refine", do_refine},
        {"limit-point", do_limit_point},
        {"fiber-rank", do_fiber_rank},
        {"dualcx", do_dualcx},
        {"subdivide", do_subdivide},
        {"rational-points", do_rational_points},
        {"map-fibers", do_map_fibers},
        {"toric-fiber", do_toric_fiber},
        {"galaxy", do_galaxy},
    };
    return h;
}

/// One input file through one subcommand.
inline JobResult run_single(const JobConfig& cfg, const std::string& path) {
    JobResult r;
    Output out;
    out.report["subcommand"] = cfg.subcommand;
    json meta;
    meta["path"] = path;
    try {
        std::string bytes = io::read_file(path);
        meta["sha256"] = io::sha256_hex(bytes);
        out.report["input"] = meta;
        out.report["seed"] = cfg.seed;
        if (cfg.depth) out.report["depth"] = *cfg.depth;
        json in = io::parse_text(bytes, path);
        handlers().at(cfg.subcommand)(in, cfg, out);
        out.report["status"] = out.exit_code == kOk ? "ok" : "failed";
    } catch (const Error& e) {
        out.exit_code = exit_code_for(e.kind());
        out.report["input"] = meta;
        out.report["status"] = "error";
        out.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        out.lines.push_back(std::string("error: ") + e.what());
    }
    r.exit_code = out.exit_code;
    r.report = std::move(out.report);
    r.text = join(out.lines, "\n") + "\n";
    r.artifact = std::move(out.artifact);
    r.svg = std::move(out.svg);
    return r;
}

/// Runs every input, fanning out over `parallel` workers; results are ordered by input path.
inline JobResult run_job(const JobConfig& cfg) {
    try {
        check_config(cfg);
    } catch (const Error& e) {
        JobResult r;
        r.exit_code = exit_code_for(e.kind());
        r.report["status"] = "error";
        r.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        r.text = std::string("error: ") + e.what() + "\n";
        return r;
    }
    std::vector<std::string> paths = cfg.inputs;
    std::sort(paths.begin(), paths.end());
    if (paths.size() == 1) return run_single(cfg, paths.front());

    std::vector<JobResult> results(paths.size());
    std::size_t workers = std::min(cfg.parallel, paths.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < paths.size(); i += workers) results[i] = run_single(cfg, paths[i]);
        });
    for (auto& t : pool) t.join();

    JobResult all;
    json batch = json::array();
    for (std::size_t i = 0; i < paths.size(); ++i) {
        batch.push_back(results[i].report);
        all.text += "== " + paths[i] + "\n" + results[i].text;
        if (all.exit_code == kOk) all.exit_code = results[i].exit_code;
    }
    all.report["subcommand"] = cfg.subcommand;
    all.report["batch"] = batch;
    return all;
}

/// Runs the job and writes its outputs; returns the exit code.
inline int run_and_write(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    JobResult r = run_job(cfg);
    if (cfg.json)
        out << io::dump(r.report);
    else
        out << r.text;
    auto write = [&](const std::string& path, const std::string& data) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            err << "cannot write " << path << "\n";
            return false;
        }
        f << data;
        return true;
    };
    if (!cfg.output.empty() && r.exit_code == kOk)
        if (!write(cfg.output, r.artifact.empty() ? io::dump(r.report) : r.artifact)) return kValidation;
    if (!cfg.svg.empty()) {
        if (r.svg.empty()) {
            err << "no picture for this input (2-D fans and complexes of dimension <= 2 only)\n";
        } else if (!write(cfg.svg, r.svg)) {
            return kValidation;
        }
    }
    if (r.exit_code != kOk && !cfg.json) err << "exit status " << r.exit_code << "\n";
    return r.exit_code;
}

} // namespace polytrop::cli
