#pragma once

// JSON file formats. Integers and rationals travel as strings ("p/q"), so
// nothing passes through floating point. Serializers emit the canonical form:
// parsing it back and serializing again reproduces the same bytes.

#include <charconv>
#include <complex>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "polytrop/delta_complex.hpp"
#include "polytrop/fan.hpp"
#include "polytrop/galaxy.hpp"
#include "polytrop/limit_toric.hpp"
#include "polytrop/symbolic.hpp"
#include "polytrop/tropical.hpp"

namespace polytrop::io {

using json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& field, const std::string& what) {
    fail(ErrorKind::ParseError, (field.empty() ? "" : field + ": ") + what);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail(path, "cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline json parse_text(const std::string& text, const std::string& source = "input") {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        parse_fail(source, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::ValidationError, "sha256 digest failed");
    std::ostringstream s;
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return s.str();
}

// ---------------------------------------------------------------------------
// Field access

inline const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) parse_fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(where + "." + key, "missing field");
    return *it;
}

inline std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline Rational rational_of(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
    if (!j.is_string()) parse_fail(where, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error&) {
        parse_fail(where, "not a rational: " + j.get<std::string>());
    }
}

inline Integer integer_of(const json& j, const std::string& where) {
    Rational q = rational_of(j, where);
    if (denominator_of(q) != 1) parse_fail(where, "expected an integer");
    return numerator_of(q);
}

inline std::size_t count_of(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline const json& array_of(const json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where, "expected an array");
    return j;
}

inline IntVec int_vector(const json& j, const std::string& where) {
    IntVec v;
    const auto& a = array_of(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(integer_of(a[i], sub(where, i)));
    return v;
}

inline RatVec rat_vector(const json& j, const std::string& where) {
    RatVec v;
    const auto& a = array_of(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(rational_of(a[i], sub(where, i)));
    return v;
}

inline IntMatrix int_matrix(const json& j, const std::string& where) {
    IntMatrix m;
    const auto& a = array_of(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) m.push_back(int_vector(a[i], sub(where, i)));
    return m;
}

inline json to_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json to_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

/// Runs a domain constructor, reporting its errors as validation failures.
template <class F>
auto validated(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::RankCap || e.kind() == ErrorKind::ResourceCap) throw;
        fail(ErrorKind::ValidationError, e.what());
    }
}

// ---------------------------------------------------------------------------
// Fans: {"rank": n, "rays": [[..]..], "maximal_cones": [[ray indices]..]}

struct FanInput {
    std::size_t rank;
    std::vector<Cone> cones;
};

/// The listed cones, before fan validation.
inline FanInput fan_cones_from_json(const json& j, const std::string& where = "fan") {
    std::size_t n = count_of(field(j, "rank", where), where + ".rank");
    check_rank(n);
    IntMatrix rays = int_matrix(field(j, "rays", where), where + ".rays");
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i].size() != n) parse_fail(sub(where + ".rays", i), "ray has the wrong length");
    const auto& cones = array_of(field(j, "maximal_cones", where), where + ".maximal_cones");
    std::vector<Cone> list;
    for (std::size_t c = 0; c < cones.size(); ++c) {
        std::string w = sub(where + ".maximal_cones", c);
        IntMatrix gens;
        const auto& idx = array_of(cones[c], w);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            std::size_t r = count_of(idx[k], sub(w, k));
            if (r >= rays.size()) parse_fail(sub(w, k), "ray index out of range");
            gens.push_back(rays[r]);
        }
        list.push_back(validated([&] { return cone_from_generators(gens); }));
    }
    return {n, std::move(list)};
}

inline Fan fan_from_json(const json& j, const std::string& where = "fan") {
    auto [n, list] = fan_cones_from_json(j, where);
    auto report = validate_fan(n, list);
    if (!report.valid) {
        std::string msg = "invalid fan";
        for (const auto& v : report.violations) msg += "; " + v;
        fail(ErrorKind::ValidationError, msg);
    }
    return *report.fan;
}

inline json fan_to_json(const Fan& f) {
    require(f.pointed(), ErrorKind::ValidationError, "fans with lineality have no ray-index form");
    auto rays = f.rays();
    json rj = json::array();
    for (const auto& r : rays) rj.push_back(to_json(r));
    json cones = json::array();
    for (const auto& c : f.maximal_cones()) {
        json idx = json::array();
        for (const auto& r : c.rays())
            idx.push_back(static_cast<std::size_t>(std::find(rays.begin(), rays.end(), r) - rays.begin()));
        cones.push_back(idx);
    }
    json j;
    j["rank"] = f.rank();
    j["rays"] = rj;
    j["maximal_cones"] = cones;
    return j;
}

// ---------------------------------------------------------------------------
// Polynomials: {"vars": n, "terms": [{"exp": [..], "val": "p/q", "coef": "re" | ["re","im"]}..]}

inline std::string format_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline double double_of(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) parse_fail(where, "expected a number string");
    const std::string s = j.get<std::string>();
    double x = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), x);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) parse_fail(where, "not a number: " + s);
    return x;
}

inline TropicalPolynomial polynomial_from_json(const json& j, const std::string& where = "polynomial") {
    std::size_t n = count_of(field(j, "vars", where), where + ".vars");
    const auto& terms = array_of(field(j, "terms", where), where + ".terms");
    std::vector<Term> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string w = sub(where + ".terms", i);
        Term t;
        const auto& e = field(terms[i], "exp", w);
        if (!e.is_array() || e.size() != n) parse_fail(w + ".exp", "term " + std::to_string(i) + " needs " + std::to_string(n) + " exponents");
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (!e[k].is_number_integer() || e[k].get<long long>() < 0)
                parse_fail(sub(w + ".exp", k), "term " + std::to_string(i) + " has a malformed exponent");
            t.exp.emplace_back(e[k].get<long long>());
        }
        if (terms[i].contains("val")) t.val = rational_of(terms[i]["val"], w + ".val");
        if (terms[i].contains("coef")) {
            const auto& c = terms[i]["coef"];
            if (c.is_array()) {
                if (c.size() != 2) parse_fail(w + ".coef", "expected [re, im]");
                t.coef = {double_of(c[0], w + ".coef[0]"), double_of(c[1], w + ".coef[1]")};
            } else {
                t.coef = {double_of(c, w + ".coef"), 0.0};
            }
        }
        out.push_back(std::move(t));
    }
    return validated([&] { return TropicalPolynomial(n, std::move(out)); });
}

inline json polynomial_to_json(const TropicalPolynomial& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json tj;
        json e = json::array();
        for (const auto& x : t.exp) e.push_back(static_cast<long long>(x));
        tj["exp"] = e;
        tj["val"] = to_string(t.val);
        if (t.coef != std::complex<double>(1, 0)) {
            if (t.coef.imag() == 0)
                tj["coef"] = format_double(t.coef.real());
            else
                tj["coef"] = json::array({format_double(t.coef.real()), format_double(t.coef.imag())});
        }
        terms.push_back(tj);
    }
    json j;
    j["vars"] = f.vars();
    j["terms"] = terms;
    return j;
}

// ---------------------------------------------------------------------------
// Incidence: {"mode": .., "strata": [{"name","codim","branches"[,"branch_of"]}..], "closures": [[lo, up]..]}

struct IncidenceFile {
    StrataIncidence data;
    ComplexMode mode;
};

inline ComplexMode mode_of(const std::string& s, const std::string& where) {
    if (s == "algebraic") return ComplexMode::Algebraic;
    if (s == "analytic") return ComplexMode::Analytic;
    parse_fail(where, "mode must be algebraic or analytic");
}

inline IncidenceFile incidence_from_json(const json& j, const std::string& where = "incidence") {
    const auto& m = field(j, "mode", where);
    if (!m.is_string()) parse_fail(where + ".mode", "expected a string");
    IncidenceFile f{{}, mode_of(m.get<std::string>(), where + ".mode")};
    const auto& strata = array_of(field(j, "strata", where), where + ".strata");
    for (std::size_t i = 0; i < strata.size(); ++i) {
        std::string w = sub(where + ".strata", i);
        Stratum s;
        const auto& name = field(strata[i], "name", w);
        if (!name.is_string()) parse_fail(w + ".name", "expected a string");
        s.name = name.get<std::string>();
        s.codim = count_of(field(strata[i], "codim", w), w + ".codim");
        s.branches = count_of(field(strata[i], "branches", w), w + ".branches");
        if (strata[i].contains("branch_of")) {
            const auto& b = array_of(strata[i]["branch_of"], w + ".branch_of");
            for (std::size_t k = 0; k < b.size(); ++k) {
                if (!b[k].is_string()) parse_fail(sub(w + ".branch_of", k), "expected a string");
                s.branch_of.push_back(b[k].get<std::string>());
            }
        }
        f.data.strata.push_back(std::move(s));
    }
    const auto& cl = array_of(field(j, "closures", where), where + ".closures");
    for (std::size_t i = 0; i < cl.size(); ++i) {
        std::string w = sub(where + ".closures", i);
        if (!cl[i].is_array() || cl[i].size() != 2 || !cl[i][0].is_string() || !cl[i][1].is_string())
            parse_fail(w, "expected [lower, upper]");
        f.data.closures.emplace_back(cl[i][0].get<std::string>(), cl[i][1].get<std::string>());
    }
    return f;
}

inline json incidence_to_json(const IncidenceFile& f) {
    json strata = json::array();
    for (const auto& s : f.data.strata) {
        json sj;
        sj["name"] = s.name;
        sj["codim"] = s.codim;
        sj["branches"] = s.branches;
        if (!s.branch_of.empty()) sj["branch_of"] = s.branch_of;
        strata.push_back(sj);
    }
    json cl = json::array();
    for (const auto& [lo, up] : f.data.closures) cl.push_back(json::array({lo, up}));
    json j;
    j["mode"] = to_string(f.mode);
    j["strata"] = strata;
    j["closures"] = cl;
    return j;
}

// ---------------------------------------------------------------------------
// Complexes. Simplicial form: {"vertices": [names], "facets": [[names]..]}.
// Delta form: {"cells": [[{"vertices": [..], "faces": [..], "label": .., "scale": ".."}..] per dim]}.

inline DeltaComplex complex_from_json(const json& j, const std::string& where = "complex") {
    if (j.is_object() && j.contains("strata")) {
        auto f = incidence_from_json(j, where);
        return validated([&] { return from_incidence(f.data, f.mode); });
    }
    DeltaComplex c;
    if (j.is_object() && j.contains("cells")) {
        const auto& dims = array_of(j["cells"], where + ".cells");
        std::vector<std::vector<Cell>> cells;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            std::string wd = sub(where + ".cells", d);
            cells.emplace_back();
            const auto& level = array_of(dims[d], wd);
            for (std::size_t i = 0; i < level.size(); ++i) {
                std::string w = sub(wd, i);
                Cell cell;
                for (const auto& v : array_of(field(level[i], "vertices", w), w + ".vertices"))
                    cell.vertices.push_back(count_of(v, w + ".vertices"));
                if (level[i].contains("faces"))
                    for (const auto& v : array_of(level[i]["faces"], w + ".faces")) cell.faces.push_back(count_of(v, w + ".faces"));
                if (level[i].contains("label")) {
                    if (!level[i]["label"].is_string()) parse_fail(w + ".label", "expected a string");
                    cell.label = level[i]["label"].get<std::string>();
                }
                if (level[i].contains("scale")) cell.scale = integer_of(level[i]["scale"], w + ".scale");
                cells.back().push_back(std::move(cell));
            }
        }
        c = validated([&] { return DeltaComplex(std::move(cells)); });
    } else {
        const auto& vs = array_of(field(j, "vertices", where), where + ".vertices");
        std::vector<std::string> names;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (!vs[i].is_string()) parse_fail(sub(where + ".vertices", i), "expected a string");
            names.push_back(vs[i].get<std::string>());
        }
        std::vector<std::vector<std::string>> facets;
        const auto& fs = array_of(field(j, "facets", where), where + ".facets");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            facets.emplace_back();
            const auto& f = array_of(fs[i], sub(where + ".facets", i));
            for (std::size_t k = 0; k < f.size(); ++k) {
                if (!f[k].is_string()) parse_fail(sub(sub(where + ".facets", i), k), "expected a string");
                facets.back().push_back(f[k].get<std::string>());
            }
        }
        c = validated([&] { return from_facets(names, facets); });
    }
    if (j.contains("affine") && j["affine"].is_boolean() && !j["affine"].get<bool>()) c = c.without_affine_structure();
    return c;
}

inline json complex_to_json(const DeltaComplex& c) {
    json dims = json::array();
    for (std::size_t d = 0; d <= c.dim() && !c.empty(); ++d) {
        json level = json::array();
        for (const auto& cell : c.cells(d)) {
            json cj;
            cj["vertices"] = cell.vertices;
            if (d > 0) cj["faces"] = cell.faces;
            cj["label"] = cell.label;
            if (cell.scale != 1) cj["scale"] = cell.scale.str();
            level.push_back(cj);
        }
        dims.push_back(level);
    }
    json j;
    j["cells"] = dims;
    if (!c.affine()) j["affine"] = false;
    return j;
}

// ---------------------------------------------------------------------------
// Symbolic vectors: {"symbols": [{"name", "lo", "hi"} | {"name", "sqrt", "digits"}..], "coords": [[c0, c1..]..]}
// A plain array of rationals is also accepted.

inline SymbolicVector symbolic_from_json(const json& j, const std::string& where = "x") {
    if (j.is_array()) return SymbolicVector::rational(rat_vector(j, where));
    std::vector<Symbol> syms;
    if (j.contains("symbols")) {
        const auto& a = array_of(j["symbols"], where + ".symbols");
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string w = sub(where + ".symbols", i);
            const auto& name = field(a[i], "name", w);
            if (!name.is_string()) parse_fail(w + ".name", "expected a string");
            if (a[i].contains("sqrt")) {
                Integer k = integer_of(a[i]["sqrt"], w + ".sqrt");
                std::size_t digits = a[i].contains("digits") ? count_of(a[i]["digits"], w + ".digits") : 30;
                syms.push_back(validated([&] { return sqrt_symbol(k, static_cast<unsigned>(digits), name.get<std::string>()); }));
            } else {
                syms.push_back({name.get<std::string>(), rational_of(field(a[i], "lo", w), w + ".lo"),
                                rational_of(field(a[i], "hi", w), w + ".hi")});
            }
        }
    }
    std::vector<RatVec> coords;
    const auto& c = array_of(field(j, "coords", where), where + ".coords");
    for (std::size_t i = 0; i < c.size(); ++i) coords.push_back(rat_vector(c[i], sub(where + ".coords", i)));
    return validated([&] { return SymbolicVector(std::move(syms), std::move(coords)); });
}

// ---------------------------------------------------------------------------
// Towers: {"base_fan": fan, "strategy": {"kind": .., ..}, "steps": k} or {"elliptic": {"m": m, "degrees": [..]}}

struct FanTowerInput {
    Fan base;
    TowerStrategy strategy;
    std::size_t steps;
};

struct TowerSpec {
    std::optional<FanTowerInput> fan;
    std::optional<EllipticTower> elliptic;
};

inline TowerSpec tower_from_json(const json& j, const std::string& where = "tower") {
    TowerSpec t;
    if (j.is_object() && j.contains("elliptic")) {
        const auto& e = j["elliptic"];
        EllipticTower et{count_of(field(e, "m", where + ".elliptic"), where + ".elliptic.m"), {}};
        const auto& d = array_of(field(e, "degrees", where + ".elliptic"), where + ".elliptic.degrees");
        for (std::size_t i = 0; i < d.size(); ++i) et.degrees.push_back(count_of(d[i], sub(where + ".elliptic.degrees", i)));
        validated([&] {
            et.check();
            return 0;
        });
        t.elliptic = std::move(et);
        return t;
    }
    Fan base = fan_from_json(field(j, "base_fan", where), where + ".base_fan");
    const auto& s = field(j, "strategy", where);
    const auto& kind = field(s, "kind", where + ".strategy");
    if (!kind.is_string()) parse_fail(where + ".strategy.kind", "expected a string");
    std::string k = kind.get<std::string>();
    TowerStrategy strat;
    if (k == "StellarAtBarycenters") {
        strat = TowerStrategy::stellar_at_barycenters();
    } else if (k == "TowardDirection") {
        strat = TowerStrategy::toward(symbolic_from_json(field(s, "target", where + ".strategy"), where + ".strategy.target"));
    } else if (k == "CommonRefineWith") {
        strat = TowerStrategy::refine_with(fan_from_json(field(s, "fan", where + ".strategy"), where + ".strategy.fan"));
    } else {
        parse_fail(where + ".strategy.kind", "unknown strategy " + k);
    }
    std::size_t steps = count_of(field(j, "steps", where), where + ".steps");
    t.fan = FanTowerInput{std::move(base), std::move(strat), steps};
    return t;
}

// ---------------------------------------------------------------------------
// File entry points

inline Fan parse_fan(const std::string& path) { return fan_from_json(parse_text(read_file(path), path)); }
inline TropicalPolynomial parse_polynomial(const std::string& path) {
    return polynomial_from_json(parse_text(read_file(path), path));
}
inline IncidenceFile parse_incidence(const std::string& path) { return incidence_from_json(parse_text(read_file(path), path)); }
inline TowerSpec parse_tower_spec(const std::string& path) { return tower_from_json(parse_text(read_file(path), path)); }
inline DeltaComplex parse_complex(const std::string& path) { return complex_from_json(parse_text(read_file(path), path)); }

} // namespace polytrop::io
