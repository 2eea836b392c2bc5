#include "adelic/descriptor.hpp"

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "adelic/arith.hpp"
#include "adelic/curve.hpp"
#include "adelic/errors.hpp"
#include "adelic/expr.hpp"
#include "adelic/heights.hpp"
#include "adelic/hn.hpp"

namespace adelic {

using nlohmann::json;

const char* kVersionStamp = "adelic 0.1.0";

// ---------------------------------------------------------------------------
// TOML subset
// ---------------------------------------------------------------------------

namespace {

struct TomlParser {
    [[noreturn]] static void fail(int line, const std::string& msg) {
        throw argument_error("toml: line " + std::to_string(line) + ": " + msg);
    }

    static std::string trim(const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static std::string strip_comment(const std::string& s) {
        bool in_str = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') in_str = !in_str;
            if (s[i] == '#' && !in_str) return s.substr(0, i);
        }
        return s;
    }

    static json parse_value(const std::string& raw, int line) {
        std::string v = trim(raw);
        if (v.empty()) fail(line, "empty value");
        if (v.front() == '"') {
            if (v.size() < 2 || v.back() != '"') fail(line, "unterminated string");
            std::string out;
            for (std::size_t i = 1; i + 1 < v.size(); ++i) {
                if (v[i] == '\\' && i + 2 < v.size()) {
                    char n = v[++i];
                    out.push_back(n == 'n' ? '\n' : n == 't' ? '\t' : n);
                } else {
                    out.push_back(v[i]);
                }
            }
            return json(out);
        }
        if (v == "true") return json(true);
        if (v == "false") return json(false);
        if (v.front() == '[') {
            if (v.back() != ']') fail(line, "unterminated array");
            json arr = json::array();
            std::string body = v.substr(1, v.size() - 2);
            int depth = 0;
            bool in_str = false;
            std::string cur;
            for (char c : body) {
                if (c == '"') in_str = !in_str;
                if (!in_str) {
                    if (c == '[') ++depth;
                    if (c == ']') --depth;
                    if (c == ',' && depth == 0) {
                        if (!trim(cur).empty()) arr.push_back(parse_value(cur, line));
                        cur.clear();
                        continue;
                    }
                }
                cur.push_back(c);
            }
            if (!trim(cur).empty()) arr.push_back(parse_value(cur, line));
            return arr;
        }
        // number
        bool integral = !v.empty() && (std::isdigit(static_cast<unsigned char>(v[0])) || v[0] == '-' || v[0] == '+');
        for (std::size_t i = 1; i < v.size() && integral; ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) integral = false;
        if (integral) return json(std::stoll(v));
        char* end = nullptr;
        double d = std::strtod(v.c_str(), &end);
        if (end != v.c_str() + v.size()) fail(line, "cannot parse value '" + v + "'");
        return json(d);
    }

    static json* resolve(json& root, const std::string& dotted, int line) {
        json* cur = &root;
        std::stringstream ss(dotted);
        std::string part;
        while (std::getline(ss, part, '.')) {
            part = trim(part);
            if (part.empty()) fail(line, "empty table path component");
            if (cur->is_array()) cur = &cur->back();
            if (!cur->contains(part)) (*cur)[part] = json::object();
            cur = &(*cur)[part];
        }
        return cur;
    }
};

} // namespace

json toml_to_json(const std::string& text) {
    json root = json::object();
    json* current = &root;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = TomlParser::trim(TomlParser::strip_comment(raw));
        if (line.empty()) continue;
        if (line.rfind("[[", 0) == 0) {
            if (line.size() < 5 || line.substr(line.size() - 2) != "]]")
                TomlParser::fail(lineno, "malformed array-of-tables header");
            std::string path = TomlParser::trim(line.substr(2, line.size() - 4));
            auto dot = path.rfind('.');
            json* parent = dot == std::string::npos ? &root : TomlParser::resolve(root, path.substr(0, dot), lineno);
            std::string leaf = dot == std::string::npos ? path : TomlParser::trim(path.substr(dot + 1));
            if (parent->is_array()) parent = &parent->back();
            if (!parent->contains(leaf)) (*parent)[leaf] = json::array();
            (*parent)[leaf].push_back(json::object());
            current = &(*parent)[leaf].back();
        } else if (line.front() == '[') {
            if (line.back() != ']') TomlParser::fail(lineno, "malformed table header");
            current = TomlParser::resolve(root, TomlParser::trim(line.substr(1, line.size() - 2)), lineno);
        } else {
            auto eq = line.find('=');
            if (eq == std::string::npos) TomlParser::fail(lineno, "expected key = value");
            std::string key = TomlParser::trim(line.substr(0, eq));
            if (key.empty()) TomlParser::fail(lineno, "empty key");
            (*current)[key] = TomlParser::parse_value(line.substr(eq + 1), lineno);
        }
    }
    return root;
}

// ---------------------------------------------------------------------------
// Schema helpers
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
    throw argument_error("descriptor: " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) schema_fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) schema_fail(path + "." + it.key(), "unknown key");
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) schema_fail(path + "." + key, "missing required key");
    return obj.at(key);
}

std::string require_string(const json& obj, const std::string& path, const std::string& key) {
    const json& v = require(obj, path, key);
    if (!v.is_string()) schema_fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

Rational rational_from(const json& v, const std::string& path) {
    try {
        if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
        if (v.is_string()) return Rational::parse(v.get<std::string>());
    } catch (const argument_error& e) {
        schema_fail(path, e.what());
    }
    schema_fail(path, "expected a rational literal");
}

IntegrationConfig integration_from(const json& root, const std::string& path) {
    IntegrationConfig cfg;
    if (!root.contains("integration")) return cfg;
    const json& blk = root.at("integration");
    check_keys(blk, path + ".integration", {"nodes", "clearance", "tolerance"});
    if (blk.contains("nodes")) cfg.nodes = blk.at("nodes").get<int>();
    if (blk.contains("clearance")) cfg.clearance = blk.at("clearance").get<double>();
    if (blk.contains("tolerance")) cfg.tolerance = blk.at("tolerance").get<double>();
    try {
        cfg.validate();
    } catch (const argument_error& e) {
        schema_fail(path + ".integration", e.what());
    }
    return cfg;
}

AdelicCurve curve_from(const json& c, const std::string& path, IntegrationConfig cfg) {
    std::string kind = require_string(c, path, "curve");
    try {
        if (kind == "rational") {
            check_keys(c, path, {"curve"});
            return AdelicCurve::rational(cfg);
        }
        if (kind == "quadratic") {
            check_keys(c, path, {"curve", "d"});
            const json& d = require(c, path, "d");
            if (!d.is_number_integer()) schema_fail(path + ".d", "expected an integer");
            return AdelicCurve::quadratic(d.get<long>(), cfg);
        }
        if (kind == "nevanlinna") {
            check_keys(c, path, {"curve", "R", "nodes", "clearance"});
            Rational R = rational_from(require(c, path, "R"), path + ".R");
            if (c.contains("nodes")) cfg.nodes = c.at("nodes").get<int>();
            if (c.contains("clearance")) cfg.clearance = c.at("clearance").get<double>();
            return AdelicCurve::nevanlinna(std::move(R), cfg);
        }
    } catch (const argument_error& e) {
        schema_fail(path, e.what());
    }
    schema_fail(path + ".curve", "unknown curve kind '" + kind + "'");
}

RatMat matrix_from(const json& m, const std::string& path) {
    if (!m.is_array() || m.empty()) schema_fail(path, "expected a non-empty array of rows");
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m.at(0).size());
    RatMat out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = m.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            schema_fail(path + "[" + std::to_string(i) + "]", "ragged matrix");
        for (int j = 0; j < cols; ++j)
            out(i, j) = rational_from(row.at(static_cast<std::size_t>(j)),
                                      path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return out;
}

Bundle bundle_from(const json& b, const std::string& path, const AdelicCurve& curve) {
    std::string kind = require_string(b, path, "kind");
    if (kind == "diagonal") {
        check_keys(b, path, {"kind", "shape", "weights"});
        std::string shape_txt = b.contains("shape") ? b.at("shape").get<std::string>() : "l2";
        ArchShape shape = shape_txt == "max" ? ArchShape::Max : ArchShape::L2;
        if (shape_txt != "max" && shape_txt != "l2") schema_fail(path + ".shape", "expected 'max' or 'l2'");
        const json& ws = require(b, path, "weights");
        if (!ws.is_array() || ws.empty()) schema_fail(path + ".weights", "expected a non-empty array");
        std::vector<DiagonalWeight> weights;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            std::string wp = path + ".weights[" + std::to_string(i) + "]";
            const json& w = ws.at(i);
            if (!w.is_object()) schema_fail(wp, "expected an object");
            DiagonalWeight dw;
            if (curve.is_nevanlinna()) {
                check_keys(w, wp, {"function", "arch"});
                if (w.contains("function")) {
                    try {
                        dw.g = parse_rational_function(w.at("function").get<std::string>());
                    } catch (const argument_error& e) {
                        schema_fail(wp + ".function", e.what());
                    }
                }
                if (w.contains("arch")) dw.arch_log = w.at("arch").get<double>();
            } else {
                for (auto it = w.begin(); it != w.end(); ++it) {
                    try {
                        dw.log_at.emplace_back(Place::from_key(it.key()), it.value().get<double>());
                    } catch (const argument_error& e) {
                        schema_fail(wp + "." + it.key(), e.what());
                    }
                }
            }
            weights.push_back(std::move(dw));
        }
        try {
            return DiagonalPNF(curve, shape, std::move(weights));
        } catch (const argument_error& e) {
            schema_fail(path, e.what());
        }
    }
    if (kind == "lattice-hermitian") {
        check_keys(b, path, {"kind", "lattice", "gram"});
        if (!curve.is_rational()) schema_fail(path, "lattice-hermitian bundles live over the rational curve");
        RatMat lattice = matrix_from(require(b, path, "lattice"), path + ".lattice");
        RatMat gram = matrix_from(require(b, path, "gram"), path + ".gram");
        return LatticeHermitianBundle(std::move(lattice), std::move(gram)); // infeasible Gram surfaces as exit 4
    }
    schema_fail(path + ".kind", "unknown bundle kind '" + kind + "'");
}

Target target_from(const json& t, const std::string& path) {
    if (t.is_string() && t.get<std::string>() == "inf") return std::nullopt;
    if (t.is_string()) {
        try {
            return GaussianRational::parse(t.get<std::string>());
        } catch (const argument_error& e) {
            schema_fail(path, e.what());
        }
    }
    if (t.is_number_integer()) return GaussianRational(static_cast<long>(t.get<long long>()));
    schema_fail(path, "expected 'inf' or a Gaussian rational literal");
}

std::vector<Rational> radii_from(const json& r, const std::string& path) {
    if (!r.is_array() || r.empty()) schema_fail(path, "expected a non-empty array of radii");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const json& v = r.at(i);
        std::string p = path + "[" + std::to_string(i) + "]";
        if (v.is_number() && !v.is_number_integer()) {
            out.push_back(Rational::from_double(v.get<double>()));
        } else {
            out.push_back(rational_from(v, p));
        }
        if (!(out.back() > Rational(0))) schema_fail(p, "radius must be positive");
    }
    return out;
}

// 15 significant digits, parsed back so the JSON layer emits the rounded value
json jnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return json::parse(buf);
}

std::string fnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Command execution
// ---------------------------------------------------------------------------

json run_check_product(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "curve", "value", "integration"});
    IntegrationConfig cfg = integration_from(doc, "$");
    AdelicCurve curve = curve_from(require(doc, "$", "curve"), "$.curve", cfg);
    json results;
    if (curve.is_rational()) {
        Rational value = rational_from(require(doc, "$", "value"), "$.value");
        if (validate_only) return results;
        DefectReport rep = defect(curve, value);
        results["total"] = jnum(rep.total);
        results["exact"] = rep.exact;
    } else if (curve.is_quadratic()) {
        std::string text = require_string(doc, "$", "value");
        QuadraticElement value = QuadraticElement::parse(curve.quadratic_d(), text);
        if (validate_only) return results;
        DefectReport rep = defect_quadratic(curve.quadratic_d(), value, cfg);
        results["total"] = jnum(rep.total);
        results["reference"] = jnum(*rep.reference);
        results["gap"] = jnum(*rep.gap);
    } else {
        schema_fail("$.curve", "check-product runs on proper curves; use jensen for S_R");
    }
    return results;
}

json run_jensen(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "curve", "function", "integration"});
    IntegrationConfig cfg = integration_from(doc, "$");
    AdelicCurve curve = curve_from(require(doc, "$", "curve"), "$.curve", cfg);
    if (!curve.is_nevanlinna()) schema_fail("$.curve", "jensen needs a Nevanlinna curve");
    RationalFunction f = parse_rational_function(require_string(doc, "$", "function"));
    json results;
    if (validate_only) return results;
    DefectReport rep = defect(curve, f);
    results["total"] = jnum(rep.total);
    results["reference"] = jnum(*rep.reference);
    results["gap"] = jnum(*rep.gap);
    return results;
}

json run_degree(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "curve", "bundle", "integration"});
    IntegrationConfig cfg = integration_from(doc, "$");
    AdelicCurve curve = curve_from(require(doc, "$", "curve"), "$.curve", cfg);
    Bundle b = bundle_from(require(doc, "$", "bundle"), "$.bundle", curve);
    json results;
    if (validate_only) return results;
    results["rank"] = bundle_rank(b);
    results["degree"] = jnum(degree(b));
    results["slope"] = jnum(slope(b));
    return results;
}

json run_hn(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "curve", "bundle", "enum", "integration"});
    IntegrationConfig icfg = integration_from(doc, "$");
    AdelicCurve curve = curve_from(require(doc, "$", "curve"), "$.curve", icfg);
    Bundle b = bundle_from(require(doc, "$", "bundle"), "$.bundle", curve);
    EnumConfig cfg;
    if (doc.contains("enum")) {
        const json& e = doc.at("enum");
        check_keys(e, "$.enum", {"bound", "max_dim"});
        if (e.contains("bound")) cfg.bound = e.at("bound").get<int>();
        if (e.contains("max_dim")) cfg.max_dim = e.at("max_dim").get<int>();
        try {
            cfg.validate();
        } catch (const argument_error& err) {
            schema_fail("$.enum", err.what());
        }
    }
    if (validate_only) return json{};
    Flag flag = hn_flag(b, cfg);
    json steps = json::array();
    for (const SubspaceBasis& s : flag.steps) {
        json rows = json::array();
        for (int j = 0; j < s.cols.cols(); ++j) {
            json row = json::array();
            for (int i = 0; i < s.cols.rows(); ++i) row.push_back(s.cols(i, j).str());
            rows.push_back(std::move(row));
        }
        steps.push_back(std::move(rows));
    }
    json slopes = json::array();
    for (double s : flag.slopes) slopes.push_back(jnum(s));
    json results;
    results["steps"] = std::move(steps);
    results["slopes"] = std::move(slopes);
    if (flag.certification.kind == CertKind::ExactSplit)
        results["certification"] = "exact-split";
    else
        results["certification"] = json{{"enumerated", flag.certification.bound}};
    return results;
}

json run_height(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "curve", "metric", "point", "integration"});
    IntegrationConfig cfg = integration_from(doc, "$");
    AdelicCurve curve = curve_from(require(doc, "$", "curve"), "$.curve", cfg);
    Bundle b = bundle_from(require(doc, "$", "metric"), "$.metric", curve);
    const json& pt = require(doc, "$", "point");
    if (!pt.is_array() || pt.empty()) schema_fail("$.point", "expected a non-empty coordinate array");

    ProjectivePoint point = [&]() -> ProjectivePoint {
        if (curve.is_quadratic()) {
            QuadraticPoint qp;
            qp.d = curve.quadratic_d();
            for (std::size_t i = 0; i < pt.size(); ++i)
                qp.coords.push_back(QuadraticElement::parse(qp.d, pt.at(i).get<std::string>()));
            return qp;
        }
        RationalPoint rp;
        for (std::size_t i = 0; i < pt.size(); ++i)
            rp.coords.push_back(rational_from(pt.at(i), "$.point[" + std::to_string(i) + "]"));
        return rp;
    }();

    json results;
    if (validate_only) return results;
    results["point"] = pt;
    results["metric"] = doc.at("metric");
    results["value"] = jnum(fs_height(curve, FSMetricSpec{b}, point));
    return results;
}

json run_split_places(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "d", "p", "infinite", "max_p"});
    const json& dj = require(doc, "$", "d");
    if (!dj.is_number_integer()) schema_fail("$.d", "expected an integer");
    long d = dj.get<long>();
    try {
        check_quadratic_d(d);
    } catch (const argument_error& e) {
        schema_fail("$.d", e.what());
    }

    auto places_json = [&](const Place& base) {
        json out = json::array();
        Rational sum(0);
        for (const WeightedPlace& wp : split_rational_place(d, base)) {
            out.push_back(json{{"place", wp.place.key()}, {"weight", wp.weight.str()}});
            sum += wp.weight;
        }
        return json{{"base", base.key()}, {"places", std::move(out)}, {"weight_sum", sum.str()}};
    };

    json results;
    if (validate_only) {
        if (!doc.contains("max_p") && !(doc.contains("infinite") && doc.at("infinite").get<bool>()))
            require(doc, "$", "p");
        return results;
    }
    if (doc.contains("max_p")) {
        long cap = doc.at("max_p").get<long>();
        json rows = json::array();
        for (long p = 2; p <= cap; ++p)
            if (is_prime(Integer(p))) rows.push_back(places_json(Place(RationalFinite{Integer(p)})));
        rows.push_back(places_json(Place(RationalInfinite{})));
        results["rows"] = std::move(rows);
    } else if (doc.contains("infinite") && doc.at("infinite").get<bool>()) {
        results = places_json(Place(RationalInfinite{}));
    } else {
        const json& pj = require(doc, "$", "p");
        if (!pj.is_number_integer()) schema_fail("$.p", "expected an integer prime");
        results = places_json(Place(RationalFinite{Integer(pj.get<long>())}));
    }
    return results;
}

std::string csv_cell(const std::optional<double>& v) { return v ? fnum(*v) : ""; }

std::string run_nevanlinna_csv(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "function", "target", "radii", "truncation", "shape", "integration"});
    IntegrationConfig cfg = integration_from(doc, "$");
    RationalFunction f = parse_rational_function(require_string(doc, "$", "function"));
    Target a = target_from(require(doc, "$", "target"), "$.target");
    std::vector<Rational> radii = radii_from(require(doc, "$", "radii"), "$.radii");
    int truncation = kUntruncated;
    if (doc.contains("truncation")) truncation = doc.at("truncation").get<int>();
    ArchShape shape = ArchShape::Max;
    if (doc.contains("shape")) {
        std::string s = doc.at("shape").get<std::string>();
        if (s != "max" && s != "l2") schema_fail("$.shape", "expected 'max' or 'l2'");
        if (s == "l2") shape = ArchShape::L2;
    }

    if (validate_only) return "";
    std::vector<double> grid;
    for (const Rational& r : radii) grid.push_back(r.to_double());
    CharacteristicReport rep = characteristic_table(f, a, grid, truncation, true, shape, cfg);

    std::ostringstream out;
    out << "r,N,N_k,m,T,fs_height,gap\n";
    for (const CharacteristicRow& row : rep.rows) {
        out << fnum(row.r) << "," << csv_cell(row.N) << "," << csv_cell(row.N_truncated) << "," << csv_cell(row.m)
            << "," << csv_cell(row.T) << "," << csv_cell(row.fs_height) << "," << csv_cell(row.gap) << "\n";
    }
    return out.str();
}

std::string run_family_height_csv(const json& doc, bool validate_only) {
    check_keys(doc, "$", {"command", "point", "shape", "radii", "integration"});
    IntegrationConfig cfg = integration_from(doc, "$");
    const json& pt = require(doc, "$", "point");
    if (!pt.is_array() || pt.empty()) schema_fail("$.point", "expected a non-empty coordinate array");
    std::vector<RationalFunction> coords;
    for (std::size_t i = 0; i < pt.size(); ++i) {
        try {
            coords.push_back(parse_rational_function(pt.at(i).get<std::string>()));
        } catch (const argument_error& e) {
            schema_fail("$.point[" + std::to_string(i) + "]", e.what());
        }
    }
    ArchShape shape = ArchShape::Max;
    if (doc.contains("shape") && doc.at("shape").get<std::string>() == "l2") shape = ArchShape::L2;
    std::vector<Rational> radii = radii_from(require(doc, "$", "radii"), "$.radii");
    if (validate_only) return "";

    std::ostringstream out;
    out << "R,height,T,gap,reduced\n";
    for (const Rational& R : radii) {
        try {
            CartanHeight h = cartan_fs_height(coords, shape, R, cfg);
            out << R.str() << "," << fnum(h.height) << "," << csv_cell(h.characteristic) << ","
                << csv_cell(h.gap) << "," << (h.reduced_input ? "1" : "0") << "\n";
        } catch (const numerical_guard_error&) {
            out << R.str() << ",,,,\n";
        }
    }
    return out.str();
}

void dispatch(const json& doc, const std::string& command, Report* report, bool validate_only) {
    if (command == "nevanlinna") {
        std::string csv = run_nevanlinna_csv(doc, validate_only);
        if (report) {
            report->is_csv = true;
            report->csv = std::move(csv);
        }
        return;
    }
    if (command == "family-height") {
        std::string csv = run_family_height_csv(doc, validate_only);
        if (report) {
            report->is_csv = true;
            report->csv = std::move(csv);
        }
        return;
    }
    json results;
    if (command == "check-product")
        results = run_check_product(doc, validate_only);
    else if (command == "jensen")
        results = run_jensen(doc, validate_only);
    else if (command == "degree")
        results = run_degree(doc, validate_only);
    else if (command == "hn")
        results = run_hn(doc, validate_only);
    else if (command == "height")
        results = run_height(doc, validate_only);
    else if (command == "split-places")
        results = run_split_places(doc, validate_only);
    if (report) report->document["results"] = std::move(results);
}

} // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

ProblemDescriptor parse_descriptor(const std::string& text, DescriptorFormat format) {
    json doc;
    if (format == DescriptorFormat::Toml) {
        doc = toml_to_json(text);
    } else {
        doc = json::parse(text, nullptr, false);
        if (doc.is_discarded()) throw argument_error("descriptor: malformed JSON");
    }
    if (!doc.is_object()) throw argument_error("descriptor: expected a top-level object");
    std::string command = require_string(doc, "$", "command");
    static const std::set<std::string> known{"check-product", "jensen",     "degree",        "hn",
                                             "height",        "nevanlinna", "family-height", "split-places"};
    if (!known.count(command)) schema_fail("$.command", "unknown command '" + command + "'");
    dispatch(doc, command, nullptr, true); // full schema validation, no computation
    return ProblemDescriptor{std::move(doc)};
}

Report run(const ProblemDescriptor& descriptor) {
    const json& doc = descriptor.doc;
    std::string command = descriptor.command();

    Report report;
    report.document["command"] = command;
    report.document["inputs"] = doc;
    report.document["version"] = kVersionStamp;
    report.document["warnings"] = json::array();
    dispatch(doc, command, &report, false);
    return report;
}

std::string emit(const Report& report) {
    if (report.is_csv) return report.csv;
    return report.document.dump(2) + "\n";
}

} // namespace adelic
