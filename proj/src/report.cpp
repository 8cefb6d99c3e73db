#include "hesslab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hesslab_schemas_embedded.hpp"

namespace hesslab {

// ---- JSON encoding ---------------------------------------------------------

json complex_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

json points_to_json(std::span<const cplx> v) {
    json arr = json::array();
    for (const cplx& c : v) arr.push_back(complex_to_json(c));
    return arr;
}

json to_json(const RegionLabel& label) {
    json j;
    j["m"] = label.m_index;
    j["k"] = label.slice_k_index;
    if (label.delta)
        j["delta"] = *label.delta;
    else
        j["delta"] = nullptr;
    return j;
}

json to_json(const RegionRow& row) {
    json j = to_json(row.label);
    j["region_id"] = row.region_id;
    j["a"] = row.a;
    j["b"] = row.b;
    return j;
}

json to_json(const BoundaryCurve& curve) {
    json j;
    j["family"] = curve.family;
    j["k"] = curve.k;
    j["kind"] = curve.kind == BoundaryCurve::Kind::line ? "line" : "hyperbola";
    j["coeffs"] = {{"c0", curve.c0}, {"c1", curve.c1}, {"c2", curve.c2}};
    return j;
}

json to_json(const LadderPoint& pt) {
    return json{{"r", pt.r}, {"value", pt.value}, {"stderr", pt.std_error}};
}

json to_json(const RadiusLadder& ladder) {
    return json{{"r0", ladder.r0}, {"theta", ladder.theta}, {"rungs", ladder.rungs}};
}

json to_json(const LelongEstimate& est) {
    json per = json::array();
    for (const LadderPoint& pt : est.per_radius) per.push_back(to_json(pt));
    return json{{"per_radius", per},
                {"limit", est.limit},
                {"quality", to_string(est.quality)},
                {"fit_slope", est.fit_slope}};
}

json to_json(const DirectionalEstimate& est) {
    json per = json::array();
    for (const DirectionalPoint& pt : est.per_radius)
        per.push_back(json{{"r", pt.r},
                           {"total", pt.total},
                           {"I", pt.i_part},
                           {"J", pt.j_part},
                           {"stderr", pt.std_error}});
    return json{{"n", est.n},
                {"m", est.m},
                {"p", est.p},
                {"q", est.q},
                {"per_radius", per},
                {"limit", est.limit},
                {"quality", to_string(est.quality)},
                {"fit_slope", est.fit_slope}};
}

json to_json(const MonotonicityReport& rep) {
    json viols = json::array();
    for (const MonotonicityViolation& v : rep.violations)
        viols.push_back(json{{"component", v.component},
                             {"r_small", v.r_small},
                             {"r_large", v.r_large},
                             {"drop", v.drop},
                             {"slack", v.slack}});
    return json{{"estimate", to_json(rep.estimate)}, {"violations", viols}, {"pass", rep.pass}};
}

json to_json(const SliceIdentityReport& rep) {
    json rows = json::array();
    for (const SliceIdentitySample& row : rep.per_xprime)
        rows.push_back(json{{"xprime", points_to_json(row.xprime)},
                            {"slice_limit", row.slice_limit},
                            {"quality", to_string(row.quality)},
                            {"divergent_slice", row.divergent_slice}});
    return json{{"lhs", rep.lhs},
                {"rhs", rep.rhs},
                {"difference", rep.difference},
                {"tolerance", rep.tolerance},
                {"j_rate_slope", rep.j_rate_slope},
                {"pass", rep.pass},
                {"tainted", rep.tainted},
                {"directional", to_json(rep.directional)},
                {"per_xprime", rows}};
}

json to_json(const PointIdentityReport& rep) {
    json rows = json::array();
    for (const PointIdentitySample& s : rep.samples)
        rows.push_back(json{{"xprime", points_to_json(s.xprime)},
                            {"lhs", s.lhs},
                            {"rhs", s.rhs},
                            {"slice_limit", s.slice_limit},
                            {"quality", to_string(s.quality)}});
    return json{{"n", rep.n},
                {"m", rep.m},
                {"p", rep.p},
                {"q", rep.q},
                {"mode", rep.mode == PointIdentityMode::integer_case ? "integer" : "fractional"},
                {"c_constant", rep.c_constant},
                {"d_constant", rep.d_constant},
                {"samples", rows},
                {"max_difference", rep.max_difference},
                {"pass", rep.pass}};
}

json to_json(const IntegrabilityEvidence& ev) {
    json est = json::array();
    for (double e : ev.estimates) {
        if (std::isfinite(e))
            est.push_back(e);
        else
            est.push_back(nullptr);
    }
    return json{{"verdict", ev.verdict == Integrability::divergent ? "divergent" : "integrable"},
                {"minus_inf_slice", ev.minus_inf_slice},
                {"estimates", est},
                {"final_estimate", std::isfinite(ev.final_estimate)
                                       ? json(ev.final_estimate)
                                       : json(nullptr)}};
}

// ---- CSV -------------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_render(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += row[j];
        }
        out += '\n';
    }
    return out;
}

std::string table1_csv(const std::vector<RegionRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"region_id", "a", "b", "m", "k", "delta"});
    for (const RegionRow& r : rows)
        cells.push_back({std::to_string(r.region_id), format_double(r.a), format_double(r.b),
                         std::to_string(r.label.m_index), std::to_string(r.label.slice_k_index),
                         r.label.delta ? std::to_string(*r.label.delta) : ""});
    return csv_render(cells);
}

std::string ladder_csv(const LelongEstimate& est) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"r", "value", "stderr"});
    for (const LadderPoint& pt : est.per_radius)
        cells.push_back({format_double(pt.r), format_double(pt.value), format_double(pt.std_error)});
    return csv_render(cells);
}

std::string directional_csv(const DirectionalEstimate& est) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"r", "total", "I", "J", "stderr"});
    for (const DirectionalPoint& pt : est.per_radius)
        cells.push_back({format_double(pt.r), format_double(pt.total), format_double(pt.i_part),
                         format_double(pt.j_part), format_double(pt.std_error)});
    return csv_render(cells);
}

std::string boundaries_csv(const std::vector<BoundaryCurve>& curves) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"family", "k", "kind", "c0", "c1", "c2"});
    for (const BoundaryCurve& c : curves)
        cells.push_back({c.family, std::to_string(c.k),
                         c.kind == BoundaryCurve::Kind::line ? "line" : "hyperbola",
                         format_double(c.c0), format_double(c.c1), format_double(c.c2)});
    return csv_render(cells);
}

// ---- Schema validation -----------------------------------------------------

namespace {

bool type_matches(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

void validate_node(const json& schema, const json& value, const std::string& path,
                   std::vector<std::string>& out) {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string())
            ok = type_matches(t.get<std::string>(), value);
        else if (t.is_array())
            for (const json& one : t) ok = ok || type_matches(one.get<std::string>(), value);
        if (!ok) {
            out.push_back(path + ": expected type " + t.dump() + ", got " + value.type_name());
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const json& e : schema["enum"]) ok = ok || e == value;
        if (!ok) out.push_back(path + ": value not in enum");
    }
    if (schema.contains("const") && schema["const"] != value)
        out.push_back(path + ": value differs from const");
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const json& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    out.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    validate_node(it.value(), value.at(it.key()), path + "/" + it.key(), out);
    }
    if (value.is_array() && schema.contains("items")) {
        size_t i = 0;
        for (const json& item : value)
            validate_node(schema["items"], item, path + "/" + std::to_string(i++), out);
    }
}

}  // namespace

std::vector<std::string> schema_violations(const json& schema, const json& value) {
    std::vector<std::string> out;
    validate_node(schema, value, "", out);
    return out;
}

const std::map<std::string, std::string>& embedded_schemas() {
    static const std::map<std::string, std::string> schemas = [] {
        std::map<std::string, std::string> m;
        for (const auto& [name, text] : detail::kEmbeddedSchemas) m.emplace(name, text);
        return m;
    }();
    return schemas;
}

void validate_payload(const std::string& command, const json& payload) {
    const auto& schemas = embedded_schemas();
    auto it = schemas.find(command);
    if (it == schemas.end())
        throw std::runtime_error("validate_payload: no schema for command '" + command + "'");
    const json schema = json::parse(it->second);
    const std::vector<std::string> errs = schema_violations(schema, payload);
    if (!errs.empty()) {
        std::string msg = "payload for '" + command + "' violates its schema:";
        for (const std::string& e : errs) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
}

// ---- Files -----------------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hesslab
