#include <doctest.h>

#include <array>
#include <fstream>
#include <sstream>

#include "hesslab/payloads.hpp"
#include "hesslab/report.hpp"

using namespace hesslab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, -0.25, 1.0 / 3.0, 6.02214076e23, 1e-300}) {
        const std::string s = format_double(v);
        double back = 0;
        std::sscanf(s.c_str(), "%lf", &back);
        CHECK(back == v);
    }
}

TEST_CASE("schema validator accepts valid values and reports violations") {
    const json schema = json::parse(R"({
        "type": "object",
        "required": ["a", "b"],
        "properties": {
            "a": {"type": "integer"},
            "b": {"type": "array", "items": {"type": "number"}},
            "c": {"enum": ["x", "y"]}
        }
    })");
    CHECK(schema_violations(schema, json{{"a", 1}, {"b", {1.5, 2.5}}}).empty());
    CHECK(schema_violations(schema, json{{"a", 1}, {"b", {1.5}}, {"c", "x"}}).empty());
    CHECK_FALSE(schema_violations(schema, json{{"a", 1.5}, {"b", json::array()}}).empty());
    CHECK_FALSE(schema_violations(schema, json{{"a", 1}}).empty());
    CHECK_FALSE(schema_violations(schema, json{{"a", 1}, {"b", {"s"}}}).empty());
    CHECK_FALSE(schema_violations(schema, json{{"a", 1}, {"b", json::array()}, {"c", "z"}}).empty());
}

TEST_CASE("embedded schemas match the checked-in files") {
    const auto& schemas = embedded_schemas();
    for (const char* name : {"classify", "table1", "boundaries", "msh_check", "lelong",
                             "slice_index", "exceptional_scan", "directional", "verify",
                             "manifest"}) {
        REQUIRE(schemas.count(name) == 1);
        CHECK_NOTHROW([&] {
            const json parsed = json::parse(schemas.at(name));
            (void)parsed;
        }());
        const std::string on_disk =
            read_file(std::string(HESSLAB_SOURCE_DIR) + "/schemas/" + name + ".json");
        CHECK(schemas.at(name) == on_disk);
    }
}

TEST_CASE("payloads validate and reproduce byte-identically") {
    const PayloadBundle a = payload_classify(5, 1.0, 1.0);
    const PayloadBundle b = payload_classify(5, 1.0, 1.0);
    CHECK(a.payload.dump() == b.payload.dump());
    CHECK(a.csv == b.csv);
    CHECK(a.payload["label"]["m"] == 5);

    EstimatorConfig cfg;
    cfg.samples = 1024;
    cfg.seed = 42;
    const FunctionSpec fn{"fundamental", 4, 0, {2.0}};
    const PayloadBundle l1 =
        payload_lelong(fn, std::vector<cplx>(4, cplx(0, 0)), 2, RadiusLadder{}, "sphere", cfg);
    const PayloadBundle l2 =
        payload_lelong(fn, std::vector<cplx>(4, cplx(0, 0)), 2, RadiusLadder{}, "sphere", cfg);
    CHECK(l1.payload.dump() == l2.payload.dump());
    CHECK(l1.payload["estimate"]["limit"] == doctest::Approx(2.0));
}

TEST_CASE("table1 payload carries a CSV with one line per region") {
    const PayloadBundle t = payload_table1(5, 301);
    CHECK(t.payload["rows"].size() == 15);
    size_t lines = 0;
    for (char c : t.csv)
        if (c == '\n') ++lines;
    CHECK(lines == 16);  // header + 15 rows
    CHECK(t.csv.rfind("region_id,a,b,m,k,delta", 0) == 0);
}

TEST_CASE("schema drift fails loudly") {
    json payload = payload_classify(4, 0.0, 0.0).payload;
    payload.erase("label");
    CHECK_THROWS_AS(validate_payload("classify", payload), std::runtime_error);
    CHECK_THROWS_AS(validate_payload("no_such_command", payload), std::runtime_error);
}

TEST_CASE("msh-check payload shape") {
    const FunctionSpec fn{"power_tau", 4, 0, {2.0}};
    const PayloadBundle b = payload_msh_check(fn, 2, 256, 42, 8);
    CHECK(b.payload["pass"] == true);
    CHECK(b.payload["fd_checked"] == 8);
    CHECK(b.payload["per_k_min_rel"].size() == 2);
    CHECK(b.payload["fd_max_rel_err"].get<double>() <= 1e-6);
}
