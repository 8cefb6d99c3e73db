// hesslab: desk-scale estimators and checkers for complex Hessian cones,
// Lelong numbers and slices. Every subcommand writes a JSON payload and a CSV
// table under --out, plus a run manifest; stdout carries the JSON payload.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hesslab/payloads.hpp"
#include "hesslab/verify.hpp"

namespace {

using hesslab::cplx;
using hesslab::json;

std::vector<cplx> parse_complex_list(const std::vector<double>& reals, int expect) {
    // flat (re, im) pairs; a single 0 means the origin
    if (reals.size() == 1 && reals[0] == 0.0)
        return std::vector<cplx>(static_cast<size_t>(expect), cplx(0.0, 0.0));
    if (reals.size() != static_cast<size_t>(2 * expect))
        throw CLI::ValidationError("expected " + std::to_string(2 * expect) +
                                   " reals (re, im pairs) or a single 0");
    std::vector<cplx> out(static_cast<size_t>(expect));
    for (int j = 0; j < expect; ++j) out[static_cast<size_t>(j)] = cplx(reals[2 * j], reals[2 * j + 1]);
    return out;
}

struct Outputs {
    std::string dir = "out";
    std::vector<std::string> argv_copy;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

void emit(const Outputs& out, const hesslab::PayloadBundle& bundle, std::uint64_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(out.dir);
    const std::string base = out.dir + "/" + bundle.command;
    const std::string payload_path = base + ".json";
    const std::string csv_path = base + ".csv";
    hesslab::write_text_file(payload_path, bundle.payload.dump(2) + "\n");
    hesslab::write_text_file(csv_path, bundle.csv);

    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - out.t0)
                               .count();
    json manifest{{"command", bundle.command},
                  {"argv", out.argv_copy},
                  {"seed", seed},
                  {"version", hesslab::kToolVersion},
                  {"wall_ms", wall_ms},
                  {"outputs", json::array({payload_path, csv_path})}};
    hesslab::validate_payload("manifest", manifest);
    hesslab::write_text_file(base + ".manifest.json", manifest.dump(2) + "\n");

    std::cout << bundle.payload.dump(2) << "\n";
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    // The environment variable takes precedence over --seed.
    if (const char* env = std::getenv("HESSLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale complex Hessian / Lelong number toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags like --out may follow the subcommand

    Outputs out;
    for (int i = 0; i < argc; ++i) out.argv_copy.push_back(argv[i]);
    app.add_option("--out", out.dir, "output directory for JSON/CSV payloads");

    // shared knobs
    std::uint64_t seed = 42;
    int samples = 65536;
    hesslab::FunctionSpec fn;
    hesslab::RadiusLadder ladder;

    auto add_function_flags = [&](CLI::App* cmd) {
        cmd->add_option("--function", fn.name, "catalog function name")->required();
        cmd->add_option("--n", fn.n, "ambient dimension")->required();
        cmd->add_option("--p", fn.p, "coordinate split for block families");
        cmd->add_option("--params", fn.params, "family parameters");
    };
    auto add_ladder_flags = [&](CLI::App* cmd) {
        cmd->add_option("--r0", ladder.r0, "largest ladder radius");
        cmd->add_option("--theta", ladder.theta, "ladder ratio in (0,1)");
        cmd->add_option("--rungs", ladder.rungs, "number of rungs");
    };

    // classify
    int cl_n = 5;
    double cl_a = 0.0, cl_b = 0.0, cl_tol = hesslab::kGardingTol;
    CLI::App* classify = app.add_subcommand("classify", "classify one (a, b) sample");
    classify->add_option("--n", cl_n)->required();
    classify->add_option("--a", cl_a)->required();
    classify->add_option("--b", cl_b)->required();
    classify->add_option("--tol", cl_tol);

    // table1
    int t1_n = 5, t1_grid = 601;
    CLI::App* table1 = app.add_subcommand("table1", "enumerate realized regions");
    table1->add_option("--n", t1_n)->required();
    table1->add_option("--grid", t1_grid);

    // boundaries
    int bd_n = 5;
    CLI::App* boundaries = app.add_subcommand("boundaries", "region boundary curves");
    boundaries->add_option("--n", bd_n)->required();

    // msh-check
    int msh_m = 1, msh_fd = 128;
    CLI::App* msh = app.add_subcommand("msh-check", "min relative S_k scan");
    add_function_flags(msh);
    msh->add_option("--m", msh_m)->required();
    msh->add_option("--samples", samples);
    msh->add_option("--seed", seed);
    msh->add_option("--fd-check", msh_fd, "points for the FD cross-check");

    // lelong
    std::vector<double> le_center{0.0};
    int le_m = 1;
    std::string le_estimator = "sphere";
    CLI::App* lelong = app.add_subcommand("lelong", "point Lelong number estimate");
    add_function_flags(lelong);
    lelong->add_option("--center", le_center, "center (re, im pairs, or 0)");
    lelong->add_option("--m", le_m)->required();
    lelong->add_option("--estimator", le_estimator)->check(CLI::IsMember({"sphere", "ball"}));
    add_ladder_flags(lelong);
    lelong->add_option("--samples", samples);
    lelong->add_option("--seed", seed);

    // slice-index
    std::vector<double> si_xprime{0.0};
    int si_probes = 8;
    double si_probe_radius = 1.0;
    CLI::App* sliceidx = app.add_subcommand("slice-index", "subharmonicity index of a slice");
    add_function_flags(sliceidx);
    sliceidx->add_option("--xprime", si_xprime, "slice point (re, im pairs, or 0)");
    sliceidx->add_option("--probes", si_probes);
    sliceidx->add_option("--probe-radius", si_probe_radius);

    // exceptional-scan
    int ex_grid = 11;
    double ex_extent = 1.0, ex_omega = 0.8;
    CLI::App* exscan = app.add_subcommand("exceptional-scan", "L1 failure scan over x'");
    add_function_flags(exscan);
    exscan->add_option("--grid", ex_grid);
    exscan->add_option("--extent", ex_extent);
    exscan->add_option("--omega-radius", ex_omega);
    exscan->add_option("--seed", seed);

    // directional
    int di_m = 1, di_q = 1;
    std::vector<double> di_xsecond{0.0};
    std::vector<double> di_bcenter{0.0};
    double di_bradius = 1.0;
    CLI::App* directional = app.add_subcommand("directional", "directional Lelong estimate");
    add_function_flags(directional);
    directional->add_option("--m", di_m)->required();
    directional->add_option("--q", di_q)->required();
    directional->add_option("--xsecond", di_xsecond, "x'' (re, im pairs, or 0)");
    directional->add_option("--bprime-center", di_bcenter, "B' center (re, im pairs, or 0)");
    directional->add_option("--bprime-radius", di_bradius);
    add_ladder_flags(directional);
    directional->add_option("--samples", samples);
    directional->add_option("--seed", seed);

    // verify
    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"garding", "lelong", "slicing", "all"}));
    verify->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::uint64_t s = effective_seed(seed);
        hesslab::EstimatorConfig cfg;
        cfg.samples = samples;
        cfg.seed = s;

        if (classify->parsed()) {
            emit(out, hesslab::payload_classify(cl_n, cl_a, cl_b, cl_tol), s);
        } else if (table1->parsed()) {
            emit(out, hesslab::payload_table1(t1_n, t1_grid), s);
        } else if (boundaries->parsed()) {
            emit(out, hesslab::payload_boundaries(bd_n), s);
        } else if (msh->parsed()) {
            emit(out, hesslab::payload_msh_check(fn, msh_m, samples, s, msh_fd), s);
        } else if (lelong->parsed()) {
            const std::vector<cplx> center = parse_complex_list(le_center, fn.n);
            emit(out, hesslab::payload_lelong(fn, center, le_m, ladder, le_estimator, cfg), s);
        } else if (sliceidx->parsed()) {
            if (fn.p < 1) throw std::invalid_argument("slice-index: --p must be >= 1");
            const std::vector<cplx> xprime = parse_complex_list(si_xprime, fn.p);
            emit(out, hesslab::payload_slice_index(fn, xprime, si_probes, si_probe_radius), s);
        } else if (exscan->parsed()) {
            if (fn.p < 1) throw std::invalid_argument("exceptional-scan: --p must be >= 1");
            emit(out, hesslab::payload_exceptional_scan(fn, fn.p, ex_grid, ex_extent, ex_omega,
                                                        cfg), s);
        } else if (directional->parsed()) {
            if (fn.p < 1) throw std::invalid_argument("directional: --p must be >= 1");
            const hesslab::Ball bprime{parse_complex_list(di_bcenter, fn.p), di_bradius};
            const std::vector<cplx> xsecond = parse_complex_list(di_xsecond, fn.n - fn.p);
            emit(out, hesslab::payload_directional(fn, bprime, xsecond, di_m, di_q, ladder, cfg), s);
        } else if (verify->parsed()) {
            const auto results = hesslab::verify::run_suite(suite, s);
            const json payload = hesslab::verify::suite_payload(suite, s, results);

            bool all = true;
            std::vector<std::vector<std::string>> cells;
            cells.push_back({"id", "name", "pass"});
            for (const auto& r : results) {
                std::cerr << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL")
                          << " - " << r.name << " (" << r.details << ")\n";
                cells.push_back({std::to_string(r.id), r.name, r.pass ? "1" : "0"});
                all = all && r.pass;
            }
            hesslab::PayloadBundle bundle{"verify", payload, hesslab::csv_render(cells)};
            emit(out, bundle, s);
            return all ? 0 : 1;
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
