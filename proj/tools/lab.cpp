/// Command-line front end: classification, barrier certification, witness
/// verification, minorant construction, and the lemma battery.  All outputs
/// are CSV or JSON; numeric CSV fields carry 17 significant digits.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blowup/barrier.hpp"
#include "blowup/criteria.hpp"
#include "blowup/inequality.hpp"
#include "blowup/minorant.hpp"
#include "blowup/witness.hpp"

namespace fs = std::filesystem;
using namespace blowup;

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / name, std::ios::binary);
    if (!os) throw Error("cannot open output file " + name + " in " + dir);
    return os;
}

void add_spec_flags(CLI::App* cmd, NonlinearitySpec& spec) {
    cmd->add_option("--c0", spec.c0, "leading coefficient c0 > 0");
    cmd->add_option("--lambda", spec.lambda, "power of u");
    cmd->add_option("--s", spec.s, "power of (1+r)");
    cmd->add_option("--mu-log", spec.mu_log, "power of ln(2+r)");
    cmd->add_option("--nu-log", spec.nu_log, "power of ln(2+u), lambda = 3 only");
    cmd->add_option("--sigma", spec.sigma, "spatial window ratio, > 1");
    cmd->add_option("--theta", spec.theta, "value window ratio, > 1");
    cmd->add_option("--r-star", spec.r_star, "radius where the lower bound starts");
}

int run_classify(const NonlinearitySpec& spec, const std::string& out_dir) {
    ClassificationVerdict v = classify(spec);
    std::string line = v.status_text() + " (" + v.rule + ")";
    if (v.witness_present && v.witness_formula_known)
        line += "; witness exponent " + format_g17(v.witness_exponent) +
                ", profile " + v.witness_formula;
    std::cout << line << "\n";

    nlohmann::ordered_json j;
    j["spec"] = {{"c0", spec.c0},        {"lambda", spec.lambda},
                 {"s", spec.s},          {"mu_log", spec.mu_log},
                 {"nu_log", spec.nu_log}, {"sigma", spec.sigma},
                 {"theta", spec.theta},  {"r_star", spec.r_star}};
    j["status"] = v.status_text();
    j["rule"] = v.rule;
    j["witness_present"] = v.witness_present;
    j["witness_formula_known"] = v.witness_formula_known;
    j["witness_example"] = v.witness_example;
    j["witness_exponent"] = v.witness_exponent;
    j["witness_formula"] = v.witness_formula;
    open_out(out_dir, "classify.json") << j.dump(2) << "\n";
    return v.status == Classification::Inconclusive ? 1 : 0;
}

int run_certify(const NonlinearitySpec& spec, double epsilon, double R_star,
                SolveOptions opts, const std::string& out_dir) {
    CertifyOutcome out = certify_nonexistence(spec, epsilon, R_star, opts);
    std::cout << out.report << "\n";
    std::cout << "hypotheses: q-integral "
              << (out.q_diverges ? "diverges" : "does not verifiably diverge")
              << ", g-integral "
              << (out.g_converges ? "converges" : "does not verifiably converge")
              << "\n";

    auto csv = open_out(out_dir, "trajectory.csv");
    csv << "r,w,dw\n";
    for (std::size_t i = 0; i < out.solution.r.size(); ++i)
        csv << format_g17(out.solution.r[i]) << ',' << format_g17(out.solution.w[i])
            << ',' << format_g17(out.solution.dw[i]) << "\n";

    if (out.certified) {
        open_out(out_dir, "certificate.json") << out.certificate.to_json();
        std::cout << "certificate written to "
                  << (fs::path(out_dir) / "certificate.json").string() << "\n";
        return 0;
    }
    return 1;
}

int run_verify_example(int example, const NonlinearitySpec& spec, double r0,
                       double r_max, int points, const std::string& out_dir) {
    Witness w;
    switch (example) {
        case 1: w = example1_witness(spec.lambda, spec.s, r0, spec.c0); break;
        case 2: w = example2_witness(spec.lambda, spec.mu_log, r0, spec.c0); break;
        case 3: w = example3_witness(spec.nu_log, spec.s, r0, spec.c0); break;
        default: throw Error("verify-example: --example must be 1, 2 or 3");
    }
    SubsolutionReport rep = verify_subsolution(w, r_max, points, true);
    auto csv = open_out(out_dir, "witness.csv");
    subsolution_csv(csv, rep);
    std::cout << (rep.pass ? "pass" : "FAIL") << ": profile " << w.formula
              << ", cutoff r0 = " << format_g17(w.r0) << ", max ratio "
              << format_g17(rep.max_ratio) << " at r = " << format_g17(rep.argmax_r)
              << ", ratio at r_max " << format_g17(rep.ratio_at_rmax)
              << ", admissible c0 up to " << format_g17(rep.max_admissible_c0)
              << "\n";
    return rep.pass ? 0 : 1;
}

int run_minorant(const std::string& H_text, double mu, double t_max, double alpha,
                 int grid, const std::string& out_dir) {
    ScalarFn H = ScalarFn::from_text(H_text, "t", 0.0,
                                     std::numeric_limits<double>::infinity(), true);
    MinorantResult res = build_minorant(H, mu, t_max, grid);
    MinorantReport rep = verify_minorant(res, H, mu, alpha);
    std::cout << rep.summary() << "\n";

    auto csv = open_out(out_dir, "minorant.csv");
    csv << "t,H,eta,h\n";
    double T = res.diagnostics().t_top;
    const int n = 512;
    for (int i = 0; i < n; ++i) {
        double t = std::exp(std::log(0.2) + (std::log(T) - std::log(0.2)) * i / (n - 1.0));
        csv << format_g17(t) << ',' << format_g17(H(t)) << ','
            << format_g17(res.eta(t)) << ',' << format_g17(res.h(t)) << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int run_lemmas(int battery, std::uint64_t seed, const std::string& out_dir) {
    std::vector<BatteryRow> all;
    for (int lemma = 1; lemma <= 4; ++lemma) {
        auto rows = lemma_battery(lemma, battery, seed);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    auto csv = open_out(out_dir, "lemmas.csv");
    battery_csv(csv, all);
    int failures = 0;
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (const auto& row : all) {
        if (!row.pass) ++failures;
        cmin = std::min(cmin, row.C_emp);
        cmax = std::max(cmax, row.C_emp);
    }
    std::cout << all.size() << " checks, " << failures << " failures; empirical "
              << "constants in [" << format_g17(cmin) << ", " << format_g17(cmax)
              << "]\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a blow-up nonexistence criterion"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file (TOML key/value; flags override)");

    std::string out_dir = "out";
    app.add_option("--out", out_dir, "output directory for CSV/JSON artifacts")
        ->envname("LAB_OUT_DIR");

    NonlinearitySpec spec;

    auto* c_classify = app.add_subcommand("classify", "decide the parametric family");
    add_spec_flags(c_classify, spec);

    auto* c_certify = app.add_subcommand("certify", "barrier certificate pipeline");
    add_spec_flags(c_certify, spec);
    double epsilon = 100.0, R_star = 6.0;
    SolveOptions sopts;
    c_certify->add_option("--epsilon", epsilon, "barrier floor at the origin");
    c_certify->add_option("--R-star", R_star, "dead-zone radius of the barrier");
    c_certify->add_option("--rtol", sopts.rtol, "relative solver tolerance");
    c_certify->add_option("--atol", sopts.atol, "absolute solver tolerance");
    c_certify->add_option("--w-cap", sopts.w_cap, "blow-up detection cap");
    c_certify->add_option("--r-end", sopts.r_end, "give-up radius");

    auto* c_verify = app.add_subcommand("verify-example", "check a closed-form witness");
    add_spec_flags(c_verify, spec);
    int example = 1, points = 256;
    double r0 = 1.0, r_max = 1e4;
    c_verify->add_option("--example", example, "witness family: 1, 2 or 3");
    c_verify->add_option("--r0", r0, "cutoff radius (search start for 2, 3)");
    c_verify->add_option("--r-max", r_max, "verification grid endpoint");
    c_verify->add_option("--points", points, "grid points");

    auto* c_minorant = app.add_subcommand("minorant", "build and verify a minorant");
    std::string H_text = "t^4";
    double mu = 1.4142135623730951, t_max = 1e6, alpha = 0.5;
    int grid = 512;
    c_minorant->add_option("--H", H_text, "positive function of t (expression)");
    c_minorant->add_option("--mu", mu, "window ratio, > 1");
    c_minorant->add_option("--tmax", t_max, "construction horizon");
    c_minorant->add_option("--alpha", alpha, "doubling exponent to test");
    c_minorant->add_option("--grid", grid, "samples per window");

    auto* c_lemmas = app.add_subcommand("lemmas", "seeded integral-inequality battery");
    int battery = 100;
    std::uint64_t seed = 7;
    c_lemmas->add_option("--battery", battery, "functions per lemma");
    c_lemmas->add_option("--seed", seed, "battery seed");

    // app-level flags such as --out may follow the subcommand name
    for (CLI::App* sc : app.get_subcommands({}))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_classify->parsed()) return run_classify(spec, out_dir);
        if (c_certify->parsed())
            return run_certify(spec, epsilon, R_star, sopts, out_dir);
        if (c_verify->parsed())
            return run_verify_example(example, spec, r0, r_max, points, out_dir);
        if (c_minorant->parsed())
            return run_minorant(H_text, mu, t_max, alpha, grid, out_dir);
        if (c_lemmas->parsed()) return run_lemmas(battery, seed, out_dir);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
