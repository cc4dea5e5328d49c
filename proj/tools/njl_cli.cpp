#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "njl/integrals.hpp"
#include "njl/runner.hpp"

namespace {

int run_verify(const njl::RunConfig& cfg) {
    njl::ReportCollection rc;
    try {
        rc = njl::run(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    long pass = 0, fail = 0, recorded = 0;
    for (const auto& r : rc.reports) {
        if (!r.asserted) {
            ++recorded;
            continue;
        }
        r.passed ? ++pass : ++fail;
        if (!r.passed)
            std::cout << "FAIL  " << r.name << "  lhs=" << r.lhs
                      << " rhs=" << r.rhs << " margin=" << r.margin << "\n";
    }
    std::cout << "checks: " << pass << " passed, " << fail << " failed, "
              << recorded << " recorded\n";
    if (!cfg.out_json.empty())
        rc.write(cfg.out_json, cfg.out_csv);
    else if (!cfg.out_csv.empty())
        rc.write("/dev/null", cfg.out_csv);
    return fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound-verification engine for staggered multi-flavor "
                 "lattice fermions"};
    app.require_subcommand(1);

    njl::RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--model", cfg.model, "su3 or su2");
        sub->add_option("--nu", cfg.nu, "spatial dimension");
        sub->add_option("--L", cfg.L, "half extent of the lattice");
        sub->add_option("--kappa", cfg.kappa, "hopping amplitudes");
        sub->add_option("--g", cfg.g, "couplings");
        sub->add_option("--m", cfg.m, "symmetry-breaking masses");
        sub->add_option("--beta", cfg.beta, "inverse temperatures");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--samples", cfg.gd_samples,
                        "source fields per configuration");
        sub->add_option("--channel", cfg.gd_channels,
                        "source channels (3, 4, 7)");
        sub->add_option("--out", cfg.out_json, "JSON report path");
        sub->add_option("--csv", cfg.out_csv, "CSV report path");
    };

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--suite", cfg.suites,
                       "suites: algebra symmetry squares domination infrared "
                       "sumrule dls doublecomm neel lro magnetization ng kls "
                       "duhamel rp integrals");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep table");
    add_common(sweep);

    auto* integrals =
        app.add_subcommand("integrals", "lattice Green-function constants");
    int int_nu = 5;
    bool int_qmc = false;
    bool int_all = false;
    integrals->add_option("--nu", int_nu, "dimension");
    integrals->add_flag("--qmc", int_qmc, "use the quasi-Monte Carlo route");
    integrals->add_flag("--all", int_all, "also evaluate I and J");

    CLI11_PARSE(app, argc, argv);

    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot read config " << config_path << "\n";
            return 2;
        }
        njl::json j = njl::json::parse(f, nullptr, true, true);
        cfg = njl::config_from_json(j);
    }

    try {
        if (verify->parsed()) return run_verify(cfg);
        if (sweep->parsed()) {
            std::string csv = njl::sweep_csv(cfg);
            if (!cfg.out_csv.empty()) {
                std::ofstream f(cfg.out_csv, std::ios::binary);
                f << csv;
            } else {
                std::cout << csv;
            }
            return 0;
        }
        if (integrals->parsed()) {
            auto k = njl::compute_K(int_nu, int_nu >= 6 ? 2e-3 : 1.5e-4,
                                    int_qmc);
            std::cout.precision(10);
            std::cout << "K_" << int_nu << " = " << k.value << " +- "
                      << k.error_estimate << "  (" << k.method << ", "
                      << k.evaluations << " evaluations)\n";
            if (int_all) {
                auto i = njl::compute_I(int_nu, 3e-4, int_qmc);
                auto j = njl::compute_J(int_nu, 3e-4, int_qmc);
                std::cout << "I_" << int_nu << " = " << i.value << " +- "
                          << i.error_estimate << "\n";
                std::cout << "J_" << int_nu << " = " << j.value << " +- "
                          << j.error_estimate << "\n";
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
