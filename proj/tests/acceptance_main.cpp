// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "njl/diagnostics.hpp"
#include "njl/integrals.hpp"
#include "njl/runner.hpp"
#include "njl/symmetry.hpp"

using namespace njl;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void report_line(int idx, const char* what, bool pass, double secs,
                 const std::string& detail = "") {
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n",
                pass ? "PASS" : "FAIL", idx, what, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

struct Tally {
    long checked = 0;
    long failed = 0;
    double worst_margin = 1e300;
    std::string worst_name;

    void absorb(const std::vector<BoundReport>& rs) {
        for (const auto& r : rs) {
            if (!r.asserted) continue;
            ++checked;
            if (!r.passed) {
                ++failed;
                if (r.margin < worst_margin) {
                    worst_margin = r.margin;
                    worst_name = r.name;
                }
            }
        }
    }
    bool ok() const { return checked > 0 && failed == 0; }
    std::string detail() const {
        std::ostringstream os;
        os << checked << " checks";
        if (failed)
            os << ", " << failed << " failed (worst: " << worst_name << ")";
        return os.str();
    }
};

double max_residual(const std::vector<BoundReport>& rs) {
    double m = 0.0;
    for (const auto& r : rs)
        if (r.asserted) m = std::max(m, std::abs(r.lhs - r.rhs));
    return m;
}

}  // namespace

static void criterion_1() {
    Timer t;
    Tally tally;
    tally.absorb(algebra_checks(3));
    FockSpace space = make_fock_space({1, 1, 3});
    tally.absorb(algebra_fock_checks(space));
    bool pass = tally.ok() && t.seconds() < 5.0;
    report_line(1, "SU(3) algebra suite at 1e-12", pass, t.seconds(),
                tally.detail());
}

static void criterion_2() {
    Timer t;
    Tally tally;
    ModelParams p{0.3, 1.0, 0.2};
    for (int nu : {1, 2}) {
        FockSpace space = make_fock_space({nu, 1, 3});
        tally.absorb(symmetry_checks(space, p));
    }
    bool pass = tally.ok() && t.seconds() < 60.0;
    report_line(2, "symmetry and conjugation identities at 1e-10", pass,
                t.seconds(), tally.detail());
}

static void criterion_3() {
    Timer t;
    Tally tally;
    for (int flavors : {2, 3})
        for (int L : {1, 2}) {
            FockSpace space = make_fock_space({1, L, flavors});
            tally.absorb(
                completed_square_checks(space, {0.3, 1.5, 0.1}));
        }
    report_line(3, "completed-square identity for channels 3, 4, 7",
                tally.ok(), t.seconds(), tally.detail());
}

static void criterion_4() {
    Timer t;
    Tally tally;
    const std::vector<double> betas{0.5, 2.0, 8.0};
    struct Lat {
        int nu, L;
    };
    uint64_t seed = 9000;
    for (Lat lat : {Lat{1, 1}, Lat{1, 2}, Lat{2, 1}}) {
        FockSpace space = make_fock_space({lat.nu, lat.L, 3});
        for (double g : {0.5, 2.0})
            for (double kappa : {0.0, 0.3})
                for (double m : {0.0, 0.2}) {
                    auto rs = gaussian_domination_batch(
                        space, {kappa, g, m}, betas, 200, 1.0, ++seed, 3);
                    tally.absorb(rs);
                }
    }
    bool pass = tally.ok() && t.seconds() < 600.0;
    report_line(4, "Gaussian domination, 200 sources x 72 configurations",
                pass, t.seconds(), tally.detail());
}

static void grid_5_6_7(int criterion, const char* what,
                       std::vector<BoundReport> (*fn)(const FockSpace&,
                                                      const ModelParams&,
                                                      double)) {
    Timer t;
    Tally tally;
    struct Lat {
        int nu, L;
    };
    for (Lat lat : {Lat{1, 2}, Lat{2, 1}})
        for (int flavors : {3, 2}) {
            FockSpace space = make_fock_space({lat.nu, lat.L, flavors});
            for (double g : {1.0, 2.0})
                for (double beta : {1.0, 4.0})
                    tally.absorb(fn(space, {0.2, g, 0.0}, beta));
        }
    report_line(criterion, what, tally.ok(), t.seconds(), tally.detail());
}

static void criterion_8() {
    Timer t;
    Tally tally;
    FockSpace su3 = make_fock_space({1, 1, 3});
    auto rs = neel_bounds(su3, {0.1, 2.0, 0.0}, 4.0);
    tally.absorb(rs);
    FockSpace su2 = make_fock_space({1, 1, 2});
    tally.absorb(neel_bounds(su2, {0.1, 2.0, 0.0}, 4.0));
    double resid = 0.0;
    for (const auto& r : rs)
        if (r.name == "neel/nn-expectation" ||
            r.name == "neel/hopping-expectation")
            resid = std::max(resid, std::abs(r.lhs - r.rhs));
    bool pass = tally.ok() && resid <= 1e-12;
    report_line(8, "Neel expectations and Peierls free-energy bound", pass,
                t.seconds(), tally.detail());
}

static void criterion_9() {
    Timer t;
    Tally tally;
    for (int nu : {1, 2}) {
        FockSpace space = make_fock_space({nu, nu == 1 ? 2 : 1, 3});
        tally.absorb(lro_diagnostics(space, {0.2, 1.0, 0.0}, 2.0).second);
    }
    report_line(9, "long-range-order identity chain at 1e-9", tally.ok(),
                t.seconds(), tally.detail());
}

static void criterion_10() {
    Timer t;
    Tally tally;

    auto k3 = compute_K(3, 1.5e-4, false);
    auto k4 = compute_K(4, 1.5e-4, false);
    auto k5 = compute_K(5, 1.5e-4, false);
    auto k3q = compute_K(3, 1.5e-4, true);
    auto k5q = compute_K(5, 1.5e-4, true);

    std::vector<BoundReport> rs;
    rs.push_back(BoundReport::equality("integrals/K3-paper-value", k3.value,
                                       0.3498, 5e-4));
    rs.push_back(BoundReport::equality("integrals/K5-paper-value", k5.value,
                                       0.2069, 5e-4));
    rs.push_back(BoundReport::make("integrals/su3-threshold",
                                   std::sqrt(3.0) * k5.value,
                                   1.0 / std::sqrt(6.0), 0.0));
    rs.push_back(BoundReport::make("integrals/su2-threshold",
                                   std::sqrt(6.0) * k3.value, 1.0, 0.0));
    rs.push_back(
        BoundReport::make("integrals/K4-below-K3", k4.value, k3.value, 0.0));
    rs.push_back(
        BoundReport::make("integrals/K5-below-K4", k5.value, k4.value, 0.0));
    rs.push_back(BoundReport::equality(
        "integrals/K3-cross-method", k3.value, k3q.value,
        3.0 * (k3.error_estimate + k3q.error_estimate)));
    rs.push_back(BoundReport::equality(
        "integrals/K5-cross-method", k5.value, k5q.value,
        3.0 * (k5.error_estimate + k5q.error_estimate)));
    Tally tl;
    tl.absorb(rs);
    bool pass = tl.ok() && t.seconds() < 600.0;
    std::ostringstream os;
    os << "K3=" << k3.value << " K5=" << k5.value;
    report_line(10, "lattice integrals against quoted constants", pass,
                t.seconds(), os.str() + ", " + tl.detail());
}

static void criterion_11() {
    Timer t;
    FockSpace space = make_fock_space({1, 1, 3});
    Tally tally;
    tally.absorb(rp_checks(space, 100, 31337));
    report_line(11, "reflection positivity of 100 random even operators",
                tally.ok(), t.seconds(), tally.detail());
}

static void criterion_12() {
    Timer t;
    Tally tally;
    FockSpace space = make_fock_space({1, 2, 3});
    tally.absorb(duhamel_ground_checks(space, {0.2, 2.0, 0.1}, 1));
    report_line(12, "Duhamel lower bound and resolvent source bound",
                tally.ok(), t.seconds(), tally.detail());
}

static void criterion_13() {
    Timer t;
    Tally tally;
    FockSpace space = make_fock_space({1, 2, 3});
    ModelParams p{0.2, 2.0, 0.1};
    SpectralFilter filter;
    for (int R : {1, 2}) {
        tally.absorb(kls_inequality(space, p, filter, R));
        tally.absorb(ng_trial_energy(space, p, filter, R, 1));
    }
    tally.absorb(ng_mode_gram(space, p, filter, 1));
    report_line(13, "Nambu-Goldstone diagnostics and ladder bookkeeping",
                tally.ok(), t.seconds(), tally.detail());
}

static void criterion_14(const char* cli_path) {
    Timer t;
    RunConfig cfg;
    cfg.model = "su3";
    cfg.nu = 1;
    cfg.L = 1;
    cfg.suites = {"algebra", "rp", "squares", "domination"};
    cfg.gd_samples = 8;
    cfg.beta = {0.5, 2.0};
    cfg.seed = 4321;
    std::string a = run(cfg).to_json_string();
    std::string b = run(cfg).to_json_string();
    bool pass = (a == b) && !a.empty();

    // byte-identical files through the command-line front end
    if (cli_path && *cli_path) {
        std::string base =
            "--model su3 --nu 1 --L 1 --suite algebra --suite rp --seed 77 ";
        std::string cmd1 = std::string(cli_path) + " verify " + base +
                           "--out /tmp/njl_rep1.json > /dev/null";
        std::string cmd2 = std::string(cli_path) + " verify " + base +
                           "--out /tmp/njl_rep2.json > /dev/null";
        if (std::system(cmd1.c_str()) != 0) pass = false;
        if (std::system(cmd2.c_str()) != 0) pass = false;
        std::ifstream f1("/tmp/njl_rep1.json"), f2("/tmp/njl_rep2.json");
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        if (s1.str().empty() || s1.str() != s2.str()) pass = false;
    }
    report_line(14, "byte-identical reports for identical config and seed",
                pass, t.seconds());
}

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : "";
    Timer total;

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    grid_5_6_7(5, "infrared bound at every non-vacuous momentum",
               &infrared_bound);
    grid_5_6_7(6, "sum rule and direction independence", &sum_rule);
    {
        Timer t;
        Tally tally;
        struct Lat {
            int nu, L;
        };
        for (Lat lat : {Lat{1, 2}, Lat{2, 1}})
            for (int flavors : {3, 2}) {
                FockSpace space =
                    make_fock_space({lat.nu, lat.L, flavors});
                for (double g : {1.0, 2.0})
                    for (double beta : {1.0, 4.0}) {
                        tally.absorb(dls_bound(space, {0.2, g, 0.0}, beta));
                        tally.absorb(double_commutator_checks(
                            space, {0.2, g, 0.0}, beta));
                    }
            }
        report_line(7, "DLS bound, prefactors 24/16, hopping norm bound",
                    tally.ok(), t.seconds(), tally.detail());
    }
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14(cli);

    std::printf("acceptance total: %.1f s, %d failure(s)\n", total.seconds(),
                g_failures);
    return g_failures;
}
