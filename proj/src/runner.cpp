#include "njl/runner.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "njl/diagnostics.hpp"
#include "njl/integrals.hpp"
#include "njl/symmetry.hpp"

namespace njl {

const std::vector<std::string> kKnownSuites{
    "algebra", "symmetry", "squares",  "domination", "infrared",
    "sumrule", "dls",      "doublecomm", "neel",     "lro",
    "magnetization", "ng", "kls",      "duhamel",    "rp",
    "integrals"};

void RunConfig::validate() const {
    if (model != "su3" && model != "su2")
        throw std::invalid_argument("config: model must be su3 or su2");
    if (nu < 1 || L < 1)
        throw std::invalid_argument("config: need nu >= 1 and L >= 1");
    if (suites.empty())
        throw std::invalid_argument("config: no suites selected");
    for (const auto& s : suites)
        if (std::find(kKnownSuites.begin(), kKnownSuites.end(), s) ==
            kKnownSuites.end())
            throw std::invalid_argument("config: unknown suite " + s);
    for (double gv : g)
        if (gv < 0) throw std::invalid_argument("config: g must be >= 0");
    for (double mv : m)
        if (mv < 0) throw std::invalid_argument("config: m must be >= 0");

    LatticeSpec spec{nu, L, flavors()};
    spec.validate();
    long modes = spec.n_modes();
    bool needs_full_spectrum = false;
    bool needs_fock = false;
    for (const auto& s : suites) {
        if (s != "integrals" && s != "algebra") needs_fock = true;
        if (s != "integrals" && s != "rp" && s != "algebra")
            needs_full_spectrum = true;
    }
    if (needs_fock && modes > 24)
        throw std::invalid_argument(
            "config: lattice has " + std::to_string(modes) +
            " modes; at most 24 are supported");
    if (needs_full_spectrum) {
        // sector dimensions must stay below the dense cap
        long dim = 1;
        long best = 1;
        for (long k = 1; k <= modes; ++k) {
            dim = dim * (modes - k + 1) / k;
            best = std::max(best, dim);
        }
        if (best > dense_cap_from_env())
            throw std::invalid_argument(
                "config: largest sector dimension " + std::to_string(best) +
                " exceeds the dense cap " +
                std::to_string(dense_cap_from_env()) +
                " (set NJL_DENSE_CAP to override)");
    }
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    auto get_list = [&](const char* key, std::vector<double>& dst) {
        if (!j.contains(key)) return;
        dst.clear();
        for (const auto& v : j.at(key)) dst.push_back(v.get<double>());
    };
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("nu")) c.nu = j.at("nu").get<int>();
    if (j.contains("L")) c.L = j.at("L").get<int>();
    get_list("kappa", c.kappa);
    get_list("g", c.g);
    get_list("m", c.m);
    get_list("beta", c.beta);
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("gd_samples"))
        c.gd_samples = j.at("gd_samples").get<int>();
    if (j.contains("gd_channels")) {
        c.gd_channels.clear();
        for (const auto& v : j.at("gd_channels"))
            c.gd_channels.push_back(v.get<int>());
    }
    if (j.contains("suites")) {
        c.suites.clear();
        for (const auto& v : j.at("suites"))
            c.suites.push_back(v.get<std::string>());
    }
    if (j.contains("out_json")) c.out_json = j.at("out_json");
    if (j.contains("out_csv")) c.out_csv = j.at("out_csv");
    return c;
}

ReportCollection run(const RunConfig& cfg) {
    cfg.validate();
    LatticeSpec spec{cfg.nu, cfg.L, cfg.flavors()};

    ReportCollection rc;
    rc.meta["model"] = cfg.model;
    rc.meta["nu"] = cfg.nu;
    rc.meta["L"] = cfg.L;
    rc.meta["kappa"] = cfg.kappa;
    rc.meta["g"] = cfg.g;
    rc.meta["m"] = cfg.m;
    rc.meta["beta"] = cfg.beta;
    rc.meta["seed"] = cfg.seed;
    rc.meta["suites"] = cfg.suites;

    auto has = [&](const char* name) {
        return std::find(cfg.suites.begin(), cfg.suites.end(), name) !=
               cfg.suites.end();
    };

    bool needs_space = false;
    for (const auto& s : cfg.suites)
        if (s != "integrals" && s != "algebra") needs_space = true;
    std::unique_ptr<FockSpace> space;
    if (needs_space || has("algebra"))
        space = std::make_unique<FockSpace>(make_fock_space(spec));

    if (has("algebra")) {
        rc.add(algebra_checks(cfg.flavors()));
        rc.add(algebra_fock_checks(*space));
    }
    if (has("symmetry")) {
        ModelParams p{cfg.kappa.front(), cfg.g.front(), cfg.m.front()};
        rc.add(symmetry_checks(*space, p));
    }
    if (has("squares")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double mv : cfg.m)
                    rc.add(completed_square_checks(*space, {k, gv, mv}));
    }
    if (has("domination")) {
        for (int ch : cfg.gd_channels)
            for (double k : cfg.kappa)
                for (double gv : cfg.g)
                    for (double mv : cfg.m)
                        rc.add(gaussian_domination_batch(
                            *space, {k, gv, mv}, cfg.beta, cfg.gd_samples,
                            1.0, cfg.seed, ch));
    }
    if (has("infrared")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double b : cfg.beta)
                    rc.add(infrared_bound(*space, {k, gv, 0.0}, b));
    }
    if (has("sumrule")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double b : cfg.beta)
                    rc.add(sum_rule(*space, {k, gv, 0.0}, b));
    }
    if (has("dls")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double b : cfg.beta)
                    rc.add(dls_bound(*space, {k, gv, 0.0}, b));
    }
    if (has("doublecomm")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double b : cfg.beta)
                    rc.add(double_commutator_checks(*space, {k, gv, 0.0}, b));
    }
    if (has("neel")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double b : cfg.beta)
                    rc.add(neel_bounds(*space, {k, gv, 0.0}, b));
    }
    if (has("lro")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double b : cfg.beta)
                    rc.add(lro_diagnostics(*space, {k, gv, 0.0}, b).second);
    }
    if (has("magnetization")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double mv : cfg.m)
                    rc.add(staggered_magnetization_checks(*space,
                                                          {k, gv, mv}));
    }
    if (has("ng")) {
        SpectralFilter filter;
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double mv : cfg.m) {
                    for (int R = 1; R <= cfg.L; ++R)
                        rc.add(ng_trial_energy(*space, {k, gv, mv}, filter,
                                               R, 1));
                    if (cfg.flavors() == 3)
                        rc.add(ng_mode_gram(*space, {k, gv, mv}, filter, 1));
                }
    }
    if (has("kls")) {
        SpectralFilter filter;
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double mv : cfg.m)
                    for (int R = 1; 2 * R <= std::max(2, cfg.L); ++R)
                        rc.add(kls_inequality(*space, {k, gv, mv}, filter, R));
    }
    if (has("duhamel")) {
        for (double k : cfg.kappa)
            for (double gv : cfg.g)
                for (double mv : cfg.m)
                    rc.add(duhamel_ground_checks(*space, {k, gv, mv}, 1));
    }
    if (has("rp")) {
        rc.add(rp_checks(*space, 100, cfg.seed));
    }
    if (has("integrals")) {
        rc.add(integral_checks(cfg.flavors() == 3, cfg.flavors() == 2,
                               false));
    }
    return rc;
}

std::string sweep_csv(const RunConfig& cfg) {
    LatticeSpec spec{cfg.nu, cfg.L, cfg.flavors()};
    FockSpace space = make_fock_space(spec);
    std::ostringstream os;
    os.precision(17);
    os << "model,nu,L,kappa,g,beta,m_lro_sq,sq_structure,nn_correlator,"
          "ir_min_margin,dls_min_margin\n";
    for (double k : cfg.kappa)
        for (double gv : cfg.g)
            for (double b : cfg.beta) {
                ModelParams p{k, gv, 0.0};
                auto [lro, reps] = lro_diagnostics(space, p, b);
                double ir_margin = 1e300, dls_margin = 1e300;
                for (const auto& r : infrared_bound(space, p, b))
                    ir_margin = std::min(ir_margin, r.margin);
                for (const auto& r : dls_bound(space, p, b))
                    if (r.name == "dls/upper-bound")
                        dls_margin = std::min(dls_margin, r.margin);
                os << cfg.model << ',' << cfg.nu << ',' << cfg.L << ',' << k
                   << ',' << gv << ',' << b << ',' << lro.m_lro_sq << ','
                   << lro.sq_structure << ',' << lro.nn_correlator << ','
                   << ir_margin << ',' << dls_margin << '\n';
            }
    return os.str();
}

}  // namespace njl
