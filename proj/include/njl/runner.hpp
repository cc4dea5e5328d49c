#pragma once

#include "njl/report.hpp"

namespace njl {

struct RunConfig {
    std::string model = "su3";
    int nu = 1;
    int L = 1;
    std::vector<double> kappa{0.2};
    std::vector<double> g{1.0};
    std::vector<double> m{0.0};
    std::vector<double> beta{1.0};
    uint64_t seed = 1;
    int gd_samples = 50;
    std::vector<int> gd_channels{3};
    std::vector<std::string> suites;
    std::string out_json;
    std::string out_csv;

    int flavors() const { return model == "su3" ? 3 : 2; }
    void validate() const;
};

RunConfig config_from_json(const json& j);

extern const std::vector<std::string> kKnownSuites;

ReportCollection run(const RunConfig& cfg);

// Parameter-sweep table with per-point order diagnostics.
std::string sweep_csv(const RunConfig& cfg);

}  // namespace njl
