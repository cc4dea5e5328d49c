#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace njl {

using json = nlohmann::ordered_json;

// Record of one inequality or identity check. `asserted` distinguishes
// theorem-backed checks (hard failures) from recorded trends.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double tolerance = 0.0;
    bool passed = true;
    bool asserted = true;
    json context = json::object();

    static BoundReport make(std::string name, double lhs, double rhs,
                            double tol, json ctx = json::object(),
                            bool asserted = true) {
        BoundReport r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.margin = rhs - lhs;
        r.tolerance = tol;
        r.passed = lhs <= rhs + tol;
        r.asserted = asserted;
        r.context = std::move(ctx);
        return r;
    }
    // two-sided |lhs - rhs| <= tol check
    static BoundReport equality(std::string name, double lhs, double rhs,
                                double tol, json ctx = json::object(),
                                bool asserted = true) {
        BoundReport r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.margin = rhs - lhs;
        r.tolerance = tol;
        r.passed = std::abs(lhs - rhs) <= tol;
        r.asserted = asserted;
        r.context = std::move(ctx);
        return r;
    }
};

json to_json(const BoundReport& r);

struct ReportCollection {
    json meta = json::object();
    std::vector<BoundReport> reports;

    void add(BoundReport r) { reports.push_back(std::move(r)); }
    void add(std::vector<BoundReport> rs) {
        for (auto& r : rs) reports.push_back(std::move(r));
    }
    bool all_asserted_passed() const;
    long failures() const;
    std::string to_json_string() const;
    std::string to_csv_string() const;
    void write(const std::string& json_path,
               const std::string& csv_path = "") const;
};

}  // namespace njl
