#include "njl/report.hpp"

#include <fstream>
#include <sstream>

namespace njl {

json to_json(const BoundReport& r) {
    json j = json::object();
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["asserted"] = r.asserted;
    j["context"] = r.context;
    return j;
}

bool ReportCollection::all_asserted_passed() const {
    for (const auto& r : reports)
        if (r.asserted && !r.passed) return false;
    return true;
}

long ReportCollection::failures() const {
    long n = 0;
    for (const auto& r : reports)
        if (r.asserted && !r.passed) ++n;
    return n;
}

std::string ReportCollection::to_json_string() const {
    json j = json::object();
    j["schema_version"] = 1;
    j["meta"] = meta;
    j["checks"] = json::array();
    for (const auto& r : reports) j["checks"].push_back(to_json(r));
    j["failures"] = failures();
    return j.dump(2);
}

std::string ReportCollection::to_csv_string() const {
    std::ostringstream os;
    os << "name,lhs,rhs,margin,tolerance,passed,asserted\n";
    os.precision(17);
    for (const auto& r : reports)
        os << r.name << ',' << r.lhs << ',' << r.rhs << ',' << r.margin << ','
           << r.tolerance << ',' << (r.passed ? 1 : 0) << ','
           << (r.asserted ? 1 : 0) << '\n';
    return os.str();
}

void ReportCollection::write(const std::string& json_path,
                             const std::string& csv_path) const {
    {
        std::ofstream f(json_path, std::ios::binary);
        f << to_json_string() << '\n';
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        f << to_csv_string();
    }
}

}  // namespace njl
