#include "fairsplit/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fairsplit {

std::string report_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "algorithm,n,k,scale,cuts,bound,discrepancy,pass\n";
    for (const auto& r : rows) {
        os << r.algorithm << ',' << r.n << ',' << r.k << ',' << r.scale << ',' << r.cuts
           << ',' << r.bound << ',' << r.discrepancy << ',' << (r.pass ? "1" : "0") << '\n';
    }
    return os.str();
}

nlohmann::ordered_json report_json(const std::vector<BenchRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"algorithm", r.algorithm},
                       {"n", r.n},
                       {"k", r.k},
                       {"scale", r.scale},
                       {"cuts", r.cuts},
                       {"bound", r.bound},
                       {"discrepancy", r.discrepancy},
                       {"pass", r.pass}});
    }
    return arr;
}

void write_report_files(const std::vector<BenchRow>& rows, const std::string& out_prefix) {
    {
        std::ofstream csv(out_prefix + ".csv");
        if (!csv) throw std::runtime_error("cannot write " + out_prefix + ".csv");
        csv << report_csv(rows);
    }
    {
        std::ofstream js(out_prefix + ".json");
        if (!js) throw std::runtime_error("cannot write " + out_prefix + ".json");
        js << report_json(rows).dump(2) << "\n";
    }
}

}  // namespace fairsplit
