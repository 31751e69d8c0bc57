#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fairsplit/rational.hpp"

namespace fairsplit {

// One benchmark run: algorithm, instance shape, observed cut count against
// its bound, and the validator verdict. Serialized byte-stably.
struct BenchRow {
    std::string algorithm;
    size_t n = 0;
    int k = 0;
    std::string scale;  // epsilon or bead count m
    size_t cuts = 0;
    std::string bound;
    std::string discrepancy;
    bool pass = false;
};

std::string report_csv(const std::vector<BenchRow>& rows);
nlohmann::ordered_json report_json(const std::vector<BenchRow>& rows);

void write_report_files(const std::vector<BenchRow>& rows, const std::string& out_prefix);

}  // namespace fairsplit
