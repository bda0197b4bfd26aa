#pragma once

#include "jtwo/chart.hpp"

#include <string>
#include <vector>

namespace jtwo {

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    int max_degree = 600;
    int product_degree = 900;
    bool strict = false; /* policy warnings count as failures */
};

/* the full acceptance run; one entry per criterion, fixture checks first */
std::vector<Criterion> run_acceptance(const std::string& data_path, const VerifyOptions& opt);

/* individual fixture checks, reported with a human-readable diff */
Criterion check_figure(const std::string& name, const ChartDoc& doc, const TmfData& data);

std::string render_criteria(const std::vector<Criterion>& cs);
bool all_pass(const std::vector<Criterion>& cs);

} // namespace jtwo
