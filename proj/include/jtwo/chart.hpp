#pragma once

#include "jtwo/detection.hpp"
#include "jtwo/j2_model.hpp"
#include "jtwo/moore.hpp"

#include <string>
#include <vector>

namespace jtwo {

struct ChartRow {
    int stem = 0;
    int filtration = 0;
    std::string label;
    std::string order; /* "free" or the order as an integer */
    std::string color;
};

struct ChartLine {
    std::string kind; /* alpha | beta | v1 */
    int s1 = 0, f1 = 0, s2 = 0, f2 = 0;
    std::string from, to;
    std::string color;
};

struct ChartDoc {
    int lo = 0, hi = 0;
    std::vector<ChartRow> rows;
    std::vector<ChartLine> lines;
};

enum class ChartMode { provenance, hurewicz };

/* chart of pi_* j2 over a stem window; provenance mode colors by origin,
 * hurewicz mode colors the detected summands orange, open ones green, and
 * drops filtration-one classes that are neither detected nor support
 * beta_1-multiplication */
ChartDoc chart_of_j2(const J2Model& m, int lo, int hi, ChartMode mode);

/* chart of a mod-3 model with v1 (orange) and alpha/beta (black) lines */
ChartDoc chart_of_mod3_tmf(const Mod3Tmf& m, int lo, int hi);

/* chart of the tmf model itself */
ChartDoc chart_of_tmf(const TmfTable& t, int lo, int hi);

/* chart of a quotient model (rows only) */
ChartDoc chart_of_quotient(const QuotientModel& q, int lo, int hi);

std::string to_tsv(const ChartDoc& doc);
std::string to_svg(const ChartDoc& doc);

/* digest format: every row as "S stem filt label order color", every line as
 * "L kind s1 f1 from s2 f2 to" */
std::vector<std::string> digest_lines(const ChartDoc& doc);
struct DigestDiff {
    bool match = true;
    std::vector<std::string> missing;    /* expected but not computed */
    std::vector<std::string> unexpected; /* computed but not expected */
};
DigestDiff compare_digest(const ChartDoc& doc, const std::vector<std::string>& expected);

std::string report_markdown(const std::vector<DetectionRecord>& records);
std::string suite_markdown(const SuiteReport& rep, const std::string& title);

} // namespace jtwo
