#pragma once

#include "jtwo/j2_model.hpp"

#include <string>
#include <vector>

namespace jtwo {

enum class Existence { exists, does_not_exist, unknown };

struct FamilyElement {
    std::string name;
    int degree = 0;
    Existence existence = Existence::exists;
    std::string note;
};

struct DetectionRecord {
    std::string element;
    int degree = 0;
    std::string verdict;  /* detected | detected-tmf | not-detected | unknown */
    std::string detector; /* canonical class, with 3^k coefficient when divided */
    std::string resolved; /* model summand label (after the seam alias) */
    int filtration = -1;
    int order_exp = 0;    /* order of the element, 3^k */
    std::string family;   /* which display or argument produced it */
};

struct TodaFact {
    std::string bracket;
    std::string value;
    std::string indeterminacy;
    std::string anchor;
};

/* anchor id -> what the fact says; registry load fails on a missing anchor */
const std::map<std::string, std::string>& fact_anchors();
std::vector<TodaFact> toda_registry();

/* existence flags on the beta catalog and open statuses */
std::vector<FamilyElement> nonexistence_and_status();

/* divided alpha family record: i >= 2, 1 <= j <= nu3(i)+1 */
DetectionRecord alpha_family(int i, int j, const J2Model& m);

/* every Theorem-A display instance with degree <= max_degree, the product
 * detections that extend them, the explicit nondetections, and the open
 * degrees 9 mod 144 */
std::vector<DetectionRecord> hurewicz_image(const J2Model& m, int max_degree);

struct ProductVerdict {
    std::string verdict; /* nonzero-in-j2 | nonzero-in-tmf | zero-in-j2 | unknown */
    std::string label;
    std::string route;
};

ProductVerdict check_product(const std::string& word, const J2Model& m);

struct SuiteRow {
    std::string element;
    int degree = 0;
    std::string verdict;
    std::string witness;
    std::string route;
    bool pass = false;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    int failures = 0;
};

/* Theorem A: every display element detected with the stated detector;
 * closure checks on the nondetection residues */
SuiteReport theorem_a_suite(const J2Model& m, int max_degree);

/* Theorem B: product families nonzero, by direct detection or by the
 * bracket contradiction route */
SuiteReport theorem_b_suite(const J2Model& m, int max_degree);

struct PeriodicityRow {
    std::string family;
    int t = 0;
    std::string lhs, rhs;
    bool pass = false;
};

std::vector<PeriodicityRow> periodicity_check(const J2Model& m, int t_max);

/* which j2 summand labels the Hurewicz machinery marks orange */
std::set<std::string> hurewicz_orange(const J2Model& m, int max_degree);
/* green: open Hurewicz status */
std::set<std::string> hurewicz_green(const J2Model& m, int max_degree);

} // namespace jtwo
