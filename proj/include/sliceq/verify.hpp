#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sliceq/aut.hpp"
#include "sliceq/hopf.hpp"

namespace sliceq::verify {

// One parameter set of the Theorem 4.1 verification grid with its expected
// automorphism-group dimension.
struct TableEntry {
    std::string label;
    HopfParams params;
    int expected;
};

const std::vector<TableEntry>& acceptance_grid();

struct RowResult {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<RowResult> rows;
    std::vector<AutReport> reports; // filled by the dimension-table criteria
};

struct Options {
    std::uint64_t seed = 12345;
    // Self-test hook: corrupts the first grid row's expected value so the
    // harness can prove it notices failures.
    bool inject_wrong_expected = false;
};

CriterionResult criterion_dimension_table(const Options& opts);  // 1
CriterionResult criterion_iterates(const Options& opts);         // 2
CriterionResult criterion_fixed_points(const Options& opts);     // 3
CriterionResult criterion_discontinuity(const Options& opts);    // 4
CriterionResult criterion_representation(const Options& opts);   // 5
CriterionResult criterion_stem_calculus(const Options& opts);    // 6
CriterionResult criterion_families_commute(const Options& opts); // 7
CriterionResult criterion_deformation_jumps(const Options& opts);// 8
CriterionResult criterion_fixed_sets(const Options& opts);       // 9
CriterionResult criterion_complex_model(const Options& opts);    // 10

std::vector<CriterionResult> run_all(const Options& opts);

} // namespace sliceq::verify
