#pragma once

// The acceptance matrix: nine self-contained verification suites covering
// the character identities, the recurrences, the multi-sum identities, the
// particle move laws, the particle decomposition, the narrow-model window
// degeneration, the p = 3 exponent dictionary, and the enumeration oracle.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "virapath/minimal_model.hpp"

namespace virapath {

/// Outcome of one suite: a pass/fail verdict, the number of individual
/// checks performed, and capped per-instance detail for any failures.
struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = true;
    long long instances = 0;
    long long failure_total = 0;
    std::vector<std::string> failures;
};

/// Move-law property run over one model: every law is checked on every
/// admissible path in the selected window. When `r` or `L` is absent the
/// full range (1..p-1 resp. 0..6) is swept; when `cutoff` is absent each r
/// uses its conformal dimension plus 10 as the degree ceiling.
CriterionResult move_laws_suite(const ModelParams& m, std::optional<long long> r,
                                std::optional<long long> L,
                                const std::optional<ExactRational>& cutoff);

/// Particle-decomposition run over one model: round-trips, stratum
/// coverage, and the degree bookkeeping, with the same window defaults as
/// move_laws_suite.
CriterionResult bijection_suite(const ModelParams& m, std::optional<long long> r,
                                std::optional<long long> L,
                                const std::optional<ExactRational>& cutoff);

CriterionResult criterion_main_theorem();         // path sums vs closed characters
CriterionResult criterion_boson_fermion();        // alternating vs positive form
CriterionResult criterion_recurrences();          // both length-graded recurrences
CriterionResult criterion_multisum_identities();  // partition multi-sum + telescoping
CriterionResult criterion_move_lemmas();          // particle move laws
CriterionResult criterion_bijection();            // particle decomposition
CriterionResult criterion_window_void();          // narrow models: windows vacuous
CriterionResult criterion_p3_dictionary();        // p = 3 exponent translation
CriterionResult criterion_enumeration_oracle();   // pruned vs brute-force listing

/// Runs all nine suites, possibly on several threads, then prints one
/// verdict line per criterion (in order, with failure detail indented) and
/// a summary. Output does not depend on the thread count. Returns true iff
/// every criterion passed.
bool run_acceptance(std::ostream& os, int threads);

/// Thread count for suite runs: the VIRAPATH_THREADS environment variable
/// when set to a positive integer, otherwise the hardware concurrency.
int default_thread_count();

}  // namespace virapath
