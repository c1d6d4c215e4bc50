#ifndef SPM_CONSISTENCY_HPP
#define SPM_CONSISTENCY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spm/graphs.hpp"
#include "spm/pattern.hpp"
#include "spm/spectral.hpp"
#include "spm/witness.hpp"

namespace spm {

inline constexpr std::uint64_t kDefaultSeed = 1729;

enum class CheckStatus { Satisfied, Violated, NotApplicable, NotComputed };

std::string check_status_name(CheckStatus s);

// A violated necessary condition implies a concrete witness pair: one
// construction whose real-eigenvalue count is forced high, one whose nonreal
// count is forced high. Valid when real_bound.min_real +
// complex_bound.min_complex >= n + 1.
struct WitnessPlan {
    CompositeCycle real_side;
    FrequencyBound real_bound;
    CompositeCycle complex_side;
    FrequencyBound complex_bound;
    std::string origin;
};

struct CheckResult {
    std::string check_id;
    std::string condition;  // one-line statement of the implemented condition
    CheckStatus status = CheckStatus::NotApplicable;
    std::string evidence;
    std::vector<WitnessPlan> plans;
};

// --- the named check battery ------------------------------------------------
//
// Necessary conditions report Violated when the pattern provably fails to be
// consistent; check_all_negative_odd_cycle is the one sufficient check and
// reports Satisfied when consistency is proven by it.

CheckResult check_odd_maximal_paths(const SignPattern& p, int cap = 12);
CheckResult check_unique_inertia_odd_paths(const SignPattern& p, int cap = 12);
CheckResult check_two_cycle_covers(const SignPattern& p, int cap = 12);
CheckResult check_forbidden_submatrices(const SignPattern& p, int cap = 12);
CheckResult check_adjacent_leaves(const SignPattern& p, int cap = 12);
CheckResult check_mixed_covers(const SignPattern& p, int cap = 12);
CheckResult check_cycle_graph(const SignPattern& p, int cap = 12);
CheckResult check_all_negative_odd_cycle(const SignPattern& p);
CheckResult check_unicyclic(const SignPattern& p, int cap = 12);
CheckResult check_multicycle(const SignPattern& p, int cap = 12);
CheckResult check_zero_multiplicity(const SignPattern& p, int cap = 12);

// Fixed order: structural scans first, enumeration-heavy conditions last.
// `filter` selects check ids; empty runs everything.
std::vector<CheckResult> run_check_battery(const SignPattern& p, int cap = 12,
                                           const std::vector<std::string>& filter = {});

std::vector<std::string> all_check_ids();

// --- Monte Carlo sampling of a qualitative class -------------------------------

struct FrequencyHistogram {
    std::map<EigenFrequency, int> counts;
    // Lowest-index sample observed per bin, kept for witness extraction.
    std::map<EigenFrequency, std::pair<long, Eigen::MatrixXd>> representatives;
    int resamples = 0;  // borderline eigenvalue classifications that were redrawn

    int distinct() const { return static_cast<int>(counts.size()); }
};

// Draws `count` members with entry magnitudes 10^u, u uniform in [-2, 2].
// Fully deterministic per (pattern, count, seed): each sample is derived from
// its own index, so the result is independent of the worker split.
FrequencyHistogram sample_frequencies(const SignPattern& p, int count, std::uint64_t seed,
                                      int workers = 0);

// --- verdict --------------------------------------------------------------------

struct AnalysisBudget {
    int samples = 500;
    std::uint64_t seed = kDefaultSeed;
    int cap = 12;
    bool sampling = true;
    std::vector<std::string> checks;  // empty = full battery
};

struct VerdictWitness {
    Eigen::MatrixXd matrix;
    EigenFrequency frequency;
    std::vector<std::complex<double>> eigenvalues;
    std::string origin;
    std::optional<WitnessRecipe> recipe;
};

struct Verdict {
    enum class Kind { ConsistentProven, InconsistentProven, Undetermined };

    Kind kind = Kind::Undetermined;
    int real_count = -1;  // the forced i_r for ConsistentProven
    std::string reason;
    std::vector<VerdictWitness> witnesses;  // two members with distinct frequencies
    std::vector<CheckResult> checks;
    std::optional<CoeffSignVector> coeff_signs;
    std::optional<DescartesResult> descartes;
    FrequencyHistogram histogram;
    std::vector<std::string> notes;
};

std::string verdict_kind_name(Verdict::Kind k);

// Full pipeline: sufficient conditions, then calibrated witness pairs from
// violated checks, then sampling, otherwise an honest Undetermined.
Verdict verdict(const SignPattern& p, const AnalysisBudget& budget = {});

// --- small tridiagonal census ------------------------------------------------------

struct CensusRow {
    EdgeWord word;  // canonical (lexicographically minimal under reversal)
    Verdict verdict;
};

std::vector<CensusRow> classify_small_tridiagonal(int n, const AnalysisBudget& budget = {});

// Consistent classes for n <= 5 as published: canonical word -> frequency.
const std::map<int, std::map<std::string, EigenFrequency>>& consistent_census_fixture();

// Empty when the census matches the fixture, else a description of the first
// mismatch. Only defined for 2 <= n <= 5.
std::optional<std::string> verify_census_fixture(const std::vector<CensusRow>& rows, int n);

// Deterministic per-index seed derivation shared by the samplers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0);

}  // namespace spm

#endif
