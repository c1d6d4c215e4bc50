#ifndef SPM_DELTA_HPP
#define SPM_DELTA_HPP

#include <optional>
#include <string>
#include <vector>

#include "spm/consistency.hpp"
#include "spm/pattern.hpp"

namespace spm {

// Membership report for the class of patterns every member of which has
// exactly two real eigenvalues. The battery is necessary-only: the strongest
// positive statement is PossiblyInDelta.
enum class DeltaOverall { PossiblyInDelta, NotInDelta, NotComputed };

std::string delta_overall_name(DeltaOverall o);

struct DeltaReport {
    std::optional<SingularityClass> singularity;
    std::vector<CheckResult> conditions;  // core lemmas + the trichotomy battery
    DeltaOverall overall = DeltaOverall::PossiblyInDelta;
    std::string reason;
    std::vector<VerdictWitness> witnesses;  // members with i_r != 2, re-verified
    FrequencyHistogram histogram;
    std::vector<std::string> notes;
};

// Conditions every 2-consistent pattern satisfies regardless of the
// trichotomy: no negative even cycle may coexist (vertex-disjointly) with a
// negative even or nonzero odd cycle, and no length-n composite may consist
// solely of positive even cycles.
std::vector<CheckResult> delta_core_lemmas(const SignPattern& p, int cap = 12);

// Trichotomy-specific batteries.
std::vector<CheckResult> delta_sign_singular(const SignPattern& p, int cap = 12);
std::vector<CheckResult> delta_allows_singularity(const SignPattern& p, int cap = 12);
std::vector<CheckResult> delta_sign_nonsingular(const SignPattern& p, int cap = 12);

// Exact maximum of p+q over all-zero p x q submatrices (0 when there is no
// zero entry). Subset enumeration; CapExceeded above the cap.
int max_zero_submatrix_sum(const SignPattern& p, int cap = 10);

DeltaReport delta_verdict(const SignPattern& p, const AnalysisBudget& budget = {});

}  // namespace spm

#endif
