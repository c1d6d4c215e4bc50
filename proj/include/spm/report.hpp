#ifndef SPM_REPORT_HPP
#define SPM_REPORT_HPP

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "spm/consistency.hpp"
#include "spm/delta.hpp"
#include "spm/witness.hpp"

namespace spm {

// Machine format: line-delimited JSON records with a stable field schema.
// The human tables printed by the CLI are derived views of these records.

nlohmann::json pattern_json(const SignPattern& p);
nlohmann::json matrix_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json eigenvalues_json(const std::vector<std::complex<double>>& evs);
nlohmann::json frequency_json(const EigenFrequency& f);
nlohmann::json check_json(const CheckResult& c);
nlohmann::json histogram_json(const FrequencyHistogram& h);
nlohmann::json recipe_json(const WitnessRecipe& r);
nlohmann::json verdict_witness_json(const VerdictWitness& w);
nlohmann::json verdict_json(const Verdict& v);
nlohmann::json delta_json(const DeltaReport& r);

// One record per analyzed pattern.
nlohmann::json analysis_record(int index, const SignPattern& p, const Verdict& v,
                               const AnalysisBudget& budget);
nlohmann::json delta_record(int index, const SignPattern& p, const DeltaReport& r,
                            const AnalysisBudget& budget);
// Standalone witness export; carries everything needed for third-party
// re-verification.
nlohmann::json witness_record(const SignPattern& p, const WitnessMatrix& w);

// Human-readable views.
void print_analysis_table(std::ostream& os, int index, const SignPattern& p, const Verdict& v);
void print_delta_table(std::ostream& os, int index, const SignPattern& p, const DeltaReport& r);
void print_census_table(std::ostream& os, int n, const std::vector<CensusRow>& rows);

}  // namespace spm

#endif
