#include "spm/report.hpp"

#include <iomanip>
#include <ostream>

namespace spm {

using nlohmann::json;

json pattern_json(const SignPattern& p) {
    return json{{"n", p.size()}, {"text", render_pattern_inline(p)}};
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    const int n = static_cast<int>(j.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m(i, k) = j.at(i).at(k).get<double>();
    return m;
}

json eigenvalues_json(const std::vector<std::complex<double>>& evs) {
    json out = json::array();
    for (const auto& ev : evs) out.push_back(json{{"re", ev.real()}, {"im", ev.imag()}});
    return out;
}

json frequency_json(const EigenFrequency& f) {
    return json{{"real", f.real_count}, {"complex", f.complex_count}};
}

json check_json(const CheckResult& c) {
    return json{{"check_id", c.check_id},
                {"condition", c.condition},
                {"status", check_status_name(c.status)},
                {"evidence", c.evidence}};
}

json histogram_json(const FrequencyHistogram& h) {
    json bins = json::array();
    for (const auto& [freq, count] : h.counts)
        bins.push_back(json{{"real", freq.real_count},
                            {"complex", freq.complex_count},
                            {"count", count}});
    return json{{"bins", bins}, {"resamples", h.resamples}};
}

json recipe_json(const WitnessRecipe& r) {
    json out{{"kind", recipe_kind_name(r.kind)},
             {"support", r.support.to_string()},
             {"epsilon", r.epsilon}};
    if (r.kind == WitnessRecipe::Kind::Interpolated) {
        out["secondary"] = r.secondary.to_string();
        out["t"] = r.t;
    }
    if (r.kind == WitnessRecipe::Kind::MScaled) out["m_scale"] = r.m_scale;
    return out;
}

json verdict_witness_json(const VerdictWitness& w) {
    json out{{"origin", w.origin},
             {"frequency", frequency_json(w.frequency)},
             {"matrix", matrix_json(w.matrix)},
             {"eigenvalues", eigenvalues_json(w.eigenvalues)}};
    if (w.recipe) out["recipe"] = recipe_json(*w.recipe);
    return out;
}

json verdict_json(const Verdict& v) {
    json out{{"kind", verdict_kind_name(v.kind)}, {"reason", v.reason}};
    if (v.kind == Verdict::Kind::ConsistentProven) out["real_count"] = v.real_count;
    json checks = json::array();
    for (const auto& c : v.checks) checks.push_back(check_json(c));
    out["checks"] = checks;
    if (v.coeff_signs) out["coefficient_signs"] = v.coeff_signs->to_string();
    if (v.descartes) {
        out["descartes"] = json{{"exact", v.descartes->exact},
                                {"real_count", v.descartes->real_count},
                                {"min_real", v.descartes->min_real},
                                {"max_real", v.descartes->max_real}};
    }
    json witnesses = json::array();
    for (const auto& w : v.witnesses) witnesses.push_back(verdict_witness_json(w));
    out["witnesses"] = witnesses;
    out["histogram"] = histogram_json(v.histogram);
    out["notes"] = v.notes;
    return out;
}

json delta_json(const DeltaReport& r) {
    json out{{"overall", delta_overall_name(r.overall)}, {"reason", r.reason}};
    if (r.singularity) out["singularity"] = singularity_class_name(*r.singularity);
    json conds = json::array();
    for (const auto& c : r.conditions) conds.push_back(check_json(c));
    out["conditions"] = conds;
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(verdict_witness_json(w));
    out["witnesses"] = witnesses;
    out["histogram"] = histogram_json(r.histogram);
    out["notes"] = r.notes;
    return out;
}

namespace {

json budget_json(const AnalysisBudget& b) {
    return json{{"samples", b.samples}, {"seed", b.seed}, {"cap", b.cap}};
}

}  // namespace

json analysis_record(int index, const SignPattern& p, const Verdict& v,
                     const AnalysisBudget& budget) {
    return json{{"type", "analysis"},
                {"index", index},
                {"pattern", pattern_json(p)},
                {"structural_class", structural_class_name(structural_class(p))},
                {"budget", budget_json(budget)},
                {"verdict", verdict_json(v)}};
}

json delta_record(int index, const SignPattern& p, const DeltaReport& r,
                  const AnalysisBudget& budget) {
    return json{{"type", "delta"},
                {"index", index},
                {"pattern", pattern_json(p)},
                {"budget", budget_json(budget)},
                {"report", delta_json(r)}};
}

json witness_record(const SignPattern& p, const WitnessMatrix& w) {
    return json{{"type", "witness"},
                {"pattern", pattern_json(p)},
                {"recipe", recipe_json(w.recipe)},
                {"calibrated", w.calibrated},
                {"predicted", json{{"min_real", w.predicted.min_real},
                                   {"min_complex", w.predicted.min_complex}}},
                {"matrix", matrix_json(w.matrix.values)},
                {"eigenvalues", eigenvalues_json(w.eigenvalues)},
                {"frequency", frequency_json(w.frequency)}};
}

namespace {

void print_histogram_line(std::ostream& os, const FrequencyHistogram& h) {
    os << "  histogram:";
    for (const auto& [freq, count] : h.counts) os << " " << freq.to_string() << "x" << count;
    if (h.resamples) os << "  [" << h.resamples << " resampled]";
    os << "\n";
}

}  // namespace

void print_analysis_table(std::ostream& os, int index, const SignPattern& p, const Verdict& v) {
    os << "== pattern #" << index << " (n=" << p.size() << ", "
       << structural_class_name(structural_class(p)) << ")\n";
    os << render_pattern(p);
    os << "  verdict: " << verdict_kind_name(v.kind);
    if (v.kind == Verdict::Kind::ConsistentProven)
        os << "  S=(" << v.real_count << "," << p.size() - v.real_count << ")";
    os << "  -- " << v.reason << "\n";
    for (const auto& c : v.checks)
        os << "  [" << std::setw(13) << check_status_name(c.status) << "] " << c.check_id
           << (c.evidence.empty() ? "" : ": " + c.evidence) << "\n";
    if (v.coeff_signs) os << "  coefficient signs: " << v.coeff_signs->to_string() << "\n";
    if (v.descartes) os << "  descartes: " << v.descartes->to_string() << "\n";
    for (const auto& w : v.witnesses)
        os << "  witness " << w.origin << ": S=" << w.frequency.to_string() << "\n";
    if (!v.histogram.counts.empty()) print_histogram_line(os, v.histogram);
    for (const auto& note : v.notes) os << "  note: " << note << "\n";
}

void print_delta_table(std::ostream& os, int index, const SignPattern& p, const DeltaReport& r) {
    os << "== pattern #" << index << " (n=" << p.size() << ")\n";
    os << render_pattern(p);
    if (r.singularity) os << "  singularity: " << singularity_class_name(*r.singularity) << "\n";
    os << "  delta: " << delta_overall_name(r.overall) << "  -- " << r.reason << "\n";
    for (const auto& c : r.conditions)
        os << "  [" << std::setw(13) << check_status_name(c.status) << "] " << c.check_id
           << (c.evidence.empty() ? "" : ": " + c.evidence) << "\n";
    for (const auto& w : r.witnesses)
        os << "  witness " << w.origin << ": S=" << w.frequency.to_string() << "\n";
    if (!r.histogram.counts.empty()) print_histogram_line(os, r.histogram);
    for (const auto& note : r.notes) os << "  note: " << note << "\n";
}

void print_census_table(std::ostream& os, int n, const std::vector<CensusRow>& rows) {
    os << "== tridiagonal census, n=" << n << " (" << rows.size() << " classes)\n";
    for (const auto& row : rows) {
        os << "  " << std::setw(6) << word_string(row.word) << "  "
           << std::setw(20) << verdict_kind_name(row.verdict.kind);
        if (row.verdict.kind == Verdict::Kind::ConsistentProven)
            os << "  S=(" << row.verdict.real_count << "," << n - row.verdict.real_count << ")";
        else if (row.verdict.kind == Verdict::Kind::InconsistentProven &&
                 row.verdict.witnesses.size() == 2)
            os << "  S=" << row.verdict.witnesses[0].frequency.to_string() << " vs "
               << row.verdict.witnesses[1].frequency.to_string();
        os << "  -- " << row.verdict.reason << "\n";
    }
}

}  // namespace spm
