#include "spm/delta.hpp"

#include <algorithm>
#include <sstream>

#include "spm/errors.hpp"
#include "spm/witness.hpp"

namespace spm {

std::string delta_overall_name(DeltaOverall o) {
    switch (o) {
        case DeltaOverall::PossiblyInDelta: return "possibly-in-delta";
        case DeltaOverall::NotInDelta: return "not-in-delta";
        case DeltaOverall::NotComputed: return "not-computed";
    }
    return "";
}

namespace {

std::uint64_t mask_of(const SimpleCycle& c) {
    std::uint64_t m = 0;
    for (int v : c.vertices) m |= std::uint64_t{1} << v;
    return m;
}

bool negative_even(const SimpleCycle& c) { return c.length() % 2 == 0 && c.cycle_sign < 0; }
bool positive_even(const SimpleCycle& c) { return c.length() % 2 == 0 && c.cycle_sign > 0; }
bool odd_cycle(const SimpleCycle& c) { return c.length() % 2 == 1; }

// Simple cycles of the sub-digraph induced on `keep`, in original labels.
std::vector<SimpleCycle> induced_cycles(const SignPattern& p, const std::vector<int>& keep) {
    std::vector<SimpleCycle> out;
    if (keep.empty()) return out;
    SignPattern sub = submatrix(p, keep, keep);
    SignedDigraph d(sub);
    for (SimpleCycle c : simple_cycles(d, sub.size())) {
        for (auto& v : c.vertices) v = keep[v];
        out.push_back(std::move(c));
    }
    return out;
}

// A calibrated member forced away from two real eigenvalues; nullopt when the
// calibration protocol fails (reported upstream as an anomaly).
std::optional<VerdictWitness> delta_witness(const SignPattern& p, const CompositeCycle& support,
                                            const FrequencyBound& bound, const std::string& origin,
                                            std::vector<std::string>& notes) {
    try {
        WitnessMatrix w =
            calibrate(p, WitnessRecipe{WitnessRecipe::Kind::CompositePowers, support}, bound);
        if (w.frequency.real_count == 2) return std::nullopt;
        return VerdictWitness{w.matrix.values, w.frequency, w.eigenvalues, origin, w.recipe};
    } catch (const CalibrationError& e) {
        notes.push_back(std::string("calibration anomaly: ") + e.what());
        return std::nullopt;
    }
}

struct DeltaContext {
    const SignPattern& p;
    int cap;
    SignedDigraph d;
    std::vector<SimpleCycle> cycles;
    int m;  // maximum composite cycle length

    DeltaContext(const SignPattern& pattern, int c)
        : p(pattern), cap(c), d(pattern), cycles(simple_cycles(d, pattern.size())),
          m(max_composite_cycle_length(d, c)) {}

    bool has_composite_of_length(int len) const {
        if (len == 0) return true;
        if (len < 0 || len > m) return false;
        bool found = false;
        enumerate_composite_cycles(d, len, cap, [&](const CompositeCycle&) {
            found = true;
            return false;
        });
        return found;
    }
};

}  // namespace

int max_zero_submatrix_sum(const SignPattern& p, int cap) {
    const int n = p.size();
    if (n > cap)
        throw CapExceeded("zero-submatrix enumeration not computed: n exceeds cap " +
                          std::to_string(cap));
    int best = 0;
    for (int rows = 1; rows < (1 << n); ++rows) {
        int cols = 0;
        for (int j = 0; j < n; ++j) {
            bool all_zero = true;
            for (int i = 0; i < n && all_zero; ++i)
                if ((rows >> i) & 1) all_zero = p.at(i, j) == Sign::Zero;
            if (all_zero) ++cols;
        }
        if (cols >= 1) best = std::max(best, __builtin_popcount(static_cast<unsigned>(rows)) + cols);
    }
    return best;
}

std::vector<CheckResult> delta_core_lemmas(const SignPattern& p, int cap) {
    std::vector<CheckResult> out;
    CheckResult disjoint{"delta_core_disjoint_bad_cycles",
                         "no negative even cycle may be vertex-disjoint from a negative even or "
                         "nonzero odd cycle",
                         CheckStatus::Satisfied,
                         "",
                         {}};
    CheckResult cover{"delta_core_positive_even_cover",
                      "no length-n composite cycle consists solely of positive even cycles",
                      CheckStatus::Satisfied,
                      "",
                      {}};
    try {
        DeltaContext ctx(p, cap);
        for (const auto& gamma : ctx.cycles) {
            if (!negative_even(gamma)) continue;
            std::vector<char> in(p.size(), 0);
            for (int v : gamma.vertices) in[v] = 1;
            std::vector<int> keep;
            for (int v = 0; v < p.size(); ++v)
                if (!in[v]) keep.push_back(v);
            for (const auto& alpha : induced_cycles(p, keep)) {
                if (!negative_even(alpha) && !odd_cycle(alpha)) continue;
                disjoint.status = CheckStatus::Violated;
                disjoint.evidence = cycle_to_string(gamma) + " with " + cycle_to_string(alpha);
                WitnessPlan plan;
                plan.origin = disjoint.check_id;
                plan.real_side = CompositeCycle{{gamma, alpha}};
                plan.real_bound = bound_from_parts(plan.real_side, 0);
                disjoint.plans.push_back(plan);
                break;
            }
            if (disjoint.status == CheckStatus::Violated) break;
        }
        enumerate_composite_cycles(ctx.d, p.size(), cap, [&](const CompositeCycle& c) {
            for (const auto& part : c.parts)
                if (!positive_even(part)) return true;
            cover.status = CheckStatus::Violated;
            cover.evidence = c.to_string() + " consists of positive even cycles";
            WitnessPlan plan;
            plan.origin = cover.check_id;
            plan.complex_side = c;
            plan.complex_bound = bound_from_parts(c, 0);
            plan.complex_bound.min_real = 0;
            cover.plans.push_back(plan);
            return false;
        });
    } catch (const CapExceeded& e) {
        disjoint.status = CheckStatus::NotComputed;
        disjoint.evidence = e.what();
        cover.status = CheckStatus::NotComputed;
        cover.evidence = e.what();
    }
    out.push_back(disjoint);
    out.push_back(cover);
    return out;
}

std::vector<CheckResult> delta_sign_singular(const SignPattern& p, int cap) {
    std::vector<CheckResult> out;
    auto add = [&](std::string id, std::string cond) {
        out.push_back({std::move(id), std::move(cond), CheckStatus::Satisfied, "", {}});
        return &out.back();
    };
    try {
        DeltaContext ctx(p, cap);
        const int n = p.size();

        CheckResult* c1 = add("delta_ss_even_cycles_nonnegative", "all even cycles are nonnegative");
        for (const auto& gamma : ctx.cycles)
            if (negative_even(gamma)) {
                c1->status = CheckStatus::Violated;
                c1->evidence = cycle_to_string(gamma) + " is a negative even cycle";
                WitnessPlan plan;
                plan.origin = c1->check_id;
                plan.real_side = CompositeCycle{{gamma}};
                plan.real_bound = bound_from_parts(plan.real_side, n - ctx.m);
                c1->plans.push_back(plan);
                break;
            }

        CheckResult* c2 = add("delta_ss_zero_block",
                              "max(p+q) over p x q zero submatrices is at most n+2");
        try {
            int sum = max_zero_submatrix_sum(p);
            std::ostringstream ev;
            ev << "max(p+q) = " << sum << ", bound " << n + 2;
            c2->evidence = ev.str();
            if (sum > n + 2) c2->status = CheckStatus::Violated;
        } catch (const CapExceeded& e) {
            c2->status = CheckStatus::NotComputed;
            c2->evidence = e.what();
        }

        CheckResult* c3 = add("delta_ss_disjoint_odd",
                              "no nonzero odd cycle is vertex-disjoint from another nonzero odd "
                              "cycle");
        for (std::size_t i = 0; i < ctx.cycles.size() && c3->status == CheckStatus::Satisfied; ++i)
            for (std::size_t j = i + 1; j < ctx.cycles.size(); ++j) {
                const auto &a = ctx.cycles[i], &b = ctx.cycles[j];
                if (!odd_cycle(a) || !odd_cycle(b) || (mask_of(a) & mask_of(b))) continue;
                c3->status = CheckStatus::Violated;
                c3->evidence = cycle_to_string(a) + " and " + cycle_to_string(b);
                WitnessPlan plan;
                plan.origin = c3->check_id;
                plan.real_side = CompositeCycle{{a, b}};
                plan.real_bound = bound_from_parts(plan.real_side, n - ctx.m);
                c3->plans.push_back(plan);
                break;
            }

        CheckResult* c4 = add("delta_ss_no_n1_cover",
                              "without a length-(n-1) composite, every cycle is even and "
                              "nonnegative and a length-(n-2) composite exists");
        if (!ctx.has_composite_of_length(n - 1)) {
            for (const auto& gamma : ctx.cycles)
                if (odd_cycle(gamma) || negative_even(gamma)) {
                    c4->status = CheckStatus::Violated;
                    c4->evidence = cycle_to_string(gamma) +
                                   (odd_cycle(gamma) ? " is a nonzero odd cycle"
                                                     : " is a negative even cycle");
                    WitnessPlan plan;
                    plan.origin = c4->check_id;
                    plan.real_side = CompositeCycle{{gamma}};
                    plan.real_bound = bound_from_parts(plan.real_side, n - ctx.m);
                    c4->plans.push_back(plan);
                    break;
                }
            if (c4->status == CheckStatus::Satisfied && !ctx.has_composite_of_length(n - 2)) {
                c4->status = CheckStatus::Violated;
                c4->evidence = "no composite cycle of length n-2 either";
            }
        }

        CheckResult* c5 = add("delta_ss_odd_cycles_same_sign",
                              "when all length-(n-1) composites share one sign, all odd cycles "
                              "share one sign");
        if (ctx.has_composite_of_length(n - 1)) {
            bool saw_pos = false, saw_neg = false;
            enumerate_composite_cycles(ctx.d, n - 1, cap, [&](const CompositeCycle& c) {
                (c.sign() > 0 ? saw_pos : saw_neg) = true;
                return !(saw_pos && saw_neg);
            });
            if (!(saw_pos && saw_neg)) {
                const SimpleCycle* pos = nullptr;
                const SimpleCycle* neg = nullptr;
                for (const auto& gamma : ctx.cycles)
                    if (odd_cycle(gamma)) (gamma.cycle_sign > 0 ? pos : neg) = &gamma;
                if (pos && neg) {
                    c5->status = CheckStatus::Violated;
                    c5->evidence = cycle_to_string(*pos) + " and " + cycle_to_string(*neg) +
                                   " are oppositely signed odd cycles";
                }
            }
        }

        CheckResult* c6 = add("delta_ss_opposite_n1_covers",
                              "two oppositely signed length-(n-1) composites force a "
                              "length-(n-2) composite");
        if (ctx.has_composite_of_length(n - 1)) {
            bool saw_pos = false, saw_neg = false;
            enumerate_composite_cycles(ctx.d, n - 1, cap, [&](const CompositeCycle& c) {
                (c.sign() > 0 ? saw_pos : saw_neg) = true;
                return !(saw_pos && saw_neg);
            });
            if (saw_pos && saw_neg && !ctx.has_composite_of_length(n - 2)) {
                c6->status = CheckStatus::Violated;
                c6->evidence = "oppositely signed length-(n-1) covers but no length-(n-2) composite";
            }
        }
    } catch (const CapExceeded& e) {
        for (auto& r : out) {
            r.status = CheckStatus::NotComputed;
            r.evidence = e.what();
        }
        if (out.empty())
            out.push_back({"delta_ss_even_cycles_nonnegative", "", CheckStatus::NotComputed,
                           e.what(),
                           {}});
    }
    return out;
}

std::vector<CheckResult> delta_allows_singularity(const SignPattern& p, int cap) {
    std::vector<CheckResult> out;
    auto add = [&](std::string id, std::string cond) {
        out.push_back({std::move(id), std::move(cond), CheckStatus::Satisfied, "", {}});
        return &out.back();
    };
    try {
        DeltaContext ctx(p, cap);
        const int n = p.size();

        CheckResult* c1 = add("delta_as_opposite_n_covers",
                              "oppositely signed composite cycles of length n exist");
        bool saw_pos = false, saw_neg = false;
        enumerate_composite_cycles(ctx.d, n, cap, [&](const CompositeCycle& c) {
            (c.sign() > 0 ? saw_pos : saw_neg) = true;
            return !(saw_pos && saw_neg);
        });
        if (!(saw_pos && saw_neg)) c1->status = CheckStatus::Violated;
        c1->evidence = saw_pos && saw_neg ? "both signs occur among length-n composites" : "";

        CheckResult* c2 = add("delta_as_n2_cover",
                              "without a length-(n-1) composite, a length-(n-2) composite exists");
        if (!ctx.has_composite_of_length(n - 1) && !ctx.has_composite_of_length(n - 2)) {
            c2->status = CheckStatus::Violated;
            c2->evidence = "no composite cycle of length n-1 or n-2";
        }

        CheckResult* c3 = add("delta_as_negative_even_or_opposite_odd",
                              "a negative even cycle exists, or two vertex-disjoint odd cycles "
                              "of opposite sign do");
        bool ok3 = false;
        std::string ev3;
        for (const auto& gamma : ctx.cycles)
            if (negative_even(gamma)) {
                ok3 = true;
                ev3 = cycle_to_string(gamma) + " is a negative even cycle";
                break;
            }
        for (std::size_t i = 0; i < ctx.cycles.size() && !ok3; ++i)
            for (std::size_t j = i + 1; j < ctx.cycles.size() && !ok3; ++j) {
                const auto &a = ctx.cycles[i], &b = ctx.cycles[j];
                if (odd_cycle(a) && odd_cycle(b) && a.cycle_sign != b.cycle_sign &&
                    !(mask_of(a) & mask_of(b))) {
                    ok3 = true;
                    ev3 = cycle_to_string(a) + " and " + cycle_to_string(b) +
                          " are oppositely signed disjoint odd cycles";
                }
            }
        c3->status = ok3 ? CheckStatus::Satisfied : CheckStatus::Violated;
        c3->evidence = ev3;

        CheckResult* c4 = add("delta_as_same_sign_disjoint_odd",
                              "two vertex-disjoint nonzero odd cycles of the same sign exist");
        bool ok4 = false;
        std::string ev4;
        for (std::size_t i = 0; i < ctx.cycles.size() && !ok4; ++i)
            for (std::size_t j = i + 1; j < ctx.cycles.size() && !ok4; ++j) {
                const auto &a = ctx.cycles[i], &b = ctx.cycles[j];
                if (odd_cycle(a) && odd_cycle(b) && a.cycle_sign == b.cycle_sign &&
                    !(mask_of(a) & mask_of(b))) {
                    ok4 = true;
                    ev4 = cycle_to_string(a) + " and " + cycle_to_string(b);
                }
            }
        c4->status = ok4 ? CheckStatus::Satisfied : CheckStatus::Violated;
        c4->evidence = ev4;
    } catch (const CapExceeded& e) {
        for (auto& r : out) {
            r.status = CheckStatus::NotComputed;
            r.evidence = e.what();
        }
        if (out.empty())
            out.push_back(
                {"delta_as_opposite_n_covers", "", CheckStatus::NotComputed, e.what(), {}});
    }
    return out;
}

std::vector<CheckResult> delta_sign_nonsingular(const SignPattern& p, int cap) {
    std::vector<CheckResult> out;
    auto add = [&](std::string id, std::string cond) {
        out.push_back({std::move(id), std::move(cond), CheckStatus::Satisfied, "", {}});
        return &out.back();
    };
    try {
        DeltaContext ctx(p, cap);
        const int n = p.size();

        CheckResult* c1 = add("delta_sn_uniform_n_covers",
                              "all length-n composite cycles share one sign");
        bool saw_pos = false, saw_neg = false;
        enumerate_composite_cycles(ctx.d, n, cap, [&](const CompositeCycle& c) {
            (c.sign() > 0 ? saw_pos : saw_neg) = true;
            return !(saw_pos && saw_neg);
        });
        if (saw_pos && saw_neg) c1->status = CheckStatus::Violated;

        CheckResult* c2 = add("delta_sn_negative_even_or_disjoint_odd",
                              "a negative even cycle or two vertex-disjoint nonzero odd cycles "
                              "exist");
        bool has_neg_even = false;
        const SimpleCycle* neg_even = nullptr;
        for (const auto& gamma : ctx.cycles)
            if (negative_even(gamma)) {
                has_neg_even = true;
                neg_even = &gamma;
                break;
            }
        bool has_disjoint_odd = false;
        for (std::size_t i = 0; i < ctx.cycles.size() && !has_disjoint_odd; ++i)
            for (std::size_t j = i + 1; j < ctx.cycles.size() && !has_disjoint_odd; ++j)
                if (odd_cycle(ctx.cycles[i]) && odd_cycle(ctx.cycles[j]) &&
                    !(mask_of(ctx.cycles[i]) & mask_of(ctx.cycles[j])))
                    has_disjoint_odd = true;
        if (!has_neg_even && !has_disjoint_odd) c2->status = CheckStatus::Violated;
        if (has_neg_even) c2->evidence = cycle_to_string(*neg_even) + " is a negative even cycle";
        else if (has_disjoint_odd) c2->evidence = "two vertex-disjoint odd cycles exist";

        CheckResult* c3 = add("delta_sn_no_same_sign_disjoint_odd",
                              "with a negative even cycle present, no two vertex-disjoint odd "
                              "cycles share a sign");
        if (has_neg_even)
            for (std::size_t i = 0; i < ctx.cycles.size() && c3->status == CheckStatus::Satisfied;
                 ++i)
                for (std::size_t j = i + 1; j < ctx.cycles.size(); ++j) {
                    const auto &a = ctx.cycles[i], &b = ctx.cycles[j];
                    if (odd_cycle(a) && odd_cycle(b) && a.cycle_sign == b.cycle_sign &&
                        !(mask_of(a) & mask_of(b))) {
                        c3->status = CheckStatus::Violated;
                        c3->evidence = cycle_to_string(*neg_even) + " with " + cycle_to_string(a) +
                                       ", " + cycle_to_string(b);
                        break;
                    }
                }

        CheckResult* c4 = add("delta_sn_induced_odd_signs",
                              "inside any length-n composite, the vertex set of each odd part "
                              "induces odd cycles of that part's sign only");
        enumerate_composite_cycles(ctx.d, n, cap, [&](const CompositeCycle& c) {
            for (const auto& part : c.parts) {
                if (!odd_cycle(part)) continue;
                for (const auto& alpha : induced_cycles(p, part.vertices))
                    if (odd_cycle(alpha) && alpha.cycle_sign != part.cycle_sign) {
                        c4->status = CheckStatus::Violated;
                        c4->evidence = cycle_to_string(alpha) + " inside " +
                                       cycle_to_string(part) + " has the opposite sign";
                        return false;
                    }
            }
            return true;
        });
    } catch (const CapExceeded& e) {
        for (auto& r : out) {
            r.status = CheckStatus::NotComputed;
            r.evidence = e.what();
        }
        if (out.empty())
            out.push_back({"delta_sn_uniform_n_covers", "", CheckStatus::NotComputed, e.what(), {}});
    }
    return out;
}

DeltaReport delta_verdict(const SignPattern& p, const AnalysisBudget& budget) {
    DeltaReport report;
    try {
        report.singularity = singularity_class(p, budget.cap);
    } catch (const CapExceeded& e) {
        report.overall = DeltaOverall::NotComputed;
        report.reason = e.what();
        return report;
    }

    report.conditions = delta_core_lemmas(p, budget.cap);
    std::vector<CheckResult> battery;
    switch (*report.singularity) {
        case SingularityClass::SignSingular: battery = delta_sign_singular(p, budget.cap); break;
        case SingularityClass::AllowsSingularity:
            battery = delta_allows_singularity(p, budget.cap);
            break;
        case SingularityClass::SignNonsingular:
            battery = delta_sign_nonsingular(p, budget.cap);
            break;
    }
    report.conditions.insert(report.conditions.end(), battery.begin(), battery.end());

    // Constructive witnesses from violated conditions.
    for (const auto& cond : report.conditions) {
        if (cond.status != CheckStatus::Violated) continue;
        for (const auto& plan : cond.plans) {
            const bool real_route = !plan.real_side.parts.empty();
            const CompositeCycle& support = real_route ? plan.real_side : plan.complex_side;
            const FrequencyBound& bound = real_route ? plan.real_bound : plan.complex_bound;
            if (auto w = delta_witness(p, support, bound, cond.check_id, report.notes)) {
                report.witnesses.push_back(*w);
                break;
            }
        }
        if (!report.witnesses.empty()) break;
    }

    if (budget.sampling) {
        report.histogram = sample_frequencies(p, budget.samples, budget.seed);
        if (report.witnesses.empty())
            for (const auto& [freq, rep] : report.histogram.representatives)
                if (freq.real_count != 2) {
                    Spectrum s = eigen_frequency(rep.second);
                    if (s.frequency.real_count == 2) continue;
                    report.witnesses.push_back(VerdictWitness{
                        rep.second, s.frequency, s.eigenvalues,
                        "sample #" + std::to_string(rep.first), std::nullopt});
                    break;
                }
    }

    bool any_violated = std::any_of(report.conditions.begin(), report.conditions.end(),
                                    [](const CheckResult& c) {
                                        return c.status == CheckStatus::Violated;
                                    });
    if (any_violated || !report.witnesses.empty()) {
        report.overall = DeltaOverall::NotInDelta;
        if (any_violated && !report.witnesses.empty())
            report.reason = "necessary condition violated; witness with i_r != 2 attached";
        else if (any_violated)
            report.reason = "necessary condition violated";
        else
            report.reason = "sampling found a member with i_r != 2";
    } else {
        report.overall = DeltaOverall::PossiblyInDelta;
        report.reason = "no necessary condition violated; membership is not asserted";
    }
    return report;
}

}  // namespace spm
