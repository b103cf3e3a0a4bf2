#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "torussym/domain.hpp"
#include "torussym/moments.hpp"
#include "torussym/omega_family.hpp"

namespace torussym {

enum class NormSource { exact_formula, quadrature, monte_carlo };
std::string norm_source_name(NormSource s);

/// L2-norms ||z_j^k|| for k = 1..K, kept in log space (the exact families
/// overflow double well before K = 200).
struct NormSequence {
    int coordinate = 1;  // j, 1-based
    std::vector<double> log_norms;
    NormSource source = NormSource::exact_formula;

    int terms() const { return static_cast<int>(log_norms.size()); }
    double norm(int k) const { return std::exp(log_norms[static_cast<size_t>(k - 1)]); }
    /// a_k = ||z_j^k||^{-1/k}
    double term(int k) const { return std::exp(-log_norms[static_cast<size_t>(k - 1)] / k); }
    std::vector<double> partial_sums() const;
};

enum class CoordinateVerdict { holds_bounded, holds_divergent, fails_convergent, inconclusive };
std::string coordinate_verdict_name(CoordinateVerdict v);

struct VerdictThresholds {
    double divergent_max = 1.2;   // p below: series treated as divergent
    double convergent_min = 1.6;  // p above: series treated as convergent
};

struct CoordinateReport {
    CoordinateVerdict verdict = CoordinateVerdict::inconclusive;
    std::optional<double> fitted_exponent;  // heuristic path only
    double exponent_std_error = 0.0;
    std::vector<double> partial_sums;
    bool heuristic = false;
};

/// Per-coordinate verdicts; the divergence call on unbounded coordinates is
/// a labeled heuristic (a power-law fit of a_k over the tail window).
struct ConditionDVerdict {
    std::map<int, CoordinateReport> per_coordinate;
    bool all_hold() const;
};

/// Exact, quadrature or Monte Carlo norms for coordinate j of the domain.
NormSequence norm_sequence(const DomainSpec& spec, int j, int terms,
                           MethodRequest method = MethodRequest::automatic,
                           std::int64_t budget = 200000, std::uint64_t seed = 0);

/// bounded => holds_bounded. Otherwise least-squares fit of
/// log a_k ~ log C - p log k over k in [K/2, K]; p < 1.2 divergent,
/// p > 1.6 convergent, else inconclusive. Requires K >= 10 on that path.
CoordinateReport condition_d_verdict(const NormSequence& seq, bool bounded,
                                     const VerdictThresholds& thresholds = {});

/// Whole-domain Condition D evaluation.
ConditionDVerdict condition_d_report(const DomainSpec& spec, int terms,
                                     MethodRequest method = MethodRequest::automatic,
                                     std::int64_t budget = 200000, std::uint64_t seed = 0,
                                     const VerdictThresholds& thresholds = {});

/// For {|z2| < f(|z1|)} with f(r) >= C1 r^{-p} beyond C2: z1^j fails to be
/// square integrable exactly when j >= p - 1.
bool power_decay_membership(double p, double c1, double c2, int j);

/// CSV with header k,norm,a_k,partial_sum.
std::string norm_sequence_csv(const NormSequence& seq);

nlohmann::ordered_json condition_d_to_json(const ConditionDVerdict& v);

}  // namespace torussym
