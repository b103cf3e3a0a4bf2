#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "torussym/condition_d.hpp"
#include "torussym/domain.hpp"
#include "torussym/lattice.hpp"
#include "torussym/moments.hpp"

namespace torussym {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Default degree bounds keep pair counts desk-scale while covering every
/// catalog-distinguishing difference.
inline int default_degree_bound(int n) { return n <= 2 ? 4 : (n == 3 ? 3 : 2); }

struct AnalyzeBudgets {
    std::int64_t gram_budget = 2000000;
    int condition_terms = 40;
    std::int64_t condition_budget = 200000;
    std::int64_t star_samples = 10000;
};

struct SymmetryReport {
    std::string domain_name;
    int dimension = 0;
    int degree_bound = 0;
    std::uint64_t seed = 0;
    AnalyzeBudgets budgets;
    DecisionPolicy policy;
    std::string method;
    double volume_estimate = 0.0;
    int count_nonzero = 0;        // off-diagonal pairs
    int count_zero = 0;
    int count_inconclusive = 0;
    DifferenceSet differences;
    SymmetryClassification classification;
    ConditionDVerdict condition_d;
    std::string theorem_statement;
    double star_violation_rate = -1.0;  // -1: not run
    std::vector<std::string> caveats;

    nlohmann::ordered_json to_json() const;
};

/// Full pipeline: gram -> differences -> kernel -> classification ->
/// Condition D -> report. Deterministic given seed.
SymmetryReport analyze(const DomainSpec& spec, int degree_bound, const AnalyzeBudgets& budgets,
                       std::optional<DecisionPolicy> policy_override,
                       MethodRequest method = MethodRequest::automatic, std::uint64_t seed = 0);

struct InvarianceCheck {
    double violation_rate = 0.0;
    std::uint64_t samples = 0;
    struct Witness {
        Point z;
        std::vector<Complex> lambda;
        Point image;
    };
    std::vector<Witness> witnesses;  // capped at 10
};

/// Fraction of sampled (z in Omega, lambda on the torus) whose rotated
/// image leaves the domain.
InvarianceCheck verify_invariance(const DomainSpec& spec, const TorusAction& A,
                                  std::uint64_t sample_count, std::uint64_t seed);

struct CalculationIdentityCheck {
    MomentEstimate estimate;
    double max_residual = 0.0;  // max over lambda of |<.,.> - g(lambda)<.,.>|
    bool g_trivial = true;
};

/// Probes <z^a, z^b> = g_{a,b}(lambda) <z^a, z^b> on declared-invariant
/// domains: when g is nontrivial the estimate itself must be noise-level.
CalculationIdentityCheck verify_calculation_identity(const DomainSpec& spec, const TorusAction& A,
                                                     const MultiIndex& alpha,
                                                     const MultiIndex& beta, int lambda_samples,
                                                     std::int64_t budget, std::uint64_t seed);

/// Star-shapedness probe: z in Omega, multipliers in the closed unit
/// polydisk; reports the fraction of scaled points that leave the domain.
InvarianceCheck check_complete_reinhardt(const DomainSpec& spec, std::uint64_t sample_count,
                                         std::uint64_t seed);

}  // namespace torussym
