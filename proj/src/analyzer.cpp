#include "torussym/analyzer.hpp"

#include <cmath>

#include "torussym/rng.hpp"
#include "torussym/sampler.hpp"

namespace torussym {

nlohmann::ordered_json SymmetryReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["domain"] = domain_name;
    j["dimension"] = dimension;
    j["degree_bound"] = degree_bound;
    j["seed"] = seed;
    j["method"] = method;
    j["budgets"]["gram"] = budgets.gram_budget;
    j["budgets"]["condition_terms"] = budgets.condition_terms;
    j["budgets"]["condition"] = budgets.condition_budget;
    j["budgets"]["star_samples"] = budgets.star_samples;
    j["policy"]["abs_tol"] = policy.abs_tol;
    j["policy"]["sigma_factor"] = policy.sigma_factor;
    j["volume_estimate"] = volume_estimate;
    j["gram_stats"]["nonzero"] = count_nonzero;
    j["gram_stats"]["zero"] = count_zero;
    j["gram_stats"]["inconclusive"] = count_inconclusive;
    nlohmann::ordered_json diffs = nlohmann::ordered_json::array();
    for (const auto& [d, witnesses] : differences.provenance) {
        nlohmann::ordered_json e;
        e["diff"] = d.entries();
        e["witnesses"] = witnesses.size();
        diffs.push_back(std::move(e));
    }
    j["differences"] = std::move(diffs);
    j["classification"] = classification_to_json(classification);
    j["condition_d"] = condition_d_to_json(condition_d);
    j["theorem_statement"] = theorem_statement;
    if (star_violation_rate >= 0.0) j["star_shaped_violation_rate"] = star_violation_rate;
    j["caveats"] = caveats;
    return j;
}

SymmetryReport analyze(const DomainSpec& spec, int degree_bound, const AnalyzeBudgets& budgets,
                       std::optional<DecisionPolicy> policy_override, MethodRequest method,
                       std::uint64_t seed) {
    SymmetryReport rep;
    rep.domain_name = spec.name();
    rep.dimension = spec.dimension();
    rep.degree_bound = degree_bound;
    rep.seed = seed;
    rep.budgets = budgets;
    rep.method = method == MethodRequest::automatic     ? "auto"
                 : method == MethodRequest::monte_carlo ? "mc"
                                                        : "quad";

    GramData g = gram(spec, degree_bound, method, budgets.gram_budget, seed);
    MultiIndex zero(std::vector<int>(static_cast<size_t>(spec.dimension()), 0));
    rep.volume_estimate = g.entry(zero, zero).value.real();
    rep.policy = policy_override ? *policy_override : default_policy_for_volume(rep.volume_estimate);

    for (const auto& [key, est] : g.triangle()) {
        if (key.first == key.second) continue;
        switch (decide_nonzero(est, rep.policy)) {
            case Decision::nonzero: ++rep.count_nonzero; break;
            case Decision::zero: ++rep.count_zero; break;
            case Decision::inconclusive: ++rep.count_inconclusive; break;
        }
    }
    rep.differences = difference_set(g, rep.policy);
    TorusAction detected = integer_kernel(rep.differences);
    rep.classification = classify(detected);
    if (rep.differences.inconclusive_count > 0)
        rep.classification.caveats.push_back(
            std::to_string(rep.differences.inconclusive_count) +
            " inconclusive moment pairs excluded; the detected action is maximal with respect "
            "to confirmed non-orthogonality");

    rep.condition_d = condition_d_report(spec, budgets.condition_terms, MethodRequest::automatic,
                                         budgets.condition_budget, seed);

    if (budgets.star_samples > 0) {
        InvarianceCheck star = check_complete_reinhardt(
            spec, static_cast<std::uint64_t>(budgets.star_samples), mix64(seed ^ 0x5743u));
        rep.star_violation_rate = star.violation_rate;
    }

    bool hypotheses_met = rep.condition_d.all_hold() && rep.differences.inconclusive_count == 0;
    std::string object = "the interior of the closure of the domain";
    if (hypotheses_met) {
        rep.theorem_statement =
            "Determinacy condition verified and every confirmed nonzero pair respects the "
            "detected lattice: " + object +
            " is invariant under the detected torus action.";
        if (spec.equals_interior_of_closure())
            rep.theorem_statement +=
                " The domain equals the interior of its closure, so the domain itself is "
                "invariant.";
    } else {
        std::string why;
        if (!rep.condition_d.all_hold()) why += "determinacy condition not verified";
        if (rep.differences.inconclusive_count > 0) {
            if (!why.empty()) why += "; ";
            why += "inconclusive moment pairs remain";
        }
        rep.theorem_statement = "Hypotheses not fully verified (" + why + "): invariance of " +
                                object + " under the detected action is not asserted.";
    }
    if (!spec.equals_interior_of_closure())
        rep.caveats.push_back(
            "conclusions are phrased for the interior of the closure of the domain, which "
            "differs from the domain itself for this shape");
    for (const std::string& c : rep.classification.caveats) rep.caveats.push_back(c);
    return rep;
}

InvarianceCheck verify_invariance(const DomainSpec& spec, const TorusAction& A,
                                  std::uint64_t sample_count, std::uint64_t seed) {
    InvarianceCheck out;
    UniformSample sample = sample_uniform(spec, seed, sample_count);
    std::mt19937_64 rng = substream(seed, 0x70f05);
    std::uint64_t violations = 0;
    for (const Point& z : sample.points) {
        std::vector<Complex> lambda = random_torus_point(A.rank(), rng);
        Point image = apply_torus(A, lambda, z);
        if (!spec.contains(image)) {
            ++violations;
            if (out.witnesses.size() < 10) out.witnesses.push_back({z, lambda, image});
        }
    }
    out.samples = sample_count;
    out.violation_rate = static_cast<double>(violations) / static_cast<double>(sample_count);
    return out;
}

CalculationIdentityCheck verify_calculation_identity(const DomainSpec& spec, const TorusAction& A,
                                                     const MultiIndex& alpha,
                                                     const MultiIndex& beta, int lambda_samples,
                                                     std::int64_t budget, std::uint64_t seed) {
    CalculationIdentityCheck out;
    out.estimate = inner_product(spec, alpha, beta, MethodRequest::automatic, budget, seed);
    out.g_trivial = g_is_trivial(A, DifferenceVector(alpha, beta));
    std::mt19937_64 rng = substream(seed, 0xca1c);
    double mag = std::abs(out.estimate.value);
    for (int i = 0; i < lambda_samples; ++i) {
        std::vector<Complex> lambda = random_torus_point(A.rank(), rng);
        Complex gval = eval_g(A, alpha, beta, lambda);
        out.max_residual = std::max(out.max_residual, std::abs(Complex(1.0) - gval) * mag);
    }
    return out;
}

InvarianceCheck check_complete_reinhardt(const DomainSpec& spec, std::uint64_t sample_count,
                                         std::uint64_t seed) {
    InvarianceCheck out;
    UniformSample sample = sample_uniform(spec, seed, sample_count);
    std::mt19937_64 rng = substream(seed, 0x57a7);
    std::uint64_t violations = 0;
    for (const Point& z : sample.points) {
        Point mu = random_polydisk_multiplier(spec.dimension(), rng);
        Point scaled(z.size());
        for (size_t j = 0; j < z.size(); ++j) scaled[j] = mu[j] * z[j];
        if (!spec.contains(scaled)) {
            ++violations;
            if (out.witnesses.size() < 10) out.witnesses.push_back({z, {}, scaled});
        }
    }
    out.samples = sample_count;
    out.violation_rate = static_cast<double>(violations) / static_cast<double>(sample_count);
    return out;
}

}  // namespace torussym
