#include "torussym/condition_d.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "torussym/quadrature.hpp"
#include "torussym/sampler.hpp"

namespace torussym {

std::string norm_source_name(NormSource s) {
    switch (s) {
        case NormSource::exact_formula: return "exact_formula";
        case NormSource::quadrature: return "quadrature";
        case NormSource::monte_carlo: return "monte_carlo";
    }
    return "?";
}

std::string coordinate_verdict_name(CoordinateVerdict v) {
    switch (v) {
        case CoordinateVerdict::holds_bounded: return "holds_bounded";
        case CoordinateVerdict::holds_divergent: return "holds_divergent";
        case CoordinateVerdict::fails_convergent: return "fails_convergent";
        case CoordinateVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<double> NormSequence::partial_sums() const {
    std::vector<double> out;
    out.reserve(log_norms.size());
    double s = 0.0;
    for (int k = 1; k <= terms(); ++k) {
        s += term(k);
        out.push_back(s);
    }
    return out;
}

bool ConditionDVerdict::all_hold() const {
    for (const auto& [j, rep] : per_coordinate)
        if (rep.verdict != CoordinateVerdict::holds_bounded &&
            rep.verdict != CoordinateVerdict::holds_divergent)
            return false;
    return !per_coordinate.empty();
}

NormSequence norm_sequence(const DomainSpec& spec, int j, int terms, MethodRequest method,
                           std::int64_t budget, std::uint64_t seed) {
    if (j < 1 || j > spec.dimension())
        throw std::invalid_argument("norm_sequence: coordinate out of range");
    NormSequence seq;
    seq.coordinate = j;
    seq.log_norms.reserve(static_cast<size_t>(terms));

    if (const auto* fam = std::get_if<ExpProfileFamily>(&spec.shape());
        fam && method != MethodRequest::monte_carlo) {
        seq.source = NormSource::exact_formula;
        for (int k = 1; k <= terms; ++k) {
            if (j == 1) {
                seq.log_norms.push_back(log_omega_k_z1_norm(fam->k, k));
            } else {
                seq.log_norms.push_back(0.5 * std::log(exact_omega_k_moment(fam->k, 0, k)));
            }
        }
        return seq;
    }
    if (is_profile_shape(spec) && method != MethodRequest::monte_carlo) {
        seq.source = NormSource::quadrature;
        for (int k = 1; k <= terms; ++k) {
            std::vector<int> e = {0, 0};
            e[static_cast<size_t>(j - 1)] = k;
            MultiIndex a{e};
            MomentEstimate est = inner_product(spec, a, a, MethodRequest::quadrature);
            if (!(est.value.real() > 0.0) || !std::isfinite(est.value.real()))
                throw MomentError("norm_sequence: non-integrable monomial at k = " +
                                  std::to_string(k));
            seq.log_norms.push_back(0.5 * std::log(est.value.real()));
        }
        return seq;
    }
    // generic path: closed form where available, Monte Carlo otherwise
    bool mc = method == MethodRequest::monte_carlo;
    seq.source = mc ? NormSource::monte_carlo : NormSource::exact_formula;
    for (int k = 1; k <= terms; ++k) {
        std::vector<int> e(static_cast<size_t>(spec.dimension()), 0);
        e[static_cast<size_t>(j - 1)] = k;
        MultiIndex a{e};
        MomentEstimate est = inner_product(spec, a, a, method, budget, seed + static_cast<std::uint64_t>(k));
        if (est.method == Method::monte_carlo) seq.source = NormSource::monte_carlo;
        double v = est.value.real();
        if (!(v > 0.0) || !std::isfinite(v))
            throw MomentError("norm_sequence: nonpositive norm estimate at k = " +
                              std::to_string(k));
        seq.log_norms.push_back(0.5 * std::log(v));
    }
    return seq;
}

CoordinateReport condition_d_verdict(const NormSequence& seq, bool bounded,
                                     const VerdictThresholds& thresholds) {
    CoordinateReport rep;
    rep.partial_sums = seq.partial_sums();
    if (bounded) {
        rep.verdict = CoordinateVerdict::holds_bounded;
        return rep;
    }
    const int K = seq.terms();
    if (K < 10)
        throw std::invalid_argument("condition_d_verdict: heuristic path needs K >= 10");
    rep.heuristic = true;
    // least squares of log a_k against log k on the tail window [K/2, K]
    int lo = K / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k = lo; k <= K; ++k) {
        double x = std::log(static_cast<double>(k));
        double y = -seq.log_norms[static_cast<size_t>(k - 1)] / k;  // log a_k
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / m;
    double rss = 0;
    for (int k = lo; k <= K; ++k) {
        double x = std::log(static_cast<double>(k));
        double y = -seq.log_norms[static_cast<size_t>(k - 1)] / k;
        double r = y - (intercept + slope * x);
        rss += r * r;
    }
    double sigma2 = m > 2 ? rss / (m - 2) : 0.0;
    rep.fitted_exponent = -slope;
    rep.exponent_std_error = std::sqrt(sigma2 * m / denom);
    if (*rep.fitted_exponent < thresholds.divergent_max)
        rep.verdict = CoordinateVerdict::holds_divergent;
    else if (*rep.fitted_exponent > thresholds.convergent_min)
        rep.verdict = CoordinateVerdict::fails_convergent;
    else
        rep.verdict = CoordinateVerdict::inconclusive;
    return rep;
}

ConditionDVerdict condition_d_report(const DomainSpec& spec, int terms, MethodRequest method,
                                     std::int64_t budget, std::uint64_t seed,
                                     const VerdictThresholds& thresholds) {
    ConditionDVerdict out;
    for (int j = 1; j <= spec.dimension(); ++j) {
        bool bounded = spec.coordinate_bounded(j - 1);
        if (bounded) {
            CoordinateReport rep;
            rep.verdict = CoordinateVerdict::holds_bounded;
            out.per_coordinate[j] = rep;
            continue;
        }
        NormSequence seq = norm_sequence(spec, j, terms, method, budget, seed);
        out.per_coordinate[j] = condition_d_verdict(seq, false, thresholds);
    }
    return out;
}

bool power_decay_membership(double p, double c1, double c2, int j) {
    if (p <= 0 || c1 <= 0 || c2 <= 0)
        throw std::invalid_argument("power_decay_membership: constants must be positive");
    return !(static_cast<double>(j) >= p - 1.0);
}

std::string norm_sequence_csv(const NormSequence& seq) {
    std::string out = "k,norm,a_k,partial_sum\n";
    double partial = 0.0;
    char buf[128];
    for (int k = 1; k <= seq.terms(); ++k) {
        double a = seq.term(k);
        partial += a;
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", k, seq.norm(k), a, partial);
        out += buf;
    }
    return out;
}

nlohmann::ordered_json condition_d_to_json(const ConditionDVerdict& v) {
    nlohmann::ordered_json j;
    for (const auto& [coord, rep] : v.per_coordinate) {
        nlohmann::ordered_json r;
        r["verdict"] = coordinate_verdict_name(rep.verdict);
        r["heuristic"] = rep.heuristic;
        if (rep.fitted_exponent) {
            r["fitted_exponent"] = *rep.fitted_exponent;
            r["exponent_std_error"] = rep.exponent_std_error;
        } else {
            r["fitted_exponent"] = nullptr;
        }
        if (!rep.partial_sums.empty()) {
            // last few partial sums are enough for the report
            nlohmann::ordered_json sums = nlohmann::ordered_json::array();
            size_t start = rep.partial_sums.size() > 8 ? rep.partial_sums.size() - 8 : 0;
            for (size_t i = start; i < rep.partial_sums.size(); ++i)
                sums.push_back(rep.partial_sums[i]);
            r["tail_partial_sums"] = std::move(sums);
        }
        j[std::to_string(coord)] = std::move(r);
    }
    return j;
}

}  // namespace torussym
