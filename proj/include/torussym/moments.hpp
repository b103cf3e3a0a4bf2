#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "json.hpp"
#include "torussym/domain.hpp"
#include "torussym/multi_index.hpp"

namespace torussym {

struct MomentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { closed_form, quadrature, monte_carlo };

/// How to compute: `automatic` picks closed form or quadrature when the
/// shape admits one and Monte Carlo otherwise.
enum class MethodRequest { automatic, monte_carlo, quadrature };

std::string method_name(Method m);
Method method_from_name(const std::string& s);
MethodRequest method_request_from_name(const std::string& s);

/// One Bergman inner product <z^alpha, z^beta> with provenance.
struct MomentEstimate {
    Complex value;
    double std_error = 0.0;      // 0 for deterministic methods
    double quad_abs_tol = 0.0;   // reported absolute tolerance, quadrature only
    Method method = Method::closed_form;
    std::int64_t effort = 0;     // samples or integrand evaluations
};

// closed forms ------------------------------------------------------------

/// ||z^alpha||^2 over the ball of the given radius in C^n:
///   radius^{2|alpha|+2n} pi^n alpha! / (n+|alpha|)!.
double ball_norm_closed_form(int n, double radius, const MultiIndex& alpha);

/// ||z^alpha||^2 over the polydisk: prod_j pi radii_j^{2 alpha_j + 2} / (alpha_j + 1).
double polydisk_norm_closed_form(const std::vector<double>& radii, const MultiIndex& alpha);

/// Moment of a {|z2| < f(|z1|)} domain. Zero exactly off the diagonal;
/// on the diagonal (2 pi)^2 / (2 alpha2 + 2) * int_0^inf r^{2 alpha1 + 1}
/// f(r)^{2 alpha2 + 2} dr by adaptive quadrature with certified truncation.
MomentEstimate profile_moment_quadrature(const ProfileFunction& f, const MultiIndex& alpha,
                                         const MultiIndex& beta);

// Gram data ---------------------------------------------------------------

/// Truncated moment data, Hermitian by construction (one triangle stored).
class GramData {
public:
    GramData() = default;
    GramData(int n, int degree_bound) : n_(n), degree_bound_(degree_bound) {}

    int dimension() const { return n_; }
    int degree_bound() const { return degree_bound_; }

    void set(const MultiIndex& alpha, const MultiIndex& beta, MomentEstimate est);
    /// Conjugate-mirrored lookup; throws when the pair is absent.
    MomentEstimate entry(const MultiIndex& alpha, const MultiIndex& beta) const;

    /// The stored canonical triangle (alpha <= beta lexicographically).
    const std::map<std::pair<MultiIndex, MultiIndex>, MomentEstimate>& triangle() const {
        return entries_;
    }

    nlohmann::ordered_json to_json() const;
    static GramData from_json(const nlohmann::ordered_json& j);

    bool operator==(const GramData& other) const;

private:
    int n_ = 0;
    int degree_bound_ = 0;
    std::map<std::pair<MultiIndex, MultiIndex>, MomentEstimate> entries_;
};

// operations --------------------------------------------------------------

MomentEstimate inner_product(const DomainSpec& spec, const MultiIndex& alpha,
                             const MultiIndex& beta, MethodRequest method = MethodRequest::automatic,
                             std::int64_t budget = 200000, std::uint64_t seed = 0);

/// All pairs |alpha|, |beta| <= N. Monte Carlo runs share one point cloud
/// across every pair (correlated errors, unbiased entries); deterministic
/// given seed regardless of thread count.
GramData gram(const DomainSpec& spec, int degree_bound,
              MethodRequest method = MethodRequest::automatic, std::int64_t budget = 2000000,
              std::uint64_t seed = 0);

enum class Decision { nonzero, zero, inconclusive };

std::string decision_name(Decision d);

struct DecisionPolicy {
    double abs_tol = 1e-3;
    double sigma_factor = 5.0;
};

/// nonzero when |v| > max(absTol, k sigma); zero when |v| + k sigma < absTol;
/// inconclusive otherwise. Deterministic entries are judged on absTol alone.
Decision decide_nonzero(const MomentEstimate& est, const DecisionPolicy& policy);

/// Scale-free default: absTol = 1e-3 x domain volume, 5 sigma.
DecisionPolicy default_policy_for_volume(double volume);

/// True iff z^alpha is integrable on every shape we can check analytically;
/// profile shapes with certified exponential tails always qualify.
bool monomials_integrable(const DomainSpec& spec, int degree_bound);

}  // namespace torussym
