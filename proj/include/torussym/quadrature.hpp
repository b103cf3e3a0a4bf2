#pragma once

#include <functional>
#include <stdexcept>

namespace torussym {

struct TailNotCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b] to the requested relative
/// tolerance (with an absolute floor for integrals near zero).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-12, double abs_tol = 1e-300,
                                    int max_depth = 48);

/// Improper integral over [0, inf) of an eventually monotone decaying
/// integrand. The truncation radius doubles until the probe segment
/// [R, 2R] contributes less than `tail_rel` of the head and the integrand
/// is decreasing there; throws TailNotCertified otherwise.
QuadratureResult integrate_radial(const std::function<double(double)>& f, double rel_tol = 1e-12,
                                  double tail_rel = 1e-14);

/// Truncation radius R certified by the same doubling rule, for samplers
/// that must cover all but a `tail_rel` fraction of the mass of f >= 0.
double certified_truncation_radius(const std::function<double(double)>& f,
                                   double tail_rel = 1e-14);

}  // namespace torussym
