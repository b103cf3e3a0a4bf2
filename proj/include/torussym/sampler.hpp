#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "torussym/domain.hpp"
#include "torussym/quadrature.hpp"

namespace torussym {

struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UniformSample {
    std::vector<Point> points;
    double volume_estimate = 0.0;
    double volume_std_error = 0.0;
    std::uint64_t proposals_used = 0;
    bool truncated = false;
    double truncation_radius = 0.0;
};

/// Rejection box: per-coordinate modulus bounds and total real volume.
struct BoxGeometry {
    std::vector<double> bounds;
    double volume = 0.0;
};

/// Direct sampler data for {|z2| < f(|z1|)} shapes (exact uniform draws on
/// the truncated domain; no box rejection).
struct ProfileGeometry {
    std::function<double(double)> f;
    double truncation_radius = 0.0;
    double density_bound = 0.0;  // sup of r f(r)^2 on [0, R], with margin
    double volume = 0.0;         // 2 pi^2 int_0^R r f(r)^2 dr
    double volume_error = 0.0;
};

bool is_profile_shape(const DomainSpec& spec);
std::function<double(double)> profile_of(const DomainSpec& spec);

BoxGeometry box_geometry(const DomainSpec& spec);
ProfileGeometry profile_geometry(const DomainSpec& spec);

/// Draws one uniform proposal in the box (not necessarily in the domain).
Point propose_in_box(const BoxGeometry& box, std::mt19937_64& rng);

/// Draws one exact uniform point of the truncated profile domain.
Point draw_profile_point(const ProfileGeometry& geom, std::mt19937_64& rng);

/// `count` i.i.d. uniform points of the domain plus a volume estimate,
/// deterministic given (seed, count). Signals a degenerate spec when the
/// acceptance rate is below 1e-6 after 1e5 proposals.
UniformSample sample_uniform(const DomainSpec& spec, std::uint64_t seed, std::size_t count);

/// A uniform point of the rank-r torus.
std::vector<Complex> random_torus_point(int r, std::mt19937_64& rng);

/// A uniform point of the closed unit polydisk (multipliers for the
/// star-shapedness check).
Point random_polydisk_multiplier(int n, std::mt19937_64& rng);

}  // namespace torussym
