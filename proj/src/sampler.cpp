#include "torussym/sampler.hpp"

#include <cmath>
#include <numbers>

#include "torussym/rng.hpp"

namespace torussym {

bool is_profile_shape(const DomainSpec& spec) {
    return std::holds_alternative<ProfileDomain>(spec.shape()) ||
           std::holds_alternative<ExpProfileFamily>(spec.shape());
}

std::function<double(double)> profile_of(const DomainSpec& spec) {
    if (const auto* p = std::get_if<ProfileDomain>(&spec.shape())) {
        ProfileFunction f = p->f;
        return [f](double r) { return f(r); };
    }
    if (const auto* e = std::get_if<ExpProfileFamily>(&spec.shape())) {
        int k = e->k;
        return [k](double r) { return std::exp(-(k == 0 ? r : std::sqrt(r))); };
    }
    throw std::invalid_argument("profile_of: not a profile shape");
}

BoxGeometry box_geometry(const DomainSpec& spec) {
    BoxGeometry box;
    double vol = 1.0;
    for (int j = 0; j < spec.dimension(); ++j) {
        const auto& b = spec.modulus_bounds()[static_cast<size_t>(j)];
        if (!b)
            throw SamplingError("coordinate " + std::to_string(j + 1) +
                                " is unbounded; supply a truncation bound");
        box.bounds.push_back(*b);
        vol *= (2.0 * *b) * (2.0 * *b);
    }
    box.volume = vol;
    return box;
}

ProfileGeometry profile_geometry(const DomainSpec& spec) {
    ProfileGeometry geom;
    geom.f = profile_of(spec);
    auto density = [&](double r) { return r * geom.f(r) * geom.f(r); };
    geom.truncation_radius = certified_truncation_radius(density);
    QuadratureResult q = integrate_adaptive(density, 0.0, geom.truncation_radius, 1e-12);
    const double pi = std::numbers::pi;
    geom.volume = 2.0 * pi * pi * q.value;
    geom.volume_error = 2.0 * pi * pi * q.error_estimate;
    double m = 0.0;
    const int probes = 8192;
    for (int i = 0; i <= probes; ++i)
        m = std::max(m, density(geom.truncation_radius * i / probes));
    geom.density_bound = 1.05 * m;
    return geom;
}

Point propose_in_box(const BoxGeometry& box, std::mt19937_64& rng) {
    Point z;
    z.reserve(box.bounds.size());
    for (double b : box.bounds) {
        std::uniform_real_distribution<double> u(-b, b);
        double re = u(rng);
        double im = u(rng);
        z.emplace_back(re, im);
    }
    return z;
}

Point draw_profile_point(const ProfileGeometry& geom, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    for (;;) {
        double r = geom.truncation_radius * unit(rng);
        double accept = unit(rng);
        double g = r * geom.f(r) * geom.f(r);
        if (accept * geom.density_bound >= g) continue;
        double theta1 = two_pi * unit(rng);
        double rho = geom.f(r) * std::sqrt(unit(rng));
        double theta2 = two_pi * unit(rng);
        return {Complex(r * std::cos(theta1), r * std::sin(theta1)),
                Complex(rho * std::cos(theta2), rho * std::sin(theta2))};
    }
}

UniformSample sample_uniform(const DomainSpec& spec, std::uint64_t seed, std::size_t count) {
    UniformSample out;
    std::mt19937_64 rng = substream(seed, 0);
    if (is_profile_shape(spec)) {
        ProfileGeometry geom = profile_geometry(spec);
        out.truncated = true;
        out.truncation_radius = geom.truncation_radius;
        out.volume_estimate = geom.volume;
        out.volume_std_error = 0.0;
        out.points.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.points.push_back(draw_profile_point(geom, rng));
        out.proposals_used = count;
        return out;
    }
    BoxGeometry box = box_geometry(spec);
    std::uint64_t proposals = 0;
    out.points.reserve(count);
    while (out.points.size() < count) {
        Point z = propose_in_box(box, rng);
        ++proposals;
        if (spec.contains(z)) out.points.push_back(z);
        if (proposals >= 100000 && static_cast<double>(out.points.size()) < 1e-6 * static_cast<double>(proposals))
            throw SamplingError("degenerate spec: acceptance rate below 1e-6");
    }
    double p = static_cast<double>(out.points.size()) / static_cast<double>(proposals);
    out.volume_estimate = box.volume * p;
    out.volume_std_error = box.volume * std::sqrt(p * (1.0 - p) / static_cast<double>(proposals));
    out.proposals_used = proposals;
    return out;
}

std::vector<Complex> random_torus_point(int r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> lambda;
    lambda.reserve(static_cast<size_t>(r));
    for (int k = 0; k < r; ++k) {
        double t = u(rng);
        lambda.emplace_back(std::cos(t), std::sin(t));
    }
    return lambda;
}

Point random_polydisk_multiplier(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    Point mu;
    mu.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        double rho = std::sqrt(unit(rng));
        double t = two_pi * unit(rng);
        mu.emplace_back(rho * std::cos(t), rho * std::sin(t));
    }
    return mu;
}

}  // namespace torussym
