#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torussym/profile.hpp"
#include "torussym/torus_action.hpp"

namespace torussym {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- shape variants ------------------------------------------------------

struct Polydisk {
    std::vector<double> radii;
};

struct Ball {
    double radius = 1.0;
    int n = 2;
};

/// Image T(B) of the unit ball under an invertible complex linear map.
struct LinearImageBall {
    std::vector<std::vector<Complex>> matrix;   // n x n, row major
    std::vector<std::vector<Complex>> inverse;  // cached
    double abs_det_sq = 1.0;                    // |det T|^2 = real Jacobian
};

/// {(z1,z2): |z2| < f(|z1|)}, n = 2.
struct ProfileDomain {
    ProfileFunction f;
};

/// The exponential-decay family {|z2| < exp(-|z1|^(1/2^k))}, k in {0,1}.
struct ExpProfileFamily {
    int k = 0;
};

/// {|z1 - c| < r1} x {|z2| < r2}.
struct TranslatedDiskProduct {
    Complex center;
    double r1 = 1.0;
    double r2 = 1.0;
};

/// {|z1^2 - z2| < 1, |z1| < 2}, n = 2.
struct QuasiCircularCubic {};

/// {|z1^2 - z2| < 1, |z1| < 2, |z3| < 1}, n = 3.
struct MixedQuasiReinhardt {};

/// Outer polydisk minus the closure of an inner one (both centered at 0).
struct PolydiskDifference {
    std::vector<double> outer;
    std::vector<double> inner;
};

struct PuncturedBall {
    double radius = 1.0;
    int n = 2;
    Point removed;
};

/// Escape hatch: arbitrary pure membership predicate with user-supplied
/// per-coordinate modulus bounds (no bound means unbounded along j).
struct Predicate {
    std::function<bool(const Point&)> membership;
    std::vector<std::optional<double>> modulus_bounds;
};

using Shape = std::variant<Polydisk, Ball, LinearImageBall, ProfileDomain, ExpProfileFamily,
                           TranslatedDiskProduct, QuasiCircularCubic, MixedQuasiReinhardt,
                           PolydiskDifference, PuncturedBall, Predicate>;

// --- DomainSpec ----------------------------------------------------------

class DomainSpec {
public:
    DomainSpec(std::string name, int dimension, Shape shape);

    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }
    const Shape& shape() const { return shape_; }

    /// Indicator of the open domain; pure and deterministic.
    bool contains(const Point& z) const;

    /// Per-coordinate modulus bound for box sampling; nullopt when the
    /// projection pi_j(Omega) is unbounded.
    const std::vector<std::optional<double>>& modulus_bounds() const { return modulus_bounds_; }

    bool coordinate_bounded(int j) const {
        return modulus_bounds_[static_cast<size_t>(j)].has_value();
    }
    bool bounded() const;

    /// Whether Omega = int(closure(Omega)) holds for this catalog shape.
    bool equals_interior_of_closure() const { return equals_int_closure_; }

    /// Ground-truth action, test metadata only; detection must not read it.
    const std::optional<TorusAction>& declared_action() const { return declared_action_; }
    DomainSpec& with_declared_action(TorusAction a) {
        declared_action_ = std::move(a);
        return *this;
    }

    // catalog
    static DomainSpec polydisk(std::vector<double> radii);
    static DomainSpec ball(int n, double radius);
    static DomainSpec linear_image_ball(std::vector<std::vector<Complex>> matrix);
    static DomainSpec sheared_ball();  // T = [[1,1],[0,1]]
    static DomainSpec profile_domain(ProfileFunction f);
    static DomainSpec exp_profile_family(int k);
    static DomainSpec translated_disk_product(Complex center, double r1, double r2);
    static DomainSpec quasi_circular_cubic();
    static DomainSpec mixed_quasi_reinhardt();
    static DomainSpec polydisk_difference(std::vector<double> outer, std::vector<double> inner);
    static DomainSpec punctured_ball(int n, double radius, Point removed);
    static DomainSpec predicate(int n, std::function<bool(const Point&)> membership,
                                std::vector<std::optional<double>> modulus_bounds);

private:
    std::string name_;
    int dimension_;
    Shape shape_;
    std::vector<std::optional<double>> modulus_bounds_;
    bool equals_int_closure_ = true;
    std::optional<TorusAction> declared_action_;
};

/// Parses the plain-text `key = value` domain config format.
/// Recognized keys: type, dim, radii, matrix, profile, center, k,
/// removed_point. Unknown keys are errors.
DomainSpec parse_domain_config(const std::string& text);
DomainSpec load_domain_config(const std::string& path);

/// Parses a complex literal of the form "a", "a+bi" or "a-bi".
Complex parse_complex(const std::string& text);

}  // namespace torussym
