#include "torussym/moments.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "torussym/omega_family.hpp"
#include "torussym/quadrature.hpp"
#include "torussym/rng.hpp"
#include "torussym/sampler.hpp"

namespace torussym {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "?";
}

Method method_from_name(const std::string& s) {
    if (s == "closed_form") return Method::closed_form;
    if (s == "quadrature") return Method::quadrature;
    if (s == "monte_carlo") return Method::monte_carlo;
    throw MomentError("unknown method: " + s);
}

MethodRequest method_request_from_name(const std::string& s) {
    if (s == "auto") return MethodRequest::automatic;
    if (s == "mc") return MethodRequest::monte_carlo;
    if (s == "quad") return MethodRequest::quadrature;
    throw MomentError("unknown method request: " + s + " (expected auto|mc|quad)");
}

std::string decision_name(Decision d) {
    switch (d) {
        case Decision::nonzero: return "nonzero";
        case Decision::zero: return "zero";
        case Decision::inconclusive: return "inconclusive";
    }
    return "?";
}

// --- closed forms --------------------------------------------------------

double ball_norm_closed_form(int n, double radius, const MultiIndex& alpha) {
    if (alpha.size() != n) throw MomentError("ball_norm_closed_form: dimension mismatch");
    double v = std::pow(kPi, n) * std::pow(radius, 2.0 * alpha.degree() + 2.0 * n);
    // alpha! / (n + |alpha|)!
    double num = 1.0;
    for (int j = 0; j < n; ++j)
        for (int i = 2; i <= alpha[j]; ++i) num *= i;
    double den = 1.0;
    for (int i = 2; i <= n + alpha.degree(); ++i) den *= i;
    return v * num / den;
}

double polydisk_norm_closed_form(const std::vector<double>& radii, const MultiIndex& alpha) {
    if (alpha.size() != static_cast<int>(radii.size()))
        throw MomentError("polydisk_norm_closed_form: dimension mismatch");
    double v = 1.0;
    for (int j = 0; j < alpha.size(); ++j)
        v *= kPi * std::pow(radii[static_cast<size_t>(j)], 2.0 * alpha[j] + 2.0) / (alpha[j] + 1.0);
    return v;
}

// --- polynomial expansion over an orthogonal base shape ------------------

namespace {

using Poly = std::map<std::vector<int>, Complex>;

Poly poly_const(int n, Complex c) { return {{std::vector<int>(static_cast<size_t>(n), 0), c}}; }

Poly poly_var(int n, int j) {
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(j)] = 1;
    return {{e, Complex(1.0)}};
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) out[e] += c;
    return out;
}

Poly poly_scale(const Poly& a, Complex s) {
    Poly out;
    for (const auto& [e, c] : a) out[e] = c * s;
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out[e] += ca * cb;
        }
    return out;
}

Poly poly_pow(const Poly& a, int e) {
    Poly out = poly_const(static_cast<int>(a.begin()->first.size()), Complex(1.0));
    for (int i = 0; i < e; ++i) out = poly_mul(out, a);
    return out;
}

/// <P, Q> with orthogonal base monomials of known squared norms.
Complex poly_inner(const Poly& p, const Poly& q,
                   const std::function<double(const MultiIndex&)>& diag) {
    Complex out(0.0);
    for (const auto& [e, c] : p) {
        auto it = q.find(e);
        if (it == q.end()) continue;
        out += c * std::conj(it->second) * diag(MultiIndex(e));
    }
    return out;
}

/// z^alpha expanded in the auxiliary coordinates of the catalog change of
/// variables, together with the base diagonal moments and the real Jacobian.
struct ExpansionBase {
    std::vector<Poly> coord;  // z_j as a polynomial in w
    std::function<double(const MultiIndex&)> diag;
    double jacobian = 1.0;
};

std::optional<ExpansionBase> expansion_base(const DomainSpec& spec) {
    const int n = spec.dimension();
    if (const auto* s = std::get_if<LinearImageBall>(&spec.shape())) {
        ExpansionBase b;
        for (int j = 0; j < n; ++j) {
            Poly row = poly_const(n, Complex(0.0));
            for (int c = 0; c < n; ++c)
                row = poly_add(row, poly_scale(poly_var(n, c),
                                               s->matrix[static_cast<size_t>(j)][static_cast<size_t>(c)]));
            b.coord.push_back(row);
        }
        b.diag = [n](const MultiIndex& g) { return ball_norm_closed_form(n, 1.0, g); };
        b.jacobian = s->abs_det_sq;
        return b;
    }
    if (const auto* s = std::get_if<TranslatedDiskProduct>(&spec.shape())) {
        ExpansionBase b;
        b.coord.push_back(poly_add(poly_const(2, s->center), poly_var(2, 0)));
        b.coord.push_back(poly_var(2, 1));
        std::vector<double> radii = {s->r1, s->r2};
        b.diag = [radii](const MultiIndex& g) { return polydisk_norm_closed_form(radii, g); };
        return b;
    }
    if (std::holds_alternative<QuasiCircularCubic>(spec.shape())) {
        // (z1, z2) = (u, u^2 - v) maps the polydisk (2, 1) onto the domain
        // with unit Jacobian.
        ExpansionBase b;
        b.coord.push_back(poly_var(2, 0));
        b.coord.push_back(poly_add(poly_pow(poly_var(2, 0), 2),
                                   poly_scale(poly_var(2, 1), Complex(-1.0))));
        std::vector<double> radii = {2.0, 1.0};
        b.diag = [radii](const MultiIndex& g) { return polydisk_norm_closed_form(radii, g); };
        return b;
    }
    if (std::holds_alternative<MixedQuasiReinhardt>(spec.shape())) {
        ExpansionBase b;
        b.coord.push_back(poly_var(3, 0));
        b.coord.push_back(poly_add(poly_pow(poly_var(3, 0), 2),
                                   poly_scale(poly_var(3, 1), Complex(-1.0))));
        b.coord.push_back(poly_var(3, 2));
        std::vector<double> radii = {2.0, 1.0, 1.0};
        b.diag = [radii](const MultiIndex& g) { return polydisk_norm_closed_form(radii, g); };
        return b;
    }
    return std::nullopt;
}

std::optional<MomentEstimate> closed_form_inner(const DomainSpec& spec, const MultiIndex& alpha,
                                                const MultiIndex& beta) {
    auto diagonal_only = [&](double diag_value) -> MomentEstimate {
        MomentEstimate est;
        est.method = Method::closed_form;
        est.value = (alpha == beta) ? Complex(diag_value) : Complex(0.0);
        return est;
    };
    if (const auto* s = std::get_if<Polydisk>(&spec.shape()))
        return diagonal_only(alpha == beta ? polydisk_norm_closed_form(s->radii, alpha) : 0.0);
    if (const auto* s = std::get_if<Ball>(&spec.shape()))
        return diagonal_only(alpha == beta ? ball_norm_closed_form(s->n, s->radius, alpha) : 0.0);
    if (const auto* s = std::get_if<PuncturedBall>(&spec.shape()))
        return diagonal_only(alpha == beta ? ball_norm_closed_form(s->n, s->radius, alpha) : 0.0);
    if (const auto* s = std::get_if<PolydiskDifference>(&spec.shape()))
        return diagonal_only(alpha == beta ? polydisk_norm_closed_form(s->outer, alpha) -
                                                 polydisk_norm_closed_form(s->inner, alpha)
                                           : 0.0);
    if (const auto* s = std::get_if<ExpProfileFamily>(&spec.shape()))
        return diagonal_only(alpha == beta ? exact_omega_k_moment(s->k, alpha[0], alpha[1]) : 0.0);
    if (auto base = expansion_base(spec)) {
        Poly p = poly_const(spec.dimension(), Complex(1.0));
        Poly q = poly_const(spec.dimension(), Complex(1.0));
        for (int j = 0; j < spec.dimension(); ++j) {
            p = poly_mul(p, poly_pow(base->coord[static_cast<size_t>(j)], alpha[j]));
            q = poly_mul(q, poly_pow(base->coord[static_cast<size_t>(j)], beta[j]));
        }
        MomentEstimate est;
        est.method = Method::closed_form;
        est.value = base->jacobian * poly_inner(p, q, base->diag);
        return est;
    }
    return std::nullopt;
}

// --- quadrature paths ----------------------------------------------------

MomentEstimate quadrature_inner(const DomainSpec& spec, const MultiIndex& alpha,
                                const MultiIndex& beta) {
    MomentEstimate est;
    est.method = Method::quadrature;
    if (is_profile_shape(spec)) {
        auto f = profile_of(spec);
        if (alpha != beta) return est;  // angular integral vanishes exactly
        int a1 = alpha[0], a2 = alpha[1];
        QuadratureResult q = integrate_radial(
            [&](double r) { return std::pow(r, 2 * a1 + 1) * std::pow(f(r), 2 * a2 + 2); },
            1e-12);
        double scale = 4.0 * kPi * kPi / (2.0 * a2 + 2.0);
        est.value = Complex(scale * q.value);
        est.quad_abs_tol = scale * q.error_estimate;
        est.effort = q.evaluations;
        return est;
    }
    if (const auto* s = std::get_if<Polydisk>(&spec.shape())) {
        if (alpha != beta) return est;
        double v = 1.0;
        long evals = 0;
        for (int j = 0; j < alpha.size(); ++j) {
            int a = alpha[j];
            QuadratureResult q = integrate_adaptive(
                [a](double r) { return std::pow(r, 2 * a + 1); }, 0.0,
                s->radii[static_cast<size_t>(j)], 1e-12);
            v *= 2.0 * kPi * q.value;
            evals += q.evaluations;
        }
        est.value = Complex(v);
        est.quad_abs_tol = 1e-10 * std::abs(v);
        est.effort = evals;
        return est;
    }
    if (const auto* s = std::get_if<Ball>(&spec.shape())) {
        if (alpha != beta) return est;
        const double R = s->radius;
        if (s->n == 1) {
            int a = alpha[0];
            QuadratureResult q = integrate_adaptive(
                [a](double r) { return std::pow(r, 2 * a + 1); }, 0.0, R, 1e-12);
            est.value = Complex(2.0 * kPi * q.value);
            est.quad_abs_tol = 2.0 * kPi * q.error_estimate;
            est.effort = q.evaluations;
            return est;
        }
        if (s->n == 2) {
            int a1 = alpha[0], a2 = alpha[1];
            QuadratureResult q = integrate_adaptive(
                [=](double r1) {
                    double inner = std::pow(R * R - r1 * r1, a2 + 1) / (2.0 * a2 + 2.0);
                    return std::pow(r1, 2 * a1 + 1) * inner;
                },
                0.0, R, 1e-12);
            double scale = 4.0 * kPi * kPi;
            est.value = Complex(scale * q.value);
            est.quad_abs_tol = scale * q.error_estimate;
            est.effort = q.evaluations;
            return est;
        }
    }
    throw MomentError("quadrature path not available for shape: " + spec.name());
}

// --- Monte Carlo (shared point cloud) ------------------------------------

struct PairIndex {
    size_t a, b;  // indices into the monomial list, a <= b
};

struct BatchAccum {
    std::uint64_t accepted = 0;
    std::vector<Complex> sum;
    std::vector<double> sumsq;
};

int thread_budget() {
    if (const char* env = std::getenv("TORUSSYM_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

/// Evaluates all listed monomials at z via cached coordinate powers.
void eval_monomials(const std::vector<MultiIndex>& indices, int max_exp, const Point& z,
                    std::vector<std::vector<Complex>>& powers, std::vector<Complex>& out) {
    const size_t n = z.size();
    for (size_t j = 0; j < n; ++j) {
        powers[j][0] = Complex(1.0);
        for (int e = 1; e <= max_exp; ++e) powers[j][static_cast<size_t>(e)] = powers[j][static_cast<size_t>(e - 1)] * z[j];
    }
    for (size_t i = 0; i < indices.size(); ++i) {
        Complex v(1.0);
        for (size_t j = 0; j < n; ++j) v *= powers[j][static_cast<size_t>(indices[i][static_cast<int>(j)])];
        out[i] = v;
    }
}

struct McResult {
    std::vector<MomentEstimate> per_pair;
    double volume = 0.0;
    double volume_se = 0.0;
};

McResult mc_shared_cloud(const DomainSpec& spec, const std::vector<MultiIndex>& indices,
                         const std::vector<PairIndex>& pairs, std::int64_t budget,
                         std::uint64_t seed) {
    const bool profile = is_profile_shape(spec);
    BoxGeometry box;
    ProfileGeometry pgeom;
    if (profile)
        pgeom = profile_geometry(spec);
    else
        box = box_geometry(spec);

    int max_exp = 0;
    for (const MultiIndex& m : indices)
        for (int j = 0; j < m.size(); ++j) max_exp = std::max(max_exp, m[j]);

    const std::int64_t batch_size = 1 << 16;
    const std::int64_t batches = (budget + batch_size - 1) / batch_size;
    std::vector<BatchAccum> acc(static_cast<size_t>(batches));
    std::atomic<std::int64_t> next{0};

    auto worker = [&]() {
        std::vector<std::vector<Complex>> powers(static_cast<size_t>(spec.dimension()),
                                                 std::vector<Complex>(static_cast<size_t>(max_exp + 1)));
        std::vector<Complex> mono(indices.size());
        for (;;) {
            std::int64_t b = next.fetch_add(1);
            if (b >= batches) return;
            std::int64_t quota = std::min(batch_size, budget - b * batch_size);
            BatchAccum local;
            local.sum.assign(pairs.size(), Complex(0.0));
            local.sumsq.assign(pairs.size(), 0.0);
            std::mt19937_64 rng = substream(seed, static_cast<std::uint64_t>(b) + 1);
            for (std::int64_t i = 0; i < quota; ++i) {
                Point z;
                if (profile) {
                    z = draw_profile_point(pgeom, rng);
                } else {
                    z = propose_in_box(box, rng);
                    if (!spec.contains(z)) continue;
                }
                ++local.accepted;
                eval_monomials(indices, max_exp, z, powers, mono);
                for (size_t p = 0; p < pairs.size(); ++p) {
                    Complex g = mono[pairs[p].a] * std::conj(mono[pairs[p].b]);
                    local.sum[p] += g;
                    local.sumsq[p] += std::norm(g);
                }
            }
            acc[static_cast<size_t>(b)] = std::move(local);
        }
    };

    int threads = std::min<std::int64_t>(thread_budget(), batches);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // deterministic batch-order reduction
    std::uint64_t accepted = 0;
    std::vector<Complex> sum(pairs.size(), Complex(0.0));
    std::vector<double> sumsq(pairs.size(), 0.0);
    for (const BatchAccum& b : acc) {
        if (b.sum.empty()) continue;
        accepted += b.accepted;
        for (size_t p = 0; p < pairs.size(); ++p) {
            sum[p] += b.sum[p];
            sumsq[p] += b.sumsq[p];
        }
    }

    McResult out;
    out.per_pair.resize(pairs.size());
    const double M = profile ? static_cast<double>(accepted) : static_cast<double>(budget);
    if (M <= 1) throw MomentError("monte carlo: no samples");
    const double V = profile ? pgeom.volume : box.volume;
    if (profile) {
        out.volume = pgeom.volume;
        out.volume_se = 0.0;
    } else {
        double p = static_cast<double>(accepted) / M;
        out.volume = box.volume * p;
        out.volume_se = box.volume * std::sqrt(p * (1.0 - p) / M);
    }
    for (size_t p = 0; p < pairs.size(); ++p) {
        MomentEstimate est;
        est.method = Method::monte_carlo;
        est.effort = static_cast<std::int64_t>(M);
        est.value = V * sum[p] / M;
        double second = V * V * sumsq[p] / M;
        double var = std::max(0.0, second - std::norm(est.value));
        est.std_error = std::sqrt(var / M);
        // diagonal pairs are real nonnegative sums; drop rounding dust
        if (pairs[p].a == pairs[p].b) est.value = Complex(est.value.real());
        out.per_pair[p] = est;
    }
    return out;
}

}  // namespace

MomentEstimate profile_moment_quadrature(const ProfileFunction& f, const MultiIndex& alpha,
                                         const MultiIndex& beta) {
    DomainSpec spec = DomainSpec::profile_domain(f);
    return quadrature_inner(spec, alpha, beta);
}

// --- GramData ------------------------------------------------------------

void GramData::set(const MultiIndex& alpha, const MultiIndex& beta, MomentEstimate est) {
    if (beta < alpha) {
        est.value = std::conj(est.value);
        entries_[{beta, alpha}] = est;
    } else {
        entries_[{alpha, beta}] = est;
    }
}

MomentEstimate GramData::entry(const MultiIndex& alpha, const MultiIndex& beta) const {
    bool flip = beta < alpha;
    auto key = flip ? std::make_pair(beta, alpha) : std::make_pair(alpha, beta);
    auto it = entries_.find(key);
    if (it == entries_.end()) throw MomentError("gram entry not present");
    MomentEstimate est = it->second;
    if (flip) est.value = std::conj(est.value);
    return est;
}

nlohmann::ordered_json GramData::to_json() const {
    nlohmann::ordered_json j;
    j["N"] = degree_bound_;
    j["n"] = n_;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& [key, est] : entries_) {
        nlohmann::ordered_json e;
        e["alpha"] = key.first.exps();
        e["beta"] = key.second.exps();
        e["re"] = est.value.real();
        e["im"] = est.value.imag();
        e["se"] = est.std_error;
        e["qtol"] = est.quad_abs_tol;
        e["method"] = method_name(est.method);
        e["effort"] = est.effort;
        j["entries"].push_back(std::move(e));
    }
    return j;
}

GramData GramData::from_json(const nlohmann::ordered_json& j) {
    GramData g(j.at("n").get<int>(), j.at("N").get<int>());
    for (const auto& e : j.at("entries")) {
        MomentEstimate est;
        est.value = Complex(e.at("re").get<double>(), e.at("im").get<double>());
        est.std_error = e.at("se").get<double>();
        est.quad_abs_tol = e.at("qtol").get<double>();
        est.method = method_from_name(e.at("method").get<std::string>());
        est.effort = e.at("effort").get<std::int64_t>();
        g.set(MultiIndex(e.at("alpha").get<std::vector<int>>()),
              MultiIndex(e.at("beta").get<std::vector<int>>()), est);
    }
    return g;
}

bool GramData::operator==(const GramData& other) const {
    if (n_ != other.n_ || degree_bound_ != other.degree_bound_ ||
        entries_.size() != other.entries_.size())
        return false;
    for (const auto& [key, est] : entries_) {
        auto it = other.entries_.find(key);
        if (it == other.entries_.end()) return false;
        const MomentEstimate& o = it->second;
        if (est.value != o.value || est.std_error != o.std_error ||
            est.quad_abs_tol != o.quad_abs_tol || est.method != o.method ||
            est.effort != o.effort)
            return false;
    }
    return true;
}

// --- operations ----------------------------------------------------------

bool monomials_integrable(const DomainSpec& spec, int degree_bound) {
    if (spec.bounded()) return true;
    if (is_profile_shape(spec)) {
        auto f = profile_of(spec);
        try {
            certified_truncation_radius(
                [&](double r) { return std::pow(r, 2 * degree_bound + 1) * f(r) * f(r); });
            return true;
        } catch (const TailNotCertified&) {
            return false;
        }
    }
    return false;
}

MomentEstimate inner_product(const DomainSpec& spec, const MultiIndex& alpha,
                             const MultiIndex& beta, MethodRequest method, std::int64_t budget,
                             std::uint64_t seed) {
    if (alpha.size() != spec.dimension() || beta.size() != spec.dimension())
        throw MomentError("inner_product: multi-index dimension mismatch");
    if (is_profile_shape(spec) &&
        !monomials_integrable(spec, std::max(alpha.degree(), beta.degree())))
        throw MomentError("non-integrable monomial on unbounded profile domain");
    if (method == MethodRequest::automatic) {
        if (auto cf = closed_form_inner(spec, alpha, beta)) return *cf;
        if (is_profile_shape(spec)) return quadrature_inner(spec, alpha, beta);
        method = MethodRequest::monte_carlo;
    }
    if (method == MethodRequest::quadrature) return quadrature_inner(spec, alpha, beta);
    // Monte Carlo
    std::vector<MultiIndex> indices = {alpha, beta};
    std::vector<PairIndex> pairs;
    if (alpha == beta) {
        indices = {alpha};
        pairs = {{0, 0}};
    } else if (beta < alpha) {
        indices = {beta, alpha};
        pairs = {{1, 0}};
    } else {
        pairs = {{0, 1}};
    }
    McResult res = mc_shared_cloud(spec, indices, pairs, budget, seed);
    return res.per_pair[0];
}

GramData gram(const DomainSpec& spec, int degree_bound, MethodRequest method, std::int64_t budget,
              std::uint64_t seed) {
    if (is_profile_shape(spec) && !monomials_integrable(spec, degree_bound))
        throw MomentError("non-integrable monomial below the requested degree bound");
    std::vector<MultiIndex> indices = multi_indices_up_to(spec.dimension(), degree_bound);
    GramData g(spec.dimension(), degree_bound);
    bool use_mc = method == MethodRequest::monte_carlo;
    if (method == MethodRequest::automatic)
        use_mc = !closed_form_inner(spec, indices[0], indices[0]) && !is_profile_shape(spec);
    if (!use_mc) {
        for (size_t a = 0; a < indices.size(); ++a)
            for (size_t b = a; b < indices.size(); ++b)
                g.set(indices[a], indices[b],
                      inner_product(spec, indices[a], indices[b], method, budget, seed));
        return g;
    }
    std::vector<PairIndex> pairs;
    for (size_t a = 0; a < indices.size(); ++a)
        for (size_t b = a; b < indices.size(); ++b) pairs.push_back({a, b});
    McResult res = mc_shared_cloud(spec, indices, pairs, budget, seed);
    for (size_t p = 0; p < pairs.size(); ++p)
        g.set(indices[pairs[p].a], indices[pairs[p].b], res.per_pair[p]);
    return g;
}

Decision decide_nonzero(const MomentEstimate& est, const DecisionPolicy& policy) {
    double v = std::abs(est.value);
    if (est.method != Method::monte_carlo) {
        if (v > policy.abs_tol) return Decision::nonzero;
        if (v < policy.abs_tol) return Decision::zero;
        return Decision::inconclusive;
    }
    double noise = policy.sigma_factor * est.std_error;
    if (v > std::max(policy.abs_tol, noise)) return Decision::nonzero;
    if (v + noise < policy.abs_tol) return Decision::zero;
    return Decision::inconclusive;
}

DecisionPolicy default_policy_for_volume(double volume) {
    return DecisionPolicy{1e-3 * volume, 5.0};
}

}  // namespace torussym
