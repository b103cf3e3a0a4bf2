#include "torussym/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace torussym {
namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule,
// on [-1, 1]. Values as tabulated in QUADPACK (dqk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct Panel {
    double value;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    evals += 15;
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        double x = h * kXgk[static_cast<size_t>(i)];
        double fsum = f(c - x) + f(c + x);
        result_k += kWgk[static_cast<size_t>(i)] * fsum;
        if (i % 2 == 1) result_g += kWg[static_cast<size_t>(i / 2)] * fsum;
    }
    result_g *= h;
    result_k *= h;
    return {result_k, std::abs(result_k - result_g)};
}

struct Segment {
    double a;
    double b;
    Panel p;
    int depth;
};

bool worse(const Segment& x, const Segment& y) { return x.p.error < y.p.error; }

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, int max_depth) {
    // Globally adaptive: always bisect the panel with the largest error
    // estimate.  A hard evaluation budget keeps pathological integrands
    // (whose error estimates stall at roundoff level) from looping forever;
    // the returned error_estimate stays honest in that case.
    constexpr long kMaxEvals = 600000;
    long evals = 0;
    std::vector<Segment> heap;
    heap.push_back({a, b, gk15(f, a, b, evals), 0});
    // panels at max_depth are frozen: counted but no longer refined
    double frozen_value = 0.0, frozen_error = 0.0;
    double live_value = heap[0].p.value, live_error = heap[0].p.error;
    while (!heap.empty() && evals < kMaxEvals) {
        double total = frozen_value + live_value;
        if (frozen_error + live_error <= std::max(abs_tol, rel_tol * std::abs(total))) break;
        std::pop_heap(heap.begin(), heap.end(), worse);
        Segment s = heap.back();
        heap.pop_back();
        live_value -= s.p.value;
        live_error -= s.p.error;
        if (s.depth >= max_depth) {
            frozen_value += s.p.value;
            frozen_error += s.p.error;
            continue;
        }
        double m = 0.5 * (s.a + s.b);
        Segment l{s.a, m, gk15(f, s.a, m, evals), s.depth + 1};
        Segment r{m, s.b, gk15(f, m, s.b, evals), s.depth + 1};
        for (const Segment& seg : {l, r}) {
            live_value += seg.p.value;
            live_error += seg.p.error;
            heap.push_back(seg);
            std::push_heap(heap.begin(), heap.end(), worse);
        }
    }
    QuadratureResult out;
    out.value = frozen_value + live_value;
    out.error_estimate = frozen_error + live_error;
    out.evaluations = evals;
    return out;
}

QuadratureResult integrate_radial(const std::function<double(double)>& f, double rel_tol,
                                  double tail_rel) {
    const double r_max = std::ldexp(1.0, 40);
    double R = 1.0;
    for (;;) {
        QuadratureResult head = integrate_adaptive(f, 0.0, R, rel_tol);
        QuadratureResult probe = integrate_adaptive(f, R, 2.0 * R, rel_tol);
        bool monotone = f(R) >= f(1.5 * R) && f(1.5 * R) >= f(2.0 * R);
        if (monotone && std::abs(probe.value) <= tail_rel * std::abs(head.value)) {
            // geometric continuation bound on the remaining tail
            double ratio = f(R) > 0 ? f(2.0 * R) / f(R) : 0.0;
            double tail_bound = ratio < 1.0 ? std::abs(probe.value) / (1.0 - ratio)
                                            : std::abs(probe.value);
            head.value += probe.value;
            head.error_estimate += probe.error_estimate + tail_bound;
            head.evaluations += probe.evaluations;
            return head;
        }
        R *= 2.0;
        if (R > r_max)
            throw TailNotCertified("radial integrand tail could not be certified (not "
                                   "eventually monotone decreasing)");
    }
}

double certified_truncation_radius(const std::function<double(double)>& f, double tail_rel) {
    const double r_max = std::ldexp(1.0, 40);
    double R = 1.0;
    for (;;) {
        QuadratureResult head = integrate_adaptive(f, 0.0, R, 1e-10);
        QuadratureResult probe = integrate_adaptive(f, R, 2.0 * R, 1e-10);
        bool monotone = f(R) >= f(1.5 * R) && f(1.5 * R) >= f(2.0 * R);
        if (monotone && std::abs(probe.value) <= tail_rel * std::abs(head.value)) return 2.0 * R;
        R *= 2.0;
        if (R > r_max)
            throw TailNotCertified("truncation radius could not be certified");
    }
}

}  // namespace torussym
