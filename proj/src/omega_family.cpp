#include "torussym/omega_family.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torussym {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(long n) {
    cpp_int f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// log(x!) exactly enough for log-space norms: msb-scaled conversion of the
// arbitrary-precision factorial.
double log_factorial(long n) {
    cpp_int f = factorial(n);
    long bits = static_cast<long>(msb(f));
    if (bits <= 900) return std::log(f.convert_to<double>());
    long shift = bits - 900;
    cpp_int scaled = f >> static_cast<unsigned>(shift);
    return std::log(scaled.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

void check_args(int k, int a1, int a2) {
    if (k != 0 && k != 1) throw std::invalid_argument("omega family: k must be 0 or 1");
    if (a1 < 0 || a2 < 0) throw std::invalid_argument("omega family: negative exponent");
}

}  // namespace

double exact_omega_k_moment(int k, int alpha1, int alpha2) {
    check_args(k, alpha1, alpha2);
    const long j = 2L * alpha1;
    const long m = 2L * alpha2;
    const long t = 1L << k;                 // 2^k
    const long fac_arg = t * (j + 2) - 1;   // (2^k(j+2)-1)!
    const double pi = std::numbers::pi;
    double log_value = (k + 2) * std::numbers::ln2 + 2.0 * std::log(pi) +
                       log_factorial(fac_arg) -
                       static_cast<double>(t * (j + 2) + 1) * std::log(static_cast<double>(m + 2));
    if (log_value < 700.0 && fac_arg <= 170) {
        // exact route while the factorial still fits a double
        double num = std::pow(2.0, k + 2) * pi * pi * factorial(fac_arg).convert_to<double>();
        return num / std::pow(static_cast<double>(m + 2), static_cast<double>(t * (j + 2) + 1));
    }
    return std::exp(log_value);
}

double log_omega_k_z1_norm(int k, int m) {
    check_args(k, m, 0);
    const long t = 1L << k;
    const long N = t * (2L * m + 2);
    // ||z1^m||^2 = 2^{k+2} pi^2 (N-1)! / 2^{N+1}
    double log_sq = (k + 2) * std::numbers::ln2 + 2.0 * std::log(std::numbers::pi) +
                    log_factorial(N - 1) - static_cast<double>(N + 1) * std::numbers::ln2;
    return 0.5 * log_sq;
}

}  // namespace torussym
