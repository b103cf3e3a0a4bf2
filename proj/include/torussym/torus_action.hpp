#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "torussym/multi_index.hpp"

namespace torussym {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

/// z^k for integer k (|z| = 1 expected for negative k).
inline Complex ipow(Complex z, std::int64_t k) {
    if (k < 0) {
        z = Complex(1.0, 0.0) / z;
        k = -k;
    }
    Complex acc(1.0, 0.0);
    while (k > 0) {
        if (k & 1) acc *= z;
        z *= z;
        k >>= 1;
    }
    return acc;
}

/// Integer weight matrix A in Z^{n x r} defining the diagonal torus action
///   z |-> (prod_k lambda_k^{a_{jk}}) z_j.
/// Columns are expected to be a primitive basis of the lattice they span;
/// r = 0 is the trivial action.
struct TorusAction {
    int n = 0;
    std::vector<std::vector<std::int64_t>> columns;  // each of length n

    TorusAction() = default;
    TorusAction(int n, std::vector<std::vector<std::int64_t>> cols)
        : n(n), columns(std::move(cols)) {
        for (const auto& c : columns)
            if (static_cast<int>(c.size()) != n)
                throw std::invalid_argument("TorusAction: column length != n");
    }

    int rank() const { return static_cast<int>(columns.size()); }

    static TorusAction identity(int n) {
        std::vector<std::vector<std::int64_t>> cols(static_cast<size_t>(n),
                                                    std::vector<std::int64_t>(static_cast<size_t>(n), 0));
        for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;
        return TorusAction(n, std::move(cols));
    }

    static TorusAction trivial(int n) { return TorusAction(n, {}); }

    /// Single-column action with the given weights.
    static TorusAction weights(std::vector<std::int64_t> w) {
        int n = static_cast<int>(w.size());
        return TorusAction(n, {std::move(w)});
    }
};

constexpr double kTorusTolerance = 1e-12;

inline void check_on_torus(const std::vector<Complex>& lambda) {
    for (const Complex& l : lambda)
        if (std::abs(std::abs(l) - 1.0) > kTorusTolerance)
            throw std::invalid_argument("torus point has |lambda| != 1");
}

/// rho_A(lambda) z. Moduli |z_j| are preserved.
inline Point apply_torus(const TorusAction& A, const std::vector<Complex>& lambda,
                         const Point& z) {
    if (static_cast<int>(lambda.size()) != A.rank())
        throw std::invalid_argument("apply_torus: lambda length != rank");
    if (static_cast<int>(z.size()) != A.n)
        throw std::invalid_argument("apply_torus: point length != n");
    check_on_torus(lambda);
    Point out = z;
    for (int k = 0; k < A.rank(); ++k) {
        const auto& col = A.columns[static_cast<size_t>(k)];
        for (int j = 0; j < A.n; ++j) {
            std::int64_t a = col[static_cast<size_t>(j)];
            if (a != 0) out[static_cast<size_t>(j)] *= ipow(lambda[static_cast<size_t>(k)], a);
        }
    }
    return out;
}

/// The character g_{alpha,beta}(lambda) = prod_k lambda_k^{sum_j a_{jk}(alpha_j-beta_j)}.
inline Complex eval_g(const TorusAction& A, const MultiIndex& alpha, const MultiIndex& beta,
                      const std::vector<Complex>& lambda) {
    if (static_cast<int>(lambda.size()) != A.rank())
        throw std::invalid_argument("eval_g: lambda length != rank");
    check_on_torus(lambda);
    DifferenceVector d(alpha, beta);
    Complex out(1.0, 0.0);
    for (int k = 0; k < A.rank(); ++k) {
        std::int64_t s = 0;
        for (int j = 0; j < A.n; ++j)
            s += A.columns[static_cast<size_t>(k)][static_cast<size_t>(j)] * d[j];
        out *= ipow(lambda[static_cast<size_t>(k)], s);
    }
    return out;
}

/// True iff g_{alpha,beta} with alpha-beta = d is identically 1, i.e. A^T d = 0.
inline bool g_is_trivial(const TorusAction& A, const DifferenceVector& d) {
    if (d.size() != A.n) throw std::invalid_argument("g_is_trivial: length mismatch");
    for (int k = 0; k < A.rank(); ++k) {
        std::int64_t s = 0;
        for (int j = 0; j < A.n; ++j)
            s += A.columns[static_cast<size_t>(k)][static_cast<size_t>(j)] * d[j];
        if (s != 0) return false;
    }
    return true;
}

}  // namespace torussym
