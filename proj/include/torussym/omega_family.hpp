#pragma once

namespace torussym {

/// Squared L2-norm of z1^a1 z2^a2 on the exponential-decay family
/// {|z2| < exp(-|z1|^(1/2^k))}, k in {0, 1}:
///   2^{k+2} pi^2 (2^k(j+2)-1)! / (m+2)^{2^k(j+2)+1},  j = 2 a1, m = 2 a2.
/// The factorial is taken in arbitrary precision before conversion.
double exact_omega_k_moment(int k, int alpha1, int alpha2);

/// log of the L2-norm ||z1^m|| on the same family, computed in log space
/// (finite for every m; the factorial itself overflows double far earlier).
double log_omega_k_z1_norm(int k, int m);

}  // namespace torussym
