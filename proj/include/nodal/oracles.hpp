#pragma once

#include "nodal/rational.hpp"

#include <vector>

namespace nodal {

// Independent cross-check implementations.  Each oracle computes a value the
// main engines also produce, by a completely different classical method, and
// is deliberately written with no shared code beyond exact arithmetic.

// Number of lines in P^n meeting general linear subspaces of the given
// codimensions: evaluates the product of special Schubert classes
// sigma_{c-1} on the Grassmannian of lines G(2, n+1) by an explicit
// Pieri-rule walk over Young diagrams in the 2 x (n-1) box.
// Requires top degree: sum of (c_i - 1) = 2(n-1); throws
// DimensionMismatchError otherwise.
Integer schubert_lines_oracle(int n, const std::vector<int>& codims);

// Number of rational degree-d plane curves through 3d-1 general points, by
// the classical degree recursion
//   n_d = sum over d1+d2=d, d1,d2>=1 of n_d1 n_d2 *
//         (d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1))
// seeded with n_1 = 1.  Independent of the general-n engine.
Integer plane_recursion_oracle(int d);

// Integral of psi_1^{b_1} ... psi_m^{b_m} over the moduli space of stable
// m-pointed genus-0 curves, computed by recursive string-equation reduction
// (remove a zero-exponent point, decrement each remaining exponent in turn)
// down to the 3-pointed base case.  Requires m = |exponents| >= 3 and
// sum = m - 3; throws DimensionMismatchError otherwise.
Integer psi_moduli_oracle(const std::vector<int>& exponents);

// One-pointed descendant of projective n-space with no constraints, read off
// the degree-d coefficient of the quantum cohomology J-function
//   J_d = product over m=1..d of (h + m hbar)^-(n+1),
// as the coefficient of hbar^-(b+2) h^(n-c).  Returns 0 on dimension
// mismatch (b + c != (n+1)d + n - 2).
Rational j_function_descendant_oracle(int n, int d, int b, int c);

} // namespace nodal
