#pragma once

#include "nodal/genus0.hpp"
#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <vector>

namespace nodal {

// Exponent tuples (e_1..e_k), 0 <= e_i <= n, summing to (k-1)n: the Kuenneth
// expansion of the small diagonal of (P^n)^k, whose coefficients are all 1.
// Deterministic order: lexicographically descending.
std::vector<std::vector<int>> diagonal_exponents(int k, int n);

// Which evaluation strategy to run.  Both produce identical exact values;
// `parallel` is the production kernel (typed configuration enumeration with
// per-component dimension forcing, OpenMP across outer cells), `serial` is
// the straight-line reference that walks the same configuration space
// literally, kept for tests and benchmarks.
enum class Kernel {
    parallel,
    serial,
};

// Intersection number <a^l etatilde_r, [Vbar_{k,m}(mu)]>: the space of
// unordered k-tuples of stable rational maps of total degree d whose special
// marked points share an image, with m of the constraints imposed at that
// common image; a is the hyperplane class pulled back by the common-point
// evaluation, etatilde_r the degree-r complete homogeneous polynomial in
// the k cotangent-line classes at the special points.
//
// Computed as (1/k!) times the sum over ordered split configurations
// (degree composition, node-constraint subset, constraint distribution,
// psi exponents, diagonal exponents) of products of one-pointed descendant
// invariants; the common-point classes ride on the first component.
//
// Requires the nodal dimension condition (throws DimensionMismatchError);
// returns 0 unless l + r equals the dimension n+1-2k-m >= 0.
Rational eta_tilde_number(GWEngine& engine, const ProblemSpec& spec,
                          int k, int m, int l, int r,
                          Kernel kernel = Kernel::parallel);

// Intersection number <a^l eta_r, [Vbar_{k,m}(mu)]> for the boundary-
// corrected cotangent classes, obtained from the eta_tilde numbers by
// inverting the triangular relation
//   etatilde(m) = sum over m* >= m of C(m*,m) k^(m*-m) eta(m*)
// (the pairing degree r adjusts with m* so each term meets the dimension of
// its own space; the sum stops once that dimension goes negative).
Rational eta_number(GWEngine& engine, const ProblemSpec& spec,
                    int k, int m, int l, int r,
                    Kernel kernel = Kernel::parallel);

} // namespace nodal
