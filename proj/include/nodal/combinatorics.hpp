#pragma once

#include "nodal/rational.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace nodal {

// Binomial coefficient C(n, k).  n must be nonnegative; any k is accepted
// and out-of-range k yields 0.
Integer binomial(long n, long k);

Integer factorial(long n);

// base^exp for exact integers, exp >= 0.
Integer ipow(long base, long exp);

// Number of ways to split a set of k_star labeled elements into exactly k
// nonempty unlabeled blocks (Stirling number of the second kind), by the
// recursion S(a, k) = k * S(a-1, k) + S(a-1, k-1) with S(k, k) = 1 and
// S(a, k) = 0 for k > a or k < 1.  (The factor k is the block count: the
// newest element joins one of the k existing blocks.)
Integer stirling_split(long k_star, long k);

// Memo table for the signed blow-down weights theta(k, m).  Every entry is
// an integer (stored exactly as a Rational); entry(1,0) = 1.
class ThetaTable {
public:
    // theta(k, m) by the inductive definition
    //   theta(1,0) = 1,
    //   theta(k*,m*) = -sum over (1,0) <= (k,m) < (k*,m*)
    //                  of C(m*,m) k^(m*-m) S(k*,k) theta(k,m),
    // where (k,m) < (k*,m*) means componentwise <= with at least one strict.
    // Memoized; safe for concurrent readers (writes serialized).
    Rational get(long k, long m);

private:
    std::map<std::pair<long, long>, Rational> entries_;
    std::mutex mutex_;
};

// theta(k, m) by the inductive definition above, via a shared process-wide
// memo table.
Rational theta_recursive(long k, long m);

// theta(k, m) by the closed form (-1)^(k+m-1) k^m (k-1)!.  Agreement with
// theta_recursive is an executable theorem covered by the acceptance suite.
Rational theta_closed(long k, long m);

// All exponent vectors (b_1..b_k) of nonnegative integers summing to l —
// the monomials of the degree-l complete homogeneous symmetric polynomial in
// k variables.  Deterministic order: lexicographically descending.
// Count = C(k+l-1, l).
std::vector<std::vector<int>> homog_monomials(int k, int l);

// All ordered k-tuples of POSITIVE integers summing to d (compositions).
// Empty when k > d.  Deterministic order: lexicographically ascending.
std::vector<std::vector<int>> compositions(int d, int k);

// One way of dividing a multiset in two, together with the number of labeled
// subsets it represents: equal values are interchangeable, so choosing which
// `take` of the `count` copies go inside contributes C(count, take).
struct MultisetSplit {
    std::vector<int> inside;
    std::vector<int> outside;
    Integer weight;
    int inside_sum = 0;
};

// All typed (inside, outside) splits of a multiset, given as a vector with
// equal values adjacent (e.g. sorted).  Deterministic order.
std::vector<MultisetSplit> multiset_splits(const std::vector<int>& values);

// One way of distributing a multiset into k ordered groups, with the number
// of labeled distributions it represents (a product of multinomials).
struct MultisetDistribution {
    std::vector<std::vector<int>> groups;
    Integer weight;
};

// All typed distributions of a multiset (equal values adjacent) into k
// ordered groups.  Deterministic order.
std::vector<MultisetDistribution> multiset_distributions(const std::vector<int>& values, int k);

} // namespace nodal
