#pragma once

#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nodal {

class CacheStore;

// In-memory memo table keyed by canonical key strings, optionally backed by
// a persistent CacheStore.  Lookups tolerate concurrent readers; insertion
// is serialized.  Values are immutable once stored, so a duplicated
// computation racing into store() is benign (both threads computed the same
// exact value).
class MemoStore {
public:
    explicit MemoStore(CacheStore* persistent = nullptr) : persistent_(persistent) {}

    std::optional<Rational> lookup(const std::string& key);
    void store(const std::string& key, const Rational& value);

    struct Stats {
        long long hits = 0;   // lookups answered from memory or the store
        long long misses = 0; // lookups that forced a computation
    };
    Stats stats() const;

private:
    std::unordered_map<std::string, Rational> memo_;
    mutable std::mutex mutex_;
    CacheStore* persistent_ = nullptr;
    long long hits_ = 0;
    long long misses_ = 0;
};

// One-pointed descendant datum: the invariant with a psi^b ev*h^c insertion
// at a distinguished marked point and plain h^codim insertions at the
// remaining points.
struct DescendantSpec {
    int n = 0;
    int d = 0;
    int b = 0;
    int c = 0;
    ConstraintTuple constraints;
};

// Exact genus-0 Gromov-Witten engine for projective n-space.
//
// Primary invariants <h^a1 ... h^aN>_d are reconstructed from the single
// seed "one line through two points" by solving associativity (WDVV)
// relations degree by degree; descendants are reduced by the genus-0
// topological recursion relation plus the string and divisor equations.
// Everything is memoized under canonical keys and computed in exact
// rational arithmetic.
class GWEngine {
public:
    explicit GWEngine(CacheStore* persistent = nullptr) : memo_(persistent) {}

    // Number of rational degree-d curves through the constraints; requires
    // the genus-0 dimension condition, else throws DimensionMismatchError.
    Rational count_rational(const ProblemSpec& spec);

    // One-pointed descendant invariant; dimension mismatch yields 0, never
    // an error.
    Rational descendant(const DescendantSpec& spec);

    // <h^a1 ... h^aN>_{0,d} for arbitrary exponent multisets (entries 0..n
    // allowed; the string/divisor axioms dispose of 0s and 1s).  Building
    // block for both public entry points and for the fixture generator.
    Rational primary(int n, int d, std::vector<int> exponents);

    // descendant() with unpacked arguments; constraint entries 0..n are
    // allowed (node classes introduced by the recursion land here).
    Rational descendant_raw(int n, int d, int b, int c, std::vector<int> constraints);

    MemoStore& memo() { return memo_; }

private:
    Rational primary_pivot(int n, int d, const std::vector<int>& exps_desc);
    Rational descendant_pivot(int n, int d, int b, int c, const std::vector<int>& cons_desc);

    MemoStore memo_;
};

} // namespace nodal
