#include "nodal/genus0.hpp"

#include "nodal/cache.hpp"
#include "nodal/combinatorics.hpp"
#include "nodal/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace nodal {

// ---------------------------------------------------------------------------
// MemoStore
// ---------------------------------------------------------------------------

std::optional<Rational> MemoStore::lookup(const std::string& key) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++hits_;
            return it->second;
        }
    }
    if (persistent_) {
        if (auto stored = persistent_->get(key)) {
            std::lock_guard<std::mutex> lock(mutex_);
            memo_.emplace(key, *stored);
            ++hits_;
            return stored;
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    ++misses_;
    return std::nullopt;
}

void MemoStore::store(const std::string& key, const Rational& value) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        memo_.emplace(key, value);
    }
    if (persistent_) persistent_->put(key, value);
}

MemoStore::Stats MemoStore::stats() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return Stats{hits_, misses_};
}

// ---------------------------------------------------------------------------
// Shared recursion helpers
// ---------------------------------------------------------------------------

namespace {

// Guards against accidental self-dependence in the reduction schemes (a
// cycle would otherwise recurse forever).  Both reductions are proved
// terminating, so a trip here is always a bug.
thread_local std::unordered_set<std::string> g_active_keys;

struct ReentryGuard {
    explicit ReentryGuard(const std::string& key) : key_(key) {
        if (!g_active_keys.insert(key_).second) {
            throw InternalInconsistencyError("recursion cycle on key " + key_);
        }
    }
    ~ReentryGuard() { g_active_keys.erase(key_); }
    ReentryGuard(const ReentryGuard&) = delete;
    ReentryGuard& operator=(const ReentryGuard&) = delete;

private:
    std::string key_;
};

long vector_sum(const std::vector<int>& v) {
    return std::accumulate(v.begin(), v.end(), 0L);
}

} // namespace

// ---------------------------------------------------------------------------
// Primary invariants
// ---------------------------------------------------------------------------

Rational GWEngine::primary(int n, int d, std::vector<int> exponents) {
    if (n < 2) throw Error("primary: require n >= 2");
    if (d < 0) return 0;
    long sum = 0;
    for (int a : exponents) {
        if (a < 0) throw Error("primary: negative exponent");
        if (a > n) return 0; // h^(n+1) = 0
        sum += a;
    }
    const long points = static_cast<long>(exponents.size());
    // Virtual dimension of the moduli of stable degree-d maps with this many
    // marked points; mismatched insertions integrate to zero.
    if (sum != static_cast<long>(n + 1) * d + n - 3 + points) return 0;
    if (d == 0) {
        // Degree zero: the three-pointed space contributes the plain cup
        // product integral; every other point count vanishes.
        return (points == 3 && sum == n) ? 1 : 0;
    }
    Integer divisor_factor = 1;
    std::vector<int> core;
    core.reserve(exponents.size());
    for (int a : exponents) {
        if (a == 0) return 0;            // fundamental class, positive degree
        if (a == 1) divisor_factor *= d; // divisor equation strips h-insertions
        else core.push_back(a);
    }
    std::sort(core.begin(), core.end(), std::greater<int>());
    if (core.size() <= 2) {
        // The only invariant reachable here is the seed: one line through
        // two points.
        if (d == 1 && core.size() == 2 && core[0] == n && core[1] == n) {
            return Rational(divisor_factor);
        }
        return 0;
    }
    const std::string key = key_rational(n, d, ConstraintTuple(core));
    if (auto hit = memo_.lookup(key)) return Rational(divisor_factor) * *hit;
    ReentryGuard guard(key);
    const Rational value = primary_pivot(n, d, core);
    memo_.store(key, value);
    return Rational(divisor_factor) * value;
}

// Solve one associativity (WDVV) relation for the invariant with exponent
// multiset E (sorted descending, all entries in [2, n], |E| >= 3).
//
// With a = min(E), c = max(E minus a), b = second max, S = the rest, the
// relation with insertions (h^(a-1), h, h^b, h^c, S) equates two boundary
// sums; the target invariant appears exactly once, with coefficient 1, in
// the (d1=0, S1 empty) corner of the first sum.  Every other term has lower
// degree, or fewer points after a divisor strip, or a lexicographically
// larger sorted exponent vector bounded by h^(n+1) = 0 — so the recursion
// below terminates.
Rational GWEngine::primary_pivot(int n, int d, const std::vector<int>& exps_desc) {
    const int a = exps_desc.back();
    const int c = exps_desc[0];
    const int b = exps_desc[1];
    const std::vector<int> rest(exps_desc.begin() + 2, exps_desc.end() - 1);

    Rational accumulated = 0; // (other side) minus (this side without target)
    for (const auto& split : multiset_splits(rest)) {
        const long s1 = static_cast<long>(split.inside.size());
        const long s1_sum = split.inside_sum;
        const Rational weight{split.weight};
        for (int d1 = 0; d1 <= d; ++d1) {
            const int d2 = d - d1;
            // Side carrying the target: first factor (h^(a-1), h, h^e, S1).
            {
                const long e = static_cast<long>(n + 1) * d1 + n + s1 - (a - 1) - 1 - s1_sum;
                const bool is_target_slot = (d1 == 0 && s1 == 0 && e == n - a);
                if (e >= 0 && e <= n && !is_target_slot) {
                    std::vector<int> f1 = split.inside;
                    f1.push_back(a - 1);
                    f1.push_back(1);
                    f1.push_back(static_cast<int>(e));
                    const Rational v1 = primary(n, d1, std::move(f1));
                    if (v1 != 0) {
                        std::vector<int> f2 = split.outside;
                        f2.push_back(n - static_cast<int>(e));
                        f2.push_back(b);
                        f2.push_back(c);
                        accumulated -= weight * v1 * primary(n, d2, std::move(f2));
                    }
                }
            }
            // Other side: first factor (h^(a-1), h^b, h^e, S1).
            {
                const long e = static_cast<long>(n + 1) * d1 + n + s1 - (a - 1) - b - s1_sum;
                if (e >= 0 && e <= n) {
                    std::vector<int> f1 = split.inside;
                    f1.push_back(a - 1);
                    f1.push_back(b);
                    f1.push_back(static_cast<int>(e));
                    const Rational v1 = primary(n, d1, std::move(f1));
                    if (v1 != 0) {
                        std::vector<int> f2 = split.outside;
                        f2.push_back(n - static_cast<int>(e));
                        f2.push_back(1);
                        f2.push_back(c);
                        accumulated += weight * v1 * primary(n, d2, std::move(f2));
                    }
                }
            }
        }
    }
    return accumulated;
}

// ---------------------------------------------------------------------------
// Descendant invariants
// ---------------------------------------------------------------------------

Rational GWEngine::descendant(const DescendantSpec& spec) {
    return descendant_raw(spec.n, spec.d, spec.b, spec.c, spec.constraints.codims());
}

Rational GWEngine::descendant_raw(int n, int d, int b, int c,
                                  std::vector<int> constraints) {
    if (n < 2) throw Error("descendant: require n >= 2");
    if (b < 0 || c < 0) throw Error("descendant: negative exponent");
    if (d < 0) return 0;
    if (c > n) return 0;
    long csum = 0;
    for (int x : constraints) {
        if (x < 0) throw Error("descendant: negative constraint codimension");
        if (x > n) return 0;
        csum += x;
    }
    const long points = 1 + static_cast<long>(constraints.size());
    if (b + c + csum != static_cast<long>(n + 1) * d + n - 3 + points) return 0;
    if (b == 0) {
        // No cotangent class left: a plain primary invariant.
        constraints.push_back(c);
        return primary(n, d, std::move(constraints));
    }
    if (d == 0) {
        // Constant maps: the integral splits into a pure psi-power integral
        // on the pointed-curve moduli times a cup-product integral; the
        // former is 1 exactly at top power.
        if (points < 3) return 0;
        return (b == points - 3 && c + csum == n) ? 1 : 0;
    }
    // String equation disposes of fundamental-class insertions, lowering the
    // one psi power (b >= 1 here).
    if (auto it = std::find(constraints.begin(), constraints.end(), 0);
        it != constraints.end()) {
        constraints.erase(it);
        return descendant_raw(n, d, b - 1, c, std::move(constraints));
    }
    std::sort(constraints.begin(), constraints.end(), std::greater<int>());
    const std::string key = key_descendant(n, d, ConstraintTuple(constraints), b, c);
    if (auto hit = memo_.lookup(key)) return *hit;
    ReentryGuard guard(key);
    const Rational value = descendant_pivot(n, d, b, c, constraints);
    memo_.store(key, value);
    return value;
}

// Reduce the psi power by one.
//
// With at least two non-special insertions, the genus-0 topological
// recursion relation applies: psi at the special point is a sum of boundary
// divisors separating it from the two chosen pivot points, and restriction
// to a boundary stratum splits the invariant into a lower-psi descendant
// (special side, node class h^e) times a primary (pivot side, node class
// h^(n-e)).
//
// With fewer than two insertions the divisor equation runs in reverse: add
// an h-insertion, divide by the degree, and subtract the correction term in
// which the added divisor is absorbed into the special point.  At most two
// additions are ever needed before the recursion relation takes over.
Rational GWEngine::descendant_pivot(int n, int d, int b, int c,
                                    const std::vector<int>& cons_desc) {
    if (cons_desc.size() < 2) {
        std::vector<int> extended = cons_desc;
        extended.push_back(1);
        const Rational with_divisor = descendant_raw(n, d, b, c, std::move(extended));
        const Rational absorbed = descendant_raw(n, d, b - 1, c + 1, cons_desc);
        return (with_divisor - absorbed) / Rational(d);
    }
    const int x1 = cons_desc[0];
    const int x2 = cons_desc[1];
    const std::vector<int> rest(cons_desc.begin() + 2, cons_desc.end());

    Rational total = 0;
    for (const auto& split : multiset_splits(rest)) {
        const long s2 = static_cast<long>(split.outside.size());
        const long outside_sum = vector_sum(split.outside);
        const Rational weight{split.weight};
        for (int d2 = 0; d2 <= d; ++d2) {
            const int d1 = d - d2;
            // Node exponent forced by the primary factor's dimension.
            const long e = x1 + x2 + outside_sum - static_cast<long>(n + 1) * d2 - s2;
            if (e < 0 || e > n) continue;
            std::vector<int> f2 = split.outside;
            f2.push_back(n - static_cast<int>(e));
            f2.push_back(x1);
            f2.push_back(x2);
            const Rational v2 = primary(n, d2, std::move(f2));
            if (v2 == 0) continue;
            std::vector<int> f1 = split.inside;
            f1.push_back(static_cast<int>(e));
            total += weight * descendant_raw(n, d1, b - 1, c, std::move(f1)) * v2;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Public counting entry point
// ---------------------------------------------------------------------------

Rational GWEngine::count_rational(const ProblemSpec& spec) {
    validate_ranges(spec);
    if (!validate_genus0(spec)) {
        throw DimensionMismatchError(
            "count_rational: total constraint codimension " +
            std::to_string(spec.mu.total_codim()) + " does not meet the genus-0 condition d(n+1)+n-3 = " +
            std::to_string(spec.d * (spec.n + 1) + spec.n - 3));
    }
    const Rational value = primary(spec.n, spec.d, spec.mu.codims());
    if (!is_integer(value) || value < 0) {
        throw InternalInconsistencyError(
            "count_rational: engine produced " + to_string(value) +
            " for a curve count, which must be a nonnegative integer");
    }
    return value;
}

} // namespace nodal
