#include "nodal/intersections.hpp"

#include "nodal/combinatorics.hpp"
#include "nodal/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace nodal {

std::vector<std::vector<int>> diagonal_exponents(int k, int n) {
    std::vector<std::vector<int>> out;
    if (k < 1 || n < 0) {
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(k));
    auto fill = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == k - 1) {
            if (remaining >= 0 && remaining <= n) {
                cur[static_cast<std::size_t>(slot)] = remaining;
                out.push_back(cur);
            }
            return;
        }
        // Keep the tail fillable: the slots after this one absorb at most
        // (k-1-slot)*n, so this slot must take at least the excess.
        const int lo = std::max(0, remaining - (k - 1 - slot) * n);
        const int hi = std::min(n, remaining);
        for (int v = hi; v >= lo; --v) {
            cur[static_cast<std::size_t>(slot)] = v;
            self(self, slot + 1, remaining - v);
        }
    };
    fill(fill, 0, (k - 1) * n);
    return out;
}

namespace {

// One (node-subset, degree-composition) cell of the production kernel: sum
// over typed constraint distributions and diagonal exponent tuples of the
// product of one-pointed descendants.  The psi exponent of each component is
// not searched for: the one-pointed dimension condition pins it to
//   b_i = (n+1) d_i + n - 2 + |S_i| - c_i - sum(S_i),
// so a configuration either has exactly one viable psi monomial or none.
// The forced exponents always total r when the caller's dimension gate
// passed, which we keep as a tripwire rather than an assumption.
Rational forced_cell_sum(GWEngine& engine, int n, int r, int node_codim,
                         const std::vector<int>& comp,
                         const std::vector<MultisetDistribution>& dists,
                         const std::vector<std::vector<int>>& etuples) {
    const int k = static_cast<int>(comp.size());
    std::vector<int> b(static_cast<std::size_t>(k));
    Rational acc = 0;
    for (const MultisetDistribution& dist : dists) {
        std::vector<int> gsize(static_cast<std::size_t>(k));
        std::vector<int> gsum(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) {
            const std::vector<int>& group = dist.groups[static_cast<std::size_t>(i)];
            gsize[static_cast<std::size_t>(i)] = static_cast<int>(group.size());
            for (int codim : group) {
                gsum[static_cast<std::size_t>(i)] += codim;
            }
        }
        for (const std::vector<int>& e : etuples) {
            // The common-image classes ride on the first component; the other
            // legs of the diagonal stay bare, so only c_1 can overflow h^n.
            const int c0 = e[0] + node_codim;
            if (c0 > n) {
                continue;
            }
            bool viable = true;
            int bsum = 0;
            for (int i = 0; i < k; ++i) {
                const int ci = (i == 0) ? c0 : e[static_cast<std::size_t>(i)];
                const int bi = (n + 1) * comp[static_cast<std::size_t>(i)] + n - 2 +
                               gsize[static_cast<std::size_t>(i)] - ci -
                               gsum[static_cast<std::size_t>(i)];
                if (bi < 0) {
                    viable = false;
                    break;
                }
                b[static_cast<std::size_t>(i)] = bi;
                bsum += bi;
            }
            if (!viable) {
                continue;
            }
            if (bsum != r) {
                throw InternalInconsistencyError(
                    "eta_tilde kernel: forced psi exponents sum to " +
                    std::to_string(bsum) + ", expected " + std::to_string(r) +
                    " (dimension bookkeeping violated)");
            }
            Rational prod = 1;
            for (int i = 0; i < k && prod != 0; ++i) {
                const int ci = (i == 0) ? c0 : e[static_cast<std::size_t>(i)];
                prod *= engine.descendant_raw(n, comp[static_cast<std::size_t>(i)],
                                              b[static_cast<std::size_t>(i)], ci,
                                              dist.groups[static_cast<std::size_t>(i)]);
            }
            if (prod != 0) {
                acc += Rational(dist.weight) * prod;
            }
        }
    }
    return acc;
}

// The same cell evaluated the straight-line way: walk every psi monomial of
// degree r and every diagonal exponent tuple, and let the descendant engine
// zero out the configurations whose dimensions do not balance.  Reference
// semantics for tests and benchmarks; no shortcuts beyond the zero-product
// early exit.
Rational literal_cell_sum(GWEngine& engine, int n, int node_codim,
                          const std::vector<int>& comp,
                          const std::vector<MultisetDistribution>& dists,
                          const std::vector<std::vector<int>>& etuples,
                          const std::vector<std::vector<int>>& btuples) {
    const int k = static_cast<int>(comp.size());
    Rational acc = 0;
    for (const MultisetDistribution& dist : dists) {
        for (const std::vector<int>& e : etuples) {
            for (const std::vector<int>& b : btuples) {
                Rational prod = 1;
                for (int i = 0; i < k && prod != 0; ++i) {
                    const int ci = (i == 0) ? e[0] + node_codim
                                            : e[static_cast<std::size_t>(i)];
                    prod *= engine.descendant_raw(n, comp[static_cast<std::size_t>(i)],
                                                  b[static_cast<std::size_t>(i)], ci,
                                                  dist.groups[static_cast<std::size_t>(i)]);
                }
                if (prod != 0) {
                    acc += Rational(dist.weight) * prod;
                }
            }
        }
    }
    return acc;
}

} // namespace

Rational eta_tilde_number(GWEngine& engine, const ProblemSpec& spec,
                          int k, int m, int l, int r, Kernel kernel) {
    validate_ranges(spec);
    if (!validate_nodal(spec)) {
        throw DimensionMismatchError(
            "eta_tilde_number: total constraint codimension " +
            std::to_string(spec.mu.total_codim()) +
            " does not meet the one-nodal condition d(n+1)-1 = " +
            std::to_string(spec.d * (spec.n + 1) - 1));
    }
    if (k < 1) {
        throw DimensionMismatchError(
            "eta_tilde_number: component count k must be >= 1, got " +
            std::to_string(k));
    }
    const int dim = vbar_dimension(spec.n, k, m);
    if (m < 0 || l < 0 || r < 0 || dim < 0 || l + r != dim) {
        return 0;
    }
    // Empty configuration spaces: not enough constraints to pin m of them at
    // the node, or not enough degree for k components of degree >= 1.
    if (m > spec.mu.size() || k > spec.d) {
        return 0;
    }

    // The reference kernel deliberately skips the memo at this level so a
    // kernel comparison exercises the enumeration rather than a cache hit;
    // the one-pointed descendants underneath stay shared either way.
    const bool use_memo = (kernel == Kernel::parallel);
    const std::string key = key_eta_tilde(spec.n, spec.d, spec.mu, k, m, l, r);
    if (use_memo) {
        if (auto hit = engine.memo().lookup(key)) {
            return *hit;
        }
    }

    const std::vector<int>& mu = spec.mu.codims();
    const auto splits = multiset_splits(mu);
    const auto comps = compositions(spec.d, k);
    const auto etuples = diagonal_exponents(k, spec.n);

    struct Cell {
        const MultisetSplit* split;
        const std::vector<int>* comp;
    };
    std::vector<Cell> cells;
    for (const MultisetSplit& split : splits) {
        if (static_cast<int>(split.inside.size()) != m) {
            continue;
        }
        for (const std::vector<int>& comp : comps) {
            cells.push_back(Cell{&split, &comp});
        }
    }

    Rational total = 0;
    if (kernel == Kernel::parallel) {
        std::vector<Rational> partial(cells.size());
        std::atomic<bool> failed{false};
        std::exception_ptr pending = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (long idx = 0; idx < static_cast<long>(cells.size()); ++idx) {
            if (failed.load(std::memory_order_relaxed)) {
                continue;
            }
            try {
                const Cell& cell = cells[static_cast<std::size_t>(idx)];
                const auto dists = multiset_distributions(cell.split->outside, k);
                const int node_codim = l + cell.split->inside_sum;
                partial[static_cast<std::size_t>(idx)] =
                    Rational(cell.split->weight) *
                    forced_cell_sum(engine, spec.n, r, node_codim, *cell.comp,
                                    dists, etuples);
            } catch (...) {
                failed.store(true, std::memory_order_relaxed);
#pragma omp critical(nodal_eta_tilde_error)
                {
                    if (!pending) {
                        pending = std::current_exception();
                    }
                }
            }
        }
        if (pending) {
            std::rethrow_exception(pending);
        }
        for (const Rational& p : partial) {
            total += p;
        }
    } else {
        const auto btuples = homog_monomials(k, r);
        for (const Cell& cell : cells) {
            const auto dists = multiset_distributions(cell.split->outside, k);
            const int node_codim = l + cell.split->inside_sum;
            total += Rational(cell.split->weight) *
                     literal_cell_sum(engine, spec.n, node_codim, *cell.comp,
                                      dists, etuples, btuples);
        }
    }

    const Rational value = total / Rational(factorial(k));
    if (use_memo) {
        engine.memo().store(key, value);
    }
    return value;
}

Rational eta_number(GWEngine& engine, const ProblemSpec& spec,
                    int k, int m, int l, int r, Kernel kernel) {
    validate_ranges(spec);
    if (!validate_nodal(spec)) {
        throw DimensionMismatchError(
            "eta_number: total constraint codimension " +
            std::to_string(spec.mu.total_codim()) +
            " does not meet the one-nodal condition d(n+1)-1 = " +
            std::to_string(spec.d * (spec.n + 1) - 1));
    }
    if (k < 1) {
        throw DimensionMismatchError(
            "eta_number: component count k must be >= 1, got " +
            std::to_string(k));
    }
    const int dim = vbar_dimension(spec.n, k, m);
    if (m < 0 || l < 0 || r < 0 || dim < 0 || l + r != dim) {
        return 0;
    }

    const bool use_memo = (kernel == Kernel::parallel);
    const std::string key = key_eta(spec.n, spec.d, spec.mu, k, m, l, r);
    if (use_memo) {
        if (auto hit = engine.memo().lookup(key)) {
            return *hit;
        }
    }

    // Invert the triangular relation between the two cotangent-class bases:
    // alternating binomial transform with weight k per extra node constraint.
    // Each summand pairs against the dimension of its own space, so the
    // hyperplane power l is held fixed while r shrinks with m*.
    Rational total = 0;
    for (int mstar = m;; ++mstar) {
        const int rstar = vbar_dimension(spec.n, k, mstar) - l;
        if (rstar < 0) {
            break;
        }
        Integer coeff = binomial(mstar, m) * ipow(k, mstar - m);
        if ((mstar - m) % 2 != 0) {
            coeff = -coeff;
        }
        total += Rational(coeff) * eta_tilde_number(engine, spec, k, mstar, l,
                                                    rstar, kernel);
    }

    if (use_memo) {
        engine.memo().store(key, total);
    }
    return total;
}

} // namespace nodal
