#include "nodal/oracles.hpp"

#include "nodal/combinatorics.hpp"
#include "nodal/errors.hpp"

#include <map>
#include <string>
#include <utility>

namespace nodal {

Integer schubert_lines_oracle(int n, const std::vector<int>& codims) {
    if (n < 2) throw Error("schubert_lines_oracle: require n >= 2");
    int degree = 0;
    for (int c : codims) {
        if (c < 2 || c > n) {
            throw DimensionMismatchError(
                "schubert_lines_oracle: codimension " + std::to_string(c) +
                " out of range [2, " + std::to_string(n) + "]");
        }
        degree += c - 1;
    }
    if (degree != 2 * (n - 1)) {
        throw DimensionMismatchError(
            "schubert_lines_oracle: sum of (codim-1) is " +
            std::to_string(degree) + ", need 2(n-1) = " +
            std::to_string(2 * (n - 1)));
    }

    // State: formal sum of Schubert classes sigma_(p1,p2), p1 >= p2, inside
    // the 2 x (n-1) box.  Multiplying by the special class sigma_p adds a
    // horizontal strip of p boxes: new partition (q1, q2) with
    // q1 + q2 = p1 + p2 + p and q1 >= p1 >= q2 >= p2.
    std::map<std::pair<int, int>, Integer> state;
    state[{0, 0}] = 1;
    const int box = n - 1;
    for (int c : codims) {
        const int p = c - 1;
        std::map<std::pair<int, int>, Integer> next;
        for (const auto& [part, mult] : state) {
            const auto [p1, p2] = part;
            for (int q2 = p2; q2 <= p1; ++q2) {
                const int q1 = p1 + p2 + p - q2;
                if (q1 < p1 || q1 < q2 || q1 > box) continue;
                next[{q1, q2}] += mult;
            }
        }
        state = std::move(next);
    }
    const auto it = state.find({box, box});
    return it == state.end() ? Integer(0) : it->second;
}

Integer plane_recursion_oracle(int d) {
    if (d < 1) throw Error("plane_recursion_oracle: require d >= 1");
    std::vector<Integer> n_(static_cast<std::size_t>(d) + 1, 0);
    n_[1] = 1;
    for (int dd = 2; dd <= d; ++dd) {
        Integer total = 0;
        for (int d1 = 1; d1 < dd; ++d1) {
            const int d2 = dd - d1;
            const Integer a = Integer(d1) * d1 * d2 * d2 * binomial(3 * dd - 4, 3 * d1 - 2);
            const Integer b = Integer(d1) * d1 * d1 * d2 * binomial(3 * dd - 4, 3 * d1 - 1);
            total += n_[static_cast<std::size_t>(d1)] * n_[static_cast<std::size_t>(d2)] * (a - b);
        }
        n_[static_cast<std::size_t>(dd)] = total;
    }
    return n_[static_cast<std::size_t>(d)];
}

namespace {

Integer psi_reduce(std::vector<int> exponents) {
    const int m = static_cast<int>(exponents.size());
    if (m == 3) return 1; // all exponents are zero here (checked by caller logic)
    // Find a zero-exponent point to remove; one always exists because the
    // exponents sum to m-3 < m.
    int zero = -1;
    for (int i = 0; i < m; ++i) {
        if (exponents[static_cast<std::size_t>(i)] == 0) { zero = i; break; }
    }
    exponents.erase(exponents.begin() + zero);
    // String equation: the integral equals the sum over the remaining points
    // of the same integral with that point's exponent lowered by one.
    Integer total = 0;
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        if (exponents[j] == 0) continue;
        std::vector<int> sub = exponents;
        --sub[j];
        total += psi_reduce(std::move(sub));
    }
    return total;
}

} // namespace

Integer psi_moduli_oracle(const std::vector<int>& exponents) {
    const int m = static_cast<int>(exponents.size());
    if (m < 3) {
        throw DimensionMismatchError(
            "psi_moduli_oracle: need at least 3 marked points, got " +
            std::to_string(m));
    }
    int sum = 0;
    for (int b : exponents) {
        if (b < 0) throw Error("psi_moduli_oracle: negative exponent");
        sum += b;
    }
    if (sum != m - 3) {
        throw DimensionMismatchError(
            "psi_moduli_oracle: exponents sum to " + std::to_string(sum) +
            ", need m - 3 = " + std::to_string(m - 3));
    }
    return psi_reduce(exponents);
}

Rational j_function_descendant_oracle(int n, int d, int b, int c) {
    if (n < 2 || d < 1 || b < 0 || c < 0) {
        throw Error("j_function_descendant_oracle: bad arguments");
    }
    if (c > n) return 0;
    if (b + c != (n + 1) * d + n - 2) return 0;
    // Expand product over m=1..d of (1 + x/m)^-(n+1) as a series in x = h/hbar,
    // truncated past x^n (h is nilpotent of order n+1).  The coefficient of
    // h^(n-c) in that truncation, divided by product m^(n+1), is the value.
    std::vector<Rational> series(static_cast<std::size_t>(n) + 1, 0);
    series[0] = 1;
    for (int m = 1; m <= d; ++m) {
        std::vector<Rational> factor(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 0; i <= n; ++i) {
            // binom(-(n+1), i) (1/m)^i = (-1)^i C(n+i, i) / m^i
            Rational coeff(binomial(n + i, i), ipow(m, i));
            coeff.canonicalize();
            if (i % 2 == 1) coeff = -coeff;
            factor[static_cast<std::size_t>(i)] = coeff;
        }
        std::vector<Rational> product(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; i + j <= n; ++j) {
                product[static_cast<std::size_t>(i + j)] +=
                    series[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
            }
        }
        series = std::move(product);
    }
    Rational prefactor = 1;
    for (int m = 1; m <= d; ++m) {
        prefactor /= Rational(ipow(m, n + 1));
    }
    return prefactor * series[static_cast<std::size_t>(n - c)];
}

} // namespace nodal
