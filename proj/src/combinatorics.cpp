#include "nodal/combinatorics.hpp"

#include "nodal/errors.hpp"

namespace nodal {

Integer binomial(long n, long k) {
    if (n < 0) throw Error("binomial: negative n");
    if (k < 0 || k > n) return 0;
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return result;
}

Integer factorial(long n) {
    if (n < 0) throw Error("factorial: negative argument");
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return result;
}

Integer ipow(long base, long exp) {
    if (exp < 0) throw Error("ipow: negative exponent");
    Integer result;
    mpz_ui_pow_ui(result.get_mpz_t(),
                  static_cast<unsigned long>(base < 0 ? -base : base),
                  static_cast<unsigned long>(exp));
    if (base < 0 && (exp % 2) == 1) result = -result;
    return result;
}

Integer stirling_split(long k_star, long k) {
    if (k < 1 || k > k_star) return 0;
    // Row-by-row evaluation of S(a, j) for j <= k; rows are short (k_star is
    // bounded by the ambient dimension in every caller).
    std::vector<Integer> row(static_cast<std::size_t>(k) + 1, 0);
    row[1] = 1; // S(1, 1)
    for (long a = 2; a <= k_star; ++a) {
        for (long j = std::min(a, k); j >= 1; --j) {
            row[static_cast<std::size_t>(j)] =
                Integer(j) * row[static_cast<std::size_t>(j)] +
                (j >= 2 ? row[static_cast<std::size_t>(j - 1)] : Integer(0));
        }
    }
    return row[static_cast<std::size_t>(k)];
}

Rational ThetaTable::get(long k, long m) {
    if (k < 1 || m < 0) throw Error("theta: require k >= 1, m >= 0");
    const auto key = std::make_pair(k, m);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    Rational value;
    if (k == 1 && m == 0) {
        value = 1;
    } else {
        // Sum over all (kk, mm) componentwise <= (k, m), excluding (k, m)
        // itself; pairs with kk > k or mm > m contribute S(k, kk) = 0 or
        // C(m, mm) = 0 and are skipped outright.
        Rational sum = 0;
        for (long kk = 1; kk <= k; ++kk) {
            const Integer split = stirling_split(k, kk);
            if (split == 0) continue;
            for (long mm = 0; mm <= m; ++mm) {
                if (kk == k && mm == m) continue;
                const Integer coeff = binomial(m, mm) * ipow(kk, m - mm) * split;
                sum += Rational(coeff) * get(kk, mm);
            }
        }
        value = -sum;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.emplace(key, value).first->second;
}

Rational theta_recursive(long k, long m) {
    static ThetaTable table;
    return table.get(k, m);
}

Rational theta_closed(long k, long m) {
    if (k < 1 || m < 0) throw Error("theta: require k >= 1, m >= 0");
    const Integer magnitude = ipow(k, m) * factorial(k - 1);
    Rational value(magnitude);
    return ((k + m - 1) % 2 == 0) ? value : -value;
}

std::vector<std::vector<int>> homog_monomials(int k, int l) {
    if (k < 1 || l < 0) throw Error("homog_monomials: require k >= 1, l >= 0");
    std::vector<std::vector<int>> out;
    std::vector<int> current(static_cast<std::size_t>(k), 0);
    // Fill positions left to right, choosing each entry from high to low so
    // the full listing is lexicographically descending.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == k - 1) {
            current[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(current);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            current[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, l);
    return out;
}

std::vector<MultisetSplit> multiset_splits(const std::vector<int>& values) {
    std::vector<std::pair<int, int>> groups; // (value, count), adjacency-collapsed
    for (int v : values) {
        if (!groups.empty() && groups.back().first == v) {
            ++groups.back().second;
        } else {
            groups.emplace_back(v, 1);
        }
    }
    std::vector<MultisetSplit> out;
    MultisetSplit current;
    current.weight = 1;
    auto rec = [&](auto&& self, std::size_t g) -> void {
        if (g == groups.size()) {
            out.push_back(current);
            return;
        }
        const auto [value, count] = groups[g];
        for (int take = 0; take <= count; ++take) {
            MultisetSplit saved = current;
            current.weight *= binomial(count, take);
            for (int i = 0; i < take; ++i) current.inside.push_back(value);
            for (int i = take; i < count; ++i) current.outside.push_back(value);
            current.inside_sum += take * value;
            self(self, g + 1);
            current = std::move(saved);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<MultisetDistribution> multiset_distributions(const std::vector<int>& values, int k) {
    if (k < 1) throw Error("multiset_distributions: require k >= 1");
    std::vector<std::pair<int, int>> groups;
    for (int v : values) {
        if (!groups.empty() && groups.back().first == v) {
            ++groups.back().second;
        } else {
            groups.emplace_back(v, 1);
        }
    }
    std::vector<MultisetDistribution> out;
    MultisetDistribution current;
    current.groups.resize(static_cast<std::size_t>(k));
    current.weight = 1;
    // For each distinct value, split its count into k ordered nonnegative
    // parts; the number of labeled ways is the multinomial, built up as a
    // product of binomials over the remaining copies.
    auto place = [&](auto&& self, std::size_t g) -> void {
        if (g == groups.size()) {
            out.push_back(current);
            return;
        }
        const auto [value, count] = groups[g];
        auto split_value = [&](auto&& self2, int part, int remaining, const Integer& ways) -> void {
            if (part == k - 1) {
                auto& slot = current.groups[static_cast<std::size_t>(part)];
                for (int i = 0; i < remaining; ++i) slot.push_back(value);
                const Integer saved_weight = current.weight;
                current.weight *= ways;
                self(self, g + 1);
                current.weight = saved_weight;
                slot.resize(slot.size() - static_cast<std::size_t>(remaining));
                return;
            }
            for (int take = 0; take <= remaining; ++take) {
                auto& slot = current.groups[static_cast<std::size_t>(part)];
                for (int i = 0; i < take; ++i) slot.push_back(value);
                self2(self2, part + 1, remaining - take, ways * binomial(remaining, take));
                slot.resize(slot.size() - static_cast<std::size_t>(take));
            }
        };
        split_value(split_value, 0, count, 1);
    };
    place(place, 0);
    return out;
}

std::vector<std::vector<int>> compositions(int d, int k) {
    if (d < 1 || k < 1) throw Error("compositions: require d >= 1, k >= 1");
    std::vector<std::vector<int>> out;
    if (k > d) return out;
    std::vector<int> current(static_cast<std::size_t>(k), 0);
    // Each of the k parts is >= 1; entries chosen low to high for an
    // ascending listing.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == k - 1) {
            current[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(current);
            return;
        }
        const int keep = k - pos - 1; // parts still to fill after this one
        for (int v = 1; v + keep <= remaining; ++v) {
            current[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

} // namespace nodal
