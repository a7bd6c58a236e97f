#include "nodal/problem.hpp"

#include "nodal/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nodal {

ConstraintTuple::ConstraintTuple(std::vector<int> codims)
    : codims_(std::move(codims)) {
    std::sort(codims_.begin(), codims_.end(), std::greater<int>());
}

int ConstraintTuple::total_codim() const {
    int sum = 0;
    for (int c : codims_) sum += c;
    return sum - size();
}

void validate_ranges(const ProblemSpec& spec) {
    if (spec.n < 2) throw ParseError("require n >= 2, got n = " + std::to_string(spec.n));
    if (spec.d < 1) throw ParseError("require d >= 1, got d = " + std::to_string(spec.d));
    for (int c : spec.mu.codims()) {
        if (c < 2 || c > spec.n) {
            throw ParseError("constraint codimension " + std::to_string(c) +
                             " out of range [2, " + std::to_string(spec.n) + "]");
        }
    }
}

bool validate_genus0(const ProblemSpec& spec) {
    return spec.mu.total_codim() == spec.d * (spec.n + 1) + spec.n - 3;
}

bool validate_nodal(const ProblemSpec& spec) {
    return spec.mu.total_codim() == spec.d * (spec.n + 1) - 1;
}

int vbar_dimension(int n, int k, int m) {
    if (k < 1 || m < 0) throw Error("vbar_dimension: require k >= 1, m >= 0");
    return n + 1 - 2 * k - m;
}

namespace {

// Shared layout: "v1|<kind>|<n>|<d>|<codims>|<extra>".
std::string make_key(const char* kind, int n, int d,
                     const std::vector<int>& codims_desc,
                     const std::string& extra) {
    std::ostringstream out;
    out << "v1|" << kind << '|' << n << '|' << d << '|';
    for (std::size_t i = 0; i < codims_desc.size(); ++i) {
        if (i) out << ',';
        out << codims_desc[i];
    }
    out << '|' << extra;
    return out.str();
}

} // namespace

std::string key_rational(int n, int d, const ConstraintTuple& mu) {
    return make_key("rational", n, d, mu.codims(), "");
}

std::string key_descendant(int n, int d, const ConstraintTuple& constraints,
                           int b, int c) {
    return make_key("descendant", n, d, constraints.codims(),
                    "b=" + std::to_string(b) + ",c=" + std::to_string(c));
}

std::string key_eta_tilde(int n, int d, const ConstraintTuple& mu,
                          int k, int m, int l, int r) {
    return make_key("eta_tilde", n, d, mu.codims(),
                    "k=" + std::to_string(k) + ",m=" + std::to_string(m) +
                        ",l=" + std::to_string(l) + ",r=" + std::to_string(r));
}

std::string key_eta(int n, int d, const ConstraintTuple& mu,
                    int k, int m, int l, int r) {
    return make_key("eta", n, d, mu.codims(),
                    "k=" + std::to_string(k) + ",m=" + std::to_string(m) +
                        ",l=" + std::to_string(l) + ",r=" + std::to_string(r));
}

std::string key_cr1(int n, int d, const ConstraintTuple& mu,
                    const std::string& route) {
    return make_key("cr1", n, d, mu.codims(), route);
}

std::string key_nodal(int n, int d, const ConstraintTuple& mu) {
    return make_key("nodal", n, d, mu.codims(), "");
}

std::string key_rt(int n, int d, const ConstraintTuple& mu) {
    return make_key("rt", n, d, mu.codims(), "");
}

} // namespace nodal
