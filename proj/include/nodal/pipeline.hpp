#pragma once

#include "nodal/genus0.hpp"
#include "nodal/intersections.hpp"
#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace nodal {

// One cell of a node-correction sum: the coefficient-weighted pairing
// against a single component space, labeled by its (k, m).
struct TermEntry {
    int k = 0;
    int m = 0;
    Rational value;
};

// Node-correction term via the corrected cotangent classes:
//   sum over k >= 1 with 2k <= n+1 of
//     (-1)^(k-1) (k-1)! * sum_l C(n+1, l) <a^l eta_{dim-l}, [Vbar_{k,0}]>.
// When `terms` is non-null it receives one entry per k (m is always 0 on
// this route: only the unconstrained spaces appear).
Rational cr1_eta(GWEngine& engine, const ProblemSpec& spec,
                 Kernel kernel = Kernel::parallel,
                 std::vector<TermEntry>* terms = nullptr);

// The same correction via the uncorrected classes and the signed Theta
// weights:
//   sum over (k, m) with k >= 1, m >= 0, 2k+m <= n+1 of
//     Theta(k, m) * sum_l C(n+1, l) <a^l etatilde_{dim-l}, [Vbar_{k,m}]>.
// Always equal to cr1_eta; computing both is the library's permanent check
// on its hardest combinatorial chain.
Rational cr1_theta(GWEngine& engine, const ProblemSpec& spec,
                   Kernel kernel = Kernel::parallel,
                   std::vector<TermEntry>* terms = nullptr);

// Table of genus-one symplectic-invariant values keyed by canonical problem
// keys.  These are inputs sourced from the literature (or synthesized in
// tests), not quantities this library derives.
class RTFixtureTable {
public:
    RTFixtureTable() = default;

    // Reads a UTF-8 JSON object {"version": 1, "<canonical key>": value}
    // where value is an integer or an exact-rational string.  Throws IoError
    // if the file cannot be read, ParseError on malformed contents or an
    // unsupported version.
    static RTFixtureTable load(const std::string& path);

    void set(const std::string& key, const Rational& value);
    bool contains(const std::string& key) const;

    // Throws MissingFixtureError naming the key and the table's origin.
    Rational lookup(const std::string& key) const;

    int size() const { return static_cast<int>(entries_.size()); }
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, Rational> entries_;
    std::string origin_ = "<in-memory>";
};

// Fixture value for the given one-nodal problem.
Rational rt_lookup(const ProblemSpec& spec, const RTFixtureTable& fixtures);

// Full decomposition of a one-nodal count, for reporting.
struct NodalBreakdown {
    Rational rt;
    Rational cr1_eta;
    Rational cr1_theta;
    Rational nodal;
    std::vector<TermEntry> terms; // theta-route (k, m) decomposition
};

// The one-nodal count (rt - cr1) / 2, with both correction routes computed
// and compared.  Throws InternalInconsistencyError when the routes disagree,
// when the result is not an integer, or when it is negative with n >= 3
// (for n = 2 the value is a node-weighted count and sign is not enforced);
// MissingFixtureError when the table lacks the problem's entry.
Rational count_nodal(GWEngine& engine, const ProblemSpec& spec,
                     const RTFixtureTable& fixtures,
                     Kernel kernel = Kernel::parallel,
                     NodalBreakdown* breakdown = nullptr);

// Plane specialization: the one-nodal count through 3d-1 general points
// must equal C(d-1, 2) times the rational count through the same points.
bool plane_identity_check(GWEngine& engine, int d,
                          const RTFixtureTable& fixtures);

} // namespace nodal
