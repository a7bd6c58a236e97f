#pragma once

#include "nodal/rational.hpp"

#include <string>
#include <vector>

namespace nodal {

// A multiset of linear-constraint codimensions (each >= 2 and <= n for the
// ambient projective space), kept sorted descending as the canonical form.
class ConstraintTuple {
public:
    ConstraintTuple() = default;
    explicit ConstraintTuple(std::vector<int> codims);

    const std::vector<int>& codims() const { return codims_; }
    int size() const { return static_cast<int>(codims_.size()); }
    bool empty() const { return codims_.empty(); }

    // Sum of codimensions minus the number of constraints.  This is the total
    // codimension the constraints impose on a space of curves (meeting a
    // codimension-c subspace is a (c-1)-dimensional condition per point, plus
    // one for the marked point's position on the curve).
    int total_codim() const;

    bool operator==(const ConstraintTuple&) const = default;

private:
    std::vector<int> codims_; // sorted descending
};

// One counting problem: degree-d rational curves in complex projective
// n-space meeting the constraints.
struct ProblemSpec {
    int n = 0;
    int d = 0;
    ConstraintTuple mu;

    bool operator==(const ProblemSpec&) const = default;
};

// Throws ParseError unless n >= 2, d >= 1, and every codim c satisfies
// 2 <= c <= n.
void validate_ranges(const ProblemSpec& spec);

// True iff total_codim equals d(n+1) + n - 3: the constraints cut the space
// of rational degree-d curves down to finitely many (genus-0 count).
bool validate_genus0(const ProblemSpec& spec);

// True iff total_codim equals d(n+1) - 1: the condition under which the
// one-nodal degree-d curves through the constraints form a finite set.
bool validate_nodal(const ProblemSpec& spec);

// Complex dimension n+1-2k-m of the space of unordered k-tuples of stable
// rational maps with a common special-point image and m constraints imposed
// at that image, for a nodal-valid problem.  May be negative; callers treat
// a negative-dimensional space as empty rather than erroring.
int vbar_dimension(int n, int k, int m);

// ---------------------------------------------------------------------------
// Canonical cache keys.  Format (versioned, UTF-8):
//   "v1|<kind>|<n>|<d>|<codims sorted descending, comma-separated>|<extra>"
// Two semantically equal requests serialize to byte-identical keys; distinct
// invariant kinds never collide.
// ---------------------------------------------------------------------------

std::string key_rational(int n, int d, const ConstraintTuple& mu);
std::string key_descendant(int n, int d, const ConstraintTuple& constraints,
                           int b, int c);
std::string key_eta_tilde(int n, int d, const ConstraintTuple& mu,
                          int k, int m, int l, int r);
std::string key_eta(int n, int d, const ConstraintTuple& mu,
                    int k, int m, int l, int r);
std::string key_cr1(int n, int d, const ConstraintTuple& mu,
                    const std::string& route);
std::string key_nodal(int n, int d, const ConstraintTuple& mu);
// Key under which a genus-1 symplectic-invariant fixture is filed.
std::string key_rt(int n, int d, const ConstraintTuple& mu);

} // namespace nodal
