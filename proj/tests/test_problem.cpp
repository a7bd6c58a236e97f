#include <doctest.h>

#include "nodal/errors.hpp"
#include "nodal/problem.hpp"

#include <set>
#include <string>
#include <vector>

using namespace nodal;

TEST_SUITE("problem") {

TEST_CASE("constraint tuples canonicalize to descending order") {
    const ConstraintTuple a{{2, 3, 2, 3}};
    CHECK(a.codims() == std::vector<int>{3, 3, 2, 2});
    CHECK(a == ConstraintTuple{{3, 2, 3, 2}});
    CHECK(a.size() == 4);
    CHECK_FALSE(a.empty());
    CHECK(ConstraintTuple{}.empty());
}

TEST_CASE("total codimension counts one condition per constraint dimension") {
    CHECK(ConstraintTuple{}.total_codim() == 0);
    CHECK(ConstraintTuple{{2}}.total_codim() == 1);
    CHECK(ConstraintTuple{{3, 3, 2}}.total_codim() == 5);
}

TEST_CASE("range validation rejects out-of-range fields") {
    CHECK_THROWS_AS(validate_ranges(ProblemSpec{1, 1, ConstraintTuple{{2}}}),
                    ParseError);
    CHECK_THROWS_AS(validate_ranges(ProblemSpec{2, 0, ConstraintTuple{{2}}}),
                    ParseError);
    CHECK_THROWS_AS(validate_ranges(ProblemSpec{2, 1, ConstraintTuple{{1}}}),
                    ParseError);
    CHECK_THROWS_AS(validate_ranges(ProblemSpec{2, 1, ConstraintTuple{{3}}}),
                    ParseError);
    CHECK_NOTHROW(validate_ranges(ProblemSpec{2, 1, ConstraintTuple{{2, 2}}}));
    CHECK_NOTHROW(validate_ranges(ProblemSpec{4, 2, ConstraintTuple{{4, 3, 2}}}));
}

TEST_CASE("dimension gates identify genus-0 and one-nodal problems") {
    CHECK(validate_genus0(ProblemSpec{2, 1, ConstraintTuple{{2, 2}}}));
    CHECK_FALSE(validate_genus0(ProblemSpec{2, 1, ConstraintTuple{{2}}}));
    CHECK(validate_genus0(ProblemSpec{3, 1, ConstraintTuple{{2, 2, 2, 2}}}));

    CHECK(validate_nodal(
        ProblemSpec{3, 4, ConstraintTuple{{2, 2, 2, 2, 2, 3, 3, 3, 3, 3}}}));
    CHECK(validate_nodal(ProblemSpec{2, 2, ConstraintTuple{{2, 2, 2, 2, 2}}}));
    CHECK_FALSE(validate_nodal(ProblemSpec{2, 2, ConstraintTuple{{2, 2}}}));
}

TEST_CASE("component-space dimension follows n+1-2k-m") {
    CHECK(vbar_dimension(3, 1, 0) == 2);
    CHECK(vbar_dimension(3, 2, 0) == 0);
    CHECK(vbar_dimension(6, 3, 1) == 0);
    CHECK(vbar_dimension(6, 1, 2) == 3);
    CHECK(vbar_dimension(2, 1, 2) == -1); // negative means empty, not an error
}

TEST_CASE("canonical keys are byte-stable") {
    const ConstraintTuple mu{{2, 3, 3}};
    CHECK(key_rational(3, 2, mu) == "v1|rational|3|2|3,3,2|");
    CHECK(key_rational(3, 2, ConstraintTuple{{3, 2, 3}}) ==
          key_rational(3, 2, mu));
    CHECK(key_descendant(2, 1, ConstraintTuple{}, 1, 2) ==
          "v1|descendant|2|1||b=1,c=2");
    CHECK(key_eta_tilde(3, 2, mu, 2, 0, 1, 0) ==
          "v1|eta_tilde|3|2|3,3,2|k=2,m=0,l=1,r=0");
    CHECK(key_eta(3, 2, mu, 1, 1, 0, 1) ==
          "v1|eta|3|2|3,3,2|k=1,m=1,l=0,r=1");
    CHECK(key_cr1(3, 2, mu, "eta") == "v1|cr1|3|2|3,3,2|eta");
    CHECK(key_nodal(3, 2, mu) == "v1|nodal|3|2|3,3,2|");
    CHECK(key_rt(3, 2, mu) == "v1|rt|3|2|3,3,2|");
}

TEST_CASE("distinct invariant kinds never collide on the same problem") {
    const ConstraintTuple mu{{3, 2}};
    const std::set<std::string> keys{
        key_rational(3, 1, mu),
        key_descendant(3, 1, mu, 0, 0),
        key_eta_tilde(3, 1, mu, 1, 0, 0, 0),
        key_eta(3, 1, mu, 1, 0, 0, 0),
        key_cr1(3, 1, mu, "eta"),
        key_cr1(3, 1, mu, "theta"),
        key_nodal(3, 1, mu),
        key_rt(3, 1, mu),
    };
    CHECK(keys.size() == 8);
}

} // TEST_SUITE

