#include <doctest.h>

#include "nodal/errors.hpp"
#include "nodal/genus0.hpp"
#include "nodal/pipeline.hpp"
#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

using namespace nodal;

namespace {

ProblemSpec plane_points(int d) {
    return ProblemSpec{2, d, ConstraintTuple{std::vector<int>(3 * d - 1, 2)}};
}

// Path of a fixture table: the environment wins, otherwise the location the
// build baked in, so the binary also runs bare.
std::string table_path(const char* env_name, const char* filename) {
    if (const char* value = std::getenv(env_name)) {
        return value;
    }
    return std::string(NODAL_DEFAULT_FIXTURES_DIR) + "/" + filename;
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/nodal_test_" + name;
    std::ofstream out(path, std::ios::trunc);
    out << body;
    return path;
}

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("plane node corrections match their frozen values") {
    GWEngine engine;
    CHECK(cr1_eta(engine, plane_points(1)) == 1);
    CHECK(cr1_eta(engine, plane_points(2)) == 4);
    CHECK(cr1_eta(engine, plane_points(3)) == 84);
    CHECK(cr1_eta(engine, plane_points(4)) == 6200);
    CHECK(cr1_theta(engine, plane_points(4)) == 6200);
}

TEST_CASE("the two correction routes agree beyond the plane") {
    GWEngine engine;
    const std::vector<ProblemSpec> specs = {
        ProblemSpec{3, 2, ConstraintTuple{std::vector<int>(7, 2)}},
        ProblemSpec{3, 2, ConstraintTuple{{3, 2, 2, 2, 2, 2}}},
        ProblemSpec{3, 2, ConstraintTuple{{3, 3, 2, 2, 2}}},
        ProblemSpec{3, 2, ConstraintTuple{{3, 3, 3, 2}}},
        ProblemSpec{4, 2, ConstraintTuple{{4, 4, 3, 2}}},
        ProblemSpec{4, 2, ConstraintTuple{{3, 3, 3, 3, 2}}},
    };
    for (const ProblemSpec& spec : specs) {
        CAPTURE(key_nodal(spec.n, spec.d, spec.mu));
        std::vector<TermEntry> eta_terms;
        std::vector<TermEntry> theta_terms;
        const Rational via_eta = cr1_eta(engine, spec, Kernel::parallel, &eta_terms);
        const Rational via_theta =
            cr1_theta(engine, spec, Kernel::parallel, &theta_terms);
        CHECK(via_eta == via_theta);
        // Each route's term list must rebuild its own total.
        Rational eta_sum = 0;
        for (const TermEntry& t : eta_terms) {
            eta_sum += t.value;
        }
        Rational theta_sum = 0;
        for (const TermEntry& t : theta_terms) {
            theta_sum += t.value;
        }
        CHECK(eta_sum == via_eta);
        CHECK(theta_sum == via_theta);
        // Serial kernels land on the same values.
        CHECK(cr1_eta(engine, spec, Kernel::serial) == via_eta);
        CHECK(cr1_theta(engine, spec, Kernel::serial) == via_theta);
    }
}

TEST_CASE("a synthetic fixture table round-trips arbitrary counts") {
    GWEngine engine;
    const ProblemSpec spec = plane_points(3);
    const Rational correction = cr1_eta(engine, spec);
    for (long x : {0L, 1L, -7L, 41L, 12345L, -99999L}) {
        RTFixtureTable table;
        table.set(key_rt(spec.n, spec.d, spec.mu),
                  Rational(2 * x) + correction);
        CHECK(count_nodal(engine, spec, table) == Rational(x));
    }
}

TEST_CASE("a missing fixture is reported by key, not silently zeroed") {
    GWEngine engine;
    const ProblemSpec spec = plane_points(2);
    RTFixtureTable table;
    table.set("v1|rt|9|9|2|", Rational(0));
    try {
        count_nodal(engine, spec, table);
        FAIL("expected MissingFixtureError");
    } catch (const MissingFixtureError& e) {
        const std::string what = e.what();
        CHECK(what.find(key_rt(spec.n, spec.d, spec.mu)) != std::string::npos);
    }
}

TEST_CASE("a fixture of the wrong parity is rejected loudly") {
    GWEngine engine;
    const ProblemSpec spec = plane_points(2);
    RTFixtureTable table;
    table.set(key_rt(spec.n, spec.d, spec.mu),
              cr1_eta(engine, spec) + Rational(1));
    CHECK_THROWS_AS(count_nodal(engine, spec, table), InternalInconsistencyError);
}

TEST_CASE("a negative count in three-space is rejected as inconsistent") {
    GWEngine engine;
    const ProblemSpec spec{3, 2, ConstraintTuple{{3, 3, 3, 2}}};
    RTFixtureTable table;
    table.set(key_rt(spec.n, spec.d, spec.mu),
              cr1_eta(engine, spec) - Rational(2));
    CHECK_THROWS_AS(count_nodal(engine, spec, table), InternalInconsistencyError);
}

TEST_CASE("the breakdown report is internally consistent") {
    GWEngine engine;
    const ProblemSpec spec = plane_points(3);
    RTFixtureTable table;
    table.set(key_rt(spec.n, spec.d, spec.mu), Rational(108));
    NodalBreakdown breakdown;
    const Rational value =
        count_nodal(engine, spec, table, Kernel::parallel, &breakdown);
    CHECK(value == 12);
    CHECK(breakdown.nodal == 12);
    CHECK(breakdown.rt == 108);
    CHECK(breakdown.cr1_eta == 84);
    CHECK(breakdown.cr1_theta == 84);
    CHECK((breakdown.rt - breakdown.cr1_eta) / Rational(2) == breakdown.nodal);
    Rational term_sum = 0;
    for (const TermEntry& t : breakdown.terms) {
        term_sum += t.value;
    }
    CHECK(term_sum == breakdown.cr1_theta);
}

TEST_CASE("the shipped fixture table reproduces the published counts") {
    const std::string path = table_path("NODAL_RT_FIXTURES", "rt_fixtures.json");
    const RTFixtureTable table = RTFixtureTable::load(path);
    CHECK(table.size() >= 13);
    GWEngine engine;

    // Quartics in three-space through five points and five lines.
    const ProblemSpec quartic{3, 4, ConstraintTuple{{3, 3, 3, 3, 3, 2, 2, 2, 2, 2}}};
    CHECK(count_nodal(engine, quartic, table) == 1800);

    // Sextics in six-space against a mixed flag spread.
    const ProblemSpec sextic{6, 6,
                             ConstraintTuple{{6, 6, 6, 6, 6, 6, 5, 4, 3, 2, 2}}};
    CHECK(count_nodal(engine, sextic, table) == 20340);

    // The plane identity closes the loop between the nodal pipeline and the
    // rational-count recursion for every degree the table covers.
    for (int d = 1; d <= 4; ++d) {
        CAPTURE(d);
        CHECK(plane_identity_check(engine, d, table));
    }
}

TEST_CASE("node corrections are stable against the recorded snapshots") {
    const std::string path =
        table_path("NODAL_CR1_SNAPSHOTS", "cr1_snapshots.json");
    std::ifstream in(path);
    REQUIRE(in.good());
    const nlohmann::json snapshots = nlohmann::json::parse(in);
    REQUIRE(snapshots.at("version").get<int>() == 1);
    GWEngine engine;
    int checked = 0;
    for (const auto& [key, value] : snapshots.items()) {
        if (key == "version") {
            continue;
        }
        // Key layout: v1|cr1|n|d|codims|eta
        std::vector<std::string> parts;
        std::string piece;
        for (char c : key) {
            if (c == '|') {
                parts.push_back(piece);
                piece.clear();
            } else {
                piece += c;
            }
        }
        parts.push_back(piece);
        REQUIRE(parts.size() == 6);
        REQUIRE(parts[1] == "cr1");
        const int n = std::stoi(parts[2]);
        const int d = std::stoi(parts[3]);
        std::vector<int> codims;
        std::string num;
        for (char c : parts[4] + ",") {
            if (c == ',') {
                if (!num.empty()) {
                    codims.push_back(std::stoi(num));
                    num.clear();
                }
            } else {
                num += c;
            }
        }
        const ProblemSpec spec{n, d, ConstraintTuple{codims}};
        const Rational expected =
            value.is_string() ? rational_from_string(value.get<std::string>())
                              : Rational(value.get<long>());
        CAPTURE(key);
        CHECK(cr1_eta(engine, spec) == expected);
        ++checked;
    }
    CHECK(checked >= 13);
}

TEST_CASE("fixture files are validated on load") {
    // Not JSON at all.
    const std::string garbled = write_temp("garbled.json", "{nope");
    CHECK_THROWS_AS(RTFixtureTable::load(garbled), ParseError);
    // Missing version marker.
    const std::string unversioned =
        write_temp("unversioned.json", R"({"v1|rt|2|1|2,2|": 1})");
    CHECK_THROWS_AS(RTFixtureTable::load(unversioned), ParseError);
    // Future version.
    const std::string future =
        write_temp("future.json", R"({"version": 2, "v1|rt|2|1|2,2|": 1})");
    CHECK_THROWS_AS(RTFixtureTable::load(future), ParseError);
    // Value of an unusable type.
    const std::string badvalue =
        write_temp("badvalue.json", R"({"version": 1, "v1|rt|2|1|2,2|": [1]})");
    CHECK_THROWS_AS(RTFixtureTable::load(badvalue), ParseError);
    // No such file.
    CHECK_THROWS_AS(RTFixtureTable::load("/tmp/nodal_test_does_not_exist.json"),
                    IoError);

    // A well-formed table loads, reports its origin, and serves lookups in
    // both integer and exact-rational spellings.
    const std::string good = write_temp(
        "good.json",
        R"({"version": 1, "v1|rt|2|1|2,2|": 1, "v1|rt|2|2|2,2,2,2,2|": "4"})");
    const RTFixtureTable table = RTFixtureTable::load(good);
    CHECK(table.size() == 2);
    CHECK(table.origin() == good);
    CHECK(table.contains("v1|rt|2|1|2,2|"));
    CHECK(table.lookup("v1|rt|2|2|2,2,2,2,2|") == 4);
    CHECK_FALSE(table.contains("v1|rt|3|1|3,3|"));
}

TEST_CASE("fixture lookups go through the canonical problem key") {
    const ProblemSpec spec{3, 2, ConstraintTuple{{2, 3, 3, 2, 2}}};
    RTFixtureTable table;
    // Keys canonicalize constraints in descending order, so a spec built
    // from a shuffled tuple must still find its entry.
    table.set("v1|rt|3|2|3,3,2,2,2|", Rational(7));
    CHECK(rt_lookup(spec, table) == 7);
}

}
