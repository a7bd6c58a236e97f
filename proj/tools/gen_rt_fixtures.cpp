// Generates the genus-one fixture tables consumed by the test suite:
//
//   rt_fixtures.json    genus-one symplectic-invariant values keyed by
//                       canonical problem keys
//   cr1_snapshots.json  regression snapshots of the node-correction term
//                       for the same problems
//
// The genus-one invariant of projective space decomposes into genus-0 data
// through a hyperplane splitting of the diagonal:
//
//   rt(n, d, mu) = sum over i+j = n with i, j >= 1 of <h^i h^j mu>_{0,d}.
//
// That composition is standard quantum-cohomology material but lies outside
// this library's own scope, so the library consumes the resulting values as
// fixtures instead of computing them at query time; this tool is where the
// derivation lives.  Every generated row is round-tripped through the nodal
// pipeline before it is written, so a fixture that would produce a
// non-integer or negative count never ships.

#include "nodal/genus0.hpp"
#include "nodal/pipeline.hpp"
#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using nodal::ConstraintTuple;
using nodal::GWEngine;
using nodal::ProblemSpec;
using nodal::Rational;

namespace {

Rational rt_from_genus0(GWEngine& engine, const ProblemSpec& spec) {
    Rational total = 0;
    for (int i = 1; i <= spec.n - 1; ++i) {
        std::vector<int> exponents = spec.mu.codims();
        exponents.push_back(i);
        exponents.push_back(spec.n - i);
        total += engine.primary(spec.n, spec.d, exponents);
    }
    return total;
}

// JSON value for an exact integer: a plain number when it fits, else the
// canonical string form.
nlohmann::ordered_json exact_json(const Rational& value) {
    if (nodal::is_integer(value)) {
        const nodal::Integer num = nodal::to_integer(value);
        if (num.fits_slong_p()) {
            return nlohmann::ordered_json(num.get_si());
        }
    }
    return nlohmann::ordered_json(nodal::to_string(value));
}

} // namespace

int main(int argc, char** argv) {
    const std::string out_dir = argc > 1 ? argv[1] : "tests/fixtures";

    std::vector<ProblemSpec> rows;
    // Plane problems: 3d-1 point constraints.
    for (int d = 1; d <= 5; ++d) {
        rows.push_back(ProblemSpec{
            2, d, ConstraintTuple{std::vector<int>(static_cast<std::size_t>(3 * d - 1), 2)}});
    }
    // Space problems of degree 2: every codimension pattern.
    rows.push_back(ProblemSpec{3, 2, ConstraintTuple{{2, 2, 2, 2, 2, 2, 2}}});
    rows.push_back(ProblemSpec{3, 2, ConstraintTuple{{3, 2, 2, 2, 2, 2}}});
    rows.push_back(ProblemSpec{3, 2, ConstraintTuple{{3, 3, 2, 2, 2}}});
    rows.push_back(ProblemSpec{3, 2, ConstraintTuple{{3, 3, 3, 2}}});
    // Space problem of degree 4 through 5 points and 5 lines.
    rows.push_back(ProblemSpec{3, 4, ConstraintTuple{{2, 2, 2, 2, 2, 3, 3, 3, 3, 3}}});
    // Two degree-2 problems in P^4.
    rows.push_back(ProblemSpec{4, 2, ConstraintTuple{{4, 4, 3, 2}}});
    rows.push_back(ProblemSpec{4, 2, ConstraintTuple{{3, 3, 3, 3, 2}}});
    // The deep row: degree 6 in P^6.
    rows.push_back(ProblemSpec{6, 6, ConstraintTuple{{2, 2, 3, 4, 5, 6, 6, 6, 6, 6, 6}}});

    GWEngine engine;
    nlohmann::ordered_json fixtures;
    fixtures["version"] = 1;
    nlohmann::ordered_json snapshots;
    snapshots["version"] = 1;

    nodal::RTFixtureTable table;
    for (const ProblemSpec& spec : rows) {
        const Rational rt = rt_from_genus0(engine, spec);
        const std::string rt_key = nodal::key_rt(spec.n, spec.d, spec.mu);
        fixtures[rt_key] = exact_json(rt);
        table.set(rt_key, rt);

        const Rational cr1 = nodal::cr1_eta(engine, spec);
        snapshots[nodal::key_cr1(spec.n, spec.d, spec.mu, "eta")] = exact_json(cr1);

        // Round trip: the pipeline must accept the fixture it is given.
        const Rational nodal_count = nodal::count_nodal(engine, spec, table);
        std::cout << rt_key << "  rt=" << nodal::to_string(rt)
                  << "  cr1=" << nodal::to_string(cr1)
                  << "  nodal=" << nodal::to_string(nodal_count) << "\n";
    }

    const std::string fixtures_path = out_dir + "/rt_fixtures.json";
    const std::string snapshots_path = out_dir + "/cr1_snapshots.json";
    {
        std::ofstream out(fixtures_path);
        if (!out) {
            std::cerr << "error: cannot write " << fixtures_path << "\n";
            return 1;
        }
        out << fixtures.dump(2) << "\n";
    }
    {
        std::ofstream out(snapshots_path);
        if (!out) {
            std::cerr << "error: cannot write " << snapshots_path << "\n";
            return 1;
        }
        out << snapshots.dump(2) << "\n";
    }
    std::cout << "wrote " << fixtures_path << " and " << snapshots_path << "\n";
    return 0;
}
