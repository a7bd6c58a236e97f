// Benchmark of the two intersection-kernel strategies on the node-correction
// pipeline: the production kernel (per-component forced psi exponents,
// OpenMP across enumeration cells) against the serial reference kernel
// (literal walk of every psi monomial and diagonal exponent tuple).
//
// Each strategy runs on a fresh engine so both pay their own descendant
// computations; the values must agree exactly, and the program fails if
// they do not.  `--smoke` runs the small cases only (used as a test).

#include "nodal/genus0.hpp"
#include "nodal/pipeline.hpp"
#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

using nodal::ConstraintTuple;
using nodal::GWEngine;
using nodal::Kernel;
using nodal::ProblemSpec;
using nodal::Rational;

namespace {

struct Case {
    std::string name;
    ProblemSpec spec;
    bool smoke = false;
};

double run_route(const ProblemSpec& spec, Kernel kernel, Rational& value) {
    GWEngine engine;
    const auto start = std::chrono::steady_clock::now();
    const Rational theta = nodal::cr1_theta(engine, spec, kernel);
    const Rational eta = nodal::cr1_eta(engine, spec, kernel);
    const auto stop = std::chrono::steady_clock::now();
    if (theta != eta) {
        std::cerr << "route mismatch inside one kernel: "
                  << nodal::to_string(theta) << " vs " << nodal::to_string(eta)
                  << "\n";
        std::exit(1);
    }
    value = eta;
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    const bool smoke_only = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;

    std::vector<Case> cases;
    cases.push_back({"plane-d3",
                     ProblemSpec{2, 3, ConstraintTuple{std::vector<int>(8, 2)}},
                     true});
    cases.push_back({"space-d2", ProblemSpec{3, 2, ConstraintTuple{{3, 3, 3, 2}}},
                     true});
    cases.push_back(
        {"space-d4",
         ProblemSpec{3, 4, ConstraintTuple{{2, 2, 2, 2, 2, 3, 3, 3, 3, 3}}},
         false});
    cases.push_back(
        {"p6-d6",
         ProblemSpec{6, 6, ConstraintTuple{{2, 2, 3, 4, 5, 6, 6, 6, 6, 6, 6}}},
         false});

    int failures = 0;
    std::cout << std::fixed << std::setprecision(4);
    for (const Case& c : cases) {
        if (smoke_only && !c.smoke) {
            continue;
        }
        Rational produced;
        Rational reference;
        const double t_prod = run_route(c.spec, Kernel::parallel, produced);
        const double t_ref = run_route(c.spec, Kernel::serial, reference);
        const bool agree = produced == reference;
        if (!agree) {
            ++failures;
        }
        std::cout << c.name << ": production " << t_prod << " s, reference "
                  << t_ref << " s";
        if (t_prod > 0.0) {
            std::cout << ", ratio " << (t_ref / t_prod);
        }
        std::cout << ", cr1 = " << nodal::to_string(produced)
                  << (agree ? "" : "  [VALUES DISAGREE: reference " +
                                       nodal::to_string(reference) + "]")
                  << "\n";
    }
    return failures == 0 ? 0 : 1;
}
