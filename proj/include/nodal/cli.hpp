#pragma once

#include "nodal/problem.hpp"

#include <string>

namespace nodal {

// A problem description parsed from a JSON problem file: the counting
// problem itself plus any file-level options.
struct ProblemInput {
    ProblemSpec spec;
    std::string rt_fixtures; // optional fixture-table path, empty when absent
};

// Parses {"n": …, "d": …, "constraints": […], "rt_fixtures": "…"?} and
// range-validates every field.  Throws ParseError with field diagnostics.
ProblemInput parse_problem(const std::string& text);

// Command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

} // namespace nodal
