#include "nodal/cli.hpp"

#include "nodal/cache.hpp"
#include "nodal/combinatorics.hpp"
#include "nodal/errors.hpp"
#include "nodal/genus0.hpp"
#include "nodal/intersections.hpp"
#include "nodal/oracles.hpp"
#include "nodal/pipeline.hpp"
#include "nodal/rational.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nodal {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<int> parse_csv_ints(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(value);
        } catch (const std::exception&) {
            throw ParseError("constraints: \"" + item + "\" is not an integer");
        }
    }
    if (out.empty()) {
        throw ParseError("constraints: expected a comma-separated list of codimensions");
    }
    return out;
}

long long require_int_field(const nlohmann::json& doc, const char* field) {
    const auto it = doc.find(field);
    if (it == doc.end()) {
        throw ParseError(std::string("problem file: missing field \"") + field + "\"");
    }
    if (!it->is_number_integer()) {
        throw ParseError(std::string("problem file: field \"") + field +
                         "\" must be an integer");
    }
    return it->get<long long>();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// ---------------------------------------------------------------------------
// Option plumbing shared by the problem-consuming subcommands.
// ---------------------------------------------------------------------------

struct SpecFlags {
    std::string input;
    long long n = 0;
    long long d = 0;
    std::string constraints;
    CLI::Option* input_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* d_opt = nullptr;
    CLI::Option* constraints_opt = nullptr;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& flags) {
    flags.input_opt =
        cmd->add_option("--input", flags.input, "problem file (JSON)");
    flags.n_opt = cmd->add_option("--n", flags.n, "ambient projective dimension");
    flags.d_opt = cmd->add_option("--d", flags.d, "curve degree");
    flags.constraints_opt =
        cmd->add_option("--constraints", flags.constraints,
                        "comma-separated constraint codimensions");
}

ProblemInput resolve_problem(const SpecFlags& flags) {
    const bool inline_given = flags.n_opt->count() > 0 ||
                              flags.d_opt->count() > 0 ||
                              flags.constraints_opt->count() > 0;
    if (flags.input_opt->count() > 0) {
        if (inline_given) {
            throw ParseError("--input excludes the inline --n/--d/--constraints flags");
        }
        return parse_problem(read_file(flags.input));
    }
    if (flags.n_opt->count() == 0 || flags.d_opt->count() == 0 ||
        flags.constraints_opt->count() == 0) {
        throw ParseError("provide --input or all of --n, --d, --constraints");
    }
    ProblemInput out;
    out.spec = ProblemSpec{static_cast<int>(flags.n), static_cast<int>(flags.d),
                           ConstraintTuple{parse_csv_ints(flags.constraints)}};
    validate_ranges(out.spec);
    return out;
}

// ---------------------------------------------------------------------------
// Report assembly.  All exact values serialize as strings ("p" or "p/q"),
// never as floating point; field order is fixed so identical computations
// print byte-identical reports.
// ---------------------------------------------------------------------------

ordered_json inputs_json(const char* command, const ProblemSpec& spec) {
    ordered_json inputs;
    inputs["command"] = command;
    inputs["n"] = spec.n;
    inputs["d"] = spec.d;
    inputs["constraints"] = spec.mu.codims();
    return inputs;
}

ordered_json terms_json(const std::vector<TermEntry>& terms) {
    ordered_json out = ordered_json::array();
    for (const TermEntry& term : terms) {
        out.push_back(ordered_json{
            {"k", term.k}, {"m", term.m}, {"value", to_string(term.value)}});
    }
    return out;
}

ordered_json cache_json(const MemoStore::Stats& stats) {
    return ordered_json{{"hits", stats.hits}, {"misses", stats.misses}};
}

void emit(const ordered_json& report, const std::string& format,
          const std::vector<std::pair<std::string, std::string>>& text_lines) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    for (const auto& [label, value] : text_lines) {
        if (label.empty()) {
            std::cout << value << "\n";
        } else {
            std::cout << label << ": " << value << "\n";
        }
    }
}

std::unique_ptr<CacheStore> open_cache(const std::string& path) {
    if (path.empty()) {
        return nullptr;
    }
    return std::make_unique<CacheStore>(path);
}

// ---------------------------------------------------------------------------
// Subcommand runners.
// ---------------------------------------------------------------------------

int run_rational(const SpecFlags& flags, const std::string& cache_path,
                 const std::string& format) {
    const ProblemInput input = resolve_problem(flags);
    auto store = open_cache(cache_path);
    GWEngine engine(store.get());

    const Rational value = engine.count_rational(input.spec);

    ordered_json report;
    report["inputs"] = inputs_json("rational", input.spec);
    report["result"] = to_string(value);
    report["cache"] = cache_json(engine.memo().stats());
    emit(report, format, {{"", to_string(value)}});
    return 0;
}

int run_descendant(const SpecFlags& flags, long long b, long long c,
                   const std::string& cache_path, const std::string& format) {
    // Constraints are optional here: a lone descendant insertion is a valid
    // invariant.  Inline resolution therefore bypasses resolve_problem.
    ProblemInput input;
    if (flags.input_opt->count() > 0) {
        input = parse_problem(read_file(flags.input));
    } else {
        if (flags.n_opt->count() == 0 || flags.d_opt->count() == 0) {
            throw ParseError("provide --input or both --n and --d");
        }
        std::vector<int> codims;
        if (flags.constraints_opt->count() > 0) {
            codims = parse_csv_ints(flags.constraints);
        }
        input.spec = ProblemSpec{static_cast<int>(flags.n),
                                 static_cast<int>(flags.d),
                                 ConstraintTuple{std::move(codims)}};
        validate_ranges(input.spec);
    }

    auto store = open_cache(cache_path);
    GWEngine engine(store.get());

    const DescendantSpec dspec{input.spec.n, input.spec.d, static_cast<int>(b),
                               static_cast<int>(c), input.spec.mu};
    const Rational value = engine.descendant(dspec);

    ordered_json report;
    report["inputs"] = inputs_json("descendant", input.spec);
    report["inputs"]["b"] = b;
    report["inputs"]["c"] = c;
    report["result"] = to_string(value);
    report["cache"] = cache_json(engine.memo().stats());
    emit(report, format, {{"", to_string(value)}});
    return 0;
}

int run_cr1(const SpecFlags& flags, const std::string& cache_path,
            const std::string& format) {
    const ProblemInput input = resolve_problem(flags);
    auto store = open_cache(cache_path);
    GWEngine engine(store.get());

    std::vector<TermEntry> terms;
    const Rational via_theta = cr1_theta(engine, input.spec, Kernel::parallel, &terms);
    const Rational via_eta = cr1_eta(engine, input.spec);
    if (via_eta != via_theta) {
        throw InternalInconsistencyError(
            "node-correction routes disagree for " +
            key_nodal(input.spec.n, input.spec.d, input.spec.mu) + ": " +
            to_string(via_eta) + " vs " + to_string(via_theta));
    }

    ordered_json report;
    report["inputs"] = inputs_json("cr1", input.spec);
    report["result"] = to_string(via_eta);
    report["cr1_eta"] = to_string(via_eta);
    report["cr1_theta"] = to_string(via_theta);
    report["terms"] = terms_json(terms);
    report["cache"] = cache_json(engine.memo().stats());
    emit(report, format,
         {{"result", to_string(via_eta)},
          {"cr1_eta", to_string(via_eta)},
          {"cr1_theta", to_string(via_theta)}});
    return 0;
}

int run_nodal(const SpecFlags& flags, const std::string& fixtures_flag,
              const std::string& cache_path, const std::string& format) {
    const ProblemInput input = resolve_problem(flags);
    const std::string fixtures_path =
        !fixtures_flag.empty() ? fixtures_flag : input.rt_fixtures;
    if (fixtures_path.empty()) {
        throw MissingFixtureError(
            "the nodal count needs a genus-one fixture table: pass "
            "--rt-fixtures or set \"rt_fixtures\" in the problem file");
    }
    const RTFixtureTable fixtures = RTFixtureTable::load(fixtures_path);

    auto store = open_cache(cache_path);
    GWEngine engine(store.get());

    NodalBreakdown breakdown;
    const Rational value =
        count_nodal(engine, input.spec, fixtures, Kernel::parallel, &breakdown);

    ordered_json report;
    report["inputs"] = inputs_json("nodal", input.spec);
    report["inputs"]["rt_fixtures"] = fixtures_path;
    report["result"] = to_string(value);
    report["rt"] = to_string(breakdown.rt);
    report["cr1_eta"] = to_string(breakdown.cr1_eta);
    report["cr1_theta"] = to_string(breakdown.cr1_theta);
    report["terms"] = terms_json(breakdown.terms);
    report["cache"] = cache_json(engine.memo().stats());
    emit(report, format,
         {{"result", to_string(value)},
          {"rt", to_string(breakdown.rt)},
          {"cr1_eta", to_string(breakdown.cr1_eta)},
          {"cr1_theta", to_string(breakdown.cr1_theta)}});
    return 0;
}

int run_theta(long long k, long long m, const std::string& format) {
    const Rational value = theta_closed(k, m);

    ordered_json report;
    report["inputs"] = ordered_json{{"command", "theta"}, {"k", k}, {"m", m}};
    report["result"] = to_string(value);
    emit(report, format, {{"", to_string(value)}});
    return 0;
}

// ---------------------------------------------------------------------------
// Self test: a fixed battery of exact cross-checks, every one answerable
// without touching the filesystem.  The reference kernel and a fresh
// in-memory engine keep the report byte-stable across cold runs.
// ---------------------------------------------------------------------------

int run_selftest(const std::string& format) {
    GWEngine engine;
    ordered_json checks = ordered_json::array();
    bool all_ok = true;
    const auto record = [&](const char* name, bool ok) {
        checks.push_back(ordered_json{{"name", name}, {"status", ok ? "ok" : "fail"}});
        all_ok = all_ok && ok;
    };

    // Signed blow-down weights: inductive definition against closed form.
    {
        bool ok = true;
        for (long k = 1; 2 * k <= 10; ++k) {
            for (long m = 0; 2 * k + m <= 10; ++m) {
                ok = ok && theta_recursive(k, m) == theta_closed(k, m);
            }
        }
        record("theta-identity", ok);
    }

    // Set-partition counts: boundary rows plus one deep frozen value.
    {
        bool ok = true;
        for (long a = 1; a <= 8; ++a) {
            ok = ok && stirling_split(a, 1) == 1 && stirling_split(a, a) == 1;
        }
        ok = ok && stirling_split(4, 2) == 7 && stirling_split(9, 4) == 7770;
        record("partition-counts", ok);
    }

    // Degree-1 counts against the Grassmannian walk.
    {
        bool ok = true;
        const std::vector<std::pair<int, std::vector<int>>> cases = {
            {3, {2, 2, 2, 2}}, {4, {3, 3, 3}}, {4, {3, 3, 2, 2}}, {5, {4, 4, 3}},
        };
        for (const auto& [n, codims] : cases) {
            const ProblemSpec spec{n, 1, ConstraintTuple{codims}};
            ok = ok && engine.count_rational(spec) ==
                           Rational(schubert_lines_oracle(n, codims));
        }
        record("line-counts", ok);
    }

    // Plane counts against the independent degree recursion.
    {
        bool ok = true;
        for (int d = 1; d <= 3; ++d) {
            const ProblemSpec spec{
                2, d,
                ConstraintTuple{std::vector<int>(static_cast<std::size_t>(3 * d - 1), 2)}};
            ok = ok && engine.count_rational(spec) ==
                           Rational(plane_recursion_oracle(d));
        }
        record("plane-counts", ok);
    }

    // Cotangent-class pairings on the pointed moduli of curves.
    {
        const bool ok = psi_moduli_oracle({1, 1, 0, 0, 0}) == 2 &&
                        psi_moduli_oracle({2, 0, 0, 0, 0}) == 1;
        record("psi-pairings", ok);
    }

    // One-pointed descendants against the quantum-cohomology series.
    {
        bool ok = true;
        for (int c = 0; c <= 2; ++c) {
            const int b = 3 - c; // degree-1 plane datum: b + c = (n+1)d + n - 2
            ok = ok && engine.descendant_raw(2, 1, b, c, {}) ==
                           j_function_descendant_oracle(2, 1, b, c);
        }
        ok = ok && engine.descendant_raw(2, 1, 1, 2, {}) == 1 &&
             engine.descendant_raw(2, 1, 2, 1, {}) == -3 &&
             engine.descendant_raw(2, 1, 3, 0, {}) == 6;
        record("descendant-series", ok);
    }

    // Both node-correction routes on plane and space problems.
    {
        bool ok = true;
        const long plane_cr1[] = {1, 4, 84};
        for (int d = 1; d <= 3; ++d) {
            const ProblemSpec spec{
                2, d,
                ConstraintTuple{std::vector<int>(static_cast<std::size_t>(3 * d - 1), 2)}};
            const Rational eta = cr1_eta(engine, spec, Kernel::serial);
            const Rational theta = cr1_theta(engine, spec, Kernel::serial);
            ok = ok && eta == plane_cr1[d - 1] && theta == plane_cr1[d - 1];
        }
        const ProblemSpec space{3, 2, ConstraintTuple{{3, 3, 3, 2}}};
        ok = ok && cr1_eta(engine, space, Kernel::serial) ==
                       cr1_theta(engine, space, Kernel::serial);
        record("route-equality", ok);
    }

    // Forward binomial transform reconstructs the uncorrected pairings.
    {
        bool ok = true;
        const ProblemSpec space{3, 2, ConstraintTuple{{3, 3, 3, 2}}};
        for (int k = 1; 2 * k <= 4; ++k) {
            for (int m = 0; 2 * k + m <= 4; ++m) {
                const int dim = vbar_dimension(3, k, m);
                for (int l = 0; l <= dim; ++l) {
                    Rational forward = 0;
                    for (int mstar = m;; ++mstar) {
                        const int rstar = vbar_dimension(3, k, mstar) - l;
                        if (rstar < 0) {
                            break;
                        }
                        const Integer coeff =
                            binomial(mstar, m) * ipow(k, mstar - m);
                        forward += Rational(coeff) *
                                   eta_number(engine, space, k, mstar, l, rstar,
                                              Kernel::serial);
                    }
                    ok = ok && forward == eta_tilde_number(engine, space, k, m, l,
                                                           dim - l, Kernel::serial);
                }
            }
        }
        record("transform-roundtrip", ok);
    }

    // Synthetic pipeline round trip: rt = 2X + cr1 must return X exactly.
    {
        bool ok = true;
        const ProblemSpec spec{
            2, 3, ConstraintTuple{std::vector<int>(8, 2)}};
        const Rational cr1 = cr1_eta(engine, spec, Kernel::serial);
        for (const long x : {0L, 1L, -7L, 12345L}) {
            RTFixtureTable fixtures;
            fixtures.set(key_rt(spec.n, spec.d, spec.mu),
                         Rational(2 * x) + cr1);
            ok = ok && count_nodal(engine, spec, fixtures, Kernel::serial) == x;
        }
        record("pipeline-roundtrip", ok);
    }

    ordered_json report;
    report["inputs"] = ordered_json{{"command", "selftest"}};
    report["result"] = all_ok ? "ok" : "fail";
    report["checks"] = checks;
    report["cache"] = cache_json(engine.memo().stats());

    if (format == "text") {
        for (const auto& check : checks) {
            std::cout << check["name"].get<std::string>() << ": "
                      << check["status"].get<std::string>() << "\n";
        }
        std::cout << "result: " << (all_ok ? "ok" : "fail") << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return all_ok ? 0 : 1;
}

} // namespace

ProblemInput parse_problem(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("problem file: top level must be a JSON object");
    }

    const long long n = require_int_field(doc, "n");
    const long long d = require_int_field(doc, "d");

    const auto constraints = doc.find("constraints");
    if (constraints == doc.end() || !constraints->is_array()) {
        throw ParseError("problem file: field \"constraints\" must be an array of codimensions");
    }
    std::vector<int> codims;
    for (std::size_t i = 0; i < constraints->size(); ++i) {
        const auto& entry = (*constraints)[i];
        if (!entry.is_number_integer()) {
            throw ParseError("problem file: constraints[" + std::to_string(i) +
                             "] must be an integer");
        }
        codims.push_back(static_cast<int>(entry.get<long long>()));
    }

    ProblemInput out;
    out.spec = ProblemSpec{static_cast<int>(n), static_cast<int>(d),
                           ConstraintTuple{std::move(codims)}};
    validate_ranges(out.spec);

    const auto fixtures = doc.find("rt_fixtures");
    if (fixtures != doc.end()) {
        if (!fixtures->is_string()) {
            throw ParseError("problem file: field \"rt_fixtures\" must be a path string");
        }
        out.rt_fixtures = fixtures->get<std::string>();
    }
    return out;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Exact counts of one-nodal rational curves in projective n-space"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string cache_path;
    std::string fixtures_flag;

    SpecFlags rational_flags;
    SpecFlags descendant_flags;
    SpecFlags cr1_flags;
    SpecFlags nodal_flags;
    long long theta_k = 0;
    long long theta_m = 0;
    long long desc_b = 0;
    long long desc_c = 0;
    std::string selftest_format = "json";

    const auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
    };
    const auto add_cache = [&cache_path](CLI::App* cmd) {
        cmd->add_option("--cache", cache_path, "persistent value cache (JSON lines)");
    };

    int exit_code = 0;

    CLI::App* rational =
        app.add_subcommand("rational", "count rational curves through constraints");
    add_spec_flags(rational, rational_flags);
    add_format(rational);
    add_cache(rational);
    rational->callback([&] { exit_code = run_rational(rational_flags, cache_path, format); });

    CLI::App* descendant = app.add_subcommand(
        "descendant", "one-pointed descendant invariant (psi^b ev*h^c at the special point)");
    add_spec_flags(descendant, descendant_flags);
    descendant->add_option("--b", desc_b, "psi exponent at the special point")->required();
    descendant->add_option("--c", desc_c, "hyperplane exponent at the special point")->required();
    add_format(descendant);
    add_cache(descendant);
    descendant->callback([&] {
        exit_code = run_descendant(descendant_flags, desc_b, desc_c, cache_path, format);
    });

    CLI::App* cr1 = app.add_subcommand("cr1", "node-correction term, both routes");
    add_spec_flags(cr1, cr1_flags);
    add_format(cr1);
    add_cache(cr1);
    cr1->callback([&] { exit_code = run_cr1(cr1_flags, cache_path, format); });

    CLI::App* nodal = app.add_subcommand("nodal", "count one-nodal rational curves");
    add_spec_flags(nodal, nodal_flags);
    nodal->add_option("--rt-fixtures", fixtures_flag,
                      "genus-one fixture table (JSON)");
    add_format(nodal);
    add_cache(nodal);
    nodal->callback([&] {
        exit_code = run_nodal(nodal_flags, fixtures_flag, cache_path, format);
    });

    CLI::App* theta = app.add_subcommand("theta", "signed blow-down weight Theta(k, m)");
    theta->add_option("--k", theta_k, "component count")->required();
    theta->add_option("--m", theta_m, "node-constraint count")->required();
    add_format(theta);
    theta->callback([&] { exit_code = run_theta(theta_k, theta_m, format); });

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the deterministic invariant battery");
    selftest->add_option("--format", selftest_format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    selftest->callback([&] { exit_code = run_selftest(selftest_format); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

} // namespace nodal
