// Acceptance gates for the one-nodal counting library.  Each gate prints one
// [PASS]/[FAIL] line; the binary exits nonzero if any gate fails.  Always-on:
// nothing here is compiled out in Release builds.

#include "nodal/cache.hpp"
#include "nodal/combinatorics.hpp"
#include "nodal/errors.hpp"
#include "nodal/genus0.hpp"
#include "nodal/intersections.hpp"
#include "nodal/oracles.hpp"
#include "nodal/pipeline.hpp"
#include "nodal/problem.hpp"
#include "nodal/rational.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace nodal;

namespace {

int failures = 0;

// Runs one acceptance criterion: catches everything, times the body, and
// enforces the stated runtime limit (limit_seconds <= 0 means untimed).
void gate(int number, const std::string& name, double limit_seconds,
          const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("unexpected exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && limit_seconds > 0 && elapsed > limit_seconds) {
        ok = false;
        detail = "exceeded the " + std::to_string(limit_seconds) + "s budget";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name << " ("
              << timing << ")";
    if (!detail.empty()) {
        std::cout << " -- " << detail;
    }
    std::cout << "\n";
    if (!ok) {
        ++failures;
    }
}

// All descending constraint tuples with codimensions in [2, n] whose total
// codimension-minus-one count hits `target`.
std::vector<std::vector<int>> constraint_tuples(int n, int target) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const auto grow = [&](auto&& self, int remaining, int max_codim) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int c = std::min(max_codim, remaining + 1); c >= 2; --c) {
            cur.push_back(c);
            self(self, remaining - (c - 1), c);
            cur.pop_back();
        }
    };
    if (n >= 2) {
        grow(grow, target, n);
    }
    return out;
}

// Every problem the two-route criterion ranges over: one-nodal-valid
// (n, d, mu) with n <= 4 and d <= 3.
std::vector<ProblemSpec> route_matrix() {
    std::vector<ProblemSpec> specs;
    for (int n = 2; n <= 4; ++n) {
        for (int d = 1; d <= 3; ++d) {
            for (const auto& tuple : constraint_tuples(n, d * (n + 1) - 1)) {
                specs.push_back(ProblemSpec{n, d, ConstraintTuple{tuple}});
            }
        }
    }
    return specs;
}

// Captured stdout and exit status of one run of the command-line binary.
struct ToolRun {
    int status = -1;
    std::string out;
};

ToolRun run_tool(const std::string& bin, const std::string& args) {
    ToolRun result;
    const std::string cmd = bin + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
        return result;
    }
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.out.append(buffer, got);
    }
    const int rc = ::pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

std::string env_or_empty(const char* name) {
    const char* value = std::getenv(name);
    return value ? std::string(value) : std::string();
}

// Environment wins; otherwise the locations the build baked in, so the
// binary also runs bare.
std::string fixture_file(const char* env_name, const char* filename) {
    const std::string from_env = env_or_empty(env_name);
    if (!from_env.empty()) {
        return from_env;
    }
    return std::string(NODAL_DEFAULT_FIXTURES_DIR) + "/" + filename;
}

} // namespace

int main() {
    std::cout << "acceptance: exact one-nodal rational curve counts\n";

    // A single engine shared by the heavyweight gates keeps the memo warm
    // across the matrix, the way real invocations run.
    GWEngine engine;

    gate(1, "signed blow-down weights: recursion equals closed form", 1.0,
         [](std::string& detail) {
             int checked = 0;
             for (long k = 1; 2 * k <= 14; ++k) {
                 for (long m = 0; 2 * k + m <= 14; ++m) {
                     if (theta_recursive(k, m) != theta_closed(k, m)) {
                         detail = "mismatch at k=" + std::to_string(k) +
                                  " m=" + std::to_string(m);
                         return false;
                     }
                     ++checked;
                 }
             }
             detail = std::to_string(checked) + " pairs";
             return true;
         });

    gate(2, "block counts: recursion equals set-partition enumeration", 5.0,
         [](std::string& detail) {
             for (int kstar = 1; kstar <= 9; ++kstar) {
                 // Restricted-growth strings enumerate every partition of a
                 // labeled k*-set exactly once.
                 std::map<int, Integer> by_blocks;
                 std::vector<int> rgs(static_cast<std::size_t>(kstar), 0);
                 const auto walk = [&](auto&& self, int pos, int max_used) -> void {
                     if (pos == kstar) {
                         by_blocks[max_used + 1] += 1;
                         return;
                     }
                     for (int b = 0; b <= max_used + 1; ++b) {
                         rgs[static_cast<std::size_t>(pos)] = b;
                         self(self, pos + 1, std::max(max_used, b));
                     }
                 };
                 walk(walk, 1, 0);
                 for (int k = 1; k <= kstar; ++k) {
                     if (stirling_split(kstar, k) != by_blocks[k]) {
                         detail = "mismatch at k*=" + std::to_string(kstar) +
                                  " k=" + std::to_string(k);
                         return false;
                     }
                 }
                 if (stirling_split(kstar, kstar + 1) != 0 ||
                     stirling_split(kstar, 0) != 0) {
                     detail = "out-of-range block counts must vanish";
                     return false;
                 }
             }
             return true;
         });

    gate(3, "degree-1 counts equal the Grassmannian walk up to n=6", 10.0,
         [&engine](std::string& detail) {
             // The classical two-lines value is non-negotiable.
             if (engine.count_rational(
                     ProblemSpec{3, 1, ConstraintTuple{{2, 2, 2, 2}}}) != 2) {
                 detail = "two transversals of four general lines";
                 return false;
             }
             int checked = 0;
             for (int n = 2; n <= 6; ++n) {
                 for (const auto& tuple : constraint_tuples(n, 2 * (n - 1))) {
                     const ProblemSpec spec{n, 1, ConstraintTuple{tuple}};
                     const Rational lhs = engine.count_rational(spec);
                     const Rational rhs =
                         Rational(schubert_lines_oracle(n, tuple));
                     if (lhs != rhs) {
                         detail = "mismatch at " + key_rational(n, 1, spec.mu);
                         return false;
                     }
                     ++checked;
                 }
             }
             detail = std::to_string(checked) + " problems";
             return true;
         });

    gate(4, "plane counts equal the degree recursion up to d=5", 30.0,
         [&engine](std::string& detail) {
             const long frozen[] = {1, 1, 12};
             for (int d = 1; d <= 5; ++d) {
                 const ProblemSpec spec{
                     2, d, ConstraintTuple{std::vector<int>(3 * d - 1, 2)}};
                 const Rational lhs = engine.count_rational(spec);
                 const Rational rhs = Rational(plane_recursion_oracle(d));
                 if (lhs != rhs) {
                     detail = "mismatch at d=" + std::to_string(d);
                     return false;
                 }
                 if (d <= 3 && lhs != frozen[d - 1]) {
                     detail = "frozen low-degree value broke at d=" +
                              std::to_string(d);
                     return false;
                 }
             }
             return true;
         });

    gate(5, "top cotangent self-pairing on pointed moduli is one", 1.0,
         [](std::string& detail) {
             for (int j = 3; j <= 8; ++j) {
                 std::vector<int> exponents(static_cast<std::size_t>(j) + 1, 0);
                 exponents[0] = j - 2;
                 if (psi_moduli_oracle(exponents) != 1) {
                     detail = "failed at |J|=" + std::to_string(j);
                     return false;
                 }
             }
             return true;
         });

    const std::vector<ProblemSpec> matrix = route_matrix();

    gate(6, "both node-correction routes agree on the full matrix", 300.0,
         [&engine, &matrix](std::string& detail) {
             if (matrix.size() != 55) {
                 detail = "expected 55 one-nodal-valid problems, enumerated " +
                          std::to_string(matrix.size());
                 return false;
             }
             for (const ProblemSpec& spec : matrix) {
                 if (cr1_eta(engine, spec) != cr1_theta(engine, spec)) {
                     detail = "routes disagree at " +
                              key_nodal(spec.n, spec.d, spec.mu);
                     return false;
                 }
             }
             detail = std::to_string(matrix.size()) + " problems";
             return true;
         });

    gate(7, "corrected classes recombine into uncorrected ones exactly", 0.0,
         [&engine, &matrix](std::string& detail) {
             int checked = 0;
             for (const ProblemSpec& spec : matrix) {
                 for (int k = 1; 2 * k <= spec.n + 1; ++k) {
                     for (int m = 0; 2 * k + m <= spec.n + 1; ++m) {
                         const int dim = vbar_dimension(spec.n, k, m);
                         for (int l = 0; l <= dim; ++l) {
                             Rational recombined = 0;
                             for (int mstar = m;; ++mstar) {
                                 const int rstar =
                                     vbar_dimension(spec.n, k, mstar) - l;
                                 if (rstar < 0) {
                                     break;
                                 }
                                 const Integer coeff =
                                     binomial(mstar, m) * ipow(k, mstar - m);
                                 recombined +=
                                     Rational(coeff) *
                                     eta_number(engine, spec, k, mstar, l, rstar);
                             }
                             if (recombined != eta_tilde_number(engine, spec, k,
                                                                m, l, dim - l)) {
                                 detail = "round trip broke at " +
                                          key_eta_tilde(spec.n, spec.d, spec.mu,
                                                        k, m, l, dim - l);
                                 return false;
                             }
                             ++checked;
                         }
                     }
                 }
             }
             detail = std::to_string(checked) + " recombinations";
             return true;
         });

    gate(8, "synthetic fixtures round-trip one hundred random counts", 0.0,
         [&engine](std::string& detail) {
             const ProblemSpec spec{
                 2, 3, ConstraintTuple{std::vector<int>(8, 2)}};
             const Rational correction = cr1_eta(engine, spec);
             std::mt19937_64 rng(20260819ull);
             std::uniform_int_distribution<long> draw(-1000000000000L,
                                                      1000000000000L);
             for (int i = 0; i < 100; ++i) {
                 const long x = draw(rng);
                 RTFixtureTable table;
                 table.set(key_rt(spec.n, spec.d, spec.mu),
                           Rational(2 * Integer(x)) + correction);
                 if (count_nodal(engine, spec, table) != Rational(Integer(x))) {
                     detail = "failed at X=" + std::to_string(x);
                     return false;
                 }
             }
             return true;
         });

    const std::string fixtures_path =
        fixture_file("NODAL_RT_FIXTURES", "rt_fixtures.json");
    bool have_fixtures = false;
    RTFixtureTable fixtures;
    try {
        fixtures = RTFixtureTable::load(fixtures_path);
        have_fixtures = true;
    } catch (const std::exception&) {
        have_fixtures = false;
    }

    if (have_fixtures) {
        gate(9, "published counts reproduce from the fixture table", 0.0,
             [&engine, &fixtures](std::string& detail) {
                 const ProblemSpec quartic{
                     3, 4, ConstraintTuple{{3, 3, 3, 3, 3, 2, 2, 2, 2, 2}}};
                 if (count_nodal(engine, quartic, fixtures) != 1800) {
                     detail = "space quartics through five points and five lines";
                     return false;
                 }
                 const ProblemSpec sextic{
                     6, 6,
                     ConstraintTuple{{6, 6, 6, 6, 6, 6, 5, 4, 3, 2, 2}}};
                 if (count_nodal(engine, sextic, fixtures) != 20340) {
                     detail = "sextics in six-space against the mixed spread";
                     return false;
                 }
                 for (int d = 1; d <= 4; ++d) {
                     if (!plane_identity_check(engine, d, fixtures)) {
                         detail = "plane identity broke at d=" + std::to_string(d);
                         return false;
                     }
                 }
                 return true;
             });
    } else {
        // Without an external invariant table the published counts are out of
        // reach; hold the corrections against their recorded snapshots so any
        // drift in the computation is still caught.
        gate(9, "node corrections match the recorded snapshots (no fixture table)",
             0.0, [&engine](std::string& detail) {
                 const std::string path =
                     fixture_file("NODAL_CR1_SNAPSHOTS", "cr1_snapshots.json");
                 std::ifstream in(path);
                 if (!in) {
                     detail = "cannot read " + path;
                     return false;
                 }
                 const nlohmann::json snapshots = nlohmann::json::parse(in);
                 if (snapshots.at("version").get<int>() != 1) {
                     detail = "unsupported snapshot version";
                     return false;
                 }
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
                     if (parts.size() != 6 || parts[1] != "cr1") {
                         detail = "unrecognized snapshot key " + key;
                         return false;
                     }
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
                     const ProblemSpec spec{std::stoi(parts[2]),
                                            std::stoi(parts[3]),
                                            ConstraintTuple{codims}};
                     const Rational expected =
                         value.is_string()
                             ? rational_from_string(value.get<std::string>())
                             : Rational(value.get<long>());
                     if (cr1_eta(engine, spec) != expected) {
                         detail = "drift at " + key;
                         return false;
                     }
                     ++checked;
                 }
                 detail = std::to_string(checked) + " snapshots";
                 return checked > 0;
             });
    }

    gate(10, "two cold self-test runs are byte-identical", 0.0,
         [](std::string& detail) {
             std::string bin = env_or_empty("NODAL_CLI");
             if (bin.empty()) {
                 bin = NODAL_DEFAULT_CLI;
             }
             const ToolRun first = run_tool(bin, "selftest");
             const ToolRun second = run_tool(bin, "selftest");
             if (first.status != 0 || second.status != 0) {
                 detail = "self-test exited nonzero";
                 return false;
             }
             if (first.out.empty() || first.out != second.out) {
                 detail = "reports differ between runs";
                 return false;
             }
             detail = std::to_string(first.out.size()) + " identical bytes";
             return true;
         });

    std::cout << "acceptance: " << (10 - failures) << "/10 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
