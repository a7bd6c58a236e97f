#include "nodal/pipeline.hpp"

#include "nodal/combinatorics.hpp"
#include "nodal/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <utility>

namespace nodal {

namespace {

void require_nodal(const char* who, const ProblemSpec& spec) {
    validate_ranges(spec);
    if (!validate_nodal(spec)) {
        throw DimensionMismatchError(
            std::string(who) + ": total constraint codimension " +
            std::to_string(spec.mu.total_codim()) +
            " does not meet the one-nodal condition d(n+1)-1 = " +
            std::to_string(spec.d * (spec.n + 1) - 1));
    }
}

// Pairing of a^l against the full class for one component space: the
// binomially weighted sum over hyperplane powers l of the complementary-
// degree symmetric class.  Shared shape of both route inner sums.
template <typename F>
Rational hyperplane_sum(int n, int dim, F&& pair_at) {
    Rational inner = 0;
    for (int l = 0; l <= dim; ++l) {
        inner += Rational(binomial(n + 1, l)) * pair_at(l, dim - l);
    }
    return inner;
}

} // namespace

Rational cr1_eta(GWEngine& engine, const ProblemSpec& spec, Kernel kernel,
                 std::vector<TermEntry>* terms) {
    require_nodal("cr1_eta", spec);

    const bool use_memo = (kernel == Kernel::parallel && terms == nullptr);
    const std::string key = key_cr1(spec.n, spec.d, spec.mu, "eta");
    if (use_memo) {
        if (auto hit = engine.memo().lookup(key)) {
            return *hit;
        }
    }
    if (terms != nullptr) {
        terms->clear();
    }

    Rational total = 0;
    for (int k = 1; 2 * k <= spec.n + 1; ++k) {
        const int dim = vbar_dimension(spec.n, k, 0);
        const Rational inner =
            hyperplane_sum(spec.n, dim, [&](int l, int r) {
                return eta_number(engine, spec, k, 0, l, r, kernel);
            });
        Integer coeff = factorial(k - 1);
        if (k % 2 == 0) {
            coeff = -coeff;
        }
        const Rational term = Rational(coeff) * inner;
        if (terms != nullptr) {
            terms->push_back(TermEntry{k, 0, term});
        }
        total += term;
    }

    if (kernel == Kernel::parallel) {
        engine.memo().store(key, total);
    }
    return total;
}

Rational cr1_theta(GWEngine& engine, const ProblemSpec& spec, Kernel kernel,
                   std::vector<TermEntry>* terms) {
    require_nodal("cr1_theta", spec);

    const bool use_memo = (kernel == Kernel::parallel && terms == nullptr);
    const std::string key = key_cr1(spec.n, spec.d, spec.mu, "theta");
    if (use_memo) {
        if (auto hit = engine.memo().lookup(key)) {
            return *hit;
        }
    }
    if (terms != nullptr) {
        terms->clear();
    }

    Rational total = 0;
    for (int k = 1; 2 * k <= spec.n + 1; ++k) {
        for (int m = 0; 2 * k + m <= spec.n + 1; ++m) {
            const int dim = vbar_dimension(spec.n, k, m);
            const Rational inner =
                hyperplane_sum(spec.n, dim, [&](int l, int r) {
                    return eta_tilde_number(engine, spec, k, m, l, r, kernel);
                });
            const Rational term = theta_closed(k, m) * inner;
            if (terms != nullptr) {
                terms->push_back(TermEntry{k, m, term});
            }
            total += term;
        }
    }

    if (kernel == Kernel::parallel) {
        engine.memo().store(key, total);
    }
    return total;
}

RTFixtureTable RTFixtureTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open fixture table " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("fixture table " + path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("fixture table " + path + ": top level must be a JSON object");
    }
    const auto version = doc.find("version");
    if (version == doc.end() || !version->is_number_integer() ||
        version->get<long long>() != 1) {
        throw ParseError("fixture table " + path + ": missing or unsupported \"version\" (want 1)");
    }

    RTFixtureTable table;
    table.origin_ = path;
    for (const auto& [key, value] : doc.items()) {
        if (key == "version") {
            continue;
        }
        if (value.is_number_integer()) {
            table.entries_.emplace(key, Rational(static_cast<long>(value.get<long long>())));
        } else if (value.is_string()) {
            table.entries_.emplace(key, rational_from_string(value.get<std::string>()));
        } else {
            throw ParseError("fixture table " + path + ": entry \"" + key +
                             "\" must be an integer or an exact-rational string");
        }
    }
    return table;
}

void RTFixtureTable::set(const std::string& key, const Rational& value) {
    entries_[key] = value;
}

bool RTFixtureTable::contains(const std::string& key) const {
    return entries_.count(key) != 0;
}

Rational RTFixtureTable::lookup(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw MissingFixtureError("fixture table " + origin_ +
                                  " has no entry for key " + key);
    }
    return it->second;
}

Rational rt_lookup(const ProblemSpec& spec, const RTFixtureTable& fixtures) {
    require_nodal("rt_lookup", spec);
    return fixtures.lookup(key_rt(spec.n, spec.d, spec.mu));
}

Rational count_nodal(GWEngine& engine, const ProblemSpec& spec,
                     const RTFixtureTable& fixtures, Kernel kernel,
                     NodalBreakdown* breakdown) {
    require_nodal("count_nodal", spec);

    std::vector<TermEntry> terms;
    const Rational via_theta =
        cr1_theta(engine, spec, kernel, breakdown ? &terms : nullptr);
    const Rational via_eta = cr1_eta(engine, spec, kernel, nullptr);
    if (via_eta != via_theta) {
        throw InternalInconsistencyError(
            "node-correction routes disagree for " +
            key_nodal(spec.n, spec.d, spec.mu) + ": corrected-class route " +
            to_string(via_eta) + ", weighted-class route " +
            to_string(via_theta));
    }

    const Rational rt = rt_lookup(spec, fixtures);
    const Rational nodal = (rt - via_eta) / 2;
    if (!is_integer(nodal)) {
        throw InternalInconsistencyError(
            "one-nodal count is not an integer for " +
            key_nodal(spec.n, spec.d, spec.mu) + ": (" + to_string(rt) +
            " - " + to_string(via_eta) + ")/2 = " + to_string(nodal) +
            "; the fixture and the correction term have different parity");
    }
    if (spec.n >= 3 && nodal < 0) {
        throw InternalInconsistencyError(
            "one-nodal count is negative for " +
            key_nodal(spec.n, spec.d, spec.mu) + ": (" + to_string(rt) +
            " - " + to_string(via_eta) + ")/2 = " + to_string(nodal));
    }

    if (breakdown != nullptr) {
        breakdown->rt = rt;
        breakdown->cr1_eta = via_eta;
        breakdown->cr1_theta = via_theta;
        breakdown->nodal = nodal;
        breakdown->terms = std::move(terms);
    }
    return nodal;
}

bool plane_identity_check(GWEngine& engine, int d,
                          const RTFixtureTable& fixtures) {
    // On the plane the one-nodal and rational-count conditions both ask for
    // 3d-1 general points, so a single spec serves both sides.
    const ProblemSpec spec{2, d, ConstraintTuple{std::vector<int>(
                                     static_cast<std::size_t>(3 * d - 1), 2)}};
    const Rational left = count_nodal(engine, spec, fixtures);
    const Rational right =
        Rational(binomial(d - 1, 2)) * engine.count_rational(spec);
    return left == right;
}

} // namespace nodal
