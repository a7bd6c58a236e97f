#include "nodal/rational.hpp"

#include "nodal/errors.hpp"

#include <cctype>

namespace nodal {

std::string to_string(const Rational& value) {
    // mpq_class::get_str already emits lowest-terms "p" or "p/q".
    return value.get_str();
}

std::string to_string(const Integer& value) {
    return value.get_str();
}

namespace {

bool looks_like_integer(std::string_view text) {
    if (text.empty()) return false;
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) return false;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    return true;
}

} // namespace

Rational rational_from_string(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!looks_like_integer(num)) {
        throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) {
        return Rational(Integer(std::string(num), 10));
    }
    const std::string_view den = text.substr(slash + 1);
    if (!looks_like_integer(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw ParseError("zero denominator: '" + std::string(text) + "'");
    }
    Rational q(Integer(std::string(num), 10), d);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& value) {
    return value.get_den() == 1;
}

Integer to_integer(const Rational& value) {
    if (!is_integer(value)) {
        throw InternalInconsistencyError(
            "expected an integer, got " + to_string(value));
    }
    return value.get_num();
}

} // namespace nodal
