#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An input violates one of the dimension conditions (genus-0, nodal, or an
// oracle's top-degree requirement).
class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

// A problem file or serialized value failed to parse or validate.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// A required fixture key is absent from the fixture table.
class MissingFixtureError : public Error {
public:
    explicit MissingFixtureError(const std::string& what) : Error(what) {}
};

// The persistent cache file is already locked by another process.
class CacheLockError : public Error {
public:
    explicit CacheLockError(const std::string& what) : Error(what) {}
};

// An I/O failure on a cache, fixture, or problem file.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

// Two computations that must agree, disagreed (e.g. the two correction-term
// routes, or a count that must be an integer is not).  Always a bug or a bad
// fixture; carries a diagnostic report in the message.
class InternalInconsistencyError : public Error {
public:
    explicit InternalInconsistencyError(const std::string& what) : Error(what) {}
};

} // namespace nodal
