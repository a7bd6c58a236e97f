#pragma once

#include "nodal/rational.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace nodal {

// Append-only persistent key-value store for exact values, one JSON record
// per line:
//   {"key":"v1|rational|2|3|2,2,2,2,2,2,2,2|","value":"12","version":1}
//
// Chosen over a binary format for inspectability and crash tolerance: a
// torn final line is skipped with a warning instead of poisoning the store,
// and for a duplicated key the latest record wins.  Records whose version
// differs from kVersion are ignored (stale format).
//
// The file is held under an exclusive advisory lock for the lifetime of the
// store; a second process (or a second store on the same path) fails fast
// with CacheLockError rather than interleaving writes.
class CacheStore {
public:
    static constexpr int kVersion = 1;

    explicit CacheStore(const std::string& path);
    ~CacheStore();

    CacheStore(const CacheStore&) = delete;
    CacheStore& operator=(const CacheStore&) = delete;

    std::optional<Rational> get(const std::string& key);

    // Inserts/overwrites in memory and appends one record to the file.
    void put(const std::string& key, const Rational& value);

    // Number of usable records loaded at open time (diagnostics).
    long long loaded_records() const { return loaded_; }

    const std::string& path() const { return path_; }

private:
    void load();

    std::string path_;
    int fd_ = -1;
    std::unordered_map<std::string, Rational> data_;
    std::mutex mutex_;
    long long loaded_ = 0;
};

} // namespace nodal
