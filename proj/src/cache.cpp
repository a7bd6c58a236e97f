#include "nodal/cache.hpp"

#include "nodal/errors.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace nodal {

CacheStore::CacheStore(const std::string& path) : path_(path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND, 0644);
    if (fd_ < 0) {
        throw IoError("cannot open cache file '" + path + "': " + std::strerror(errno));
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        const int saved = errno;
        ::close(fd_);
        fd_ = -1;
        if (saved == EWOULDBLOCK || saved == EAGAIN) {
            throw CacheLockError("cache file '" + path +
                                 "' is locked by another process; concurrent "
                                 "use of one cache is unsupported");
        }
        throw IoError("cannot lock cache file '" + path + "': " + std::strerror(saved));
    }
    load();
}

CacheStore::~CacheStore() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

void CacheStore::load() {
    std::ifstream in(path_);
    if (!in) {
        throw IoError("cannot read cache file '" + path_ + "'");
    }
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto record = nlohmann::json::parse(line);
            if (record.at("version").get<int>() != kVersion) {
                std::cerr << "warning: cache '" << path_ << "' line " << line_no
                          << ": version mismatch, record ignored\n";
                continue;
            }
            const auto key = record.at("key").get<std::string>();
            const auto value = rational_from_string(record.at("value").get<std::string>());
            data_[key] = value; // later records win
            ++loaded_;
        } catch (const std::exception& e) {
            std::cerr << "warning: cache '" << path_ << "' line " << line_no
                      << ": corrupt record skipped (" << e.what() << ")\n";
        }
    }
}

std::optional<Rational> CacheStore::get(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = data_.find(key); it != data_.end()) return it->second;
    return std::nullopt;
}

void CacheStore::put(const std::string& key, const Rational& value) {
    std::lock_guard<std::mutex> lock(mutex_);
    data_[key] = value;
    nlohmann::ordered_json record;
    record["key"] = key;
    record["value"] = to_string(value);
    record["version"] = kVersion;
    const std::string line = record.dump() + "\n";
    if (::write(fd_, line.data(), line.size()) != static_cast<ssize_t>(line.size())) {
        throw IoError("short write to cache file '" + path_ + "'");
    }
}

} // namespace nodal
