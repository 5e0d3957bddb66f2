#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "chow/error.hpp"

namespace chow {

/// A graded polynomial generator: an interned name with a positive degree.
///
/// Interning is global and write-once, so generator ids are stable for the
/// lifetime of the process and polynomials can travel between rings that
/// share generators (a bundle defined over P^4 is reused verbatim on any
/// bundle built over it).  Re-interning a name with a different degree is an
/// error; the same name always means the same graded symbol.
class Generator {
public:
    static Generator intern(const std::string& name, int degree) {
        if (degree < 1) throw Error("generator degree must be >= 1: " + name);
        Table& t = table();
        std::lock_guard<std::mutex> lock(t.mutex);
        auto it = t.by_name.find(name);
        if (it != t.by_name.end()) {
            if (t.degrees[it->second] != degree)
                throw Error("generator " + name + " re-declared with degree " +
                            std::to_string(degree) + " (was " +
                            std::to_string(t.degrees[it->second]) + ")");
            return Generator(it->second);
        }
        uint32_t id = static_cast<uint32_t>(t.names.size());
        t.by_name.emplace(name, id);
        t.names.push_back(name);
        t.degrees.push_back(degree);
        return Generator(id);
    }

    /// Look up an already-interned name; throws if unknown.
    static Generator lookup(const std::string& name) {
        Table& t = table();
        std::lock_guard<std::mutex> lock(t.mutex);
        auto it = t.by_name.find(name);
        if (it == t.by_name.end()) throw Error("unknown generator " + name);
        return Generator(it->second);
    }

    uint32_t id() const { return id_; }

    std::string name() const {
        Table& t = table();
        std::lock_guard<std::mutex> lock(t.mutex);
        return t.names[id_];
    }

    int degree() const {
        Table& t = table();
        std::lock_guard<std::mutex> lock(t.mutex);
        return t.degrees[id_];
    }

    friend bool operator==(Generator a, Generator b) { return a.id_ == b.id_; }
    friend bool operator!=(Generator a, Generator b) { return a.id_ != b.id_; }
    friend bool operator<(Generator a, Generator b) { return a.id_ < b.id_; }

private:
    explicit Generator(uint32_t id) : id_(id) {}

    struct Table {
        std::mutex mutex;
        std::unordered_map<std::string, uint32_t> by_name;
        std::vector<std::string> names;
        std::vector<int> degrees;
    };
    static Table& table() {
        static Table t;
        return t;
    }

    uint32_t id_;
};

}  // namespace chow
