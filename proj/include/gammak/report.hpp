#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace gammak {

/* A single violated invariant or failed identity, with enough context to
 * reproduce it by hand: `kind` names the law, `instance` the data it was
 * checked on, `witness` the two sides that disagreed. */
struct Finding {
    std::string kind;
    std::string instance;
    std::string witness;
};

/* Counters for one named family of checks. `skipped` counts instances that
 * fell outside a finite window (never silently dropped). */
struct Section {
    std::string name;
    std::int64_t checked = 0;
    std::int64_t passed = 0;
    std::int64_t skipped = 0;
    std::vector<Finding> findings;

    void pass(std::int64_t n = 1) { checked += n; passed += n; }
    void skip(std::int64_t n = 1) { skipped += n; }
    void fail(std::string kind, std::string instance, std::string witness);
};

struct Report {
    std::string command;
    std::string input_path;
    std::uint64_t input_digest = 0;   // FNV-1a of the input bytes, 0 if none
    int max_len = 0;
    int max_dim = 0;
    std::int64_t budget = 0;
    std::uint64_t seed = 0;
    /* deque: section() hands out references that must survive the
     * creation of later sections. */
    std::deque<Section> sections;

    Section& section(const std::string& name);
    bool clean() const;
    std::int64_t total_findings() const;

    /* Stable rendering: same data -> same bytes. */
    std::string to_json() const;
    std::string to_text() const;

    void merge(const Report& other);
};

std::uint64_t fnv1a(const void* data, std::size_t len);
std::uint64_t fnv1a(const std::string& s);

}  // namespace gammak
