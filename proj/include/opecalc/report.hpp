// Structured check reports shared by the library checkers and the CLI.
#pragma once

#include <string>
#include <vector>

namespace opecalc {

struct CheckRecord {
    std::string status;   // "fail" | "undetermined"
    std::string indices;  // rendered index tuple / tuple description
    std::string witness;  // rendering of the offending data
};

// Aggregated result of one sweep: counts plus capped samples of failures.
struct CheckGroup {
    std::string id;      // stable machine tag, e.g. "vertex.jacobi"
    std::string domain;  // swept domain (cutoff, index box, state set)
    long pass = 0;
    long fail = 0;
    long undetermined = 0;
    std::vector<CheckRecord> samples;

    static constexpr size_t max_samples = 8;

    void record_pass() { ++pass; }
    void record_fail(const std::string& indices, const std::string& witness) {
        ++fail;
        if (samples.size() < max_samples) samples.push_back({"fail", indices, witness});
    }
    void record_undetermined(const std::string& indices, const std::string& note = "") {
        ++undetermined;
        if (samples.size() < max_samples)
            samples.push_back({"undetermined", indices, note});
    }
    bool ok() const { return fail == 0; }
    std::string status() const {
        if (fail > 0) return "fail";
        if (pass == 0 && undetermined > 0) return "undetermined";
        return "pass";
    }
};

struct Report {
    std::string title;
    std::vector<std::pair<std::string, std::string>> meta;  // cutoff, indices, ...
    std::vector<CheckGroup> groups;

    void add(CheckGroup g) { groups.push_back(std::move(g)); }
    void merge(const Report& o) {
        for (const auto& g : o.groups) groups.push_back(g);
    }
    long passes() const;
    long failures() const;
    long undetermined() const;
    bool ok() const { return failures() == 0; }

    std::string to_text() const;
    std::string to_json() const;
};

}  // namespace opecalc
