#include "opecalc/report.hpp"

#include "json.hpp"

namespace opecalc {

long Report::passes() const {
    long n = 0;
    for (const auto& g : groups) n += g.pass;
    return n;
}

long Report::failures() const {
    long n = 0;
    for (const auto& g : groups) n += g.fail;
    return n;
}

long Report::undetermined() const {
    long n = 0;
    for (const auto& g : groups) n += g.undetermined;
    return n;
}

std::string Report::to_text() const {
    std::string s = "== " + title + " ==\n";
    for (const auto& [k, v] : meta) s += k + " = " + v + "\n";
    for (const auto& g : groups) {
        s += "[" + g.status() + "] " + g.id + "  (pass " + std::to_string(g.pass) +
             ", fail " + std::to_string(g.fail) + ", undetermined " +
             std::to_string(g.undetermined) + ")";
        if (!g.domain.empty()) s += "  domain: " + g.domain;
        s += "\n";
        for (const auto& r : g.samples)
            s += "    " + r.status + " at " + r.indices +
                 (r.witness.empty() ? "" : ": " + r.witness) + "\n";
    }
    s += "total: pass " + std::to_string(passes()) + ", fail " + std::to_string(failures()) +
         ", undetermined " + std::to_string(undetermined()) + "\n";
    return s;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["title"] = title;
    for (const auto& [k, v] : meta) j["meta"][k] = v;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& g : groups) {
        nlohmann::ordered_json cg;
        cg["id"] = g.id;
        cg["status"] = g.status();
        cg["domain"] = g.domain;
        cg["pass"] = g.pass;
        cg["fail"] = g.fail;
        cg["undetermined"] = g.undetermined;
        cg["samples"] = nlohmann::ordered_json::array();
        for (const auto& r : g.samples) {
            nlohmann::ordered_json rr;
            rr["status"] = r.status;
            rr["indices"] = r.indices;
            rr["witness"] = r.witness;
            cg["samples"].push_back(rr);
        }
        j["checks"].push_back(cg);
    }
    j["counts"]["pass"] = passes();
    j["counts"]["fail"] = failures();
    j["counts"]["undetermined"] = undetermined();
    return j.dump(2) + "\n";
}

}  // namespace opecalc
