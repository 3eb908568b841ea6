#pragma once

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"

namespace vbmps {

// ordered_json keeps insertion order, so identical inputs produce
// byte-identical documents.
using Json = nlohmann::ordered_json;

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(HalfInt h) { return Json{{"twice", h.twice()}}; }

// Row-major nested entry list with explicit dimensions.
inline Json to_json(const CMatrix& m) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        entries.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Json to_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

inline Json to_json(const RVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

struct CheckItem {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

// A command run: echoed inputs, nested results, and the list of checks with
// their tolerances.  timing_ms is wall time and is the one field excluded
// from byte-identity comparisons.
struct ReportDocument {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<CheckItem> checks;
    double timing_ms = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add_check(const std::string& name, bool pass, double measured, double tolerance) {
        checks.push_back({name, pass, measured, tolerance});
    }

    Json to_json() const {
        Json doc;
        doc["command"] = command;
        doc["inputs"] = inputs;
        doc["results"] = results;
        Json checks_json = Json::array();
        for (const auto& c : checks)
            checks_json.push_back(Json{{"name", c.name},
                                       {"pass", c.pass},
                                       {"measured", c.measured},
                                       {"tolerance", c.tolerance}});
        doc["checks"] = std::move(checks_json);
        doc["timing_ms"] = timing_ms;
        return doc;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "command: " << command << "\n";
        if (!inputs.empty()) os << "inputs: " << inputs.dump() << "\n";
        if (!results.empty()) os << "results:\n";
        for (auto it = results.begin(); it != results.end(); ++it)
            os << "  " << it.key() << ": " << it.value().dump() << "\n";
        if (!checks.empty()) {
            os << "checks:\n";
            for (const auto& c : checks) {
                os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
                   << "  measured=" << c.measured << "  tolerance=" << c.tolerance << "\n";
            }
        }
        os << (all_pass() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
        return os.str();
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace vbmps
