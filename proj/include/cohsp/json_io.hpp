#pragma once

// JSON schemas of the external interfaces: label sets as [[re, im], ...],
// Fock states as {n_max, amps}, space specs as {labels}, contour kernels as
// {cauchy, terms}, gate dumps, and check reports. Parse errors name the
// offending field.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohsp/complex_sets.hpp"
#include "cohsp/contour.hpp"
#include "cohsp/errors.hpp"
#include "cohsp/fock.hpp"
#include "cohsp/gates.hpp"
#include "cohsp/report.hpp"

namespace cohsp {

using nlohmann::json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(field + ": expected a [re, im] pair of numbers");
    const double re = j[0].get<double>(), im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError(field + ": coordinates must be finite");
    return {re, im};
}

inline std::vector<Label> labels_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError(field + ": expected an array of [re, im] pairs");
    std::vector<Label> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(Label(complex_from_json(j[i], field + "[" + std::to_string(i) + "]")));
    return out;
}

inline std::vector<Label> labels_from_string(const std::string& text, const std::string& field) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(field + ": " + e.what());
    }
    return labels_from_json(j, field);
}

inline CSet cset_from_string(const std::string& text, const std::string& field) {
    return CSet(labels_from_string(text, field));
}

inline json cset_to_json(const CSet& s) {
    json j = json::array();
    for (const auto& l : s) j.push_back(json::array({l.re, l.im}));
    return j;
}

inline json state_to_json(const FockVector& v) {
    json amps = json::array();
    for (Eigen::Index n = 0; n < v.size(); ++n) amps.push_back(complex_to_json(v(n)));
    return json{{"n_max", v.size() - 1}, {"amps", amps}};
}

inline FockVector state_from_json(const json& j) {
    if (!j.contains("n_max") || !j["n_max"].is_number_integer())
        throw ParseError("state.n_max: expected an integer");
    if (!j.contains("amps") || !j["amps"].is_array())
        throw ParseError("state.amps: expected an array of [re, im] pairs");
    const auto n_max = j["n_max"].get<std::int64_t>();
    const auto& amps = j["amps"];
    if (n_max < 0 || static_cast<std::size_t>(n_max) + 1 != amps.size())
        throw ParseError("state.amps: length must equal n_max + 1");
    FockVector v(n_max + 1);
    for (std::size_t n = 0; n < amps.size(); ++n)
        v(static_cast<Eigen::Index>(n)) =
            complex_from_json(amps[n], "state.amps[" + std::to_string(n) + "]");
    return v;
}

inline json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json kernel_to_json(const ContourKernel& k) {
    json terms = json::array();
    for (const auto& t : k.exp_terms())
        terms.push_back(json{{"c", complex_to_json(t.c)},
                             {"a", complex_to_json(t.a)},
                             {"p", complex_to_json(t.p)}});
    json out{{"cauchy", complex_to_json(k.cauchy())}, {"terms", terms}};
    if (!k.mono_terms().empty()) {
        json mono = json::array();
        for (const auto& t : k.mono_terms())
            mono.push_back(json{{"c", complex_to_json(t.c)},
                                {"n", t.n},
                                {"p", complex_to_json(t.p)}});
        out["mono_terms"] = mono;
    }
    return out;
}

inline json gate_to_json(const GateMatrix& gate) {
    json labels_a = json::array(), labels_b = json::array();
    for (const auto& l : gate.control.labels()) labels_a.push_back(json::array({l.re, l.im}));
    for (const auto& l : gate.target.labels()) labels_b.push_back(json::array({l.re, l.im}));
    return json{{"dims", json::array({gate.control.size(), gate.target.size()})},
                {"labels_a", labels_a},
                {"labels_b", labels_b},
                {"entries", matrix_to_json(gate.entries)},
                {"g_a", matrix_to_json(gate.control.g())},
                {"G_a", matrix_to_json(gate.control.g_inverse())},
                {"g_b", matrix_to_json(gate.target.g())},
                {"G_b", matrix_to_json(gate.target.g_inverse())}};
}

inline json check_to_json(const CheckResult& c) {
    return json{{"check", c.name},
                {"residual", c.residual},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
}

inline json checks_to_json(const std::vector<CheckResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(check_to_json(c));
    return arr;
}

/// FNV-1a hash of the canonical input text, echoed in every report so runs
/// are attributable to their inputs.
inline std::string input_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace cohsp
