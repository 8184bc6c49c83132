#pragma once

// JSON encodings (nlohmann::json). Complex numbers are [re, im]; matrices are
// {"rows", "cols", "entries"} with entries in row-major order; non-finite
// reals are written as the strings "inf" / "-inf" / "nan".

#include <cmath>
#include <string>

#include <json.hpp>

#include "braid.hpp"
#include "catalog.hpp"
#include "jwtower.hpp"
#include "qsu2.hpp"
#include "scanner.hpp"
#include "tlcore.hpp"

namespace tlrep {

using json = nlohmann::json;

inline json real_to_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline double real_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw std::invalid_argument("json: expected a number, got '" + s + "'");
    }
    return j.get<double>();
}

inline json complex_to_json(complex z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

inline complex complex_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("json: complex number must be [re, im]");
        return {real_from_json(j[0]), real_from_json(j[1])};
    }
    return real_from_json(j);
}

inline json matrix_to_json(const CMatrix& m) {
    json entries = json::array();
    for (complex z : m.entries()) entries.push_back(complex_to_json(z));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline CMatrix matrix_from_json(const json& j) {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != rows * cols) throw DimensionError("json: entries do not match rows x cols");
    std::vector<complex> data;
    data.reserve(e.size());
    for (const json& z : e) data.push_back(complex_from_json(z));
    return CMatrix(rows, cols, std::move(data));
}

inline json coeffset_to_json(const CoeffSet& cs) {
    json vs = json::array();
    for (const CMatrix& v : cs.vs()) vs.push_back(matrix_to_json(v));
    return {{"n", cs.n()}, {"r", cs.rank()}, {"vs", std::move(vs)}};
}

inline CoeffSet coeffset_from_json(const json& j, const Tolerance& tol = {}) {
    std::vector<CMatrix> vs;
    for (const json& v : j.at("vs")) vs.push_back(matrix_from_json(v));
    if (j.contains("r") && j.at("r").get<std::size_t>() != vs.size()) {
        throw InvalidCoeffSetError("json: r does not match the number of matrices");
    }
    return CoeffSet(j.at("n").get<std::size_t>(), std::move(vs), tol);
}

inline json to_json(const TLVerdict& v) {
    return {{"q_value", real_to_json(v.q_value)},     {"res_t1", real_to_json(v.res_t1)},
            {"res_t2", real_to_json(v.res_t2)},       {"res_t3", real_to_json(v.res_t3)},
            {"res_t4", real_to_json(v.res_t4)},       {"trace_lhs", real_to_json(v.trace_lhs)},
            {"trace_rhs", real_to_json(v.trace_rhs)}, {"w_residual", real_to_json(v.w_residual)},
            {"rank", v.rank},                         {"pass", v.pass},
            {"kind", to_string(v.kind)}};
}

inline json to_json(const BoundCheck& b) { return {{"applies", b.applies}, {"satisfied", b.satisfied}}; }

inline json to_json(const BoundReport& b) {
    json j = {{"q_value", real_to_json(b.q_value)},
              {"n", b.n},
              {"r", b.r},
              {"bound_nr", real_to_json(b.bound_nr)},
              {"bound_quartic", real_to_json(b.bound_quartic)},
              {"nr_satisfied", b.nr_satisfied},
              {"quartic_satisfied", b.quartic_satisfied},
              {"rank_one_floor", nullptr},
              {"rank_one_satisfied", b.rank_one_satisfied},
              {"rank_one_equality", b.rank_one_equality},
              {"symmetric_member", to_json(b.symmetric_member)},
              {"unitary_member", to_json(b.unitary_member)},
              {"unitary_chain", to_json(b.unitary_chain)}};
    if (b.rank_one_floor) j["rank_one_floor"] = real_to_json(*b.rank_one_floor);
    return j;
}

inline json to_json(const TLScanHit& h) {
    json labels = json::array();
    for (const SpinLabel& l : h.labels) labels.push_back({l.j2, l.m2});
    json qs = json::array(), qv = json::array();
    for (double x : h.q_points) qs.push_back(real_to_json(x));
    for (double x : h.q_values) qv.push_back(real_to_json(x));
    return {{"two_s", h.labels.empty() ? 0 : h.labels[0].s2},
            {"labels", std::move(labels)},
            {"mode", to_string(h.mode)},
            {"q_points", std::move(qs)},
            {"Q_values", std::move(qv)}};
}

inline const char* to_string(AllowedQ::Kind k) {
    switch (k) {
        case AllowedQ::Kind::unrestricted: return "unrestricted";
        case AllowedQ::Kind::empty: return "empty";
        case AllowedQ::Kind::discrete: return "discrete";
    }
    return "unknown";
}

inline json to_json(const JWReport& r) {
    json rho = json::array(), d = json::array();
    for (double x : r.rho) rho.push_back(real_to_json(x));
    for (double x : r.d) d.push_back(real_to_json(x));
    json j = {{"n", r.n},
              {"r", r.r},
              {"q_value", nullptr},
              {"rho", std::move(rho)},
              {"d", std::move(d)},
              {"first_negative_d", nullptr},
              {"allowed_kind", to_string(r.allowed.kind)},
              {"allowed_q", nullptr},
              {"m", nullptr}};
    if (r.q_value) j["q_value"] = real_to_json(*r.q_value);
    if (r.first_negative_d) j["first_negative_d"] = *r.first_negative_d;
    if (r.allowed.kind != AllowedQ::Kind::unrestricted) {
        json a = json::array();
        for (double x : r.allowed.values) a.push_back(real_to_json(x));
        j["allowed_q"] = std::move(a);
    }
    if (r.allowed.m) j["m"] = *r.allowed.m;
    return j;
}

inline json to_json(const YBEReport& r) {
    json grid = json::array();
    for (const auto& [u, v] : r.grid) grid.push_back({complex_to_json(u), complex_to_json(v)});
    return {{"grid", std::move(grid)},
            {"max_residual", real_to_json(r.max_residual)},
            {"branch", r.additive ? "add" : "mult"}};
}

inline json to_json(const CatalogEntry& e) {
    json params = json::object();
    for (const auto& [k, v] : e.params) params[k] = v.imag() == 0.0 ? real_to_json(v.real()) : complex_to_json(v);
    json j = {{"id", e.id},
              {"params", std::move(params)},
              {"n", e.n},
              {"expected_q", real_to_json(e.expected_q)},
              {"source", e.source},
              {"t", matrix_to_json(e.t)},
              {"cs", nullptr}};
    if (e.cs) j["cs"] = coeffset_to_json(*e.cs);
    return j;
}

inline json to_json(const SubsetHit& h) {
    return {{"indices", h.indices}, {"rank", h.indices.size()}, {"q_value", real_to_json(h.q_value)},
            {"verdict", to_json(h.verdict)}};
}

inline json to_json(const ScanReport& r) {
    json groups = json::array();
    for (const ScanGroup& g : r.groups) {
        groups.push_back({{"rank", g.rank},
                          {"q_value", real_to_json(g.q_value)},
                          {"count", g.members.size()},
                          {"members", g.members},
                          {"bounds_ok", g.bounds_ok},
                          {"allowed_ok", g.allowed_ok}});
    }
    return {{"n", r.n}, {"groups", std::move(groups)}};
}

}  // namespace tlrep
