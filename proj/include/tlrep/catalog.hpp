#pragma once

// Named, parameterized factories for the explicit solutions: the XXZ point,
// the rank-two n = 2 family, U_q(su2) TL vectors and pairs, and scaled towers.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "qsu2.hpp"
#include "tlcore.hpp"

namespace tlrep {

struct CatalogEntry {
    std::string id;
    std::map<std::string, complex> params;
    std::optional<CoeffSet> cs;
    CMatrix t;
    double expected_q = 0.0;
    std::string source;
    std::size_t n = 0;
};

namespace detail {

inline CatalogEntry entry_from_cs(std::string id, std::map<std::string, complex> params, CoeffSet cs,
                                  double expected_q, std::string source) {
    CMatrix t = build_projection(cs) * complex(expected_q);
    const std::size_t n = cs.n();
    return CatalogEntry{std::move(id), std::move(params), std::move(cs), std::move(t), expected_q, std::move(source), n};
}

inline void require_unit(complex zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw std::invalid_argument("catalog: zeta must have unit modulus");
}

inline bool near(double a, double b, double rel = 1e-9) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace detail

/// Rank-one XXZ solution on C^2 (x) C^2, Q = q + 1/q.
inline CatalogEntry xxz(double q, complex zeta) {
    if (!(q > 0.0)) throw std::invalid_argument("xxz: q must be positive");
    detail::require_unit(zeta);
    const double s = 1.0 / std::sqrt(q * q + 1.0);
    CMatrix v{{0.0, zeta * q * s}, {s, 0.0}};
    CatalogEntry e = detail::entry_from_cs("xxz", {{"q", q}, {"zeta", zeta}}, CoeffSet(2, {v}), q + 1.0 / q,
                                           "XXZ spin-1/2 chain, rank one");
    CMatrix t(4, 4);
    t(1, 1) = q;
    t(1, 2) = zeta;
    t(2, 1) = std::conj(zeta);
    t(2, 2) = 1.0 / q;
    e.t = t;
    return e;
}

/// Rank-two solution on C^2 (x) C^2 with Q = sqrt(2).
inline CatalogEntry rank2_n2(complex zeta) {
    detail::require_unit(zeta);
    const complex i(0.0, 1.0);
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix v1{{i * zeta * h, 0.0}, {0.0, h}};
    CMatrix v2{{0.0, i * h}, {h, 0.0}};
    CatalogEntry e = detail::entry_from_cs("rank2-n2", {{"zeta", zeta}}, CoeffSet(2, {v1, v2}), std::numbers::sqrt2,
                                           "rank-two solution for n = 2");
    CMatrix t{{1.0, 0.0, 0.0, i * zeta}, {0.0, 1.0, i, 0.0}, {0.0, -i, 1.0, 0.0}, {-i * std::conj(zeta), 0.0, 0.0, 1.0}};
    e.t = t * complex(h);
    return e;
}

/// Expected Q when |J,m>_q is a listed TL vector at q, otherwise nullopt.
inline std::optional<double> tl_vector_q(const SpinLabel& l, double q) {
    const QContext ctx(q);
    if (l.j2 == 0) return qnum(ctx, l.s2 + 1);
    if (l.s2 == 1 && l.j2 == 2 && l.m2 == 0) return qnum(ctx, 2);
    if (l.s2 == 3 && l.j2 == 4 && l.m2 == 0) {
        if (ctx.is_classical) return 4.0;
        const double r3 = std::sqrt(3.0);
        if (detail::near(q, std::pow(2.0 + r3, 0.25)) || detail::near(q, std::pow(2.0 - r3, 0.25))) {
            return std::sqrt(12.0 + 18.0 * std::sqrt(6.0));
        }
    }
    if (l.s2 == 2 && l.j2 == 2 && l.m2 == 0) {
        const double r5 = std::sqrt(5.0);
        if (detail::near(q, 0.5 * (r5 + 1.0)) || detail::near(q, 0.5 * (r5 - 1.0))) return 3.0;
    }
    return std::nullopt;
}

/// Expected Q when {a, b} is a listed TL pair at q, otherwise nullopt.
inline std::optional<double> tl_pair_q(const SpinLabel& a, const SpinLabel& b, double q) {
    if (a.s2 != 2 || b.s2 != 2) return std::nullopt;
    auto is = [&](int j1, int m1, int j2, int m2) {
        return (a.j2 == 2 * j1 && a.m2 == 2 * m1 && b.j2 == 2 * j2 && b.m2 == 2 * m2) ||
               (b.j2 == 2 * j1 && b.m2 == 2 * m1 && a.j2 == 2 * j2 && a.m2 == 2 * m2);
    };
    if (is(2, 1, 1, -1) || is(2, -1, 1, 1)) return q * q + 1.0 / (q * q);
    if (!QContext(q).is_classical) return std::nullopt;
    for (int m : {1, -1}) {
        if (is(1, m, 1, -m) || is(1, m, 1, 0) || is(2, m, 1, -m) || is(2, m, 1, 0) || is(2, m, 2, -m)) return 2.0;
    }
    return std::nullopt;
}

namespace detail {

inline double forced_q(const CoeffSet& cs) {
    const CMatrix w = build_w(cs);
    const double norm = fro_norm(w);
    return norm > 1e-12 ? std::sqrt(static_cast<double>(cs.n() * cs.rank())) / norm : 1.0;
}

inline std::string vector_id(const SpinLabel& l) {
    if (l.j2 == 0) return "cg-singlet";
    if (l.s2 == 3 && l.j2 == 4 && l.m2 == 0) return "cg-232";
    if (l.s2 == 2 && l.j2 == 2 && l.m2 == 0) return "cg-s1j1";
    if (l.s2 == 1 && l.j2 == 2 && l.m2 == 0) return "cg-triplet";
    return "cg-vector";
}

inline std::map<std::string, complex> label_params(const SpinLabel& l, double q) {
    return {{"S", 0.5 * l.s2}, {"J", 0.5 * l.j2}, {"m", 0.5 * l.m2}, {"q", q}};
}

}  // namespace detail

/// Rank-one entry for |J,m>_q. Without force the label must be a listed TL vector at q.
inline CatalogEntry cg_entry(const SpinLabel& label, double q, bool force = false) {
    label.validate();
    const std::optional<double> expected = tl_vector_q(label, q);
    if (!expected && !force) throw NotInCatalogError("cg_entry: |J,m>_q is not a listed TL vector at this q");
    CoeffSet cs(label.dim(), {coeff_matrix(QContext(q), label)});
    const double qv = expected ? *expected : detail::forced_q(cs);
    return detail::entry_from_cs(detail::vector_id(label), detail::label_params(label, q), std::move(cs), qv,
                                 expected ? "U_q(su2) TL vector" : "U_q(su2) vector (forced)");
}

/// Rank-two entry for {|J1,m1>_q, |J2,m2>_q}, stored with (J1, m1) > (J2, m2).
inline CatalogEntry cg_pair_entry(SpinLabel a, SpinLabel b, double q, bool force = false) {
    a.validate();
    b.validate();
    if (a.s2 != b.s2) throw std::invalid_argument("cg_pair_entry: labels must share S");
    if (a == b) throw std::invalid_argument("cg_pair_entry: coincident labels");
    if (a < b) std::swap(a, b);
    const std::optional<double> expected = tl_pair_q(a, b, q);
    if (!expected && !force) throw NotInCatalogError("cg_pair_entry: pair is not a listed TL pair at this q");
    const QContext ctx(q);
    CoeffSet cs(a.dim(), {coeff_matrix(ctx, a), coeff_matrix(ctx, b)});
    const double qv = expected ? *expected : detail::forced_q(cs);
    std::string id = "cg-pair";
    if (a == SpinLabel{2, 2, 2} && b == SpinLabel{2, 2, 0}) id = "pair-s1j11";
    if (a == SpinLabel{2, 4, 2} && b == SpinLabel{2, 2, -2}) id = "pair-s1j21";
    std::map<std::string, complex> params{{"S", 0.5 * a.s2}, {"J1", 0.5 * a.j2}, {"m1", 0.5 * a.m2},
                                          {"J2", 0.5 * b.j2}, {"m2", 0.5 * b.m2}, {"q", q}};
    return detail::entry_from_cs(std::move(id), std::move(params), std::move(cs), qv,
                                 expected ? "U_q(su2) TL pair" : "U_q(su2) pair (forced)");
}

/// V -> V (x) I_m (or I_m (x) V); Q scales by m.
inline CatalogEntry tower_entry(const CatalogEntry& base, std::size_t m, TowerSide side = TowerSide::left) {
    if (!base.cs) throw std::invalid_argument("tower_entry: base entry has no coefficient set");
    if (m == 0) throw std::invalid_argument("tower_entry: m must be positive");
    if (m == 1) return base;
    CoeffSet cs = scale_tower(*base.cs, m, side);
    std::map<std::string, complex> params = base.params;
    params["tower_m"] = static_cast<double>(m);
    return detail::entry_from_cs("tower:" + base.id + ":" + std::to_string(m), std::move(params), std::move(cs),
                                 static_cast<double>(m) * base.expected_q, "scaled tower of " + base.id);
}

// ---- id-based construction -------------------------------------------------

/// Parses "1.5", "-2", "3/2", "i", "-i", "0.3+0.4i", "exp(0.7i)".
inline complex parse_scalar(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    auto real_of = [&](const std::string& x) -> double {
        if (x.empty() || x == "+") return 1.0;
        if (x == "-") return -1.0;
        const auto slash = x.find('/');
        std::size_t used = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(x.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument("bad number '" + text + "'");
            const std::string den_s = x.substr(slash + 1);
            const double den = std::stod(den_s, &used);
            if (used != den_s.size() || den == 0.0) throw std::invalid_argument("bad number '" + text + "'");
            return num / den;
        }
        const double v = std::stod(x, &used);
        if (used != x.size()) throw std::invalid_argument("bad number '" + text + "'");
        return v;
    };
    if (s.rfind("exp(", 0) == 0 && s.size() > 6 && s.substr(s.size() - 2) == "i)") {
        return std::polar(1.0, real_of(s.substr(4, s.size() - 6)));
    }
    if (s.back() != 'i') return real_of(s);
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not an exponent sign or the leading one
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            return {real_of(body.substr(0, k)), real_of(body.substr(k))};
        }
    }
    return {0.0, real_of(body)};
}

/// Reads a spin value such as "3/2" or "1.5" and returns it doubled.
inline int parse_doubled(const std::string& text) {
    const complex v = parse_scalar(text);
    const double d = 2.0 * v.real();
    if (v.imag() != 0.0 || std::abs(d - std::round(d)) > 1e-12) {
        throw std::invalid_argument("'" + text + "' is not a half-integer");
    }
    return static_cast<int>(std::lround(d));
}

struct CatalogInfo {
    std::string id;
    std::string description;
    std::map<std::string, std::string> defaults;
};

inline std::vector<CatalogInfo> catalog_list() {
    return {
        {"xxz", "rank-one XXZ solution, n = 2, Q = q + 1/q", {{"q", "1"}, {"zeta", "1"}}},
        {"rank2-n2", "rank-two solution, n = 2, Q = sqrt(2)", {{"zeta", "1"}}},
        {"cg-singlet", "|0,0>_q for spin S, Q = [2S+1]_q", {{"S", "1/2"}, {"q", "1"}}},
        {"cg-triplet", "|1,0>_q for S = 1/2, Q = [2]_q", {{"q", "1"}}},
        {"cg-232", "|2,0>_q for S = 3/2 at q = 1 or q = (2 +- sqrt 3)^(1/4)", {{"q", "1"}}},
        {"cg-s1j1", "|1,0>_q for S = 1 at q = (sqrt 5 +- 1)/2, Q = 3", {{"q", "1.6180339887498949"}}},
        {"pair-s1j11", "{|1,1>, |1,0>} for S = 1 at q = 1, Q = 2", {{"q", "1"}}},
        {"pair-s1j21", "{|2,1>, |1,-1>} (variant i) or {|2,-1>, |1,1>} (ii) for S = 1, Q = q^2 + q^-2",
         {{"q", "1"}, {"variant", "1"}}},
        {"cg-vector", "any |J,m>_q (force=1 for labels outside the TL lists)",
         {{"S", "1/2"}, {"J", "0"}, {"m", "0"}, {"q", "1"}, {"force", "0"}}},
        {"cg-pair", "any pair {|J1,m1>_q, |J2,m2>_q} (force=1 for non-TL pairs)",
         {{"S", "1"}, {"J1", "1"}, {"m1", "1"}, {"J2", "1"}, {"m2", "0"}, {"q", "1"}, {"force", "0"}}},
        {"tower:<base>:<m>", "V (x) I_m scaling of a base entry (side=left|right), Q scales by m",
         {{"side", "left"}}},
    };
}

/// Builds an entry by id; unknown parameter names are rejected.
inline CatalogEntry build_entry(const std::string& id, const std::map<std::string, std::string>& params = {}) {
    if (id.rfind("tower:", 0) == 0) {
        const auto last = id.rfind(':');
        if (last <= 6) throw std::invalid_argument("tower id must be tower:<base>:<m>");
        const std::string base_id = id.substr(6, last - 6);
        const std::string m_text = id.substr(last + 1);
        std::size_t used = 0;
        const long m = std::stol(m_text, &used);
        if (used != m_text.size() || m < 1) throw std::invalid_argument("tower multiplier must be a positive integer");
        std::map<std::string, std::string> base_params = params;
        TowerSide side = TowerSide::left;
        if (auto it = base_params.find("side"); it != base_params.end()) {
            if (it->second == "right")
                side = TowerSide::right;
            else if (it->second != "left")
                throw std::invalid_argument("side must be left or right");
            base_params.erase(it);
        }
        return tower_entry(build_entry(base_id, base_params), static_cast<std::size_t>(m), side);
    }
    const std::vector<CatalogInfo> infos = catalog_list();
    const auto info = std::find_if(infos.begin(), infos.end(), [&](const CatalogInfo& c) { return c.id == id; });
    if (info == infos.end()) throw NotInCatalogError("unknown catalog id '" + id + "'");
    std::map<std::string, std::string> p = info->defaults;
    for (const auto& [k, v] : params) {
        if (!p.contains(k)) throw std::invalid_argument("catalog " + id + ": unknown parameter '" + k + "'");
        p[k] = v;
    }
    auto real = [&](const std::string& k) {
        const complex v = parse_scalar(p.at(k));
        if (v.imag() != 0.0) throw std::invalid_argument("catalog " + id + ": " + k + " must be real");
        return v.real();
    };
    auto flag = [&](const std::string& k) { return real(k) != 0.0; };
    auto twice = [&](const std::string& k) { return parse_doubled(p.at(k)); };

    if (id == "xxz") return xxz(real("q"), parse_scalar(p.at("zeta")));
    if (id == "rank2-n2") return rank2_n2(parse_scalar(p.at("zeta")));
    if (id == "cg-singlet") return cg_entry({twice("S"), 0, 0}, real("q"));
    if (id == "cg-triplet") return cg_entry({1, 2, 0}, real("q"));
    if (id == "cg-232") return cg_entry({3, 4, 0}, real("q"));
    if (id == "cg-s1j1") return cg_entry({2, 2, 0}, real("q"));
    if (id == "pair-s1j11") return cg_pair_entry({2, 2, 2}, {2, 2, 0}, real("q"));
    if (id == "pair-s1j21") {
        const double variant = real("variant");
        if (variant == 1.0) return cg_pair_entry({2, 4, 2}, {2, 2, -2}, real("q"));
        if (variant == 2.0) return cg_pair_entry({2, 4, -2}, {2, 2, 2}, real("q"));
        throw std::invalid_argument("pair-s1j21: variant must be 1 or 2");
    }
    if (id == "cg-vector") return cg_entry({twice("S"), twice("J"), twice("m")}, real("q"), flag("force"));
    return cg_pair_entry({twice("S"), twice("J1"), twice("m1")}, {twice("S"), twice("J2"), twice("m2")}, real("q"),
                         flag("force"));
}

}  // namespace tlrep
