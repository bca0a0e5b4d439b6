#pragma once

// Text, JSON and CSV renderings of L-polynomials, scans and reports.
// Integers that fit in 64 bits are written as JSON numbers, larger ones as
// decimal strings; the readers accept both.

#include <sstream>
#include <string>

#include <json.hpp>

#include "kummer/lfun.hpp"
#include "kummer/verify.hpp"

namespace kummer::io {

using json = nlohmann::ordered_json;

inline json big_to_json(const bigint &v) {
    if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max())
        return static_cast<i64>(v);
    return v.str();
}

inline bigint big_from_json(const json &j) {
    if (j.is_string())
        return bigint(j.get<std::string>());
    if (j.is_number_unsigned())
        return bigint(j.get<u64>());
    return bigint(j.get<i64>());
}

/// "1 - 3T + 9T^2"
inline std::string render_poly(const int_poly &c, const std::string &var = "T") {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0)
            continue;
        const bigint mag = c[i] < 0 ? bigint(-c[i]) : c[i];
        if (any)
            os << (c[i] < 0 ? " - " : " + ");
        else if (c[i] < 0)
            os << "-";
        if (i == 0 || mag != 1)
            os << mag;
        if (i > 0)
            os << var << (i > 1 ? "^" + std::to_string(i) : "");
        any = true;
    }
    if (!any)
        os << "0";
    return os.str();
}

inline json cyclo_to_json(const CycloElt &z) {
    json coeffs = json::array();
    for (const auto &c : z.coeffs())
        coeffs.push_back(big_to_json(c));
    return {{"order", z.order()}, {"coefficients", coeffs}};
}

inline CycloElt cyclo_from_json(const json &j) {
    std::vector<bigint> c;
    for (const auto &v : j.at("coefficients"))
        c.push_back(big_from_json(v));
    return {j.at("order").get<u64>(), std::move(c)};
}

inline std::string factor_string(const OrbitFactor &f) {
    const auto v = as_integer(f.beta);
    const std::string t = "T" + (f.length > 1 ? "^" + std::to_string(f.length) : std::string());
    if (v)
        return *v < 0 ? "1 + " + bigint(-*v).str() + t : "1 - " + v->str() + t;
    return "1 - (" + to_string(f.beta) + ")" + t;
}

inline json to_json(const LPolynomial &L) {
    json coeffs = json::array();
    for (const auto &c : L.coeffs)
        coeffs.push_back(big_to_json(c));
    json factors = json::array();
    for (const auto &f : L.factors)
        factors.push_back({{"representative", f.representative},
                           {"length", f.length},
                           {"stratum", f.stratum},
                           {"beta", cyclo_to_json(f.beta)},
                           {"beta_is_q_power", f.beta_is_q_power},
                           {"factor", factor_string(f)}});
    u64 rank = 1;
    for (const auto &f : L.factors)
        rank += f.beta_is_q_power ? 1 : 0;
    return {{"q", L.q},
            {"d", L.d},
            {"d_prime", L.d_prime},
            {"normalized", L.d != L.d_prime},
            {"degree", L.degree()},
            {"coefficients", coeffs},
            {"polynomial", render_poly(L.coeffs)},
            {"factors", factors},
            {"vanishing_order", L.vanishing_order},
            {"rank", rank}};
}

inline LPolynomial lpoly_from_json(const json &j) {
    LPolynomial L;
    L.q = j.at("q").get<u64>();
    L.d = j.at("d").get<u64>();
    L.d_prime = j.at("d_prime").get<u64>();
    for (const auto &c : j.at("coefficients"))
        L.coeffs.push_back(big_from_json(c));
    for (const auto &f : j.at("factors"))
        L.factors.push_back({f.at("representative").get<u64>(), f.at("length").get<u64>(),
                             f.at("stratum").get<u64>(), cyclo_from_json(f.at("beta")),
                             f.at("beta_is_q_power").get<bool>()});
    L.vanishing_order = j.at("vanishing_order").get<u64>();
    return L;
}

inline bool same(const LPolynomial &a, const LPolynomial &b) {
    if (a.q != b.q || a.d != b.d || a.d_prime != b.d_prime || a.coeffs != b.coeffs ||
        a.vanishing_order != b.vanishing_order || a.factors.size() != b.factors.size())
        return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const auto &x = a.factors[i], &y = b.factors[i];
        if (x.representative != y.representative || x.length != y.length || x.stratum != y.stratum ||
            x.beta_is_q_power != y.beta_is_q_power || x.beta.order() != y.beta.order() ||
            x.beta.coeffs() != y.beta.coeffs())
            return false;
    }
    return true;
}

template <class T>
json opt_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json &j) {
    if (j.is_null())
        return std::nullopt;
    return j.get<T>();
}

inline json to_json(const ScanRow &r) {
    return {{"d", r.d},
            {"d_prime", r.d_prime},
            {"method", to_string(r.method)},
            {"rank", opt_json(r.rank)},
            {"degL", r.deg_l},
            {"supersingular", r.supersingular},
            {"unknown_reason", r.unknown_reason},
            {"beta_rank", opt_json(r.beta_rank)},
            {"discrepancy", opt_json(r.discrepancy)},
            {"ss_agrees_with_beta", r.ss_agrees_with_beta},
            {"lower_bound_i_q_d", r.lower_bound_i_q_d}};
}

inline RankMethod method_from_string(const std::string &s) {
    if (s == "ss-formula")
        return RankMethod::ss_formula;
    if (s == "beta")
        return RankMethod::beta;
    if (s == "unknown")
        return RankMethod::unknown;
    throw std::invalid_argument("unknown rank method '" + s + "'");
}

inline ScanRow scan_row_from_json(const json &j) {
    ScanRow r;
    r.d = j.at("d").get<u64>();
    r.d_prime = j.at("d_prime").get<u64>();
    r.method = method_from_string(j.at("method").get<std::string>());
    r.rank = opt_from<u64>(j.at("rank"));
    r.deg_l = j.at("degL").get<u64>();
    r.supersingular = j.at("supersingular").get<bool>();
    r.unknown_reason = j.at("unknown_reason").get<std::string>();
    r.beta_rank = opt_from<u64>(j.at("beta_rank"));
    r.discrepancy = opt_from<std::string>(j.at("discrepancy"));
    r.ss_agrees_with_beta = j.at("ss_agrees_with_beta").get<bool>();
    r.lower_bound_i_q_d = j.at("lower_bound_i_q_d").get<bool>();
    return r;
}

inline json to_json(const ScanResult &s) {
    json rows = json::array();
    for (const auto &r : s.rows)
        rows.push_back(to_json(r));
    return {{"q", s.q}, {"x_max", s.x_max}, {"rows", rows}, {"running_average", s.running_average},
            {"unknown", s.unknown}};
}

inline ScanResult scan_from_json(const json &j) {
    ScanResult s;
    s.q = j.at("q").get<u64>();
    s.x_max = j.at("x_max").get<u64>();
    for (const auto &r : j.at("rows"))
        s.rows.push_back(scan_row_from_json(r));
    s.running_average = j.at("running_average").get<std::vector<double>>();
    s.unknown = j.at("unknown").get<u64>();
    return s;
}

inline bool same(const ScanRow &a, const ScanRow &b) {
    return a.d == b.d && a.d_prime == b.d_prime && a.method == b.method && a.rank == b.rank &&
           a.deg_l == b.deg_l && a.supersingular == b.supersingular && a.unknown_reason == b.unknown_reason &&
           a.beta_rank == b.beta_rank && a.discrepancy == b.discrepancy &&
           a.ss_agrees_with_beta == b.ss_agrees_with_beta && a.lower_bound_i_q_d == b.lower_bound_i_q_d;
}

inline bool same(const ScanResult &a, const ScanResult &b) {
    if (a.q != b.q || a.x_max != b.x_max || a.unknown != b.unknown || a.running_average != b.running_average ||
        a.rows.size() != b.rows.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (!same(a.rows[i], b.rows[i]))
            return false;
    return true;
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string scan_csv(const ScanResult &s) {
    std::ostringstream os;
    os << "d,d_prime,method,rank,degL,supersingular,unknown_reason\n";
    for (const auto &r : s.rows)
        os << r.d << ',' << r.d_prime << ',' << to_string(r.method) << ',' << (r.rank ? std::to_string(*r.rank) : "")
           << ',' << r.deg_l << ',' << (r.supersingular ? 1 : 0) << ',' << csv_field(r.unknown_reason) << '\n';
    return os.str();
}

inline std::string rational_string(const rational &r) { return r.str(); }

inline json to_json(const SequenceRow &r) {
    json notes = r.notes;
    return {{"n", r.n},
            {"d_even", r.d_even},
            {"d_odd", r.d_odd},
            {"d_even_supersingular", r.even_ss.supersingular},
            {"d_even_witness", opt_json(r.even_ss.witness)},
            {"two_d_odd_supersingular", r.odd2_ss.supersingular},
            {"two_d_odd_witness", opt_json(r.odd2_ss.witness)},
            {"order_q_mod_d_even", r.order_mod_d_even},
            {"I_q_d_even", rational_string(r.i_even)},
            {"I_q_2d_odd", rational_string(r.i_odd2)},
            {"bound_d_even", r.bound_even},
            {"bound_d_odd", r.bound_odd},
            {"verdict_even", to_string(r.verdict_even)},
            {"verdict_odd", to_string(r.verdict_odd)},
            {"rank_half_d_even", r.rho_half},
            {"rank_half_matches_I_q", r.half_matches_i_even},
            {"rank_d_odd", r.rho_odd},
            {"rank_d_even", opt_json(r.rho_even)},
            {"rank_d_even_reason", opt_json(r.rho_even_reason)},
            {"chain_holds", r.chain_holds},
            {"notes", notes}};
}

inline json to_json(const RankConstruction &c) {
    return {{"p", c.p},
            {"target_rank", c.target_rank},
            {"ell", c.ell},
            {"r", c.r},
            {"d", c.d},
            {"supersingular", c.supersingular.supersingular},
            {"witness", opt_json(c.supersingular.witness)},
            {"I_p_2d", rational_string(c.i_q_2d)},
            {"supersingular_path_rank", c.supersingular_path_rank},
            {"analytic_rank", opt_json(c.analytic)},
            {"analytic_reason", opt_json(c.analytic_reason)},
            {"certified", c.certified}};
}

inline json to_json(const verify::Report &r) {
    json out = json::array();
    for (const auto &c : r)
        out.push_back({{"suite", c.suite}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return out;
}

} // namespace kummer::io
