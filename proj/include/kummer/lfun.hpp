#pragma once

// Exact L-polynomials of E_d / F_q(t) as (1 - qT) prod_orbits (1 - beta(n) T^{|n|}),
// analytic and Mordell-Weil ranks, the supersingular fast path, the rank
// sequences d^e_n = q^n + 1 and d^o_n = sum_{i<=2n} (-q)^i, the exact-rank
// construction d = l^r and the desk-scale average-rank scan.

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/arith.hpp"
#include "kummer/chars.hpp"
#include "kummer/curve.hpp"
#include "kummer/cyclo.hpp"
#include "kummer/orbits.hpp"
#include "kummer/parallel.hpp"

namespace kummer {

struct LOptions {
    FieldOptions field;
    unsigned jobs = default_jobs();
    /// Certify integrality after each Galois-stable block (a stratum Y_e) rather
    /// than only once at the end.
    bool certify_per_stratum = true;
};

struct OrbitFactor {
    u64 representative;
    u64 length;
    u64 stratum; ///< e = 2d / gcd(n, 2d)
    CycloElt beta;
    bool beta_is_q_power; ///< beta(n) = q^{|n|}
};

struct LPolynomial {
    u64 q = 0, d = 0, d_prime = 0;
    std::vector<bigint> coeffs; ///< low degree first, coeffs[0] = 1
    std::vector<OrbitFactor> factors;
    u64 vanishing_order = 0; ///< ord_{T = 1/q}, by exact division

    u64 degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

namespace detail {

using cyclo_poly = std::vector<CycloElt>;

inline cyclo_poly cyclo_poly_mul(const cyclo_poly &a, const cyclo_poly &b, u64 order) {
    cyclo_poly r(a.size() + b.size() - 1, CycloElt(order));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero_representation())
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero_representation())
                continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline int_poly certify_integral(const cyclo_poly &a, const std::string &where) {
    int_poly out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto v = as_integer(a[i]);
        if (!v)
            throw inconsistency_error("non-integral coefficient of T^" + std::to_string(i) + " in " + where);
        out.push_back(*v);
    }
    return out;
}

} // namespace detail

/// Multiplicity of T = 1/q as a root, by repeated exact division by (1 - qT).
inline u64 vanishing_order(int_poly coeffs, u64 q) {
    detail::trim(coeffs);
    u64 order = 0;
    const bigint bq = q;
    while (coeffs.size() > 1) {
        // c(T) = (1 - qT) r(T): r_0 = c_0, r_i = c_i + q r_{i-1}; the top must cancel.
        int_poly r(coeffs.size() - 1);
        bigint carry = 0;
        for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
            r[i] = coeffs[i] + bq * carry;
            carry = r[i];
        }
        if (coeffs.back() != -bq * carry)
            break;
        coeffs = std::move(r);
        ++order;
    }
    return order;
}

/// c_1..c_{m_max} with log L(T) = sum c_m T^m / m, for L with constant term 1.
inline std::vector<bigint> log_coefficients(const int_poly &coeffs, unsigned m_max) {
    if (coeffs.empty() || coeffs[0] != 1)
        throw std::invalid_argument("log expansion needs constant term 1");
    auto a = [&](std::size_t i) -> bigint { return i < coeffs.size() ? coeffs[i] : bigint(0); };
    std::vector<bigint> c(m_max + 1, 0);
    for (unsigned m = 1; m <= m_max; ++m) {
        bigint v = bigint(m) * a(m);
        for (unsigned i = 1; i < m; ++i)
            v -= c[i] * a(m - i);
        c[m] = v;
    }
    c.erase(c.begin());
    return c;
}

inline LPolynomial l_polynomial(u64 q, u64 d, const LOptions &opt = {}) {
    const auto nd = normalize(q, d);
    const u64 dp = nd.d_prime;
    const u64 two_d = 2 * dp;
    const auto [p, k] = arith::prime_power(q);
    const OrbitSet orbits = build_z2d(q, dp);

    // Whole-or-nothing budget policy.
    for (const auto &o : orbits.orbits) {
        u64 size = 1;
        for (u64 i = 0; i < k * o.length; ++i) {
            if (size > opt.field.budget / p)
                throw budget_error("orbit of n = " + std::to_string(o.representative) + " (|n| = " +
                                   std::to_string(o.length) + ") needs F_" + std::to_string(p) + "^" +
                                   std::to_string(k * o.length) + ", over the field budget");
            size *= p;
        }
    }

    LPolynomial L;
    L.q = q;
    L.d = d;
    L.d_prime = dp;
    L.factors.resize(orbits.orbits.size(), OrbitFactor{0, 0, 0, CycloElt(1), false});
    parallel_chunks(orbits.orbits.size(), opt.jobs, [&](u64 lo, u64 hi, unsigned) {
        for (u64 i = lo; i < hi; ++i) {
            const auto &o = orbits.orbits[i];
            CycloElt b = beta(q, dp, o.representative, opt.field);
            const bool qp = equals_integer(b, bigint(arith::ipow(q, static_cast<unsigned>(o.length))));
            L.factors[i] = {o.representative, o.length, two_d / std::gcd(o.representative, two_d), std::move(b), qp};
        }
    });

    std::map<u64, std::vector<const OrbitFactor *>> strata;
    for (const auto &f : L.factors)
        strata[f.stratum].push_back(&f);

    auto factor_poly = [&](const OrbitFactor &f) {
        detail::cyclo_poly fp(f.length + 1, CycloElt(two_d));
        fp[0] = CycloElt::integer(two_d, 1);
        fp[f.length] = -f.beta.lift(arith::lcm(f.beta.order(), two_d));
        return fp;
    };

    int_poly result{1, -bigint(q)};
    if (opt.certify_per_stratum) {
        for (const auto &[e, members] : strata) {
            detail::cyclo_poly acc{CycloElt::integer(two_d, 1)};
            for (const auto *f : members)
                acc = detail::cyclo_poly_mul(acc, factor_poly(*f), two_d);
            const int_poly block = detail::certify_integral(acc, "stratum e = " + std::to_string(e));
            result = detail::poly_mul(result, block);
        }
    } else {
        detail::cyclo_poly acc{CycloElt::integer(two_d, 1)};
        for (const auto &f : L.factors)
            acc = detail::cyclo_poly_mul(acc, factor_poly(f), two_d);
        result = detail::poly_mul(result, detail::certify_integral(acc, "orbit product"));
    }
    detail::trim(result);
    L.coeffs = std::move(result);
    if (L.coeffs.empty() || L.coeffs[0] != 1)
        throw inconsistency_error("L-polynomial constant term is not 1");
    const u64 expected_degree = invariants(q, d).l_degree();
    if (L.degree() != expected_degree)
        throw inconsistency_error("deg L = " + std::to_string(L.degree()) + " but deg N - 4 = " +
                                  std::to_string(expected_degree));
    L.vanishing_order = vanishing_order(L.coeffs, q);
    return L;
}

/// 1 + #{orbits with beta = q^{|n|}}, cross-checked against the order of
/// vanishing of the assembled polynomial.
inline u64 analytic_rank(const LPolynomial &L) {
    u64 count = 1;
    for (const auto &f : L.factors)
        count += f.beta_is_q_power ? 1 : 0;
    if (count != L.vanishing_order)
        throw inconsistency_error("orbit count rank " + std::to_string(count) + " != vanishing order " +
                                  std::to_string(L.vanishing_order));
    return count;
}

inline u64 analytic_rank(u64 q, u64 d, const LOptions &opt = {}) { return analytic_rank(l_polynomial(q, d, opt)); }

/// rk E_d(K): the analytic rank of E_{d'} (BSD holds for the family).
inline u64 mw_rank(u64 q, u64 d, const LOptions &opt = {}) {
    return analytic_rank(q, normalize(q, d).d_prime, opt);
}

struct SupersingularRank {
    u64 d_prime = 0;
    u64 witness = 0;      ///< least a with 2d' | q^a + 1
    u64 rank = 0;         ///< 1 + |O_q(Z_2d')| from the strata, no character sums
    rational i_q_2d = 0;  ///< I_q(2d')
    bool discrepancy = false;
    std::string note;
};

/// Rank when 2d' is supersingular. The orbit count is authoritative; I_q(2d')
/// is reported beside it and differs exactly when d' is even, because the
/// stratum e = 4 is not part of Z_2d'.
inline SupersingularRank supersingular_rank(u64 q, u64 d) {
    const u64 dp = normalize(q, d).d_prime;
    const auto ss = is_supersingular(q, 2 * dp);
    if (!ss.supersingular)
        throw std::invalid_argument("2d = " + std::to_string(2 * dp) + " not supersingular for q = " +
                                    std::to_string(q));
    SupersingularRank r;
    r.d_prime = dp;
    r.witness = *ss.witness;
    r.rank = 1;
    for (const auto &s : stratify(q, dp))
        r.rank += s.orbit_count;
    r.i_q_2d = i_q(q, 2 * dp);
    if (r.i_q_2d != rational(r.rank)) {
        r.discrepancy = true;
        r.note = "d' = " + std::to_string(dp) + ": 1 + |O_q(Z_2d)| = " + std::to_string(r.rank) + " but I_q(" +
                 std::to_string(2 * dp) + ") = " + r.i_q_2d.str() + " (stratum e = 4 is excluded from Z_2d)";
    }
    return r;
}

enum class BoundVerdict { pass, fail, review };

inline const char *to_string(BoundVerdict v) {
    switch (v) {
    case BoundVerdict::pass:
        return "pass";
    case BoundVerdict::fail:
        return "fail";
    case BoundVerdict::review:
        return "review";
    }
    return "?";
}

inline constexpr double kBoundSlack = 1e-6;

/// log(sqrt q) * D / log D, with the comparison value >= bound decided outside
/// a 1e-6 relative slack band; inside the band the verdict is `review`.
inline double rank_lower_bound(u64 q, u64 D) {
    return 0.5 * std::log(static_cast<long double>(q)) * static_cast<long double>(D) /
           std::log(static_cast<long double>(D));
}

inline BoundVerdict check_bound(const rational &value, double bound) {
    const double v = static_cast<double>(value);
    const double slack = kBoundSlack * std::max(1.0, std::abs(bound));
    if (v >= bound + slack)
        return BoundVerdict::pass;
    if (v < bound - slack)
        return BoundVerdict::fail;
    return BoundVerdict::review;
}

struct SequenceRow {
    unsigned n = 0;
    u64 d_even = 0; ///< q^n + 1
    u64 d_odd = 0;  ///< sum_{i=0}^{2n} (-q)^i
    Supersingularity even_ss, odd2_ss;
    u64 order_mod_d_even = 0; ///< o_q(q^n + 1), expected 2n
    rational i_even = 0;      ///< I_q(d^e_n)
    rational i_odd2 = 0;      ///< I_q(2 d^o_n)
    double bound_even = 0, bound_odd = 0;
    BoundVerdict verdict_even = BoundVerdict::fail, verdict_odd = BoundVerdict::fail;
    u64 rho_half = 0;                 ///< rho(d^e_n / 2) from the orbit count
    bool half_matches_i_even = false; ///< rho(d^e_n / 2) == I_q(d^e_n)
    u64 rho_odd = 0;                  ///< rho(d^o_n) from the orbit count
    std::optional<u64> rho_even;      ///< rho(d^e_n) by full beta evaluation, if in budget
    std::optional<std::string> rho_even_reason;
    bool chain_holds = true; ///< rho(d^e_n) >= rho(d^e_n/2) and >= I_q(d^e_n), when rho(d^e_n) is known
    std::vector<std::string> notes;
};

inline std::vector<SequenceRow> rank_sequences(u64 q, unsigned n_max, const LOptions &opt = {},
                                               bool exact_even_ranks = true) {
    std::vector<SequenceRow> rows;
    for (unsigned n = 1; n <= n_max; ++n) {
        SequenceRow r;
        r.n = n;
        r.d_even = arith::ipow(q, n) + 1;
        i64 s = 0, term = 1;
        for (unsigned i = 0; i <= 2 * n; ++i) {
            s += term;
            term *= -static_cast<i64>(q);
        }
        r.d_odd = static_cast<u64>(s);
        r.even_ss = is_supersingular(q, r.d_even);
        r.odd2_ss = is_supersingular(q, 2 * r.d_odd);
        r.order_mod_d_even = mult_order(q, r.d_even);
        r.i_even = i_q(q, r.d_even);
        r.i_odd2 = i_q(q, 2 * r.d_odd);
        r.bound_even = rank_lower_bound(q, r.d_even);
        r.bound_odd = rank_lower_bound(q, r.d_odd);
        r.verdict_even = check_bound(r.i_even, r.bound_even);
        r.verdict_odd = check_bound(r.i_odd2, r.bound_odd);
        const auto half = supersingular_rank(q, r.d_even / 2);
        r.rho_half = half.rank;
        r.half_matches_i_even = rational(half.rank) == r.i_even;
        if (half.discrepancy)
            r.notes.push_back(half.note);
        const auto odd = supersingular_rank(q, r.d_odd);
        r.rho_odd = odd.rank;
        if (odd.discrepancy)
            r.notes.push_back(odd.note);
        if (exact_even_ranks) {
            try {
                r.rho_even = mw_rank(q, r.d_even, opt);
            } catch (const budget_error &e) {
                r.rho_even_reason = e.what();
            }
        }
        if (r.rho_even)
            r.chain_holds = *r.rho_even >= r.rho_half && rational(*r.rho_even) >= r.i_even;
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Primes l <= bound, l != 2, p, such that p generates (Z/l^2 Z)^x.
inline std::vector<u64> find_ell(u64 p, u64 bound) {
    if (p < 3 || !arith::is_prime(p))
        throw std::invalid_argument("p must be an odd prime");
    std::vector<u64> out;
    for (u64 l = 3; l <= bound; l += 2) {
        if (l == p || !arith::is_prime(l))
            continue;
        if (mult_order(p, l * l) == l * (l - 1))
            out.push_back(l);
    }
    return out;
}

struct RankConstruction {
    u64 p = 0, target_rank = 0;
    u64 ell = 0; ///< 0 when target_rank = 1
    u64 r = 0;
    u64 d = 0;   ///< l^r, or 1
    Supersingularity supersingular;
    rational i_q_2d = 0;
    u64 supersingular_path_rank = 0;
    std::optional<u64> analytic;  ///< full beta evaluation, budget permitting
    std::optional<std::string> analytic_reason;
    bool certified = false;
};

/// d with rk E_d(F_p(t)) = R for odd R: d = 1 for R = 1, else d = l^{(R-1)/2}
/// with p generating (Z/l^2 Z)^x, so that I_p(2 l^r) = 1 + 2r = R.
inline RankConstruction exact_rank_construction(u64 p, u64 R, const LOptions &opt = {}, u64 ell_bound = 10000) {
    if (R % 2 == 0)
        throw std::invalid_argument("target rank must be odd");
    RankConstruction c;
    c.p = p;
    c.target_rank = R;
    c.r = (R - 1) / 2;
    if (R == 1) {
        c.d = 1;
    } else {
        const auto ells = find_ell(p, ell_bound);
        if (ells.empty())
            throw std::runtime_error("no suitable l found below " + std::to_string(ell_bound));
        c.ell = ells.front();
        c.d = arith::ipow(c.ell, static_cast<unsigned>(c.r));
    }
    c.supersingular = is_supersingular(p, 2 * c.d);
    c.i_q_2d = i_q(p, 2 * c.d);
    if (c.supersingular.supersingular)
        c.supersingular_path_rank = supersingular_rank(p, c.d).rank;
    try {
        c.analytic = mw_rank(p, c.d, opt);
    } catch (const budget_error &e) {
        c.analytic_reason = e.what();
    }
    c.certified = c.supersingular.supersingular && c.i_q_2d == rational(R) && c.supersingular_path_rank == R &&
                  (!c.analytic || *c.analytic == R);
    return c;
}

enum class RankMethod { ss_formula, beta, unknown };

inline const char *to_string(RankMethod m) {
    switch (m) {
    case RankMethod::ss_formula:
        return "ss-formula";
    case RankMethod::beta:
        return "beta";
    case RankMethod::unknown:
        return "unknown";
    }
    return "?";
}

struct ScanRow {
    u64 d = 0, d_prime = 0;
    RankMethod method = RankMethod::unknown;
    std::optional<u64> rank;
    u64 deg_l = 0;
    bool supersingular = false;
    std::string unknown_reason;
    std::optional<u64> beta_rank; ///< full beta value on supersingular rows, when in budget
    std::optional<std::string> discrepancy;
    bool ss_agrees_with_beta = true;
    bool lower_bound_i_q_d = true; ///< rho(d) >= I_q(d') on supersingular rows
};

struct ScanResult {
    u64 q = 0, x_max = 0;
    std::vector<ScanRow> rows;
    std::vector<double> running_average; ///< over known ranks with d <= row's d
    u64 unknown = 0;
};

inline ScanResult average_rank_scan(u64 q, u64 x_max, const LOptions &opt = {}) {
    ScanResult res;
    res.q = q;
    res.x_max = x_max;
    res.rows.resize(x_max);
    LOptions inner = opt;
    inner.jobs = 1;
    parallel_chunks(x_max, opt.jobs, [&](u64 lo, u64 hi, unsigned) {
        for (u64 i = lo; i < hi; ++i) {
            ScanRow row;
            row.d = i + 1;
            row.d_prime = normalize(q, row.d).d_prime;
            row.deg_l = invariants(q, row.d).l_degree();
            row.supersingular = is_supersingular(q, 2 * row.d_prime).supersingular;
            std::optional<u64> beta_value;
            std::string beta_reason;
            try {
                beta_value = analytic_rank(q, row.d_prime, inner);
            } catch (const budget_error &e) {
                beta_reason = std::string("budget: ") + e.what();
            }
            if (row.supersingular) {
                const auto ss = supersingular_rank(q, row.d_prime);
                row.method = RankMethod::ss_formula;
                row.rank = ss.rank;
                if (ss.discrepancy)
                    row.discrepancy = ss.note;
                row.beta_rank = beta_value;
                row.ss_agrees_with_beta = !beta_value || *beta_value == ss.rank;
                row.lower_bound_i_q_d = rational(ss.rank) >= i_q(q, row.d_prime);
            } else if (beta_value) {
                row.method = RankMethod::beta;
                row.rank = beta_value;
            } else {
                row.method = RankMethod::unknown;
                row.unknown_reason = beta_reason;
            }
            res.rows[i] = std::move(row);
        }
    });
    u64 known = 0, total = 0;
    for (const auto &row : res.rows) {
        if (row.rank) {
            ++known;
            total += *row.rank;
        } else {
            ++res.unknown;
        }
        res.running_average.push_back(known ? static_cast<double>(total) / static_cast<double>(known) : 0.0);
    }
    return res;
}

} // namespace kummer
