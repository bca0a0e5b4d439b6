#pragma once

// Property suites behind `kummer verify`: Jacobi identities, the closed form of
// B, the quartic identity, Hasse-Davenport for B, the point-count oracle and the
// reduction census. Each suite returns a list of named checks.

#include <string>
#include <vector>

#include "kummer/chars.hpp"
#include "kummer/curve.hpp"
#include "kummer/lfun.hpp"

namespace kummer::verify {

struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

using Report = std::vector<Check>;

inline bool all_passed(const Report &r) {
    for (const auto &c : r)
        if (!c.passed)
            return false;
    return true;
}

inline FieldPtr field_of(u64 q, const FieldOptions &opt) {
    const auto [p, k] = arith::prime_power(q);
    return cached_field(p, static_cast<unsigned>(k), opt.generator, opt.budget);
}

/// Jac1, Jac2, Jac3 and Jac5, exhaustively over the characters of F_q.
inline Report jacobi_suite(u64 q, const FieldOptions &opt = {}) {
    const auto f = field_of(q, opt);
    const auto chars = all_characters(f);
    const Character one = Character::trivial(f);
    const Character lambda = Character::quadratic(f);
    const auto four = f->from_int(4);
    u64 bad1 = 0, bad2 = 0, bad5 = 0, n5 = 0;
    for (const auto &chi : chars) {
        if (!chi.is_trivial() && !is_zero(jacobi(one, chi)))
            ++bad1;
        if (!chi.is_trivial() && !(chi == lambda)) {
            const CycloElt lhs = jacobi(chi, lambda);
            const CycloElt rhs = chi.eval(four) * jacobi(chi, chi);
            if (!algebraically_equal(lhs, rhs))
                ++bad2;
        }
        for (const auto &psi : chars) {
            if (chi.is_trivial() || psi.is_trivial() || (chi * psi).is_trivial())
                continue;
            ++n5;
            if (!equals_integer(abs_square(jacobi(chi, psi)), bigint(f->size())))
                ++bad5;
        }
    }
    const int lm1 = f->quadratic(f->neg(FieldTable::one()));
    const bool ok3 = equals_integer(jacobi(lambda, lambda), lm1);
    const std::string tag = "F_" + std::to_string(q);
    return {
        {"jacobi", "Jac1 " + tag, bad1 == 0, std::to_string(bad1) + " failures"},
        {"jacobi", "Jac2 " + tag, bad2 == 0, std::to_string(bad2) + " failures"},
        {"jacobi", "Jac3 " + tag, ok3, "lambda(-1) = " + std::to_string(lm1)},
        {"jacobi", "Jac5 " + tag, bad5 == 0, std::to_string(bad5) + " failures over " + std::to_string(n5) + " pairs"},
    };
}

/// Jac4: j_{F'}(chi1 o N, chi2 o N) = j_F(chi1, chi2)^{[F':F]} for every pair on
/// F_q with a nontrivial member. For the trivial pair j_F(1, 1) = -|F|, so the
/// lifted value is -|F|^s, which differs from (-|F|)^s when s is even; that
/// pair is checked against -|F|^s.
inline Check hasse_davenport_jacobi(u64 q, unsigned s, const FieldOptions &opt = {}) {
    const auto f = field_of(q, opt);
    const auto chars = all_characters(f);
    u64 bad = 0, total = 0;
    bool trivial_pair_ok = false;
    for (const auto &a : chars)
        for (const auto &b : chars) {
            const auto la = lift_by_norm(a, s, opt.budget), lb = lift_by_norm(b, s, opt.budget);
            const CycloElt lifted = jacobi(la, lb);
            if (a.is_trivial() && b.is_trivial()) {
                trivial_pair_ok = equals_integer(jacobi(a, b), -bigint(f->size())) &&
                                  equals_integer(lifted, -bigint(la.field().size()));
                continue;
            }
            ++total;
            if (!algebraically_equal(lifted, jacobi(a, b).pow(s)))
                ++bad;
        }
    return {"jacobi",
            "Jac4 F_" + std::to_string(q) + " degree " + std::to_string(s),
            bad == 0 && trivial_pair_ok,
            std::to_string(bad) + " failures over " + std::to_string(total) +
                " pairs; trivial pair j = -Q^s: " + (trivial_pair_ok ? "yes" : "no")};
}

/// b_sum = b_closed_form for every character of F_q.
inline Check b_equivalence(u64 q, const FieldOptions &opt = {}) {
    const auto f = field_of(q, opt);
    u64 bad = 0;
    for (const auto &chi : all_characters(f))
        if (!algebraically_equal(b_sum(chi), b_closed_form(chi)))
            ++bad;
    return {"b-sum", "closed form F_" + std::to_string(q), bad == 0, std::to_string(bad) + " failures"};
}

inline Check quartic(u64 q, const FieldOptions &opt = {}) {
    return {"quartic", "quartic identity F_" + std::to_string(q), quartic_identity_check(field_of(q, opt)), ""};
}

/// B(F_{q^2}, chi o N) = B(F_q, chi)^2, with the double sum on both sides
/// when it fits the naive budget and the closed form otherwise.
inline Check hasse_davenport_b(u64 q, const FieldOptions &opt = {}) {
    const auto f = field_of(q, opt);
    u64 bad = 0;
    for (const auto &chi : all_characters(f)) {
        const auto lifted = lift_by_norm(chi, 2, opt.budget);
        const CycloElt big =
            lifted.field().size() <= kDefaultDoubleSumBudget ? b_sum(lifted) : b_closed_form(lifted);
        if (!algebraically_equal(big, b_sum(chi).pow(2)))
            ++bad;
    }
    return {"b-sum", "Hasse-Davenport F_" + std::to_string(q) + "^2", bad == 0, std::to_string(bad) + " failures"};
}

/// Log-coefficients of the assembled L against brute-force point counts.
inline Check oracle_match(u64 q, u64 d, unsigned m_max, const LOptions &opt = {}) {
    const LPolynomial L = l_polynomial(q, d, opt);
    const auto logs = log_coefficients(L.coeffs, m_max);
    std::string detail;
    bool ok = true;
    for (unsigned m = 1; m <= m_max; ++m) {
        const i64 c = log_l_coefficient(q, L.d_prime, m, opt.jobs, opt.field.budget);
        if (logs[m - 1] != c) {
            ok = false;
            detail += "m=" + std::to_string(m) + ": L gives " + logs[m - 1].str() + ", count gives " +
                      std::to_string(c) + "; ";
        }
    }
    return {"oracle", "q=" + std::to_string(q) + " d=" + std::to_string(d) + " m<=" + std::to_string(m_max), ok,
            detail};
}

/// Every tau in P^1(F_{q^m}) classified consistently, and the bad-fiber count
/// equals 1 (infinity) + #{tau^{2d} = -16} + [d odd].
inline Check census(u64 q, u64 d, unsigned m, u64 budget = default_field_budget()) {
    const auto entries = reduction_census(q, d, m, budget);
    u64 inconsistent = 0, bad = 0;
    for (const auto &e : entries) {
        if (!e.consistent)
            ++inconsistent;
        if (e.type != ReductionType::good)
            ++bad;
    }
    const auto f = fiber_field(q, m, budget);
    u64 roots = 0;
    const auto minus16 = f->neg(f->from_int(16));
    for (u64 t = 1; t < f->size(); ++t)
        if (f->pow(static_cast<FieldTable::elem>(t), 2 * d) == minus16)
            ++roots;
    const u64 expected = 1 + roots + (d % 2);
    return {"census",
            "q=" + std::to_string(q) + " d=" + std::to_string(d) + " m=" + std::to_string(m),
            inconsistent == 0 && bad == expected,
            std::to_string(bad) + " bad fibers (expected " + std::to_string(expected) + "), " +
                std::to_string(inconsistent) + " inconsistent"};
}

/// Everything `kummer verify --q Q` runs.
inline Report full_suite(u64 q, u64 d_max, unsigned m_max, const LOptions &opt = {}) {
    Report r = jacobi_suite(q, opt.field);
    const auto [p, k] = arith::prime_power(q);
    for (unsigned s : {2u, 3u}) {
        u64 size = 1;
        for (unsigned i = 0; i < k * s; ++i)
            size *= p;
        if (size <= opt.field.budget)
            r.push_back(hasse_davenport_jacobi(q, s, opt.field));
    }
    if (q <= kDefaultDoubleSumBudget)
        r.push_back(b_equivalence(q, opt.field));
    r.push_back(quartic(q, opt.field));
    if (q <= kDefaultDoubleSumBudget)
        r.push_back(hasse_davenport_b(q, opt.field));
    for (u64 d = 1; d <= d_max; ++d) {
        if (std::gcd(d, q) != 1)
            continue;
        const u64 deg = l_polynomial(q, d, opt).degree();
        r.push_back(oracle_match(q, d, static_cast<unsigned>(std::min<u64>(m_max, deg)), opt));
        r.push_back(census(q, d, 1, opt.field.budget));
    }
    return r;
}

} // namespace kummer::verify
