#include <gtest/gtest.h>

#include "kummer/lfun.hpp"

using namespace kummer;

namespace {

using rpoly = std::vector<rational>;

// m * [T^m] log L(T) from the series log(1 + u) = sum (-1)^{k+1} u^k / k.
std::vector<rational> series_log_coefficients(const int_poly &L, unsigned m_max) {
    rpoly u(m_max + 1, 0);
    for (std::size_t i = 1; i < L.size() && i <= m_max; ++i)
        u[i] = rational(L[i]);
    rpoly power{1}, log(m_max + 1, 0);
    power.resize(m_max + 1, 0);
    for (unsigned k = 1; k <= m_max; ++k) {
        rpoly next(m_max + 1, 0);
        for (unsigned i = 0; i <= m_max; ++i)
            for (unsigned j = 0; i + j <= m_max; ++j)
                next[i + j] += power[i] * u[j];
        power = next;
        for (unsigned i = 0; i <= m_max; ++i)
            log[i] += (k % 2 ? 1 : -1) * power[i] / rational(k);
    }
    std::vector<rational> c;
    for (unsigned m = 1; m <= m_max; ++m)
        c.push_back(log[m] * m);
    return c;
}

// Smallest k with L^{(k)}(1/q) != 0.
u64 order_by_derivatives(int_poly L, u64 q) {
    const rational x(1, static_cast<long long>(q));
    for (u64 k = 0;; ++k) {
        rational v = 0, xp = 1;
        for (const auto &c : L) {
            v += rational(c) * xp;
            xp *= x;
        }
        if (v != 0)
            return k;
        int_poly dl;
        for (std::size_t i = 1; i < L.size(); ++i)
            dl.push_back(L[i] * static_cast<long long>(i));
        L = dl;
    }
}

u64 naive_order(u64 q, u64 n) {
    u64 x = q % n, k = 1;
    while (x != 1) {
        x = x * q % n;
        ++k;
    }
    return k;
}

} // namespace

TEST(LPolynomial, TrivialCases) {
    for (u64 d : {1u, 2u, 3u, 6u, 9u}) {
        const auto L = l_polynomial(3, d);
        EXPECT_EQ(L.coeffs, (int_poly{1, -3})) << d;
        EXPECT_EQ(analytic_rank(L), 1u);
    }
}

TEST(LPolynomial, KnownExamples) {
    const auto L5 = l_polynomial(3, 5);
    EXPECT_EQ(L5.coeffs, (int_poly{1, -3, 0, 0, -162, 486, 0, 0, 6561, -19683}));
    EXPECT_EQ(analytic_rank(L5), 3u);
    ASSERT_EQ(L5.factors.size(), 2u);
    for (const auto &f : L5.factors) {
        EXPECT_EQ(f.length, 4u);
        EXPECT_TRUE(equals_integer(f.beta, 81));
    }
    EXPECT_EQ(analytic_rank(3, 7), 3u);
    EXPECT_EQ(mw_rank(3, 15), 3u);
}

TEST(LPolynomial, LogCoefficientsAgreeWithSeries) {
    for (auto [q, d] : {std::pair<u64, u64>{3, 4}, {3, 5}, {5, 3}, {7, 4}}) {
        const auto L = l_polynomial(q, d);
        const auto newton = log_coefficients(L.coeffs, 8);
        const auto series = series_log_coefficients(L.coeffs, 8);
        for (unsigned m = 0; m < 8; ++m)
            EXPECT_EQ(rational(newton[m]), series[m]) << q << ' ' << d << ' ' << m;
    }
    EXPECT_EQ(log_coefficients({1, -3}, 3), (std::vector<bigint>{-3, -9, -27}));
    EXPECT_THROW(log_coefficients({2, 1}, 1), std::invalid_argument);
}

TEST(LPolynomial, MatchesPointCounts) {
    for (auto [q, d] : {std::pair<u64, u64>{3, 4}, {3, 5}, {5, 2}, {5, 3}, {7, 2}}) {
        const auto L = l_polynomial(q, d);
        const unsigned m_max = static_cast<unsigned>(std::min<u64>(3, L.degree()));
        const auto logs = log_coefficients(L.coeffs, m_max);
        for (unsigned m = 1; m <= m_max; ++m)
            EXPECT_EQ(logs[m - 1], log_l_coefficient(q, d, m)) << q << ' ' << d << ' ' << m;
    }
}

TEST(LPolynomial, VanishingOrderByDerivatives) {
    for (u64 q : {3u, 5u}) {
        for (u64 d = 1; d <= 10; ++d) {
            if (d % q == 0)
                continue;
            const auto L = l_polynomial(q, d);
            EXPECT_EQ(L.vanishing_order, order_by_derivatives(L.coeffs, q)) << q << ' ' << d;
            EXPECT_EQ(analytic_rank(L), L.vanishing_order);
        }
    }
    EXPECT_EQ(vanishing_order({1, -6, 9}, 3), 2u);
    EXPECT_EQ(vanishing_order({1, 1}, 3), 0u);
}

TEST(LPolynomial, DegreeIdentity) {
    for (u64 q : {3u, 5u})
        for (u64 d = 1; d <= 8; ++d)
            EXPECT_EQ(l_polynomial(q, d).degree(), invariants(q, d).conductor_degree - 4) << q << ' ' << d;
}

TEST(LPolynomial, GeneratorInvariance) {
    for (u64 d : {3u, 4u, 5u, 7u, 8u}) {
        LOptions alt;
        alt.field.generator = generator_choice::alternate;
        EXPECT_EQ(l_polynomial(3, d).coeffs, l_polynomial(3, d, alt).coeffs) << d;
    }
    LOptions alt;
    alt.field.generator = generator_choice::alternate;
    EXPECT_EQ(l_polynomial(5, 6).coeffs, l_polynomial(5, 6, alt).coeffs);
}

TEST(LPolynomial, CertificationModesAgree) {
    LOptions final_only;
    final_only.certify_per_stratum = false;
    for (u64 d : {4u, 8u, 10u})
        EXPECT_EQ(l_polynomial(3, d).coeffs, l_polynomial(3, d, final_only).coeffs);
}

TEST(LPolynomial, BetaMagnitude) {
    for (u64 d = 1; d <= 8; ++d) {
        if (d % 3 == 0)
            continue;
        for (const auto &f : l_polynomial(3, d).factors)
            EXPECT_TRUE(equals_integer(abs_square(f.beta), bigint(arith::ipow(3, 2 * f.length))));
    }
}

TEST(LPolynomial, Monotonicity) {
    for (u64 d = 1; d <= 8; ++d)
        for (u64 m = 2; m * d <= 16; ++m)
            EXPECT_GE(mw_rank(3, m * d), mw_rank(3, d)) << d << ' ' << m;
}

TEST(LPolynomial, BudgetFailsWholeAndNamesOrbit) {
    LOptions small;
    small.field.budget = 30;
    try {
        l_polynomial(3, 5, small);
        FAIL() << "expected budget_error";
    } catch (const budget_error &e) {
        EXPECT_NE(std::string(e.what()).find("n = 1"), std::string::npos) << e.what();
    }
}

TEST(SupersingularRank, AgreesWithFullEvaluation) {
    for (u64 d : {1u, 5u, 7u, 14u, 41u, 61u}) {
        const auto s = supersingular_rank(3, d);
        EXPECT_EQ(s.rank, mw_rank(3, d)) << d;
    }
    EXPECT_EQ(supersingular_rank(3, 5).i_q_2d, rational(3));
    EXPECT_FALSE(supersingular_rank(3, 5).discrepancy);
    EXPECT_THROW(supersingular_rank(3, 4), std::invalid_argument);
}

TEST(SupersingularRank, EvenDegreeDiscrepancyIsRecorded) {
    const auto s = supersingular_rank(3, 2);
    EXPECT_EQ(s.rank, 1u);
    EXPECT_EQ(s.i_q_2d, rational(2));
    EXPECT_TRUE(s.discrepancy);
    EXPECT_NE(s.note.find("I_q(4) = 2"), std::string::npos);
    const auto s14 = supersingular_rank(3, 14);
    EXPECT_EQ(s14.rank, 5u);
    EXPECT_EQ(s14.i_q_2d, rational(6));
}

TEST(Sequences, SmallValues) {
    const auto rows = rank_sequences(3, 3);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].d_even, 4u);
    EXPECT_EQ(rows[1].d_even, 10u);
    EXPECT_EQ(rows[0].d_odd, 7u);
    EXPECT_EQ(rows[1].d_odd, 61u);
    EXPECT_EQ(rows[2].d_odd, 547u);
    for (const auto &r : rows) {
        EXPECT_TRUE(r.even_ss.supersingular);
        EXPECT_TRUE(r.odd2_ss.supersingular);
        EXPECT_EQ(r.order_mod_d_even, 2 * r.n);
        EXPECT_EQ(r.verdict_even, BoundVerdict::pass);
        EXPECT_EQ(r.verdict_odd, BoundVerdict::pass);
        EXPECT_EQ(rational(r.rho_odd), r.i_odd2);
        ASSERT_TRUE(r.rho_even.has_value());
        EXPECT_GE(*r.rho_even, r.rho_half);
    }
    EXPECT_EQ(rows[1].i_even, rational(3));
    EXPECT_EQ(*rows[1].rho_even, 3u);
    // d^e_1 / 2 = 2 and d^e_3 / 2 = 14 are even, and there the orbit count is one below I_q(d^e_n).
    EXPECT_FALSE(rows[0].half_matches_i_even);
    EXPECT_TRUE(rows[1].half_matches_i_even);
    EXPECT_FALSE(rows[2].half_matches_i_even);
}

TEST(Bounds, Verdicts) {
    EXPECT_EQ(check_bound(rational(3), 2.9), BoundVerdict::pass);
    EXPECT_EQ(check_bound(rational(2), 2.9), BoundVerdict::fail);
    EXPECT_EQ(check_bound(rational(3), 3.0 + 1e-9), BoundVerdict::review);
}

TEST(FindEll, MatchesOrderComputation) {
    for (u64 p : {3u, 5u, 7u, 11u}) {
        std::vector<u64> expect;
        for (u64 l = 3; l <= 200; l += 2) {
            if (l == p || !arith::is_prime(l))
                continue;
            if (naive_order(p, l * l) == l * (l - 1))
                expect.push_back(l);
        }
        EXPECT_EQ(find_ell(p, 200), expect) << p;
    }
    EXPECT_EQ(find_ell(3, 140), (std::vector<u64>{5, 7, 17, 19, 29, 31, 43, 53, 79, 89, 101, 113, 127, 137, 139}));
    EXPECT_EQ(find_ell(5, 50), (std::vector<u64>{3, 7, 17, 23, 37, 43, 47}));
    EXPECT_EQ(find_ell(7, 30), (std::vector<u64>{11, 13, 17, 23}));
    EXPECT_THROW(find_ell(4, 10), std::invalid_argument);
}

TEST(Construction, OddRanks) {
    const auto c1 = exact_rank_construction(3, 1);
    EXPECT_EQ(c1.d, 1u);
    EXPECT_TRUE(c1.certified);
    const auto c3 = exact_rank_construction(3, 3);
    EXPECT_EQ(c3.ell, 5u);
    EXPECT_EQ(c3.d, 5u);
    EXPECT_EQ(c3.analytic, std::optional<u64>(3));
    const auto c5 = exact_rank_construction(3, 5);
    EXPECT_EQ(c5.d, 25u);
    EXPECT_EQ(c5.supersingular_path_rank, 5u);
    EXPECT_EQ(c5.i_q_2d, rational(5));
    EXPECT_TRUE(c5.certified);
    const auto c7 = exact_rank_construction(5, 7);
    EXPECT_EQ(c7.d, 27u);
    EXPECT_EQ(c7.supersingular_path_rank, 7u);
    EXPECT_THROW(exact_rank_construction(3, 4), std::invalid_argument);
}

TEST(Scan, ResolvesSmallRange) {
    const auto s = average_rank_scan(3, 12);
    EXPECT_EQ(s.unknown, 0u);
    ASSERT_EQ(s.rows.size(), 12u);
    for (const auto &r : s.rows) {
        ASSERT_TRUE(r.rank.has_value());
        EXPECT_EQ(*r.rank, mw_rank(3, r.d));
        EXPECT_TRUE(r.ss_agrees_with_beta);
        EXPECT_TRUE(r.lower_bound_i_q_d);
        EXPECT_EQ(r.method == RankMethod::ss_formula, r.supersingular);
    }
    EXPECT_DOUBLE_EQ(s.running_average.back(), [&] {
        double t = 0;
        for (const auto &r : s.rows)
            t += static_cast<double>(*r.rank);
        return t / 12;
    }());
}

TEST(Scan, UnknownWhenOverBudget) {
    LOptions small;
    small.field.budget = 30; // F_81 is needed for d = 10
    const auto s = average_rank_scan(3, 10, small);
    const auto &r10 = s.rows[9];
    EXPECT_EQ(r10.method, RankMethod::unknown);
    EXPECT_NE(r10.unknown_reason.find("budget"), std::string::npos);
    EXPECT_EQ(s.rows[4].method, RankMethod::ss_formula); // d = 5 needs no character sums
    EXPECT_GT(s.unknown, 0u);
}
