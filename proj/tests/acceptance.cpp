// One PASS/FAIL line per acceptance criterion. Runtime limits are part of each
// criterion and are measured as wall-clock time.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "kummer.hpp"

using namespace kummer;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string &title, double limit_seconds, const std::function<void(Outcome &)> &body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception &e) {
        out.ok = false;
        out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < limit_seconds;
    const bool pass = out.ok && in_time;
    if (!pass)
        ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << secs << " s, limit "
              << limit_seconds << " s" << (in_time ? "" : ", over time") << ")" << out.detail.str() << std::endl;
}

FieldPtr field(u64 q) {
    const auto [p, k] = arith::prime_power(q);
    return cached_field(p, static_cast<unsigned>(k));
}

} // namespace

int main() {
    std::cout << std::setprecision(3);

    criterion(1, "trivial L-functions: L(3,1) = L(3,2) = 1 - 3T, rank 1", 1.0, [](Outcome &o) {
        for (u64 d : {1u, 2u}) {
            const auto L = l_polynomial(3, d);
            o.require(L.coeffs == int_poly{1, -3}, "L(3," + std::to_string(d) + ") = " + io::render_poly(L.coeffs));
            o.require(analytic_rank(L) == 1, "rank of d = " + std::to_string(d));
        }
    });

    criterion(2, "Jac1-Jac5 over q in {3,5,7,9,25,27}; Jac4 for degree 2 and 3 lifts over F_3, F_5", 30.0,
              [](Outcome &o) {
                  for (u64 q : {3u, 5u, 7u, 9u, 25u, 27u})
                      for (const auto &c : verify::jacobi_suite(q))
                          o.require(c.passed, c.name + " " + c.detail);
                  for (u64 q : {3u, 5u})
                      for (unsigned s : {2u, 3u}) {
                          const auto c = verify::hasse_davenport_jacobi(q, s);
                          o.require(c.passed, c.name + " " + c.detail);
                      }
                  o.detail << " note: Jac4 checked by identity on every pair with a nontrivial member; the trivial"
                              " pair is checked against its exact value -Q^s";
              });

    criterion(3, "b_sum = b_closed_form for every character, q in {3,5,7,9,25}", 60.0, [](Outcome &o) {
        for (u64 q : {3u, 5u, 7u, 9u, 25u}) {
            const auto c = verify::b_equivalence(q);
            o.require(c.passed, c.name + " " + c.detail);
        }
    });

    criterion(4, "quartic identity, q in {3,5,7,9,13,25}", 10.0, [](Outcome &o) {
        for (u64 q : {3u, 5u, 7u, 9u, 13u, 25u})
            o.require(quartic_identity_check(field(q)), "q = " + std::to_string(q));
    });

    criterion(5, "B(F_{q^2}, chi o N) = B(F_q, chi)^2 for all chi, q in {3,5,9}", 30.0, [](Outcome &o) {
        for (u64 q : {3u, 5u, 9u}) {
            const auto f = field(q);
            for (const auto &chi : all_characters(f)) {
                const auto lifted = lift_by_norm(chi, 2);
                o.require(algebraically_equal(b_sum(lifted), b_sum(chi).pow(2)),
                          "q = " + std::to_string(q) + ", step " + std::to_string(chi.step()));
            }
        }
    });

    criterion(6, "log-coefficients of L = brute-force c_m, m = 1..4, seven (q,d) pairs", 600.0, [](Outcome &o) {
        const std::pair<u64, u64> cases[] = {{3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 5}, {5, 2}, {5, 3}};
        for (auto [q, d] : cases) {
            const auto L = l_polynomial(q, d);
            const auto logs = log_coefficients(L.coeffs, 4);
            for (unsigned m = 1; m <= 4; ++m) {
                const i64 c = log_l_coefficient(q, d, m);
                o.require(logs[m - 1] == c, "q=" + std::to_string(q) + " d=" + std::to_string(d) +
                                                " m=" + std::to_string(m) + ": " + logs[m - 1].str() +
                                                " vs " + std::to_string(c));
            }
        }
    });

    criterion(7, "deg L = deg N_{d'} - 4 for d <= 8, q in {3,5}", 120.0, [](Outcome &o) {
        for (u64 q : {3u, 5u})
            for (u64 d = 1; d <= 8; ++d) {
                const auto L = l_polynomial(q, d);
                const auto c = invariants(q, d);
                o.require(L.degree() == c.conductor_degree - 4,
                          "q=" + std::to_string(q) + " d=" + std::to_string(d));
            }
    });

    criterion(8, "q = 3, d in {5,7}: 2d supersingular, beta(n) = q^{|n|}, rank = I_3(2d) = 3", 60.0,
              [](Outcome &o) {
                  for (u64 d : {5u, 7u}) {
                      o.require(is_supersingular(3, 2 * d).supersingular, "2d supersingular, d=" + std::to_string(d));
                      const auto L = l_polynomial(3, d);
                      for (const auto &f : L.factors)
                          o.require(equals_integer(f.beta, bigint(arith::ipow(3, static_cast<unsigned>(f.length)))),
                                    "beta(" + std::to_string(f.representative) + ") for d=" + std::to_string(d));
                      const u64 r = analytic_rank(L);
                      o.require(r == 3 && i_q(3, 2 * d) == rational(3), "rank/I_3 for d=" + std::to_string(d));
                  }
              });

    criterion(9, "|beta(n)|^2 = q^{2|n|} for every orbit, d <= 8, q = 3", 120.0, [](Outcome &o) {
        for (u64 d = 1; d <= 8; ++d)
            for (const auto &f : l_polynomial(3, d).factors)
                o.require(equals_integer(abs_square(f.beta), bigint(arith::ipow(3, static_cast<unsigned>(2 * f.length)))),
                          "d=" + std::to_string(d) + " n=" + std::to_string(f.representative));
    });

    criterion(10, "torsion bound and P_d at q = 3, d in {1,2,4}", 60.0, [](Outcome &o) {
        for (u64 d : {1u, 2u, 4u}) {
            const auto r = torsion_and_point_check(3, d, good_places(3, d, 3, 12));
            o.require(r.gcd_bound % 2 == 0, "gcd bound even, d=" + std::to_string(d));
            o.require(r.pd_on_curve && r.pd_on_fibers && r.pd_distinct, "P_d checks, d=" + std::to_string(d));
            if (r.gcd_bound == 2 || r.prime_to_p_bound == 2)
                o.require(r.torsion_certified && r.infinite_order_certified, "certificate, d=" + std::to_string(d));
            o.detail << " d=" << d << ": gcd " << r.gcd_bound << ", prime-to-3 part " << r.prime_to_p_bound
                     << (r.torsion_certified ? ", torsion = Z/2Z, rank >= 1;" : ";");
        }
    });

    criterion(11, "sequences q = 3, n in {1,2}: supersingularity, bounds, o_3(3^a + 1) = 2a", 60.0, [](Outcome &o) {
        LOptions opt;
        const auto rows = rank_sequences(3, 2, opt, false);
        const u64 d_odd[] = {7, 61}, d_even[] = {4, 10};
        for (std::size_t i = 0; i < 2; ++i) {
            const auto &r = rows[i];
            o.require(r.d_odd == d_odd[i] && r.d_even == d_even[i], "sequence values n=" + std::to_string(r.n));
            o.require(r.odd2_ss.supersingular && r.even_ss.supersingular, "supersingular n=" + std::to_string(r.n));
            o.require(r.verdict_odd == BoundVerdict::pass, "I_3(2 d_odd) bound n=" + std::to_string(r.n));
            o.require(r.verdict_even == BoundVerdict::pass, "I_3(d_even) bound n=" + std::to_string(r.n));
            o.detail << " n=" << r.n << ": I_3(" << 2 * r.d_odd << ") = " << r.i_odd2 << " >= " << r.bound_odd
                     << ", I_3(" << r.d_even << ") = " << r.i_even << " >= " << r.bound_even << ";";
        }
        for (unsigned a = 1; a <= 3; ++a)
            o.require(mult_order(3, arith::ipow(3, a) + 1) == 2 * a, "o_3(3^a+1), a=" + std::to_string(a));
        o.detail << " bound slack " << kBoundSlack << " relative";
    });

    criterion(12, "find_ell rows for p = 3, 5, 7", 10.0, [](Outcome &o) {
        o.require(find_ell(3, 140) == std::vector<u64>{5, 7, 17, 19, 29, 31, 43, 53, 79, 89, 101, 113, 127, 137, 139},
                  "p = 3");
        o.require(find_ell(5, 50) == std::vector<u64>{3, 7, 17, 23, 37, 43, 47}, "p = 5");
        o.require(find_ell(7, 30) == std::vector<u64>{11, 13, 17, 23}, "p = 7");
    });

    criterion(13, "exact-rank construction p = 3, R in {1,3,5}", 300.0, [](Outcome &o) {
        const auto c1 = exact_rank_construction(3, 1);
        o.require(c1.d == 1 && c1.analytic == std::optional<u64>(1), "R = 1");
        const auto c3 = exact_rank_construction(3, 3);
        o.require(c3.ell == 5 && c3.d == 5 && c3.analytic == std::optional<u64>(3), "R = 3");
        const auto c5 = exact_rank_construction(3, 5);
        o.require(c5.d == 25 && c5.supersingular_path_rank == 5 && c5.i_q_2d == rational(5) && c5.certified, "R = 5");
        o.require(!c5.analytic || *c5.analytic == 5, "R = 5 full beta");
        o.detail << " R=5 full beta: "
                 << (c5.analytic ? std::to_string(*c5.analytic) : "over budget (orbit fields F_{3^20})");
    });

    criterion(14, "generator invariance of L(3,d), d in {3,4,5}", 120.0, [](Outcome &o) {
        LOptions alt;
        alt.field.generator = generator_choice::alternate;
        for (u64 d : {3u, 4u, 5u}) {
            const auto a = l_polynomial(3, d), b = l_polynomial(3, d, alt);
            o.require(a.coeffs == b.coeffs, "d = " + std::to_string(d));
        }
    });

    criterion(15, "d = 2 emits the I_q(4) vs orbit-count discrepancy record without failing", 1.0, [](Outcome &o) {
        const auto s = supersingular_rank(3, 2);
        o.require(s.discrepancy && s.rank == 1 && s.i_q_2d == rational(2), "record");
        const auto scan = average_rank_scan(3, 2);
        o.require(scan.rows[1].discrepancy.has_value() && scan.rows[1].rank == std::optional<u64>(1), "scan row");
        o.detail << " record: " << s.note;
    });

    criterion(16, "scan q = 3, x = 10 resolves all ranks; supersingular path agrees with full beta", 60.0,
              [](Outcome &o) {
                  const auto s = average_rank_scan(3, 10);
                  o.require(s.unknown == 0, "unknowns");
                  u64 compared = 0;
                  for (const auto &r : s.rows) {
                      o.require(r.rank.has_value(), "d = " + std::to_string(r.d));
                      if (r.method == RankMethod::ss_formula && r.beta_rank) {
                          ++compared;
                          o.require(*r.beta_rank == *r.rank, "ss vs beta at d = " + std::to_string(r.d));
                      }
                  }
                  o.detail << " average " << s.running_average.back() << ", " << compared
                           << " supersingular rows compared";
              });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
