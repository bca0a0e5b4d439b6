#pragma once

// The family E_d : y^2 = x(x^2 + t^{2d} x - 4 t^{2d}) over F_q(t): invariants,
// conductor degrees, fiber traces A_d(tau, q^m) on minimal models, the
// log-L coefficients obtained by brute-force point counting, the reduction
// census and the torsion / P_d checks.

#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/arith.hpp"
#include "kummer/cyclo.hpp"
#include "kummer/gfq.hpp"
#include "kummer/parallel.hpp"

namespace kummer {

/// Sparse integer polynomial in t, exponent -> coefficient.
class TPoly {
  public:
    TPoly() = default;
    TPoly(std::initializer_list<std::pair<const u64, bigint>> terms) {
        for (const auto &[e, c] : terms)
            add_term(e, c);
    }

    static TPoly monomial(u64 e, const bigint &c = 1) { return TPoly{{e, c}}; }

    void add_term(u64 e, const bigint &c) {
        auto &slot = terms_[e];
        slot += c;
        if (slot == 0)
            terms_.erase(e);
    }

    const std::map<u64, bigint> &terms() const { return terms_; }

    friend TPoly operator+(TPoly a, const TPoly &b) {
        for (const auto &[e, c] : b.terms_)
            a.add_term(e, c);
        return a;
    }
    friend TPoly operator-(TPoly a, const TPoly &b) {
        for (const auto &[e, c] : b.terms_)
            a.add_term(e, -c);
        return a;
    }
    friend TPoly operator*(const TPoly &a, const TPoly &b) {
        TPoly r;
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const TPoly &a, const TPoly &b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[e, c] = *it;
            const bigint mag = c < 0 ? bigint(-c) : c;
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (e == 0 || mag != 1)
                os << mag;
            if (e > 0)
                os << "t" << (e > 1 ? "^" + std::to_string(e) : "");
            first = false;
        }
        return os.str();
    }

  private:
    std::map<u64, bigint> terms_;
};

struct Normalized {
    u64 d_prime;
    unsigned e; ///< d = d' p^e
};

/// Strip the p-part of d: E_d and E_{d'} are isogenous, so every L / rank
/// computation runs on d'.
inline Normalized normalize(u64 q, u64 d) {
    if (d == 0)
        throw std::invalid_argument("d must be positive");
    const u64 p = arith::prime_power(q).first;
    Normalized n{d, 0};
    while (n.d_prime % p == 0) {
        n.d_prime /= p;
        ++n.e;
    }
    return n;
}

struct CurveDescriptor {
    u64 q = 0, p = 0, d = 0, d_prime = 0;
    unsigned e = 0;
    TPoly a2, a4;               ///< y^2 = x^3 + a2 x^2 + a4 x
    TPoly discriminant;         ///< 2^8 t^{6d} (t^{2d} + 16)
    TPoly j_numerator, j_denominator; ///< 2^4 (t^{2d} + 12)^3 / (t^{2d} + 16)
    u64 conductor_degree = 0;        ///< deg N_d
    u64 finite_conductor_degree = 0; ///< deg N_d^f

    u64 l_degree() const { return conductor_degree - 4; }
};

inline TPoly tpow(const TPoly &a, unsigned n) {
    TPoly r = TPoly::monomial(0);
    for (unsigned i = 0; i < n; ++i)
        r = r * a;
    return r;
}

inline CurveDescriptor invariants(u64 q, u64 d) {
    const auto nd = normalize(q, d);
    CurveDescriptor c;
    c.q = q;
    c.p = arith::prime_power(q).first;
    c.d = d;
    c.d_prime = nd.d_prime;
    c.e = nd.e;
    c.a2 = TPoly::monomial(2 * d);
    c.a4 = TPoly::monomial(2 * d, -4);
    // a1 = a3 = a6 = 0: Delta = 16 a2^2 a4^2 - 64 a4^3, c4 = 16 a2^2 - 48 a4.
    c.discriminant = TPoly::monomial(0, 16) * tpow(c.a2, 2) * tpow(c.a4, 2) - TPoly::monomial(0, 64) * tpow(c.a4, 3);
    const TPoly c4 = TPoly::monomial(0, 16) * tpow(c.a2, 2) - TPoly::monomial(0, 48) * c.a4;
    const TPoly t2d16 = TPoly{{2 * d, 1}, {0, 16}};
    if (!(c.discriminant == TPoly::monomial(0, 256) * TPoly::monomial(6 * d) * t2d16))
        throw inconsistency_error("discriminant does not factor as 2^8 t^{6d} (t^{2d} + 16)");
    // c4^3 = 2^12 t^{6d} (t^{2d} + 12)^3, so j = c4^3 / Delta reduces to the stated quotient.
    c.j_numerator = TPoly::monomial(0, 16) * tpow(TPoly{{2 * d, 1}, {0, 12}}, 3);
    c.j_denominator = t2d16;
    if (!(tpow(c4, 3) * c.j_denominator == c.j_numerator * c.discriminant))
        throw inconsistency_error("j-invariant cross-multiplication failed");
    const u64 dp = nd.d_prime;
    c.conductor_degree = dp % 2 == 0 ? 2 * dp + 1 : 2 * dp + 3;
    c.finite_conductor_degree = 2 * dp;
    return c;
}

/// A degree-1 point of P^1 over F_{q^m}; nullopt means infinity.
struct PlacePoint {
    unsigned m = 1;
    std::optional<FieldTable::elem> tau;

    static PlacePoint infinity(unsigned m) { return {m, std::nullopt}; }
    static PlacePoint at(unsigned m, FieldTable::elem t) { return {m, t}; }
    bool is_infinity() const { return !tau.has_value(); }
};

/// F_{q^m} on which the fibers over degree-1 points of P^1(F_{q^m}) live.
inline FieldPtr fiber_field(u64 q, unsigned m, u64 budget = default_field_budget()) {
    const auto [p, k] = arith::prime_power(q);
    return cached_field(p, k * m, generator_choice::primary, budget);
}

/// -sum_x lambda(x (x^2 + A x + B)) over F.
inline i64 cubic_trace(const FieldTable &f, FieldTable::elem a, FieldTable::elem b) {
    i64 s = 0;
    for (u64 xi = 0; xi < f.size(); ++xi) {
        const auto x = static_cast<FieldTable::elem>(xi);
        s += f.quadratic(f.mul(x, f.add(f.mul(x, f.add(x, a)), b)));
    }
    return -s;
}

inline bool is_bad_fiber(const FieldTable &f, u64 d, const PlacePoint &pt) {
    if (pt.is_infinity())
        return true;
    if (*pt.tau == 0)
        return d % 2 == 1;
    return f.pow(*pt.tau, 2 * d) == f.neg(f.from_int(16));
}

/// A_d(tau, q^m) on a minimal model at tau. Valid at every tau: at bad fibers
/// the value is +1 / -1 / 0 for split / nonsplit / additive reduction.
inline i64 a_trace(u64 q, u64 d, const PlacePoint &pt, u64 budget = default_field_budget()) {
    if (pt.is_infinity())
        return 1;
    const auto f = fiber_field(q, pt.m, budget);
    const auto tau = *pt.tau;
    if (tau >= f->size())
        throw std::invalid_argument("tau is not an element of F_{q^m}");
    if (tau == 0) {
        if (d % 2 == 1)
            return 0;
        // minimal model y^2 = x(x^2 + t^d x - 4) at t = 0
        return cubic_trace(*f, 0, f->neg(f->from_int(4)));
    }
    const auto a = f->pow(tau, 2 * d);
    return cubic_trace(*f, a, f->mul(f->neg(f->from_int(4)), a));
}

/// |E_tau(F_{q^m})| = q^m + 1 - A_d(tau, q^m) at a good fiber.
inline u64 count_points(u64 q, u64 d, const PlacePoint &pt, u64 budget = default_field_budget()) {
    const auto f = fiber_field(q, pt.m, budget);
    if (is_bad_fiber(*f, d, pt))
        throw std::invalid_argument("count_points needs a fiber of good reduction");
    return static_cast<u64>(static_cast<i64>(f->size()) + 1 - a_trace(q, d, pt, budget));
}

/// c_m = sum over tau in P^1(F_{q^m}) of A_d(tau, q^m), so that
/// log L(E_d/K, T) = sum_m c_m T^m / m.
inline i64 log_l_coefficient(u64 q, u64 d, unsigned m, unsigned jobs = default_jobs(),
                             u64 budget = default_field_budget()) {
    if (d == 0 || m == 0)
        throw std::invalid_argument("d and m must be positive");
    const auto f = fiber_field(q, m, budget);
    std::vector<i64> partial(std::max(1u, jobs), 0);
    parallel_chunks(f->size(), jobs, [&](u64 lo, u64 hi, unsigned w) {
        i64 s = 0;
        for (u64 t = lo; t < hi; ++t)
            s += a_trace(q, d, PlacePoint::at(m, static_cast<FieldTable::elem>(t)), budget);
        partial[w] = s;
    });
    return std::accumulate(partial.begin(), partial.end(), a_trace(q, d, PlacePoint::infinity(m)));
}

enum class ReductionType { good, split_multiplicative, nonsplit_multiplicative, additive };

inline const char *to_string(ReductionType r) {
    switch (r) {
    case ReductionType::good:
        return "good";
    case ReductionType::split_multiplicative:
        return "split";
    case ReductionType::nonsplit_multiplicative:
        return "nonsplit";
    case ReductionType::additive:
        return "additive";
    }
    return "?";
}

struct CensusEntry {
    PlacePoint place;
    ReductionType type;
    i64 trace;
    bool consistent; ///< Hasse bound at good fibers, |A| = 1 or A = 0 at bad ones
};

/// Classify every tau in P^1(F_{q^m}). Bad fibers are {0 (d odd), infinity,
/// roots of t^{2d} + 16}; at the multiplicative ones the split/nonsplit
/// distinction is read off the trace sign.
inline std::vector<CensusEntry> reduction_census(u64 q, u64 d, unsigned m, u64 budget = default_field_budget()) {
    if (std::gcd(d, q) != 1)
        throw std::invalid_argument("reduction census needs gcd(d, q) = 1");
    const auto f = fiber_field(q, m, budget);
    const double hasse = 2.0 * std::sqrt(static_cast<double>(f->size()));
    std::vector<CensusEntry> out;
    out.reserve(f->size() + 1);
    const auto minus16 = f->neg(f->from_int(16));
    for (u64 ti = 0; ti < f->size(); ++ti) {
        const auto tau = static_cast<FieldTable::elem>(ti);
        const auto pt = PlacePoint::at(m, tau);
        const i64 a = a_trace(q, d, pt, budget);
        CensusEntry c{pt, ReductionType::good, a, true};
        if (tau == 0 && d % 2 == 1) {
            c.type = ReductionType::additive;
            c.consistent = a == 0;
        } else if (tau != 0 && f->pow(tau, 2 * d) == minus16) {
            c.type = a >= 0 ? ReductionType::split_multiplicative : ReductionType::nonsplit_multiplicative;
            c.consistent = a == 1 || a == -1;
        } else {
            c.consistent = std::abs(static_cast<double>(a)) <= hasse;
        }
        out.push_back(c);
    }
    out.push_back({PlacePoint::infinity(m), ReductionType::split_multiplicative, 1, true});
    return out;
}

struct TorsionReport {
    std::vector<u64> fiber_orders;
    u64 gcd_bound = 0;        ///< gcd of the fiber orders
    u64 prime_to_p_bound = 0; ///< gcd_bound with its p-part removed; bounds prime-to-p torsion
    bool j_not_pth_power = false; ///< excludes p-power torsion
    bool p0_on_curve = false;
    bool p0_two_torsion = false;
    bool pd_on_curve = false; ///< symbolic identity in Z[t]
    bool pd_on_fibers = false; ///< reductions of P_d lie on every supplied fiber
    bool pd_distinct = false;  ///< P_d not in {O, P_0}
    bool torsion_certified = false;        ///< gcd bound is 2: torsion = Z/2Z
    bool infinite_order_certified = false; ///< P_d non-torsion
};

/// True when no term of a has a coefficient prime to p at an exponent prime to p,
/// i.e. a mod p is a p-th power in F_p[t].
inline bool is_pth_power_mod_p(const TPoly &a, u64 p) {
    for (const auto &[e, c] : a.terms())
        if (e % p != 0 && c % p != 0)
            return false;
    return true;
}

/// Bounds E_d(K)_tors by the gcd of good-fiber group orders and checks the
/// explicit points P_0 = (0, 0), P_d = (2t^d, 2t^{2d}). Every fiber in
/// characteristic p may carry p-torsion, so the gcd only bounds the prime-to-p
/// part; p-power torsion is excluded because j is not a p-th power.
inline TorsionReport torsion_and_point_check(u64 q, u64 d, const std::vector<PlacePoint> &places,
                                             u64 budget = default_field_budget()) {
    if (places.size() < 2)
        throw std::invalid_argument("torsion bound needs at least two good places");
    const auto cd = invariants(q, d);
    TorsionReport r;
    // (0, 0): 0 = 0 * (0 + 0 + a4), and y = 0 makes it 2-torsion.
    r.p0_on_curve = true;
    r.p0_two_torsion = true;
    const TPoly x = TPoly::monomial(d, 2), y = TPoly::monomial(2 * d, 2);
    r.pd_on_curve = y * y == x * (x * x + cd.a2 * x + cd.a4);
    // y(P_d) = 2t^{2d} is a nonzero polynomial, so P_d is neither O nor 2-torsion.
    r.pd_distinct = !y.terms().empty() && !x.terms().empty();
    r.pd_on_fibers = true;
    for (const auto &pt : places) {
        const auto f = fiber_field(q, pt.m, budget);
        if (is_bad_fiber(*f, d, pt))
            throw std::invalid_argument("torsion bound needs places of good reduction");
        const u64 n = count_points(q, d, pt, budget);
        r.fiber_orders.push_back(n);
        r.gcd_bound = std::gcd(r.gcd_bound, n);
        if (*pt.tau != 0) {
            const auto t = *pt.tau;
            const auto a = f->pow(t, 2 * d);
            const auto xp = f->mul(f->from_int(2), f->pow(t, d));
            const auto yp = f->mul(f->from_int(2), a);
            const auto rhs = f->mul(xp, f->add(f->mul(xp, f->add(xp, a)), f->mul(f->neg(f->from_int(4)), a)));
            r.pd_on_fibers = r.pd_on_fibers && f->mul(yp, yp) == rhs;
        }
    }
    r.prime_to_p_bound = r.gcd_bound;
    while (r.prime_to_p_bound % cd.p == 0)
        r.prime_to_p_bound /= cd.p;
    // Numerator and denominator of j are coprime (their resultant is a power of 2),
    // so j is a p-th power only if both are.
    r.j_not_pth_power = !(is_pth_power_mod_p(cd.j_numerator, cd.p) && is_pth_power_mod_p(cd.j_denominator, cd.p));
    r.torsion_certified = r.prime_to_p_bound == 2 && r.j_not_pth_power;
    r.infinite_order_certified =
        r.torsion_certified && r.pd_on_curve && r.pd_distinct && r.p0_on_curve && r.p0_two_torsion;
    return r;
}

/// Good degree-1 places over F_{q^m}, m = 1..max_m, excluding tau = 0, at most `limit`.
inline std::vector<PlacePoint> good_places(u64 q, u64 d, unsigned max_m, std::size_t limit,
                                           u64 budget = default_field_budget()) {
    std::vector<PlacePoint> out;
    for (unsigned m = 1; m <= max_m && out.size() < limit; ++m) {
        const auto f = fiber_field(q, m, budget);
        for (u64 t = 1; t < f->size() && out.size() < limit; ++t) {
            const auto pt = PlacePoint::at(m, static_cast<FieldTable::elem>(t));
            if (!is_bad_fiber(*f, d, pt))
                out.push_back(pt);
        }
    }
    return out;
}

// Division polynomials of W' : y^2 = x(x^2 + u x - 4), u = t^d (d even).
// Each is stored as terms c * u^j * x^i.
struct DivisionTerm {
    unsigned x_power;
    unsigned u_power;
    i64 coeff;
};

inline const std::vector<DivisionTerm> &division_terms(int n) {
    // psi_3
    static const std::vector<DivisionTerm> psi3{{4, 0, 3}, {3, 1, 4}, {2, 0, -24}, {0, 0, -16}};
    // psi_4 / 4y
    static const std::vector<DivisionTerm> psi4{{6, 0, 1},   {5, 1, 2},    {4, 0, -20},
                                                {2, 0, -80}, {1, 1, -32},  {0, 0, 64}};
    // psi_5 = psi_4 psi_2^3 - psi_3^3, expanded with y^2 = x^3 + u x^2 - 4x
    static const std::vector<DivisionTerm> psi5{
        {12, 0, 5},      {11, 1, 20},    {10, 2, 16},     {10, 0, -248},  {9, 1, -320},
        {8, 0, -1680},   {7, 1, -5760},  {6, 2, -3840},   {6, 0, 19200},  {5, 3, -1024},
        {5, 1, 23552},   {4, 2, 10240},  {4, 0, -32000},  {3, 1, -35840}, {2, 0, 51200},
        {0, 0, 4096}};
    switch (n) {
    case 3:
        return psi3;
    case 4:
        return psi4;
    case 5:
        return psi5;
    default:
        throw std::invalid_argument("division polynomial index must be 3, 4 or 5");
    }
}

/// Polynomial in t over F_q, coefficient i at index i, as field elements.
using FqPoly = std::vector<FieldTable::elem>;

namespace detail {

inline void trim(const FieldTable &, FqPoly &a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline FqPoly fq_add(const FieldTable &f, FqPoly a, const FqPoly &b) {
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = f.add(a[i], b[i]);
    trim(f, a);
    return a;
}

inline FqPoly fq_mul(const FieldTable &f, const FqPoly &a, const FqPoly &b) {
    if (a.empty() || b.empty())
        return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    trim(f, r);
    return r;
}

} // namespace detail

/// psi_3, psi_4/4y or psi_5 of W' evaluated at x in F_q[t]. Needs d even.
inline FqPoly division_poly_eval(u64 q, u64 d, int n, const FqPoly &x) {
    if (d % 2 != 0)
        throw std::invalid_argument("division polynomial formulas stated for even d");
    const auto [p, k] = arith::prime_power(q);
    const auto fp = cached_field(p, k);
    const FieldTable &f = *fp;
    FqPoly xt = x;
    detail::trim(f, xt);
    const auto &terms = division_terms(n);
    unsigned max_x = 0;
    for (const auto &t : terms)
        max_x = std::max(max_x, t.x_power);
    std::vector<FqPoly> xpow{FqPoly{1}};
    for (unsigned i = 1; i <= max_x; ++i)
        xpow.push_back(detail::fq_mul(f, xpow.back(), xt));
    FqPoly acc;
    for (const auto &t : terms) {
        FqPoly mono(static_cast<std::size_t>(d) * t.u_power + 1, 0);
        mono.back() = f.from_int(t.coeff);
        acc = detail::fq_add(f, acc, detail::fq_mul(f, mono, xpow[t.x_power]));
    }
    return acc;
}

/// All x in F_q[t] of degree <= max_degree with psi_n(x) = 0 identically in t.
/// A bounded spot check of the no-torsion argument, not a proof.
inline std::vector<FqPoly> division_poly_root_search(u64 q, u64 d, int n, unsigned max_degree = 0) {
    const u64 count = arith::ipow(q, max_degree + 1);
    std::vector<FqPoly> roots;
    for (u64 v = 0; v < count; ++v) {
        FqPoly x(max_degree + 1);
        u64 t = v;
        for (auto &c : x) {
            c = static_cast<FieldTable::elem>(t % q);
            t /= q;
        }
        if (division_poly_eval(q, d, n, x).empty())
            roots.push_back(x);
    }
    return roots;
}

} // namespace kummer
