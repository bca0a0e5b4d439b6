#pragma once

// Multiplicative characters of F_Q^x, Jacobi sums (with the leading minus sign),
// the double character sum B(F, chi) and the reciprocal-root data beta(n).
//
// A character is fixed by its exponent step s modulo Q-1:
//   chi(g^k) = zeta_{Q-1}^{s k},
// where g is the field's deterministic generator. The trivial character takes
// the value 1 at 0, every other character takes 0 there.

#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/arith.hpp"
#include "kummer/cyclo.hpp"
#include "kummer/gfq.hpp"

namespace kummer {

/// Field construction knobs shared by every character-sum entry point.
struct FieldOptions {
    u64 budget = default_field_budget();
    generator_choice generator = generator_choice::primary;
};

class Character {
  public:
    using elem = FieldTable::elem;

    Character(FieldPtr field, i64 step) : field_(std::move(field)) {
        const i64 m = static_cast<i64>(field_->group_order());
        step_ = static_cast<u64>(((step % m) + m) % m);
    }

    static Character trivial(FieldPtr f) { return {std::move(f), 0}; }
    static Character quadratic(FieldPtr f) {
        const auto s = static_cast<i64>(f->group_order() / 2);
        return {std::move(f), s};
    }
    static Character teichmuller(FieldPtr f) { return {std::move(f), 1}; }

    const FieldTable &field() const { return *field_; }
    const FieldPtr &field_ptr() const { return field_; }
    u64 step() const { return step_; }
    u64 order() const { return field_->group_order() / std::gcd(field_->group_order(), step_); }
    bool is_trivial() const { return step_ == 0; }

    /// chi(x) = zeta_n^e; nullopt when chi(x) = 0. Requires order() | n.
    std::optional<u64> exponent(elem x, u64 n) const {
        if (x == 0) {
            if (is_trivial())
                return u64{0};
            return std::nullopt;
        }
        return arith::mulmod(scale(n), field_->dlog(x), n);
    }

    /// chi(x) in Z[zeta_order].
    CycloElt eval(elem x) const { return eval_in(x, order()); }

    CycloElt eval_in(elem x, u64 n) const {
        const auto e = exponent(x, n);
        if (!e)
            return CycloElt(n);
        return CycloElt::root(n, *e);
    }

    /// Multiplier c with chi(g^k) = zeta_n^{c k}; requires order() | n.
    u64 scale(u64 n) const {
        const u64 m = field_->group_order();
        if (n % order() != 0)
            throw std::invalid_argument("target root-of-unity order not divisible by character order");
        return static_cast<u64>((static_cast<unsigned __int128>(step_) * n / m) % n);
    }

    Character inverse() const { return {field_, -static_cast<i64>(step_)}; }

    Character pow(i64 e) const {
        const i64 m = static_cast<i64>(field_->group_order());
        const i64 r = ((e % m) + m) % m;
        return {field_, static_cast<i64>(arith::mulmod(step_, static_cast<u64>(r), static_cast<u64>(m)))};
    }

    friend Character operator*(const Character &a, const Character &b) {
        if (a.field_.get() != b.field_.get())
            throw std::invalid_argument("characters live on different fields");
        return {a.field_, static_cast<i64>((a.step_ + b.step_) % a.field_->group_order())};
    }

    friend bool operator==(const Character &a, const Character &b) {
        return a.field_.get() == b.field_.get() && a.step_ == b.step_;
    }

  private:
    FieldPtr field_;
    u64 step_ = 0;
};

/// Every character of F^x, by increasing step.
inline std::vector<Character> all_characters(const FieldPtr &f) {
    std::vector<Character> out;
    out.reserve(f->group_order());
    for (u64 s = 0; s < f->group_order(); ++s)
        out.emplace_back(f, static_cast<i64>(s));
    return out;
}

inline CycloElt char_eval(const Character &chi, FieldTable::elem x) { return chi.eval(x); }

/// j_F(chi1, chi2) = - sum_{x1 + x2 = 1} chi1(x1) chi2(x2), in Z[zeta_lcm].
inline CycloElt jacobi(const Character &a, const Character &b) {
    if (a.field_ptr().get() != b.field_ptr().get())
        throw std::invalid_argument("characters live on different fields");
    const FieldTable &f = a.field();
    const u64 n = arith::lcm(a.order(), b.order());
    const u64 ca = a.scale(n), cb = b.scale(n);
    std::vector<i64> acc(n, 0);
    for (u64 xi = 0; xi < f.size(); ++xi) {
        const auto x = static_cast<FieldTable::elem>(xi);
        const auto y = f.sub(FieldTable::one(), x);
        u64 e = 0;
        if (x == 0) {
            if (!a.is_trivial())
                continue;
        } else {
            e += arith::mulmod(ca, f.dlog(x), n);
        }
        if (y == 0) {
            if (!b.is_trivial())
                continue;
        } else {
            e += arith::mulmod(cb, f.dlog(y), n);
        }
        acc[e % n] -= 1;
    }
    return CycloElt::from_counts(n, acc);
}

inline constexpr u64 kDefaultDoubleSumBudget = u64{1} << 10;

/// B(F, chi) = sum_x sum_{z != 0} chi(z) lambda(x^3 + x^2 z - 4 x z), by direct
/// enumeration. O(Q^2); kept as the differential oracle for b_closed_form.
inline CycloElt b_sum(const Character &chi, u64 max_field = kDefaultDoubleSumBudget) {
    const FieldTable &f = chi.field();
    if (f.size() > max_field)
        throw budget_error("double sum over F_" + std::to_string(f.size()) + " exceeds budget; use closed form");
    const u64 n = chi.order();
    const u64 c = chi.scale(n);
    const auto four = f.from_int(4);
    std::vector<i64> acc(n, 0);
    for (u64 xi = 0; xi < f.size(); ++xi) {
        const auto x = static_cast<FieldTable::elem>(xi);
        const auto x2 = f.mul(x, x);
        const auto cubic = f.mul(x2, x);
        const auto lin = f.sub(x2, f.mul(four, x)); // coefficient of z
        for (u64 zi = 1; zi < f.size(); ++zi) {
            const auto z = static_cast<FieldTable::elem>(zi);
            const int l = f.quadratic(f.add(cubic, f.mul(lin, z)));
            if (l != 0)
                acc[arith::mulmod(c, f.dlog(z), n)] += l;
        }
    }
    return CycloElt::from_counts(n, acc);
}

/// Closed form of B(F, chi): |F| (trivial), 1 (order 2), j(chi, chi) (order 4),
/// chi^2(4) j(chi, chi) j(lambda chi^2, chi^-1) otherwise.
inline CycloElt b_closed_form(const Character &chi) {
    const FieldTable &f = chi.field();
    switch (chi.order()) {
    case 1:
        return CycloElt::integer(1, f.size());
    case 2:
        return CycloElt::integer(1, 1);
    case 4:
        return jacobi(chi, chi);
    default:
        break;
    }
    const Character lambda = Character::quadratic(chi.field_ptr());
    const Character sq = chi.pow(2);
    return sq.eval(f.from_int(4)) * jacobi(chi, chi) * jacobi(lambda * sq, chi.inverse());
}

/// sum_x lambda(x(x^2 - 4)) == - sum over order-4 characters of j(chi, chi).
inline bool quartic_identity_check(const FieldPtr &f) {
    i64 left = 0;
    const auto four = f->from_int(4);
    for (u64 xi = 0; xi < f->size(); ++xi) {
        const auto x = static_cast<FieldTable::elem>(xi);
        left += f->quadratic(f->mul(x, f->sub(f->mul(x, x), four)));
    }
    CycloElt right(4);
    if (f->group_order() % 4 == 0) {
        const auto quarter = static_cast<i64>(f->group_order() / 4);
        for (i64 s : {quarter, 3 * quarter}) {
            const Character chi(f, s);
            right -= jacobi(chi, chi);
        }
    }
    return equals_integer(right, left);
}

/// tau_n on F_{q^{|n|}}, together with the orbit length |n|.
struct TeichmullerCharacter {
    Character chi;
    u64 orbit_length;
};

inline TeichmullerCharacter tau_n(u64 q, u64 d, u64 n, const FieldOptions &opt = {}) {
    const u64 two_d = 2 * d;
    if (d == 0 || std::gcd(two_d, q) != 1)
        throw std::invalid_argument("tau_n needs gcd(2d, q) = 1");
    n %= two_d;
    if (n == 0)
        throw std::invalid_argument("tau_n needs n != 0 mod 2d");
    const auto [p, k] = arith::prime_power(q);
    const u64 len = arith::mult_order(q, two_d / std::gcd(two_d, n));
    FieldPtr f;
    try {
        f = cached_field(p, static_cast<unsigned>(k * len), opt.generator, opt.budget);
    } catch (const budget_error &e) {
        throw budget_error("orbit too long for exact computation: n = " + std::to_string(n) + ", |n| = " +
                           std::to_string(len) + " (" + e.what() + ")");
    }
    const u64 m = f->group_order();
    // 2d divides (Q-1) n because q^{|n|} n = n mod 2d.
    const auto step = static_cast<u64>(static_cast<unsigned __int128>(m) * n / two_d);
    return {Character(f, static_cast<i64>(step)), len};
}

/// chi o N_{F_{Q^s}/F_Q} as a character of F_{Q^s}.
inline Character lift_by_norm(const Character &chi, unsigned s, u64 budget = default_field_budget()) {
    if (s == 0)
        throw std::invalid_argument("lift degree must be positive");
    if (s == 1)
        return chi;
    const FieldTable &small = chi.field();
    const auto big = cached_field(small.p(), small.k() * s, small.choice(), budget);
    const Embedding emb(big, chi.field_ptr());
    // N(g_big) = g_small^e, so (chi o N)(g_big^k) = zeta_{Q-1}^{step e k}.
    const u64 e = small.dlog(emb.norm(big->generator()));
    const u64 cofactor = (big->group_order()) / small.group_order();
    const auto step = static_cast<u64>(static_cast<unsigned __int128>(arith::mulmod(chi.step(), e, small.group_order())) *
                                       cofactor % big->group_order());
    return {big, static_cast<i64>(step)};
}

/// beta(n) = tau_n^2(4) j(tau_n, tau_n) j(lambda tau_n^2, tau_n^-1), as an element of Z[zeta_2d].
inline CycloElt beta(u64 q, u64 d, u64 n, const FieldOptions &opt = {}) {
    const auto t = tau_n(q, d, n, opt);
    const Character &tau = t.chi;
    const Character lambda = Character::quadratic(tau.field_ptr());
    const Character sq = tau.pow(2);
    const CycloElt v =
        sq.eval(tau.field().from_int(4)) * jacobi(tau, tau) * jacobi(lambda * sq, tau.inverse());
    return v.lift(arith::lcm(v.order(), 2 * d));
}

} // namespace kummer
