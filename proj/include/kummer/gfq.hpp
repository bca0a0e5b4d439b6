#pragma once

// Finite fields F_{p^k}, p odd, realized as full exp/dlog tables over a fixed
// primitive element. Elements are dense indices 0..Q-1: the element
// c_0 + c_1 X + ... + c_{k-1} X^{k-1} of F_p[X]/(f) has index sum c_i p^i,
// so 0 is zero, 1 is one and the prime field occupies indices 0..p-1.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "kummer/arith.hpp"

namespace kummer {

inline constexpr u64 kDefaultFieldBudget = u64{1} << 24;

/// Field-size budget: KUMMER_LFUN_BUDGET when set to a positive integer, else 2^24.
inline u64 default_field_budget() {
    if (const char *env = std::getenv("KUMMER_LFUN_BUDGET")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return kDefaultFieldBudget;
}

/// Which deterministic primitive element a field is built on.
enum class generator_choice { primary, alternate };

namespace detail {

// Dense polynomials over F_p, coefficient i at index i, no trailing zeros
// except that the zero polynomial is empty.
using fp_poly = std::vector<u64>;

inline void trim(fp_poly &a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline fp_poly poly_rem(fp_poly a, const fp_poly &m, u64 p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const u64 lead_inv = arith::powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        const u64 c = arith::mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + p - arith::mulmod(c, m[i], p)) % p;
        trim(a);
    }
    return a;
}

inline fp_poly poly_mulmod(const fp_poly &a, const fp_poly &b, const fp_poly &m, u64 p) {
    if (a.empty() || b.empty())
        return {};
    fp_poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + arith::mulmod(a[i], b[j], p)) % p;
    return poly_rem(std::move(r), m, p);
}

inline fp_poly poly_powmod(fp_poly base, u64 e, const fp_poly &m, u64 p) {
    fp_poly r{1};
    base = poly_rem(std::move(base), m, p);
    while (e) {
        if (e & 1)
            r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline fp_poly poly_gcd(fp_poly a, fp_poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        fp_poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// X^(p^i) mod f, by i successive p-th powerings of X.
inline fp_poly x_frobenius_power(unsigned i, const fp_poly &f, u64 p) {
    fp_poly x = poly_rem(fp_poly{0, 1}, f, p);
    for (unsigned j = 0; j < i; ++j)
        x = poly_powmod(x, p, f, p);
    return x;
}

// Rabin's test for a monic f of degree k.
inline bool is_irreducible(const fp_poly &f, u64 p) {
    const unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 1)
        return true;
    fp_poly xk = x_frobenius_power(k, f, p);
    fp_poly x = poly_rem(fp_poly{0, 1}, f, p);
    x.resize(std::max(x.size(), xk.size()), 0);
    xk.resize(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        xk[i] = (xk[i] + p - x[i]) % p;
    trim(xk);
    if (!xk.empty())
        return false;
    for (auto [r, e] : arith::factorize(k)) {
        fp_poly h = x_frobenius_power(k / static_cast<unsigned>(r), f, p);
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        if (poly_gcd(f, h, p).size() != 1)
            return false;
    }
    return true;
}

} // namespace detail

/// F_{p^k} with a deterministic modulus, a deterministic primitive element g
/// and complete exp/dlog tables. Immutable after construction.
class FieldTable {
  public:
    using elem = std::uint32_t;

    static FieldTable build(u64 p, unsigned k, u64 budget = default_field_budget(),
                            generator_choice choice = generator_choice::primary) {
        return FieldTable(p, k, budget, choice);
    }

    u64 p() const { return p_; }
    unsigned k() const { return k_; }
    u64 size() const { return q_; }
    u64 group_order() const { return q_ - 1; }
    generator_choice choice() const { return choice_; }

    /// Monic modulus, coefficients low degree first (length k+1).
    const std::vector<u64> &modulus() const { return modulus_; }
    elem generator() const { return gen_; }

    static constexpr elem zero() { return 0; }
    static constexpr elem one() { return 1; }

    /// Image of the integer n in the prime field.
    elem from_int(i64 n) const {
        const i64 pi = static_cast<i64>(p_);
        return static_cast<elem>(((n % pi) + pi) % pi);
    }

    u64 dlog(elem x) const {
        if (x == 0)
            throw std::domain_error("dlog of zero");
        return log_[x];
    }

    elem exp(u64 e) const { return exp_[e % (q_ - 1)]; }

    elem add(elem a, elem b) const {
        if (k_ == 1)
            return static_cast<elem>((a + b) % p_);
        u64 r = 0;
        for (unsigned i = 0; i < k_; ++i) {
            r += ((a % p_ + b % p_) % p_) * pow_[i];
            a = static_cast<elem>(a / p_);
            b = static_cast<elem>(b / p_);
        }
        return static_cast<elem>(r);
    }

    elem neg(elem a) const {
        u64 r = 0;
        for (unsigned i = 0; i < k_; ++i) {
            r += ((p_ - a % p_) % p_) * pow_[i];
            a = static_cast<elem>(a / p_);
        }
        return static_cast<elem>(r);
    }

    elem sub(elem a, elem b) const { return add(a, neg(b)); }

    elem mul(elem a, elem b) const {
        if (a == 0 || b == 0)
            return 0;
        const u64 s = u64{log_[a]} + log_[b];
        return exp_[s >= q_ - 1 ? s - (q_ - 1) : s];
    }

    elem inv(elem a) const {
        if (a == 0)
            throw std::domain_error("inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    elem pow(elem a, u64 e) const {
        if (e == 0)
            return 1;
        if (a == 0)
            return 0;
        return exp_[arith::mulmod(log_[a], e % (q_ - 1), q_ - 1)];
    }

    elem frobenius(elem a) const { return pow(a, p_); }

    /// Quadratic character lambda with lambda(0) = 0.
    int quadratic(elem a) const {
        if (a == 0)
            return 0;
        return (log_[a] & 1u) ? -1 : 1;
    }

    /// Coefficients c_0..c_{k-1} of the element's polynomial representative.
    std::vector<u64> coefficients(elem a) const {
        std::vector<u64> c(k_);
        for (unsigned i = 0; i < k_; ++i) {
            c[i] = a % p_;
            a = static_cast<elem>(a / p_);
        }
        return c;
    }

    elem from_coefficients(const std::vector<u64> &c) const {
        u64 r = 0;
        for (unsigned i = 0; i < k_ && i < c.size(); ++i)
            r += (c[i] % p_) * pow_[i];
        return static_cast<elem>(r);
    }

    std::string to_string(elem a) const {
        if (k_ == 1)
            return std::to_string(a);
        auto c = coefficients(a);
        std::string s;
        for (unsigned i = k_; i-- > 0;) {
            if (c[i] == 0)
                continue;
            if (!s.empty())
                s += "+";
            if (i == 0 || c[i] != 1)
                s += std::to_string(c[i]);
            if (i >= 1)
                s += i == 1 ? "a" : "a^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

  private:
    FieldTable(u64 p, unsigned k, u64 budget, generator_choice choice) : p_(p), k_(k), choice_(choice) {
        if (p == 2)
            throw std::invalid_argument("odd characteristic required");
        if (!arith::is_prime(p))
            throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
        if (k == 0)
            throw std::invalid_argument("extension degree must be positive");
        u64 q = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (q > budget / p)
                throw budget_error("field too large: " + std::to_string(p) + "^" + std::to_string(k) +
                                   " exceeds budget " + std::to_string(budget));
            q *= p;
        }
        if (q > UINT32_MAX)
            throw budget_error("field too large for 32-bit element indices");
        q_ = q;
        pow_.resize(k + 1);
        pow_[0] = 1;
        for (unsigned i = 1; i <= k; ++i)
            pow_[i] = pow_[i - 1] * p;

        choose_modulus();
        choose_generator();
        build_tables();
    }

    // Lexicographically smallest monic irreducible, comparing c_0 first.
    void choose_modulus() {
        for (u64 v = 0; v < q_; ++v) {
            detail::fp_poly f(k_ + 1, 0);
            u64 t = v;
            for (unsigned j = k_; j-- > 0;) {
                f[j] = t % p_;
                t /= p_;
            }
            f[k_] = 1;
            if (detail::is_irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
        }
        throw inconsistency_error("no irreducible polynomial found");
    }

    detail::fp_poly as_poly(u64 idx) const {
        detail::fp_poly a(k_);
        for (unsigned i = 0; i < k_; ++i) {
            a[i] = idx % p_;
            idx /= p_;
        }
        detail::trim(a);
        return a;
    }

    u64 as_index(const detail::fp_poly &a) const {
        u64 r = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            r += a[i] * pow_[i];
        return r;
    }

    void choose_generator() {
        const auto primes = arith::factorize(q_ - 1);
        int found = 0;
        const int wanted = choice_ == generator_choice::primary ? 1 : 2;
        std::optional<elem> first;
        for (u64 idx = 1; idx < q_; ++idx) {
            const auto a = as_poly(idx);
            bool primitive = true;
            for (auto [r, e] : primes) {
                auto t = detail::poly_powmod(a, (q_ - 1) / r, modulus_, p_);
                if (t.size() == 1 && t[0] == 1) {
                    primitive = false;
                    break;
                }
            }
            if (!primitive)
                continue;
            if (!first)
                first = static_cast<elem>(idx);
            if (++found == wanted) {
                gen_ = static_cast<elem>(idx);
                return;
            }
        }
        // F_3 has a single primitive element; the alternate coincides with it.
        if (first) {
            gen_ = *first;
            return;
        }
        throw inconsistency_error("no primitive element found");
    }

    void build_tables() {
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        const auto g = as_poly(gen_);
        detail::fp_poly cur{1};
        for (u64 e = 0; e + 1 < q_; ++e) {
            const u64 idx = as_index(cur);
            exp_[e] = static_cast<elem>(idx);
            log_[idx] = static_cast<elem>(e);
            cur = detail::poly_mulmod(cur, g, modulus_, p_);
        }
        if (as_index(cur) != 1)
            throw inconsistency_error("generator order check failed");
    }

    u64 p_;
    unsigned k_;
    u64 q_ = 0;
    generator_choice choice_;
    std::vector<u64> pow_;
    std::vector<u64> modulus_;
    elem gen_ = 0;
    std::vector<elem> exp_;
    std::vector<elem> log_;
};

using FieldPtr = std::shared_ptr<const FieldTable>;

/// Process-wide cache of field tables keyed by (p, k, generator choice).
inline FieldPtr cached_field(u64 p, unsigned k, generator_choice choice = generator_choice::primary,
                             u64 budget = default_field_budget()) {
    static std::mutex mu;
    static std::map<std::tuple<u64, unsigned, int>, FieldPtr> cache;
    u64 q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > budget / std::max<u64>(p, 1))
            throw budget_error("field too large: " + std::to_string(p) + "^" + std::to_string(k) +
                               " exceeds budget " + std::to_string(budget));
        q *= p;
    }
    const auto key = std::make_tuple(p, k, static_cast<int>(choice));
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto f = std::make_shared<const FieldTable>(FieldTable::build(p, k, budget, choice));
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(f)).first->second;
}

/// Embedding of a subfield F_{p^a} (its own table) into F_{p^{ab}}: X maps to the
/// smallest-index root of the small field's modulus. The image is exactly the
/// fixed-point set of x -> x^{p^a}.
class Embedding {
  public:
    using elem = FieldTable::elem;

    Embedding(FieldPtr big, FieldPtr small) : big_(std::move(big)), small_(std::move(small)) {
        if (big_->p() != small_->p() || big_->k() % small_->k() != 0)
            throw std::invalid_argument("not a subfield");
        const auto &m = small_->modulus();
        std::optional<elem> root;
        for (u64 x = 0; x < big_->size() && !root; ++x) {
            elem acc = 0;
            for (std::size_t i = m.size(); i-- > 0;)
                acc = big_->add(big_->mul(acc, static_cast<elem>(x)), big_->from_int(static_cast<i64>(m[i])));
            if (acc == 0)
                root = static_cast<elem>(x);
        }
        if (!root)
            throw inconsistency_error("small modulus has no root in the big field");
        up_.resize(small_->size());
        down_.assign(big_->size(), -1);
        for (u64 x = 0; x < small_->size(); ++x) {
            const auto c = small_->coefficients(static_cast<elem>(x));
            elem acc = 0;
            for (std::size_t i = c.size(); i-- > 0;)
                acc = big_->add(big_->mul(acc, *root), big_->from_int(static_cast<i64>(c[i])));
            up_[x] = acc;
            down_[acc] = static_cast<std::int64_t>(x);
        }
    }

    const FieldTable &big() const { return *big_; }
    const FieldTable &small() const { return *small_; }

    elem to_big(elem x) const { return up_.at(x); }

    std::optional<elem> to_small(elem x) const {
        const auto v = down_.at(x);
        if (v < 0)
            return std::nullopt;
        return static_cast<elem>(v);
    }

    /// N_{big/small}(x) = x^{(Q_big-1)/(Q_small-1)}, returned in the small field.
    elem norm(elem x) const {
        if (x == 0)
            return 0;
        const u64 e = (big_->size() - 1) / (small_->size() - 1);
        const auto r = to_small(big_->pow(x, e));
        if (!r)
            throw inconsistency_error("norm left the subfield");
        return *r;
    }

  private:
    FieldPtr big_, small_;
    std::vector<elem> up_;
    std::vector<std::int64_t> down_;
};

inline FieldTable::elem relative_norm(const FieldPtr &big, const FieldPtr &small, FieldTable::elem x) {
    return Embedding(big, small).norm(x);
}

} // namespace kummer
