#pragma once

// Exact cyclotomic integers. A CycloElt of order N is an element of the group
// ring Z[X]/(X^N - 1), read as sum a_i zeta_N^i. Character sums accumulate
// naturally in that form; the canonical residue modulo Phi_N is only taken
// when equality has to be decided.

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kummer/arith.hpp"

namespace kummer {

using bigint = boost::multiprecision::cpp_int;
using int_poly = std::vector<bigint>;

namespace detail {

inline void trim(int_poly &a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// Exact quotient a / b for monic b; throws if the remainder is nonzero.
inline int_poly exact_div_monic(int_poly a, const int_poly &b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size())
        return a.empty() ? int_poly{} : throw inconsistency_error("non-exact polynomial division");
    int_poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const bigint c = a[i];
        if (c == 0)
            continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            a[i - db + j] -= c * b[j];
    }
    trim(a);
    if (!a.empty())
        throw inconsistency_error("non-exact polynomial division");
    return q;
}

inline int_poly poly_mul(const int_poly &a, const int_poly &b) {
    if (a.empty() || b.empty())
        return {};
    int_poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

} // namespace detail

/// Phi_N, low degree first, by exact division of X^N - 1 by Phi_e over proper divisors e.
inline const int_poly &cyclotomic_polynomial(u64 n) {
    if (n == 0)
        throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<u64, int_poly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end())
            return it->second;
    }
    int_poly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    int_poly den{1};
    for (u64 e : arith::divisors(n))
        if (e != n)
            den = detail::poly_mul(den, cyclotomic_polynomial(e));
    int_poly phi = detail::exact_div_monic(std::move(num), den);
    std::lock_guard lock(mu);
    return cache.emplace(n, std::move(phi)).first->second;
}

class CycloElt {
  public:
    CycloElt() : CycloElt(1) {}
    explicit CycloElt(u64 order) : n_(order), c_(order, 0) {
        if (order == 0)
            throw std::invalid_argument("cyclotomic order must be positive");
    }
    CycloElt(u64 order, std::vector<bigint> coeffs) : n_(order), c_(std::move(coeffs)) {
        if (order == 0 || c_.size() != order)
            throw std::invalid_argument("coefficient count must equal the order");
    }

    static CycloElt integer(u64 order, const bigint &v) {
        CycloElt z(order);
        z.c_[0] = v;
        return z;
    }

    /// zeta_order^i
    static CycloElt root(u64 order, u64 i) {
        CycloElt z(order);
        z.c_[i % order] = 1;
        return z;
    }

    template <class Int>
    static CycloElt from_counts(u64 order, const std::vector<Int> &counts) {
        CycloElt z(order);
        for (u64 i = 0; i < order; ++i)
            z.c_[i] = counts.at(i);
        return z;
    }

    u64 order() const { return n_; }
    const std::vector<bigint> &coeffs() const { return c_; }

    /// Same algebraic number in Z[zeta_m], m a multiple of the order.
    CycloElt lift(u64 m) const {
        if (m % n_ != 0)
            throw std::invalid_argument("lift target must be a multiple of the order");
        if (m == n_)
            return *this;
        CycloElt z(m);
        const u64 step = m / n_;
        for (u64 i = 0; i < n_; ++i)
            z.c_[i * step] = c_[i];
        return z;
    }

    CycloElt conj() const {
        CycloElt z(n_);
        for (u64 i = 0; i < n_; ++i)
            z.c_[(n_ - i) % n_] = c_[i];
        return z;
    }

    CycloElt operator-() const {
        CycloElt z(*this);
        for (auto &x : z.c_)
            x = -x;
        return z;
    }

    CycloElt &operator+=(const CycloElt &o) {
        align(o);
        const CycloElt w = o.lift(n_);
        for (u64 i = 0; i < n_; ++i)
            c_[i] += w.c_[i];
        return *this;
    }

    CycloElt &operator-=(const CycloElt &o) { return *this += -o; }

    CycloElt &operator*=(const bigint &s) {
        for (auto &x : c_)
            x *= s;
        return *this;
    }

    friend CycloElt operator+(CycloElt a, const CycloElt &b) { return a += b; }
    friend CycloElt operator-(CycloElt a, const CycloElt &b) { return a -= b; }
    friend CycloElt operator*(CycloElt a, const bigint &s) { return a *= s; }
    friend CycloElt operator*(const bigint &s, CycloElt a) { return a *= s; }

    friend CycloElt operator*(const CycloElt &a, const CycloElt &b) {
        const u64 m = arith::lcm(a.n_, b.n_);
        const CycloElt x = a.lift(m), y = b.lift(m);
        CycloElt z(m);
        for (u64 i = 0; i < m; ++i) {
            if (x.c_[i] == 0)
                continue;
            for (u64 j = 0; j < m; ++j) {
                if (y.c_[j] == 0)
                    continue;
                const u64 k = i + j >= m ? i + j - m : i + j;
                z.c_[k] += x.c_[i] * y.c_[j];
            }
        }
        return z;
    }

    CycloElt &operator*=(const CycloElt &o) { return *this = *this * o; }

    CycloElt pow(unsigned e) const {
        CycloElt r = integer(n_, 1), b = *this;
        while (e) {
            if (e & 1)
                r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    bool is_zero_representation() const {
        for (const auto &x : c_)
            if (x != 0)
                return false;
        return true;
    }

  private:
    void align(const CycloElt &o) {
        const u64 m = arith::lcm(n_, o.n_);
        if (m != n_)
            *this = lift(m);
    }

    u64 n_;
    std::vector<bigint> c_;
};

/// Canonical residue modulo Phi_N: exactly phi(N) coefficients (1 when N = 1).
inline std::vector<bigint> reduce(const CycloElt &z) {
    const auto &phi = cyclotomic_polynomial(z.order());
    const std::size_t deg = phi.size() - 1;
    std::vector<bigint> a = z.coeffs();
    for (std::size_t i = a.size(); i-- > deg;) {
        const bigint c = a[i];
        if (c == 0)
            continue;
        a[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            a[i - deg + j] -= c * phi[j];
    }
    a.resize(deg);
    return a;
}

inline bool is_zero(const CycloElt &z) {
    for (const auto &x : reduce(z))
        if (x != 0)
            return false;
    return true;
}

/// Equality as algebraic numbers (both sides lifted to the lcm of their orders).
inline bool algebraically_equal(const CycloElt &a, const CycloElt &b) { return is_zero(a - b); }

/// The rational integer z equals, if z is one.
inline std::optional<bigint> as_integer(const CycloElt &z) {
    const auto r = reduce(z);
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0)
            return std::nullopt;
    return r.empty() ? bigint(0) : r[0];
}

inline bool equals_integer(const CycloElt &z, const bigint &c) {
    const auto v = as_integer(z);
    return v && *v == c;
}

inline CycloElt abs_square(const CycloElt &z) { return z * z.conj(); }

inline std::string to_string(const CycloElt &z) {
    const auto r = reduce(z);
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0)
            continue;
        const bigint mag = r[i] < 0 ? bigint(-r[i]) : r[i];
        os << (r[i] < 0 ? (any ? " - " : "-") : (any ? " + " : ""));
        if (i == 0 || mag != 1)
            os << mag;
        if (i > 0)
            os << "z" << z.order() << (i > 1 ? "^" + std::to_string(i) : "");
        any = true;
    }
    if (!any)
        os << "0";
    return os.str();
}

} // namespace kummer
