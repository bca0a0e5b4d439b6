#pragma once

// Small-integer number theory shared by every module: modular powers,
// trial-division factorization, totients, divisors, multiplicative orders.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>
#include <algorithm>

namespace kummer {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Thrown when a computation would need a field larger than the configured table budget.
class budget_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when two routes that must agree exactly do not (non-integral L-coefficient,
/// oracle mismatch). Always a bug or a false mathematical premise, never a user error.
class inconsistency_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

namespace arith {

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1)
        return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Exact integer power; throws on 64-bit overflow.
inline u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base)
            throw std::overflow_error("integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

inline bool is_prime(u64 n) {
    if (n < 2)
        return false;
    for (u64 f = 2; f * f <= n; ++f)
        if (n % f == 0)
            return false;
    return true;
}

/// Prime factorization as (prime, exponent) pairs, primes increasing.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 f = 2; f * f <= n; ++f) {
        if (n % f)
            continue;
        unsigned e = 0;
        while (n % f == 0) {
            n /= f;
            ++e;
        }
        out.emplace_back(f, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

/// Euler's totient with the convention phi(1) = 0 used by the I_q sums.
inline u64 totient(u64 n) {
    if (n <= 1)
        return 0;
    u64 r = n;
    for (auto [pr, e] : factorize(n))
        r = r / pr * (pr - 1);
    return r;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto [pr, e] : factorize(n)) {
        const std::size_t base = out.size();
        u64 pw = 1;
        for (unsigned i = 0; i < e; ++i) {
            pw *= pr;
            for (std::size_t j = 0; j < base; ++j)
                out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Smallest nu >= 1 with q^nu = 1 mod n. o_q(1) = 1.
inline u64 mult_order(u64 q, u64 n) {
    if (n == 0)
        throw std::invalid_argument("modulus must be positive");
    if (std::gcd(q, n) != 1)
        throw std::invalid_argument("not coprime: gcd(" + std::to_string(q) + ", " + std::to_string(n) + ") > 1");
    if (n == 1)
        return 1;
    // The order divides the group exponent, which divides phi(n).
    u64 ord = totient(n);
    for (auto [pr, e] : factorize(ord)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(q, ord / pr, n) == 1)
                ord /= pr;
            else
                break;
        }
    }
    return ord;
}

/// Decompose q = p^k with p prime; throws if q is not a prime power.
inline std::pair<u64, unsigned> prime_power(u64 q) {
    auto f = factorize(q);
    if (f.size() != 1)
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    return f.front();
}

inline u64 lcm(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

} // namespace arith
} // namespace kummer
