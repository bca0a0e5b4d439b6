#pragma once

// Combinatorics of multiplication by q on Z/2dZ: the set Z_2d, its orbit
// decomposition, stratification by gcd, the divisor sums I_q(D) and the
// supersingularity test.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kummer/arith.hpp"

namespace kummer {

using rational = boost::multiprecision::cpp_rational;

inline u64 mult_order(u64 q, u64 n) { return arith::mult_order(q, n); }

struct Orbit {
    u64 representative; ///< smallest member
    u64 length;         ///< |n|
    std::vector<u64> members;
};

struct OrbitSet {
    u64 q = 0;
    u64 d = 0;
    std::vector<u64> members; ///< Z_2d, increasing
    std::vector<Orbit> orbits; ///< sorted by representative

    std::size_t count() const { return orbits.size(); }
};

/// Membership in Z_2d: Z/2dZ minus {0, d} (d odd) or minus {0, d/2, d, 3d/2} (d even).
inline bool in_z2d(u64 d, u64 n) {
    n %= 2 * d;
    if (n == 0 || n == d)
        return false;
    if (d % 2 == 0 && (2 * n == d || 2 * n == 3 * d))
        return false;
    return true;
}

inline OrbitSet build_z2d(u64 q, u64 d) {
    if (d == 0)
        throw std::invalid_argument("d must be positive");
    const u64 two_d = 2 * d;
    if (std::gcd(two_d, q) != 1)
        throw std::invalid_argument("gcd(2d, q) > 1: strip p-part first");
    OrbitSet s{q, d, {}, {}};
    std::vector<char> seen(two_d, 0);
    for (u64 n = 0; n < two_d; ++n)
        if (in_z2d(d, n))
            s.members.push_back(n);
    const u64 qm = q % two_d;
    for (u64 n : s.members) {
        if (seen[n])
            continue;
        Orbit o{n, 0, {}};
        u64 m = n;
        do {
            seen[m] = 1;
            o.members.push_back(m);
            m = arith::mulmod(m, qm, two_d);
        } while (m != n);
        o.length = o.members.size();
        std::sort(o.members.begin(), o.members.end());
        s.orbits.push_back(std::move(o));
    }
    return s;
}

/// The stratum Y_e = {n in Z_2d : gcd(n, 2d) = 2d/e}; all its orbits have length o_q(e).
struct Stratum {
    u64 e;
    u64 totient;
    u64 orbit_length;
    u64 orbit_count;
};

inline std::vector<Stratum> stratify(u64 q, u64 d) {
    const u64 two_d = 2 * d;
    if (d == 0 || std::gcd(two_d, q) != 1)
        throw std::invalid_argument("gcd(2d, q) > 1: strip p-part first");
    std::vector<Stratum> out;
    for (u64 e : arith::divisors(two_d)) {
        if (e <= 2)
            continue;
        // Y_4 = {d/2, 3d/2} is removed from Z_2d when d is even.
        if (e == 4 && d % 2 == 0)
            continue;
        const u64 phi = arith::totient(e);
        const u64 len = arith::mult_order(q, e);
        if (phi % len != 0)
            throw inconsistency_error("o_q(e) does not divide phi(e) for e = " + std::to_string(e));
        out.push_back({e, phi, len, phi / len});
    }
    return out;
}

/// I_q(D) = sum_{e | D} phi(e)/o_q(e), phi(1) = 0. Exact.
inline rational i_q(u64 q, u64 D) {
    if (D == 0 || std::gcd(D, q) != 1)
        throw std::invalid_argument("I_q(D) needs gcd(D, q) = 1");
    rational sum = 0;
    for (u64 e : arith::divisors(D))
        sum += rational(arith::totient(e), arith::mult_order(q, e));
    return sum;
}

struct Supersingularity {
    bool supersingular = false;
    std::optional<u64> witness; ///< least a >= 1 with D | q^a + 1
};

/// D is supersingular iff -1 lies in the subgroup generated by q mod D.
inline Supersingularity is_supersingular(u64 q, u64 D) {
    if (D == 0 || std::gcd(D, q) != 1)
        throw std::invalid_argument("supersingularity test needs gcd(D, q) = 1");
    const u64 ord = arith::mult_order(q, D);
    const u64 minus_one = (D - 1) % D;
    u64 pw = 1;
    for (u64 a = 1; a <= ord; ++a) {
        pw = arith::mulmod(pw, q % D, D);
        if (pw == minus_one)
            return {true, a};
    }
    return {false, std::nullopt};
}

} // namespace kummer
