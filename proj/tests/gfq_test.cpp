#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "kummer/gfq.hpp"

using namespace kummer;

namespace {

// Schoolbook F_p[x] helpers, independent of the library's own.
using poly = std::vector<u64>;

poly strip(poly a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    return a;
}

poly rem(poly a, const poly &m, u64 p) {
    a = strip(a);
    const u64 lead_inv = [&] {
        for (u64 v = 1; v < p; ++v)
            if (v * m.back() % p == 1)
                return v;
        return u64{0};
    }();
    while (a.size() >= m.size()) {
        const u64 c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
        a = strip(a);
    }
    return a;
}

// Irreducible iff no monic factor of degree 1..k/2 divides it.
bool irreducible_by_trial(const poly &f, u64 p) {
    const std::size_t k = f.size() - 1;
    for (std::size_t deg = 1; deg <= k / 2; ++deg) {
        u64 count = 1;
        for (std::size_t i = 0; i < deg; ++i)
            count *= p;
        for (u64 v = 0; v < count; ++v) {
            poly g(deg + 1, 0);
            u64 t = v;
            for (std::size_t i = 0; i < deg; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[deg] = 1;
            if (rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

} // namespace

TEST(FieldTable, PrimeFieldArithmetic) {
    const auto f = FieldTable::build(7, 1);
    EXPECT_EQ(f.size(), 7u);
    for (u64 a = 0; a < 7; ++a)
        for (u64 b = 0; b < 7; ++b) {
            EXPECT_EQ(f.add(a, b), (a + b) % 7);
            EXPECT_EQ(f.mul(a, b), (a * b) % 7);
        }
    EXPECT_EQ(f.generator(), 3u); // 2 has order 3 mod 7
}

TEST(FieldTable, ModulusIsSmallestIrreducible) {
    for (auto [p, k] : {std::pair<u64, unsigned>{3, 2}, {3, 3}, {5, 2}, {3, 4}, {7, 2}}) {
        const auto f = FieldTable::build(p, k);
        const poly m(f.modulus().begin(), f.modulus().end());
        ASSERT_EQ(m.size(), k + 1);
        EXPECT_TRUE(irreducible_by_trial(m, p));
        // Every monic polynomial that comes earlier, lowest coefficient compared first, is reducible.
        u64 count = 1;
        for (unsigned i = 0; i < k; ++i)
            count *= p;
        for (u64 v = 0; v < count; ++v) {
            // v enumerates coefficient vectors with c_0 as the most significant digit.
            poly g(k + 1, 0);
            u64 t = v;
            for (unsigned i = k; i-- > 0;) {
                g[i] = t % p;
                t /= p;
            }
            g[k] = 1;
            if (g == m)
                break;
            EXPECT_FALSE(irreducible_by_trial(g, p)) << "p=" << p << " k=" << k << " v=" << v;
        }
    }
}

TEST(FieldTable, GeneratorIsSmallestPrimitive) {
    for (auto [p, k] : {std::pair<u64, unsigned>{3, 2}, {5, 2}, {3, 3}, {13, 1}}) {
        const auto f = FieldTable::build(p, k);
        auto order = [&](FieldTable::elem a) {
            u64 n = 1;
            for (auto x = a; x != FieldTable::one(); x = f.mul(x, a))
                ++n;
            return n;
        };
        EXPECT_EQ(order(f.generator()), f.group_order());
        for (FieldTable::elem a = 1; a < f.generator(); ++a)
            EXPECT_LT(order(a), f.group_order());
        const auto alt = FieldTable::build(p, k, kDefaultFieldBudget, generator_choice::alternate);
        EXPECT_EQ(order(alt.generator()), f.group_order());
        EXPECT_GT(alt.generator(), f.generator());
    }
}

TEST(FieldTable, F3HasOnePrimitiveElement) {
    const auto alt = FieldTable::build(3, 1, kDefaultFieldBudget, generator_choice::alternate);
    EXPECT_EQ(alt.generator(), 2u);
}

TEST(FieldTable, FieldAxiomsF27) {
    const auto f = FieldTable::build(3, 3);
    for (FieldTable::elem a = 0; a < 27; ++a) {
        EXPECT_EQ(f.add(a, f.neg(a)), 0u);
        if (a != 0) {
            EXPECT_EQ(f.mul(a, f.inv(a)), FieldTable::one());
            EXPECT_EQ(f.exp(f.dlog(a)), a);
        }
        for (FieldTable::elem b = 0; b < 27; b += 5)
            for (FieldTable::elem c = 0; c < 27; c += 7)
                EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    }
    EXPECT_EQ(f.from_int(-1), f.neg(FieldTable::one()));
    EXPECT_EQ(f.from_int(4), FieldTable::one());
}

TEST(FieldTable, FrobeniusAndQuadraticCharacter) {
    const auto f = FieldTable::build(5, 2);
    std::set<FieldTable::elem> squares;
    for (FieldTable::elem a = 1; a < 25; ++a)
        squares.insert(f.mul(a, a));
    for (FieldTable::elem a = 0; a < 25; ++a) {
        EXPECT_EQ(f.frobenius(a), f.pow(a, 5));
        if (a == 0)
            EXPECT_EQ(f.quadratic(a), 0);
        else
            EXPECT_EQ(f.quadratic(a), squares.count(a) ? 1 : -1);
    }
}

TEST(FieldTable, Errors) {
    EXPECT_THROW(FieldTable::build(2, 3), std::invalid_argument);
    EXPECT_THROW(FieldTable::build(3, 20, 1000), budget_error);
    const auto f = FieldTable::build(3, 2);
    EXPECT_THROW(f.dlog(0), std::domain_error);
}

TEST(FieldTable, BudgetFromEnvironment) {
    ::setenv("KUMMER_LFUN_BUDGET", "100", 1);
    EXPECT_EQ(default_field_budget(), 100u);
    ::unsetenv("KUMMER_LFUN_BUDGET");
    EXPECT_EQ(default_field_budget(), kDefaultFieldBudget);
}

TEST(Embedding, ImageIsFixedFieldAndNormIsMultiplicative) {
    const auto big = cached_field(3, 4);
    const auto small = cached_field(3, 2);
    const Embedding e(big, small);
    std::set<FieldTable::elem> image, fixed;
    for (FieldTable::elem a = 0; a < 9; ++a)
        image.insert(e.to_big(a));
    for (FieldTable::elem a = 0; a < 81; ++a)
        if (big->pow(a, 9) == a)
            fixed.insert(a);
    EXPECT_EQ(image, fixed);
    for (FieldTable::elem a = 0; a < 9; ++a)
        for (FieldTable::elem b = 0; b < 9; ++b) {
            EXPECT_EQ(e.to_big(small->add(a, b)), big->add(e.to_big(a), e.to_big(b)));
            EXPECT_EQ(e.to_big(small->mul(a, b)), big->mul(e.to_big(a), e.to_big(b)));
        }
    for (FieldTable::elem a = 1; a < 81; a += 3)
        for (FieldTable::elem b = 1; b < 81; b += 7)
            EXPECT_EQ(e.norm(big->mul(a, b)), small->mul(e.norm(a), e.norm(b)));
    // The norm to F_9 is x * x^9 = x^10.
    for (FieldTable::elem a = 0; a < 81; ++a)
        EXPECT_EQ(e.to_big(e.norm(a)), big->pow(a, 10));
    EXPECT_THROW(Embedding(cached_field(3, 3), small), std::invalid_argument);
}
