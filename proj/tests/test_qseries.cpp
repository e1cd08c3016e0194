#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qnahm/pochhammer.hpp"
#include "qnahm/qseries.hpp"

using namespace qnahm;

namespace {

QSeries geometric(long long hi)
{
    QSeries f(1, hi);
    for (long long k = 0; k < hi; ++k)
        f.set_coeff(k, Rational(1));
    return f;
}

/* Independent partition-count oracle: Euler's pentagonal recurrence
 * p(n) = sum_k (-1)^{k+1} [p(n-k(3k-1)/2) + p(n-k(3k+1)/2)]. */
std::vector<Rational> partition_numbers(long long n)
{
    std::vector<Rational> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1;
    for (long long m = 1; m <= n; ++m) {
        Rational s(0);
        for (long long k = 1;; ++k) {
            long long g1 = k * (3 * k - 1) / 2;
            long long g2 = k * (3 * k + 1) / 2;
            if (g1 > m && g2 > m)
                break;
            Rational sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= m)
                s += sign * p[static_cast<std::size_t>(m - g1)];
            if (g2 <= m)
                s += sign * p[static_cast<std::size_t>(m - g2)];
        }
        p[static_cast<std::size_t>(m)] = s;
    }
    return p;
}

QSeries random_series(std::mt19937 &rng, long long scale, long long hi)
{
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    QSeries f(scale, hi);
    for (long long k = -3; k < hi; ++k)
        if (rng() % 3 == 0)
            f.set_coeff(k, rat(coeff(rng), den(rng)));
    return f;
}

} // namespace

TEST_CASE("multiplication examples")
{
    QSeries one_minus_q = QSeries::one(1, 40);
    one_minus_q.set_coeff(1, Rational(-1));

    SECTION("(1-q) times the geometric series telescopes to 1")
    {
        QSeries p = one_minus_q * geometric(40);
        REQUIRE(agree_below_bound(p, QSeries::one(1, 40)));
    }

    SECTION("(q;q)_3 by direct hand multiplication")
    {
        QSeries f = pochhammer_finite(Monomial::q_power(1), 1, 3);
        QSeries expect(1, QSeries::kInfOrder);
        expect.set_coeff(0, 1);
        expect.set_coeff(1, -1);
        expect.set_coeff(2, -1);
        expect.set_coeff(4, 1);
        expect.set_coeff(5, 1);
        expect.set_coeff(6, -1);
        REQUIRE(agree_below_bound(f, expect));
        REQUIRE(f.terms().size() == 6);
    }

    SECTION("zero annihilates")
    {
        QSeries z = QSeries::zero(1, 40);
        REQUIRE((geometric(40) * z).is_zero());
    }
}

TEST_CASE("inverse")
{
    SECTION("1/(1-q) is the geometric series")
    {
        QSeries f = QSeries::one(1, 30);
        f.set_coeff(1, Rational(-1));
        REQUIRE(agree_below_bound(f.inverse(), geometric(30)));
    }

    SECTION("1/(q;q)_inf matches the pentagonal-recurrence partition counts")
    {
        long long n = 60;
        QSeries g = pochhammer_infinite(Monomial::q_power(1), 1, rat_ll(n)).inverse();
        auto p = partition_numbers(n - 1);
        for (long long k = 0; k < n; ++k)
            REQUIRE(g.coeff(k) == p[static_cast<std::size_t>(k)]);
    }

    SECTION("inverse undoes itself below the bound")
    {
        std::mt19937 rng(7);
        for (int t = 0; t < 10; ++t) {
            QSeries f = random_series(rng, 2, 25);
            f.set_coeff(f.lo() >= 25 ? -4LL : f.lo(), rat(3, 2)); // ensure a leading term
            QSeries prod = f * f.inverse();
            REQUIRE(agree_below_bound(prod, QSeries::one(f.scale(), prod.hi())));
        }
    }

    SECTION("series with no nonzero term rejects")
    {
        QSeries z = QSeries::zero(1, 10);
        REQUIRE_THROWS_AS(z.inverse(), ZeroLeadingTerm);
    }
}

TEST_CASE("substitute_power")
{
    SECTION("1+q at k=4/3 lands on scale 3")
    {
        QSeries f = QSeries::one(1, 10);
        f.set_coeff(1, Rational(1));
        QSeries g = substitute_power(f, rat(4, 3));
        REQUIRE(g.scale() == 3);
        REQUIRE(g.coeff_q(rat(4, 3)) == 1);
        REQUIRE(g.coeff_q(rat(1)) == 0);
    }

    SECTION("(q;q)_inf at k=2 equals (q^2;q^2)_inf recomputed directly")
    {
        QSeries f = pochhammer_infinite(Monomial::q_power(1), 1, 30);
        QSeries lhs = substitute_power(f, rat(2));
        QSeries rhs = pochhammer_infinite(Monomial::q_power(2), 2, 60);
        REQUIRE(agree_below_bound(lhs, rhs));
    }

    SECTION("k=1 is the identity")
    {
        QSeries f = pochhammer_finite(Monomial::q_power(1), 1, 4);
        REQUIRE(agree_below_bound(substitute_power(f, rat(1)), f));
    }

    SECTION("composition multiplies the exponents")
    {
        std::mt19937 rng(11);
        QSeries f = random_series(rng, 1, 20);
        QSeries ab = substitute_power(substitute_power(f, rat(3, 2)), rat(4, 3));
        QSeries prod = substitute_power(f, rat(2));
        REQUIRE(agree_below_bound(ab, prod));
    }
}

TEST_CASE("dissect")
{
    SECTION("odd part of the geometric series")
    {
        QSeries f = geometric(20);
        QSeries g = dissect(f, 2, 1);
        for (long long k = 0; k < 20; ++k)
            REQUIRE(g.coeff(k) == (k % 2 == 1 ? 1 : 0));
    }

    SECTION("even part of the square theta")
    {
        QSeries f = theta_jtp(Monomial(Rational(-1), Rational(1)), 2, 12);
        QSeries g = dissect(f, 2, 0);
        REQUIRE(g.coeff(0) == 1);
        REQUIRE(g.coeff(1) == 0);
        REQUIRE(g.coeff(4) == 2);
        REQUIRE(g.coeff(9) == 0);
    }

    SECTION("a full residue system partitions the series")
    {
        std::mt19937 rng(3);
        QSeries f = random_series(rng, 1, 30);
        QSeries sum = dissect(f, 3, 0) + dissect(f, 3, 1) + dissect(f, 3, 2);
        REQUIRE(agree_below_bound(sum, f));
        REQUIRE(first_mismatch(sum, f) == std::nullopt);
    }
}

TEST_CASE("ring laws on random series")
{
    std::mt19937 rng(42);
    for (int t = 0; t < 25; ++t) {
        QSeries a = random_series(rng, 2, 18);
        QSeries b = random_series(rng, 3, 24);
        QSeries c = random_series(rng, 1, 15);
        REQUIRE(agree_below_bound(a * b, b * a));
        REQUIRE(agree_below_bound((a * b) * c, a * (b * c)));
        REQUIRE(agree_below_bound(a * (b + c), a * b + a * c));
    }
}

TEST_CASE("scale cap")
{
    REQUIRE_THROWS_AS(QSeries(2'000'000, 10), ScaleOverflow);
    QSeries f = QSeries::one(999'983, 10); // large prime scale is still fine
    REQUIRE_THROWS_AS(f.rescaled(999'983 * 4), ScaleOverflow);
}

TEST_CASE("truncation bookkeeping")
{
    QSeries f = geometric(10);
    QSeries g = f.truncated(5);
    REQUIRE(g.hi() == 5);
    REQUIRE(g.coeff(4) == 1);
    REQUIRE(g.terms().size() == 5);

    QSeries r = g.rescaled(6);
    REQUIRE(r.scale() == 6);
    REQUIRE(r.hi() == 30);
    REQUIRE(r.coeff(24) == 1);
    REQUIRE(r.coeff(4) == 0);
    REQUIRE(agree_below_bound(r.normalized_scale(), g));
}
