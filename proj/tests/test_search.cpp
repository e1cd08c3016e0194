#include <catch2/catch_amalgamated.hpp>

#include "qnahm/search.hpp"

using namespace qnahm;

namespace {

const RatMatrix kDualMatrix = {{rat(1), rat(0), rat(-1, 2)},
                               {rat(0), rat(1), rat(-1, 2)},
                               {rat(-1, 2), rat(-1, 2), rat(1)}};

} // namespace

TEST_CASE("scan preconditions")
{
    SECTION("non positive definite matrix rejected")
    {
        RatMatrix bad = {{rat(2), rat(2)}, {rat(2), rat(1)}};
        SearchConfig cfg;
        REQUIRE_THROWS_AS(scan_vectors(bad, cfg), NotPositiveDefinite);
    }

    SECTION("empty range gives an empty table")
    {
        SearchConfig cfg;
        cfg.range_lo = rat(1, 3);
        cfg.range_hi = rat(1, 4); // empty
        cfg.order = 160;
        auto out = scan_vectors(kDualMatrix, cfg);
        REQUIRE(out.empty());
    }

    SECTION("a grid shifted off every known vector turns up nothing")
    {
        SearchConfig cfg;
        cfg.denominator_bound = 2;
        cfg.range_lo = rat(3, 2);
        cfg.range_hi = rat(2);
        cfg.order = 160;
        cfg.jobs = 2;
        REQUIRE(scan_vectors(kDualMatrix, cfg).empty());
    }

    SECTION("window must leave room for two periods")
    {
        SearchConfig cfg;
        cfg.order = 80;
        cfg.max_period = 60;
        REQUIRE_THROWS_AS(cfg.validate(), WindowTooSmall);
    }
}

TEST_CASE("small targeted scan finds the known vectors")
{
    // denominator 2 grid in [-1/2, 1/2]: a 27-point scan covering several of
    // the known modular vectors for the dual matrix
    SearchConfig cfg;
    cfg.denominator_bound = 2;
    cfg.range_lo = rat(-1, 2);
    cfg.range_hi = rat(1, 2);
    cfg.order = 160;
    cfg.jobs = 2;
    auto out = scan_vectors(kDualMatrix, cfg);

    auto find = [&](RatVector b) -> const SearchCandidate * {
        for (const auto &c : out)
            if (c.B == b)
                return &c;
        return nullptr;
    };

    const SearchCandidate *c1 = find({rat(0), rat(0), rat(-1, 2)});
    REQUIRE(c1 != nullptr);
    REQUIRE(c1->fitted_C == rat(1, 12));

    const SearchCandidate *c2 = find({rat(1, 2), rat(1, 2), rat(-1, 2)});
    REQUIRE(c2 != nullptr);
    REQUIRE(c2->fitted_C == rat(1, 12));

    const SearchCandidate *c3 = find({rat(0), rat(-1, 2), rat(1, 2)});
    REQUIRE(c3 != nullptr);
    REQUIRE(c3->fitted_C == rat(1, 24));

    const SearchCandidate *c4 = find({rat(1, 2), rat(-1, 2), rat(0)});
    REQUIRE(c4 != nullptr);
    REQUIRE(c4->fitted_C == rat(1, 12));

    // B = 0 is a sum of two products, not a single product: no candidate
    REQUIRE(find({rat(0), rat(0), rat(0)}) == nullptr);

    // (-1/2,0,-1/2) is only eventually periodic (finite correction factors):
    // reported as a raw candidate, but no C is fitted for it
    const SearchCandidate *raw = find({rat(-1, 2), rat(0), rat(-1, 2)});
    REQUIRE(raw != nullptr);
    REQUIRE(!raw->fitted_C.has_value());

    // determinism: same scan again, same results
    auto out2 = scan_vectors(kDualMatrix, cfg);
    REQUIRE(out.size() == out2.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        REQUIRE(out[i].B == out2[i].B);
        REQUIRE(out[i].period == out2[i].period);
        REQUIRE(out[i].fitted_C == out2[i].fitted_C);
    }
}

TEST_CASE("the lifted a=3/2 matrix rediscovers its own table")
{
    // the lift-side matrix; its table has a (c,-c,0) family with
    // C = c^2/3 - 1/24, nine concrete vectors, and two columns that are
    // sums of modular forms of different weights and thus must NOT be
    // product-recognized
    RatMatrix A = {{rat(3, 2), rat(1, 2), rat(1)},
                   {rat(1, 2), rat(3, 2), rat(1)},
                   {rat(1), rat(1), rat(2)}};
    SearchConfig cfg;
    cfg.denominator_bound = 4;
    cfg.range_lo = rat(-1);
    cfg.range_hi = rat(1);
    cfg.order = 160;
    cfg.jobs = 2;
    auto out = scan_vectors(A, cfg);

    auto fitted_of = [&](RatVector b) -> std::optional<Rational> {
        for (const auto &c : out)
            if (c.B == b && c.fitted_C)
                return c.fitted_C;
        return std::nullopt;
    };

    int family = 0, fitted_total = 0;
    for (const auto &c : out)
        if (c.fitted_C)
            ++fitted_total;
    std::vector<Rational> cs;
    for (long den = 1; den <= 4; ++den)
        for (long n = -den; n <= (long)den; ++n) {
            Rational c = rat(n, den);
            if (std::find(cs.begin(), cs.end(), c) == cs.end())
                cs.push_back(c);
        }
    for (const Rational &c : cs) {
        auto got = fitted_of({c, -c, rat(0)});
        if (got) {
            ++family;
            REQUIRE(*got == c * c / 3 - rat(1, 24));
        }
    }
    REQUIRE(family == 13); // every grid value of c, including c = 0

    struct Col {
        RatVector b;
        Rational c;
    };
    for (const auto &col : std::vector<Col>{
             {{rat(-1, 2), rat(-1, 2), rat(-1)}, rat(1, 24)},
             {{rat(1, 4), rat(3, 4), rat(1)}, rat(7, 48)},
             {{rat(3, 4), rat(1, 4), rat(1)}, rat(7, 48)},
             {{rat(-1, 4), rat(-3, 4), rat(-1, 2)}, rat(1, 48)},
             {{rat(-3, 4), rat(-1, 4), rat(-1, 2)}, rat(1, 48)},
             {{rat(0), rat(-1, 2), rat(0)}, rat(-1, 96)},
             {{rat(-1, 2), rat(0), rat(0)}, rat(-1, 96)},
             {{rat(1, 4), rat(-1, 4), rat(1, 2)}, rat(1, 48)},
             {{rat(-1, 4), rat(1, 4), rat(1, 2)}, rat(1, 48)},
         }) {
        auto got = fitted_of(col.b);
        REQUIRE(got.has_value());
        REQUIRE(*got == col.c);
    }
    REQUIRE(fitted_total == family + 9);

    // the weight-mixing pair is absent from the fitted set
    REQUIRE(!fitted_of({rat(1, 2), rat(1, 2), rat(0)}).has_value());
    REQUIRE(!fitted_of({rat(1), rat(1), rat(1)}).has_value());
}

TEST_CASE("fit_C on scan patterns matches the direct prefactor")
{
    // the (1/2,1/2,-1/2) vector peels to a period-12 pattern whose fitted
    // spec must reproduce the series
    SearchConfig cfg;
    cfg.denominator_bound = 2;
    cfg.range_lo = rat(-1, 2);
    cfg.range_hi = rat(1, 2);
    cfg.order = 160;
    auto out = scan_vectors(kDualMatrix, cfg);
    for (const auto &c : out) {
        if (!c.spec)
            continue;
        NahmTriple t{kDualMatrix, c.B, Rational(0)};
        QSeries f = eval_nahm(t, rat(30));
        QSeries g = expand_eta_quotient(*c.spec, rat(30));
        // f = normalization * g: compare up to the recognizer normalization
        ProductExponents pe = recognize_product(f.rescaled(4), 100);
        QSeries norm = monomial_series(pe.normalization);
        REQUIRE(agree_below_bound(f, norm * g));
    }
}
