#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qnahm/registry.hpp"

using namespace qnahm;

TEST_CASE("catalog sanity")
{
    const auto &entries = registry();
    REQUIRE(entries.size() >= 45);
    std::set<std::string> names;
    for (const auto &e : entries) {
        REQUIRE(names.insert(e.name).second); // unique keys
        REQUIRE((e.diagnostic || e.default_order >= 100));
        REQUIRE(e.lhs);
        REQUIRE(e.rhs);
    }
    REQUIRE(find_entry("rr-1") != nullptr);
    REQUIRE(find_entry("no-such-key") == nullptr);
}

TEST_CASE("spot verification at reduced order")
{
    // cheap smoke pass over a spread of entries; the acceptance suite runs
    // everything at full order
    for (const char *name :
         {"rr-1", "rr-2", "q-binomial-2", "euler-2-3", "q-gauss-1", "phi11-3",
          "bailey-2phi2-1", "gauss-2phi2-1", "s25", "s119", "ab-356", "ab-428", "ab-531-2",
          "ab-524-1", "ab-524-lim-2", "vz-rank2-1-2", "vz-rank2-3-1", "thm62-2", "thm63-1-1",
          "thm63-4-3", "thm63-7", "add-id-3", "3core-1", "vz-exam10-1", "dissect-tm1",
          "key-2", "wang-234", "nonmod-relation", "lift-vz32-1-3"}) {
        const IdentityEntry *e = find_entry(name);
        INFO(name);
        REQUIRE(e != nullptr);
        VerifyReport r = verify(*e, 40 * e->scale);
        INFO("mismatch at " << (r.mismatch_exponent ? to_string(*r.mismatch_exponent) : "-")
                            << " lhs=" << r.lhs_coeff << " rhs=" << r.rhs_coeff);
        REQUIRE(r.pass);
    }
}

TEST_CASE("fault fixture reports the injected mismatch")
{
    const IdentityEntry *e = find_entry("selftest-fault");
    REQUIRE(e != nullptr);
    REQUIRE(e->diagnostic);
    VerifyReport r = verify(*e, 40);
    REQUIRE(!r.pass);
    REQUIRE(r.mismatch_exponent == rat(5));
    REQUIRE(r.lhs_coeff != r.rhs_coeff);
}

TEST_CASE("binding validator")
{
    REQUIRE_THROWS_AS(reg::vz_rank2_lhs(rat(1), rat(0), rat(0)), UnboundParameter);
    REQUIRE_THROWS_AS(reg::vz_rank2_lhs(rat(1, 4), rat(0), rat(0)), UnboundParameter);
    REQUIRE_NOTHROW(reg::vz_rank2_lhs(rat(3, 2), rat(0), rat(0)));
}

TEST_CASE("verify_all is deterministic and parallel-safe")
{
    // run two cheap entries through the machinery with different job counts
    auto seq = verify_all(1, 36);
    auto par = verify_all(2, 36);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        REQUIRE(seq[i].name == par[i].name);
        REQUIRE(seq[i].pass == par[i].pass);
    }
}
