#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mk2/checks.hpp"
#include "mk2/parse.hpp"

using namespace mk2;

namespace {
Element el(const Ring& r, const std::string& s) { return parse_element(r, s); }
}  // namespace

TEST_CASE("k-fold stability of finite rings") {
    SUBCASE("F5 is 4-fold but not 5-fold stable") {
        VerificationReport r4 = check_k_fold_stable(make_prime_field(5), 4);
        CHECK(r4.status() == CheckStatus::Pass);
        VerificationReport r5 = check_k_fold_stable(make_prime_field(5), 5);
        CHECK(r5.status() == CheckStatus::Fail);
        REQUIRE(!r5.failures.empty());
        CHECK(r5.failures[0].detail.find(",1)") != std::string::npos);
    }
    SUBCASE("Z/4 is 1-fold stable") {
        CHECK(check_k_fold_stable(make_zmod(4), 1).status() == CheckStatus::Pass);
    }
    SUBCASE("field reduction agrees with the multiset path") {
        // small cross-check: treat F5 through the generic zmod route
        for (long k = 1; k <= 3; ++k) {
            VerificationReport direct = check_k_fold_stable(make_prime_field(5), k);
            VerificationReport generic = check_k_fold_stable(make_zmod(5), k);
            CHECK(direct.status() == generic.status());
        }
        CHECK(check_k_fold_stable(make_zmod(5), 5).status() == CheckStatus::Fail);
    }
    SUBCASE("q > k iff stable, exhaustive table") {
        for (std::uint64_t q : {3ull, 5ull, 7ull, 11ull})
            for (long k = 1; k <= 8; ++k) {
                VerificationReport r = check_k_fold_stable(make_prime_field(q), k);
                CHECK((r.status() == CheckStatus::Pass) == (static_cast<long>(q) > k));
            }
    }
}

TEST_CASE("weak k-fold stability") {
    CheckParams p;
    p.budget = 60;
    SUBCASE("F7 weakly 5-fold stable, F3 not") {
        CHECK(check_weak_k_fold_stable(make_prime_field(7), 5, p).status() ==
              CheckStatus::Pass);
        CHECK(check_weak_k_fold_stable(make_prime_field(3), 5, p).status() ==
              CheckStatus::Fail);
    }
    SUBCASE("localisation stays weakly stable with cleared denominators") {
        Ring rt = parse_ring_spec("ratfunc:7:x@invert(x)");
        p.max_degree = 2;
        VerificationReport r = check_weak_k_fold_stable(rt, 5, p);
        CHECK(r.status() == CheckStatus::Pass);
        CHECK(r.cases_run == p.budget);
        bool witness_noted = false;
        for (const auto& n : r.notes) witness_noted |= n.find("witness u =") == 0;
        CHECK(witness_noted);
    }
}

TEST_CASE("rho identity reports") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    SUBCASE("factor identity instances") {
        VerificationReport r = rho_factor_identity_check(ctx, el(base, "x"), el(base, "x"),
                                                         el(base, "1+2*x^2"));
        CHECK(r.status() == CheckStatus::Pass);
        VerificationReport triv =
            rho_factor_identity_check(ctx, el(base, "x"), el(base, "x"), el(base, "1"));
        CHECK(triv.status() == CheckStatus::Pass);
        CHECK_THROWS_AS(rho_factor_identity_check(ctx, el(base, "x"), el(base, "x"),
                                                  el(base, "1+x")),
                        NotInRing);
    }
    SUBCASE("power identity instances") {
        CHECK(power_identity_check(ctx, el(base, "3"), 1).status() == CheckStatus::Pass);
        CHECK(power_identity_check(ctx, el(base, "-3"), 2).status() == CheckStatus::Pass);
        CHECK_THROWS_AS(power_identity_check(ctx, el(base, "0"), 1), NotAUnit);
    }
    SUBCASE("small exhaustive sweep") {
        CheckParams p;
        p.max_degree = 1;
        VerificationReport r = rho_identities_check(ctx, p);
        CHECK(r.status() == CheckStatus::Pass);
        CHECK(r.branches["additivity-pairs"] > 0);
        CHECK(r.branches["factor-lemma"] == 6);
        CHECK(r.branches["power-corollary"] > 0);
    }
}

TEST_CASE("rho/tame sweep covers all branches at degree 1") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    CheckParams p;
    p.max_degree = 1;
    VerificationReport r = rho_tame_sweep(ctx, p);
    CHECK(r.status() == CheckStatus::Pass);
    CHECK(r.branches["n=m=0"] > 0);
    CHECK(r.branches["n>0"] > 0);
    CHECK(r.branches["m>0"] > 0);
    CHECK(r.branches["n=m<0"] > 0);
}

TEST_CASE("tame laws report") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    CheckParams p;
    p.max_degree = 1;
    p.budget = 50;
    VerificationReport r = tame_laws_check(ctx, p);
    CHECK(r.status() == CheckStatus::Pass);
    CHECK(r.branches["skew-law"] > 0);
}

TEST_CASE("A-assumption checks") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    CheckParams p;
    p.budget = 40;
    p.max_degree = 2;
    CHECK(check_A1(ctx, p).status() == CheckStatus::Pass);
    CHECK(check_A2(base, p).status() == CheckStatus::Pass);
    CHECK(check_A3(ctx, p).status() == CheckStatus::Pass);
    VerificationReport a4 = check_A4(ctx, p);
    CHECK(a4.status() == CheckStatus::Pass);
    CHECK(a4.cases_run == 6);  // all of F7^x

    SUBCASE("A4 on the two-parameter instance lifts x-bar to x") {
        Ring r2 = parse_ring_spec("ratfunc:7:x,y@invert(x)");
        LocalisationContext c2 = LocalisationContext::make(r2, el(r2, "y"));
        VerificationReport r = check_A4(c2, p);
        CHECK(r.status() == CheckStatus::Pass);
        bool lifted_x = false;
        for (const auto& n : r.notes)
            lifted_x |= n.find("preimage of x is x") != std::string::npos;
        // the note list is truncated, so check the lift directly as well
        Element xbar = parse_element(c2.quotient(), "x");
        CHECK(c2.lift_unit(xbar) == el(r2, "x"));
        (void)lifted_x;
    }
}

TEST_CASE("factor_one_plus_t") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    Element one = Element::from_int(base, 1);

    SUBCASE("already in required form") {
        std::vector<Element> fs = factor_one_plus_t(ctx, el(base, "1+3*x"), 50);
        REQUIRE(fs.size() == 1);
        CHECK(fs[0] == el(base, "1+3*x"));
    }
    SUBCASE("spec example 1+x^2 factors with v = 1") {
        std::vector<Element> fs = factor_one_plus_t(ctx, el(base, "1+x^2"), 50);
        REQUIRE(fs.size() == 2);
        CHECK(fs[0] == el(base, "1+x"));
        CHECK(fs[1] == one + el(base, "x*(x-1)/(1+x)"));
        CHECK(fs[0] * fs[1] == el(base, "1+x^2"));
    }
    SUBCASE("round trip on given products") {
        Element f = el(base, "(1+2*x)*(1+3*x)");
        std::vector<Element> fs = factor_one_plus_t(ctx, f, 50);
        Element prod = one;
        for (const Element& fac : fs) {
            prod = prod * fac;
            CHECK(ctx.base_unit((fac - one).div(ctx.t())));
        }
        CHECK(prod == f);
    }
    SUBCASE("rejects non-members") {
        CHECK_THROWS_AS(factor_one_plus_t(ctx, el(base, "2+x"), 50), NotInRing);
    }
    SUBCASE("denominator reduction with associated parameters") {
        // A = F7[x,y] at the origin, invert x and x+y, t = y.  The coefficient
        // (2x+y)/x^2 is a genuine non-unit with an x-denominator, so the
        // factorisation must run the reduction step twice (x+y is associated
        // to x mod y).
        Ring r3 = parse_ring_spec("ratfunc:7:x,y@invert(x,x+y)");
        LocalisationContext c3 = LocalisationContext::make(r3, el(r3, "y"));
        Element f = el(r3, "1+y*(2*x+y)/x^2");
        CHECK(f == el(r3, "(x+y)^2/x^2"));
        CHECK(c3.one_plus_t_unit(f));
        CHECK_FALSE(c3.base_unit(el(r3, "(2*x+y)/x^2")));
        std::vector<Element> fs = factor_one_plus_t(c3, f, 50);
        Element prod = Element::from_int(r3, 1);
        for (const Element& fac : fs) {
            prod = prod * fac;
            CHECK(c3.base_unit((fac - Element::from_int(r3, 1)).div(c3.t())));
        }
        CHECK(prod == f);
        CHECK(fs.size() == 2);

        Element g = f * el(r3, "1+3*y+y^2");
        std::vector<Element> gs = factor_one_plus_t(c3, g, 50);
        Element gprod = Element::from_int(r3, 1);
        for (const Element& fac : gs) {
            gprod = gprod * fac;
            CHECK(c3.base_unit((fac - Element::from_int(r3, 1)).div(c3.t())));
        }
        CHECK(gprod == g);
        CHECK(gs.size() >= 3);
    }
}

TEST_CASE("remark 3.5: the Laurent localisation is not 1-fold stable") {
    SUBCASE("small sweep decides every candidate") {
        VerificationReport r = remark_3_5_check(10, 1, 1);
        CHECK(r.status() == CheckStatus::Pass);
        CHECK(r.branches["c=0"] == 1);
        CHECK(r.branches["case n<=0"] > 0);
        CHECK(r.branches["case n>=1"] > 0);
        CHECK(r.cases_run > 1);
    }
    SUBCASE("insufficient precision is an error, not a failure") {
        CHECK_THROWS_AS(remark_3_5_check(3, 2, 1), PrecisionExhausted);
    }
}

TEST_CASE("skew check reports") {
    CheckParams p;
    VerificationReport r = skew_check(make_prime_field(7),
                                      Element::from_int(make_prime_field(7), 3), p);
    CHECK(r.status() == CheckStatus::Pass);
    bool has_trace = false;
    for (const auto& n : r.notes) has_trace |= n.rfind("trace:", 0) == 0;
    CHECK(has_trace);
}

TEST_CASE("cocartesian and ses on the one-parameter instance") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    CheckParams p;
    p.max_degree = 1;
    p.budget = 40;
    SUBCASE("pushout legs") {
        VerificationReport r = cocartesian_check(ctx, p);
        INFO(r.text());
        CHECK(r.status() == CheckStatus::Pass);
        CHECK(r.branches["commutes"] > 0);
        CHECK(r.branches["splits"] > 0);
        CHECK(r.branches["roundtrip-identity"] > 0);
    }
    SUBCASE("ses legs") {
        VerificationReport r = ses_check(ctx, p);
        INFO(r.text());
        CHECK(r.status() == CheckStatus::Pass);
        CHECK(r.branches["composite-trivial"] > 0);
        CHECK(r.branches["cbar-onto"] == 6);
        CHECK(r.branches["kernel-certified"] > 0);
        CHECK(r.branches.count("kernel-inconclusive") == 0);
    }
}

TEST_CASE("report JSON is deterministic and schema-shaped") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    CheckParams p;
    p.budget = 10;
    VerificationReport a = check_A1(ctx, p);
    VerificationReport b = check_A1(ctx, p);
    CHECK(a.json() == b.json());
    CHECK(a.json().rfind("{\"check\":\"a1\",\"ring\":", 0) == 0);
    CHECK(a.json().find("\"params\":{\"seed\":1,\"budget\":10,\"window\":") !=
          std::string::npos);
    CHECK(a.json().find("\"status\":\"pass\"") != std::string::npos);
}
