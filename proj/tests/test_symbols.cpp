#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mk2/parse.hpp"
#include "mk2/trace.hpp"

using namespace mk2;

namespace {

Element el(const Ring& r, const std::string& s) { return parse_element(r, s); }

bool balanced(const Derivation& d) {
    // Derivation::checked already enforces this; re-verify independently
    return d.lhs() - d.rhs() == d.trace().combination(d.lhs().ring() ? d.lhs().ring()
                                                                     : d.rhs().ring());
}

}  // namespace

TEST_CASE("symbol constructors and conversions") {
    Ring f7 = make_prime_field(7);
    Element two = Element::from_int(f7, 2), three = Element::from_int(f7, 3);

    SUBCASE("steinberg preconditions") {
        CHECK(steinberg(two, three).terms().size() == 1);
        CHECK_THROWS_AS(steinberg(Element::from_int(f7, 0), three), NotAUnit);
    }
    SUBCASE("dennis-stein preconditions") {
        Ring z4 = make_zmod(4);
        // 1 + 2*2 = 5 = 1 in Z/4, a unit
        CHECK(dennis_stein(Element::from_int(z4, 2), Element::from_int(z4, 2))
                  .terms().size() == 1);
        // 1 + 1*3 = 0 in Z/4
        CHECK_THROWS_AS(dennis_stein(Element::from_int(z4, 1), Element::from_int(z4, 3)),
                        NotAUnit);
    }
    SUBCASE("steinberg_to_ds examples") {
        SymbolTerm t = steinberg_to_ds(steinberg_term(two, three));
        // (2-1)*3^{-1} = 5 in F7
        CHECK(t.a.residue() == 5);
        CHECK(t.b.residue() == 3);
        SymbolTerm t1 = steinberg_to_ds(steinberg_term(Element::from_int(f7, 1), three));
        CHECK(t1.a.residue() == 0);
    }
    SUBCASE("ds_to_steinberg branches") {
        Ring r = parse_ring_spec("ratfunc:7:x");
        SymbolExpr a = ds_to_steinberg(dennis_stein_term(el(r, "3"), el(r, "x")));
        CHECK(a == steinberg(el(r, "-3"), el(r, "1+3*x")));
        SymbolExpr b = ds_to_steinberg(dennis_stein_term(el(r, "x"), el(r, "2")));
        CHECK(b == steinberg(el(r, "1+2*x"), el(r, "2")));
        SymbolExpr c = ds_to_steinberg(dennis_stein_term(el(r, "0"), el(r, "2")));
        CHECK(c == steinberg(el(r, "1"), el(r, "2")));
        Ring r2 = parse_ring_spec("ratfunc:7:x,y");
        CHECK_THROWS_AS(ds_to_steinberg(dennis_stein_term(el(r2, "x"), el(r2, "y"))),
                        NotAUnit);
    }
    SUBCASE("expression printing and parsing") {
        Ring r = parse_ring_spec("ratfunc:7:x");
        SymbolExpr e = steinberg(el(r, "2"), el(r, "3")).scaled(2) -
                       SymbolExpr::single(dennis_stein_term(el(r, "3"), el(r, "x")));
        SymbolExpr back = parse_symbol_expr(r, e.str());
        CHECK(back == e);
        CHECK(parse_symbol_expr(r, "{2,3} + {2,3}") == steinberg(el(r, "2"), el(r, "3")).scaled(2));
    }
}

TEST_CASE("rho map") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));

    CHECK(rho(ctx, el(base, "1+3*x")) ==
          SymbolExpr::single(dennis_stein_term(el(base, "3"), el(base, "x"))));
    CHECK(rho(ctx, el(base, "1")).is_zero());
    CHECK_THROWS_AS(rho(ctx, el(base, "x")), MathError);
    CHECK_THROWS_AS(rho(ctx, el(base, "2+x")), MathError);
    // (1+x)(1+2x) = 1+3x+2x^2 -> <3+2x, x>
    CHECK(rho(ctx, el(base, "(1+x)*(1+2*x)")) ==
          SymbolExpr::single(dennis_stein_term(el(base, "3+2*x"), el(base, "x"))));
    CHECK(rho_as_steinberg(ctx, el(base, "1+3*x")) ==
          steinberg(el(base, "-3"), el(base, "1+3*x")));
}

TEST_CASE("relation expressions enforce instance preconditions") {
    Ring f7 = make_prime_field(7);
    Element one = Element::from_int(f7, 1);
    Element three = Element::from_int(f7, 3);
    CHECK_THROWS_AS(relation_expr(Rule::S3, {one}), NotAUnit);  // 1-1 = 0
    CHECK(relation_expr(Rule::S3, {three}) ==
          steinberg(three, Element::from_int(f7, -2)));
    CHECK_THROWS_AS(relation_expr(Rule::S1L, {one}), MathError);  // arity
}

TEST_CASE("derived lemmas balance") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    std::vector<Element> pool = default_witness_pool(base);

    SUBCASE("units and inverses") {
        CHECK(balanced(derive_left_one(el(base, "3+x"))));
        CHECK(balanced(derive_right_one(el(base, "2"))));
        CHECK(balanced(derive_inv_right(el(base, "2"), el(base, "3+x"))));
        CHECK(balanced(derive_ds_zero_right(el(base, "x"))));
        CHECK(balanced(derive_ds_zero_left(el(base, "x"))));
    }

    SUBCASE("skew-symmetry, direct branch") {
        Derivation d = derive_skew(el(base, "3"), pool);
        CHECK(d.lhs() == steinberg(el(base, "3"), el(base, "-3")));
        CHECK(d.rhs().is_zero());
        // branch 1 uses only S1/S3 instances on a, a^{-1}
        CHECK(d.trace().steps.size() <= 8);
    }
    SUBCASE("skew-symmetry of 1") {
        CHECK(balanced(derive_skew(Element::from_int(base, 1), pool)));
    }
    SUBCASE("skew-symmetry, witness branch") {
        // 1-a is not a unit for a = 1+x
        Derivation d = derive_skew(el(base, "1+x"), pool);
        CHECK(d.lhs() == steinberg(el(base, "1+x"), el(base, "-1-x")));
        CHECK(d.rhs().is_zero());
        CHECK(d.trace().steps.size() > 8);
    }
    SUBCASE("skew witness search exhausts honestly") {
        // 1-a is a non-unit and the pool {1,-1} has no second-stage witness
        std::vector<Element> tiny{Element::from_int(base, 1),
                                  Element::from_int(base, -1)};
        CHECK_THROWS_AS(derive_skew(el(base, "1+x"), tiny), MathError);
    }
    SUBCASE("anticommutativity") {
        Derivation d = derive_anticomm(el(base, "2+x"), el(base, "3"), pool);
        CHECK(d.lhs() ==
              steinberg(el(base, "2+x"), el(base, "3")) +
                  steinberg(el(base, "3"), el(base, "2+x")));
        CHECK(d.rhs().is_zero());
    }
    SUBCASE("powers") {
        for (long n : {-3L, -1L, 0L, 2L, 4L}) {
            Derivation d = derive_pow_left(el(base, "2+x"), n, el(base, "3"));
            CHECK(d.lhs() == steinberg(el(base, "2+x").pow(n), el(base, "3")));
            CHECK(d.rhs() == steinberg(el(base, "2+x"), el(base, "3")).scaled(n));
            Derivation e = derive_pow_right(el(base, "3"), el(base, "2+x"), n);
            CHECK(balanced(e));
        }
    }
}

TEST_CASE("rho identities as derivations") {
    Ring base = parse_ring_spec("ratfunc:7:x");
    LocalisationContext ctx = LocalisationContext::make(base, el(base, "x"));
    std::vector<Element> pool = default_witness_pool(base);

    SUBCASE("homomorphism") {
        Derivation d = derive_rho_hom(ctx, el(base, "1+x"), el(base, "1+2*x"));
        CHECK(d.lhs() == rho(ctx, el(base, "(1+x)*(1+2*x)")));
        CHECK(d.rhs() == rho(ctx, el(base, "1+x")) + rho(ctx, el(base, "1+2*x")));
    }
    SUBCASE("rho powers, negative included") {
        for (long k : {-2L, 0L, 1L, 3L}) {
            Derivation d = derive_rho_pow(ctx, el(base, "1+3*x"), k);
            CHECK(balanced(d));
        }
    }
    SUBCASE("factorisation lemma is one D3 instance") {
        Derivation d = derive_rho_factor(ctx, el(base, "x"), el(base, "x"),
                                         el(base, "1+2*x^2"));
        REQUIRE(d.trace().steps.size() == 1);
        CHECK(d.trace().steps[0].rule == Rule::D3);
        CHECK(d.lhs() == SymbolExpr::single(dennis_stein_term(el(base, "2"), el(base, "x^2"))));
        CHECK(d.rhs() == SymbolExpr::single(dennis_stein_term(el(base, "2*x"), el(base, "x")))
                             .scaled(2));
    }
    SUBCASE("two-variable factorisation") {
        Ring r2 = parse_ring_spec("ratfunc:7:x,y");
        LocalisationContext c2 = LocalisationContext::make(r2, el(r2, "x"));
        Derivation d = derive_rho_factor(c2, el(r2, "x"), el(r2, "y"), el(r2, "1+3*x*y"));
        CHECK(d.lhs() == SymbolExpr::single(dennis_stein_term(el(r2, "3"), el(r2, "x*y"))));
        CHECK(d.rhs() ==
              SymbolExpr::single(dennis_stein_term(el(r2, "3*x"), el(r2, "y"))) +
                  SymbolExpr::single(dennis_stein_term(el(r2, "3*y"), el(r2, "x"))));
    }
    SUBCASE("power identity l=1..3") {
        for (long l : {1L, 2L, 3L}) {
            Derivation d = derive_power_identity(ctx, el(base, "3"), l, pool);
            Element f = el(base, "1") + ctx.t_pow(l) * el(base, "3");
            CHECK(d.lhs() == rho(ctx, f).scaled(l));
            CHECK(d.rhs() == steinberg(el(base, "-3"), f));
        }
        // u = -3, l = 2: 2 rho(1-3x^2) = {3, 1-3x^2}
        Derivation d = derive_power_identity(ctx, el(base, "-3"), 2, pool);
        CHECK(d.rhs() == steinberg(el(base, "3"), el(base, "1-3*x^2")));
    }
    SUBCASE("power identity rejects non-units") {
        CHECK_THROWS_AS(derive_power_identity(ctx, el(base, "0"), 1, pool), NotAUnit);
        CHECK_THROWS_AS(derive_power_identity(ctx, el(base, "x"), 1, pool), NotAUnit);
    }
    SUBCASE("ds conversion derivations") {
        Derivation a = derive_ds_conversion(dennis_stein_term(el(base, "3"), el(base, "x")),
                                            pool);
        CHECK(a.rhs() == steinberg(el(base, "-3"), el(base, "1+3*x")));
        Derivation b = derive_ds_conversion(dennis_stein_term(el(base, "x"), el(base, "2")),
                                            pool);
        CHECK(b.rhs() == steinberg(el(base, "1+2*x"), el(base, "2")));
    }
}
