#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mk2/parse.hpp"
#include "mk2/window.hpp"

using namespace mk2;

namespace {
Element el(const Ring& r, const std::string& s) { return parse_element(r, s); }
}  // namespace

TEST_CASE("window construction") {
    SUBCASE("finite field window is the unit group") {
        SymbolWindow w = full_unit_window(make_prime_field(7), 0);
        CHECK(w.units.size() == 6);
        CHECK(w.has_unit(Element::from_int(w.ring, 3)));
    }
    SUBCASE("seeded closure stays within the height bound") {
        Ring r = parse_ring_spec("ratfunc:7:x");
        SymbolWindow w = window_from_seeds(r, {el(r, "1+x")}, 1);
        CHECK(w.has_unit(el(r, "1+x")));
        CHECK(w.has_unit(el(r, "1/(1+x)")));
        CHECK(w.has_unit(el(r, "-1-x")));
        for (const Element& u : w.units) CHECK(element_height(u) <= 1);
        // products within the bound are present
        CHECK(w.has_unit(el(r, "-1/(1+x)")));
        // (1+x)^2 exceeds the bound and is left out
        CHECK_FALSE(w.has_unit(el(r, "(1+x)^2")));
    }
    SUBCASE("rationals window") {
        SymbolWindow w = full_unit_window(make_rationals(), 3);
        CHECK(w.has_unit(el(w.ring, "2/3")));
        CHECK(w.has_unit(el(w.ring, "-3")));
        CHECK_FALSE(w.has_unit(el(w.ring, "1/4")));
    }
}

TEST_CASE("relation instantiation examples") {
    SUBCASE("F7 S-system contains the expected instances") {
        SymbolWindow w = full_unit_window(make_prime_field(7), 0);
        auto rels = instantiate_relations(w, RelationSystem::S);
        Element three = Element::from_int(w.ring, 3), five = Element::from_int(w.ring, 5);
        bool found_s1 = false, found_s3 = false;
        for (const auto& ri : rels) {
            if (ri.rule == Rule::S1R && ri.params[0] == three && ri.params[1] == three &&
                ri.params[2] == five)
                found_s1 = true;  // {3, 3*5=1} = {3,3}+{3,5}
            if (ri.rule == Rule::S3 && ri.params[0] == three) found_s3 = true;
        }
        CHECK(found_s1);
        CHECK(found_s3);
    }
    SUBCASE("window {1} is degenerate") {
        Ring q = make_rationals();
        SymbolWindow w = window_from_seeds(q, {Element::from_int(q, 1)}, 1);
        // closure adds -1; restrict by hand to simulate the degenerate window
        SymbolWindow w1;
        w1.ring = q;
        w1.units = {Element::from_int(q, 1)};
        w1.set_elements(w1.units);
        auto rels = instantiate_relations(w1, RelationSystem::S);
        WindowPresentation p(w1, RelationSystem::S);
        CHECK(p.invariants().is_trivial());
        CHECK(!rels.empty());  // only degenerate instances
    }
    SUBCASE("Z/4 D-system enumerates valid triples") {
        Ring z4 = make_zmod(4);
        SymbolWindow w;
        w.ring = z4;
        w.units = finite_ring_units(z4);
        w.set_elements(finite_ring_elements(z4));
        auto rels = instantiate_relations(w, RelationSystem::D);
        for (const auto& ri : rels) {
            // every emitted instance expands without precondition violations
            CHECK_NOTHROW(relation_expr(ri.rule, ri.params));
        }
    }
}

TEST_CASE("K2M windows of finite fields are trivial") {
    for (std::uint64_t q : {7ull, 11ull}) {
        WindowPresentation p = build_k2m_window(full_unit_window(make_prime_field(q), 0));
        GroupInvariants inv = p.invariants();
        CHECK(inv.is_trivial());
    }
}

TEST_CASE("the {1,-1} window over Q presents Z/2 on {-1,-1}") {
    Ring q = make_rationals();
    SymbolWindow w;
    w.ring = q;
    Element one = Element::from_int(q, 1), mone = Element::from_int(q, -1);
    w.units = {mone, one};
    std::sort(w.units.begin(), w.units.end(),
              [](const Element& a, const Element& b) { return a.compare(b) < 0; });
    w.set_elements(w.units);
    WindowPresentation p = build_k2m_window(w);
    GroupInvariants inv = p.invariants();
    CHECK(inv.torsion == std::vector<mpz_class>{2});
    CHECK(inv.free_rank == 0);
    // {-1,-1} itself is not certified zero (it is the generator)
    CertifyResult c = p.certify(steinberg(mone, mone));
    CHECK_FALSE(c.zero);
    CHECK(!c.note.empty());
    // but 2*{-1,-1} is zero
    CHECK(p.certify(steinberg(mone, mone).scaled(2)).zero);
}

TEST_CASE("full Dennis-Stein presentations of finite local rings") {
    SUBCASE("Z/4 gives Z/2") {
        WindowPresentation p = build_ds_full(make_zmod(4));
        GroupInvariants inv = p.invariants();
        CHECK(inv.torsion == std::vector<mpz_class>{2});
        CHECK(inv.free_rank == 0);
    }
    SUBCASE("Z/9 is trivial") {
        WindowPresentation p = build_ds_full(make_zmod(9));
        CHECK(p.invariants().is_trivial());
    }
    SUBCASE("F7 is trivial") {
        WindowPresentation p = build_ds_full(make_prime_field(7));
        CHECK(p.invariants().is_trivial());
    }
    SUBCASE("rejects non-local rings") {
        CHECK_THROWS_AS(build_ds_full(make_zmod(6)), MathError);
    }
    SUBCASE("invariant under enumeration order") {
        Ring z4 = make_zmod(4);
        std::vector<Element> order = finite_ring_elements(z4);
        std::mt19937_64 rng(5);
        for (int it = 0; it < 4; ++it) {
            std::shuffle(order.begin(), order.end(), rng);
            WindowPresentation p = build_ds_full(z4, &order);
            CHECK(p.invariants().torsion == std::vector<mpz_class>{2});
        }
    }
}

TEST_CASE("certify_zero") {
    Ring f7 = make_prime_field(7);
    SymbolWindow w = full_unit_window(f7, 0);
    Element one = Element::from_int(f7, 1), b = Element::from_int(f7, 3);

    SUBCASE("{1,b} certifies zero with an S1 certificate") {
        CertifyResult c = certify_zero(steinberg(one, b), w);
        REQUIRE(c.zero);
        CHECK(!c.trace.steps.empty());
        for (const Step& s : c.trace.steps) CHECK(s.rule != Rule::S3);
    }
    SUBCASE("{3,5}+{5,3} certifies zero") {
        Element five = Element::from_int(f7, 5);
        CertifyResult c = certify_zero(steinberg(b, five) + steinberg(five, b), w);
        CHECK(c.zero);
    }
    SUBCASE("terms outside the window are an error") {
        SymbolWindow w1;
        w1.ring = f7;
        w1.units = {one};
        w1.set_elements(w1.units);
        CHECK_THROWS_AS(certify_zero(steinberg(b, b), w1), MathError);
    }
}

TEST_CASE("monotonicity: certificates survive window enlargement") {
    Ring r = parse_ring_spec("ratfunc:7:x");
    SymbolWindow small = window_from_seeds(r, {el(r, "2"), el(r, "3")}, 0);
    SymbolWindow big = window_from_seeds(r, {el(r, "2"), el(r, "3"), el(r, "1+x")}, 1);
    for (const Element& u : small.units) CHECK(big.has_unit(u));
    SymbolExpr e = steinberg(el(r, "1"), el(r, "3"));
    CHECK(certify_zero(e, small).zero);
    CHECK(certify_zero(e, big).zero);
    SymbolExpr f = steinberg(el(r, "2"), el(r, "-2"));
    CertifyResult cs = certify_zero(f, small);
    if (cs.zero) CHECK(certify_zero(f, big).zero);
}

TEST_CASE("derive_skew_symmetry spec operation") {
    Ring f7 = make_prime_field(7);
    SymbolWindow w = full_unit_window(f7, 0);
    DerivationTrace tr = derive_skew_symmetry(Element::from_int(f7, 3), w);
    CHECK(!tr.steps.empty());
    // serialises as a JSON array of rule/param steps
    CHECK(tr.json().front() == '[');

    Ring r = parse_ring_spec("ratfunc:7:x");
    SymbolWindow wr = window_from_seeds(r, {el(r, "1+x"), el(r, "2")}, 1);
    DerivationTrace tr2 = derive_skew_symmetry(el(r, "1+x"), wr);
    CHECK(tr2.steps.size() > 8);
}

TEST_CASE("round trip: steinberg -> ds -> steinberg certifies") {
    Ring f7 = make_prime_field(7);
    SymbolWindow w = full_unit_window(f7, 0);
    WindowPresentation comb = build_combined_window(w);
    for (const Element& a : w.units)
        for (const Element& b : w.units) {
            SymbolTerm ds = steinberg_to_ds(steinberg_term(a, b));
            SymbolExpr back = ds_to_steinberg(ds);
            SymbolExpr diff = steinberg(a, b) - back;
            if (diff.is_zero()) continue;
            CertifyResult c = comb.certify(diff);
            CHECK(c.zero);
        }
}

TEST_CASE("soundness stub: certified-zero expressions are recorded") {
    // the cbar-compatibility half of the soundness property lives in
    // test_tame.cpp; here we check the certify vocabulary never says nonzero
    Ring f7 = make_prime_field(7);
    SymbolWindow w = full_unit_window(f7, 0);
    CertifyResult c = certify_zero(steinberg(Element::from_int(f7, 3),
                                             Element::from_int(f7, 5)),
                                   w);
    CHECK((c.zero || !c.note.empty()));
}
