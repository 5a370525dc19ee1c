#include "mk2/trace.hpp"

#include <sstream>

namespace mk2 {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::S1L: return "S1L";
        case Rule::S1R: return "S1R";
        case Rule::S3: return "S3";
        case Rule::D1: return "D1";
        case Rule::D2: return "D2";
        case Rule::D3: return "D3";
        case Rule::CONV: return "CONV";
    }
    return "?";
}

SymbolExpr relation_expr(Rule rule, const std::vector<Element>& params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n) throw MathError("relation instance: wrong arity");
    };
    switch (rule) {
        case Rule::S1L: {
            need(3);
            const Element &a = params[0], &c = params[1], &b = params[2];
            return steinberg(a * c, b) - steinberg(a, b) - steinberg(c, b);
        }
        case Rule::S1R: {
            need(3);
            const Element &a = params[0], &b = params[1], &c = params[2];
            return steinberg(a, b * c) - steinberg(a, b) - steinberg(a, c);
        }
        case Rule::S3: {
            need(1);
            const Element& a = params[0];
            Element one = Element::from_int(a.ring(), 1);
            return steinberg(a, one - a);
        }
        case Rule::D1: {
            need(2);
            const Element &a = params[0], &b = params[1];
            return dennis_stein(a, b) + dennis_stein(-b, -a);
        }
        case Rule::D2: {
            need(3);
            const Element &a = params[0], &b = params[1], &c = params[2];
            return dennis_stein(a, b) + dennis_stein(a, c) -
                   dennis_stein(a, b + c + a * b * c);
        }
        case Rule::D3: {
            need(3);
            const Element &a = params[0], &b = params[1], &c = params[2];
            return dennis_stein(a, b * c) - dennis_stein(a * b, c) -
                   dennis_stein(a * c, b);
        }
        case Rule::CONV: {
            need(2);
            const Element &a = params[0], &b = params[1];
            Element one = Element::from_int(a.ring(), 1);
            return steinberg(a, b) -
                   SymbolExpr::single(dennis_stein_term((a - one).div(b), b));
        }
    }
    throw MathError("unreachable");
}

SymbolExpr DerivationTrace::combination(const Ring& r) const {
    SymbolExpr acc = SymbolExpr::zero(r);
    for (const Step& s : steps)
        acc = acc + relation_expr(s.rule, s.params).scaled(s.coeff);
    return acc;
}

std::string DerivationTrace::json() const {
    std::string out = "[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += ",";
        out += "{\"rule\":\"";
        out += rule_name(steps[i].rule);
        out += "\",\"params\":[";
        for (std::size_t j = 0; j < steps[i].params.size(); ++j) {
            if (j) out += ",";
            out += "\"" + steps[i].params[j].str() + "\"";
        }
        out += "],\"coeff\":" + steps[i].coeff.get_str() + "}";
    }
    return out + "]";
}

Derivation Derivation::reflexive(SymbolExpr e) {
    Derivation d;
    d.lhs_ = e;
    d.rhs_ = std::move(e);
    return d;
}

Derivation Derivation::by_relation(Rule rule, std::vector<Element> params) {
    Derivation d;
    d.lhs_ = relation_expr(rule, params);
    d.rhs_ = SymbolExpr::zero(d.lhs_.ring());
    d.trace_.steps.push_back({rule, std::move(params), 1});
    return d;
}

Derivation Derivation::checked(SymbolExpr lhs, SymbolExpr rhs, std::vector<Step> steps) {
    Derivation d;
    d.lhs_ = std::move(lhs);
    d.rhs_ = std::move(rhs);
    d.trace_.steps = std::move(steps);
    Ring r = d.lhs_.ring() ? d.lhs_.ring() : d.rhs_.ring();
    if (!(d.lhs_ - d.rhs_ == d.trace_.combination(r)))
        throw MathError("derivation does not balance");
    return d;
}

Derivation Derivation::scaled(const mpz_class& c) const {
    Derivation d;
    d.lhs_ = lhs_.scaled(c);
    d.rhs_ = rhs_.scaled(c);
    d.trace_.steps = trace_.steps;
    for (Step& s : d.trace_.steps) s.coeff *= c;
    return d;
}

Derivation Derivation::reversed() const {
    Derivation d;
    d.lhs_ = rhs_;
    d.rhs_ = lhs_;
    d.trace_.steps = trace_.steps;
    for (Step& s : d.trace_.steps) s.coeff = -s.coeff;
    return d;
}

Derivation Derivation::then(const Derivation& next) const {
    if (!(rhs_ == next.lhs_))
        throw MathError("derivation chain mismatch: " + rhs_.str() + " vs " +
                        next.lhs_.str());
    Derivation d;
    d.lhs_ = lhs_;
    d.rhs_ = next.rhs_;
    d.trace_.steps = trace_.steps;
    d.trace_.steps.insert(d.trace_.steps.end(), next.trace_.steps.begin(),
                          next.trace_.steps.end());
    return d;
}

Derivation Derivation::plus(const Derivation& o) const {
    Derivation d;
    d.lhs_ = lhs_ + o.lhs_;
    d.rhs_ = rhs_ + o.rhs_;
    d.trace_.steps = trace_.steps;
    d.trace_.steps.insert(d.trace_.steps.end(), o.trace_.steps.begin(),
                          o.trace_.steps.end());
    return d;
}

std::vector<Element> default_witness_pool(const Ring& r) {
    std::vector<Element> pool;
    switch (r->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField:
            for (const Element& u : finite_ring_units(r))
                pool.push_back(u);
            break;
        case RingKind::Rationals:
            for (int k = 2; k <= 7; ++k) {
                pool.push_back(Element::from_int(r, k));
                pool.push_back(Element::from_int(r, -k));
            }
            break;
        case RingKind::RatFuncLocal:
            for (std::uint32_t c = 2; c < r->p; ++c)
                pool.push_back(Element::from_int(r, static_cast<std::int64_t>(c)));
            break;
        case RingKind::TruncLaurent:
            break;
    }
    return pool;
}

Derivation derive_left_one(const Element& b) {
    Element one = Element::from_int(b.ring(), 1);
    // S1L(1,1,b) = {1,b} - 2{1,b} = -{1,b}
    return Derivation::checked(steinberg(one, b), SymbolExpr::zero(b.ring()),
                               {{Rule::S1L, {one, one, b}, -1}});
}

Derivation derive_right_one(const Element& a) {
    Element one = Element::from_int(a.ring(), 1);
    return Derivation::checked(steinberg(a, one), SymbolExpr::zero(a.ring()),
                               {{Rule::S1R, {a, one, one}, -1}});
}

Derivation derive_inv_right(const Element& a, const Element& b) {
    Element bi = b.inverse();
    // S1R(a,b,b^-1): {a,1} - {a,b} - {a,b^-1}
    std::vector<Step> steps = derive_right_one(a).trace().steps;
    steps.push_back({Rule::S1R, {a, b, bi}, -1});
    return Derivation::checked(steinberg(a, bi) + steinberg(a, b),
                               SymbolExpr::zero(a.ring()), std::move(steps));
}

Derivation derive_ds_zero_right(const Element& a) {
    Element zero = Element::from_int(a.ring(), 0);
    // D2(a,0,0): <a,0> + <a,0> - <a,0> = <a,0>
    return Derivation::checked(dennis_stein(a, zero), SymbolExpr::zero(a.ring()),
                               {{Rule::D2, {a, zero, zero}, 1}});
}

Derivation derive_ds_zero_left(const Element& b) {
    Element zero = Element::from_int(b.ring(), 0);
    // D1(0,b): <0,b> + <-b,0>, then kill <-b,0>
    std::vector<Step> steps = {{Rule::D1, {zero, b}, 1}};
    Derivation dz = derive_ds_zero_right(-b);
    for (const Step& s : dz.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    return Derivation::checked(dennis_stein(zero, b), SymbolExpr::zero(b.ring()),
                               std::move(steps));
}

namespace {

// {a,-a} == 0 when 1-a is a unit, via -a = (1-a)/(1-a^{-1}).
Derivation skew_direct(const Element& a) {
    const Ring& r = a.ring();
    Element one = Element::from_int(r, 1);
    Element i = a.inverse();
    Element m1 = one - a;   // unit by assumption
    Element m2 = one - i;   // = -i(1-a), a unit
    Element m2i = m2.inverse();

    // T4: {a,m2} == 0   from S1L(a,i,m2), {1,m2} == 0, S3(i)
    std::vector<Step> t4 = derive_left_one(m2).trace().steps;
    t4.push_back({Rule::S3, {i}, -1});
    t4.push_back({Rule::S1L, {a, i, m2}, -1});
    Derivation T4 = Derivation::checked(steinberg(a, m2), SymbolExpr::zero(r),
                                        std::move(t4));

    // {a,-a} = S1R(a,m1,m2i) + {a,m1} + {a,m2i}
    std::vector<Step> steps = {{Rule::S1R, {a, m1, m2i}, 1}, {Rule::S3, {a}, 1}};
    Derivation inv = derive_inv_right(a, m2);  // {a,m2i}+{a,m2} == 0
    steps.insert(steps.end(), inv.trace().steps.begin(), inv.trace().steps.end());
    for (const Step& s : T4.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    return Derivation::checked(steinberg(a, -a), SymbolExpr::zero(r), std::move(steps));
}

bool units_all(std::initializer_list<Element> xs) {
    for (const Element& x : xs)
        if (!x.is_unit()) return false;
    return true;
}

// {a,-a} + {a,s} + {s,a} == 0 given 1-s and 1-sa units (stage two of the proof).
Derivation skew_stage2(const Element& a, const Element& s) {
    const Ring& r = a.ring();
    Element m = a * s;
    std::vector<Step> steps;
    Derivation st_as = skew_direct(m);  // {as,-as} == 0, needs 1-as unit
    Derivation st_s = skew_direct(s);   // {s,-s} == 0, needs 1-s unit
    steps.insert(steps.end(), st_as.trace().steps.begin(), st_as.trace().steps.end());
    for (const Step& x : st_s.trace().steps) steps.push_back({x.rule, x.params, -x.coeff});
    steps.push_back({Rule::S1L, {a, s, -m}, -1});
    steps.push_back({Rule::S1R, {a, -a, s}, -1});
    steps.push_back({Rule::S1R, {s, -s, a}, -1});
    return Derivation::checked(steinberg(a, -a) + steinberg(a, s) + steinberg(s, a),
                               SymbolExpr::zero(r), std::move(steps));
}

}  // namespace

Derivation derive_skew(const Element& a, const std::vector<Element>& pool) {
    const Ring& r = a.ring();
    Element one = Element::from_int(r, 1);
    if (!a.is_unit()) throw NotAUnit("skew-symmetry argument must be a unit");
    if (a.is_one()) return derive_left_one(-one);
    if ((one - a).is_unit()) return skew_direct(a);

    // witness search: s1 with 1-s1, 1-s1*a units; then s2 keeping also
    // 1-s1*s2 and 1-s1*s2*a units
    const Element* s1 = nullptr;
    for (const Element& s : pool) {
        if (s.is_unit() && units_all({one - s, one - s * a})) { s1 = &s; break; }
    }
    if (!s1)
        throw MathError("skew-symmetry witness search exhausted the window (s1) for a = " +
                        a.str());
    const Element* s2 = nullptr;
    for (const Element& s : pool) {
        if (!s.is_unit()) continue;
        Element s12 = *s1 * s;
        if (units_all({one - s, one - s * a, one - s12, one - s12 * a})) { s2 = &s; break; }
    }
    if (!s2)
        throw MathError("skew-symmetry witness search exhausted the window (s2) for a = " +
                        a.str());

    Element s12 = *s1 * *s2;
    Derivation e1 = skew_stage2(a, *s1);
    Derivation e2 = skew_stage2(a, *s2);
    Derivation e12 = skew_stage2(a, s12);
    std::vector<Step> steps;
    steps.insert(steps.end(), e1.trace().steps.begin(), e1.trace().steps.end());
    steps.insert(steps.end(), e2.trace().steps.begin(), e2.trace().steps.end());
    for (const Step& s : e12.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    steps.push_back({Rule::S1R, {a, *s1, *s2}, 1});
    steps.push_back({Rule::S1L, {*s1, *s2, a}, 1});
    return Derivation::checked(steinberg(a, -a), SymbolExpr::zero(r), std::move(steps));
}

Derivation derive_anticomm(const Element& a, const Element& b,
                           const std::vector<Element>& pool) {
    const Ring& r = a.ring();
    Element m = a * b;
    Derivation skm = derive_skew(m, pool);
    Derivation ska = derive_skew(a, pool);
    Derivation skb = derive_skew(b, pool);
    std::vector<Step> steps;
    steps.insert(steps.end(), skm.trace().steps.begin(), skm.trace().steps.end());
    for (const Step& s : ska.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    for (const Step& s : skb.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    steps.push_back({Rule::S1L, {a, b, -m}, -1});
    steps.push_back({Rule::S1R, {a, -a, b}, -1});
    steps.push_back({Rule::S1R, {b, -b, a}, -1});
    return Derivation::checked(steinberg(a, b) + steinberg(b, a), SymbolExpr::zero(r),
                               std::move(steps));
}

Derivation derive_pow_left(const Element& x, long n, const Element& y) {
    const Ring& r = x.ring();
    Element one = Element::from_int(r, 1);
    if (n == 0) return derive_left_one(y);
    if (n == 1) return Derivation::reflexive(steinberg(x, y));
    if (n > 1) {
        // {x^n,y} = {x^{n-1},y} + {x,y} + S1L(x^{n-1},x,y)
        Derivation prev = derive_pow_left(x, n - 1, y);
        std::vector<Step> steps = prev.trace().steps;
        steps.push_back({Rule::S1L, {x.pow(n - 1), x, y}, 1});
        return Derivation::checked(steinberg(x.pow(n), y),
                                   steinberg(x, y).scaled(n), std::move(steps));
    }
    // n < 0: {x^n,y} + {x^{-n},y} = {1,y} - S1L(x^n, x^{-n}, y)
    Derivation pos = derive_pow_left(x, -n, y);
    std::vector<Step> steps = derive_left_one(y).trace().steps;
    steps.push_back({Rule::S1L, {x.pow(n), x.pow(-n), y}, -1});
    for (const Step& s : pos.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    return Derivation::checked(steinberg(x.pow(n), y), steinberg(x, y).scaled(n),
                               std::move(steps));
}

Derivation derive_pow_right(const Element& y, const Element& x, long n) {
    if (n == 0) return derive_right_one(y);
    if (n == 1) return Derivation::reflexive(steinberg(y, x));
    if (n > 1) {
        Derivation prev = derive_pow_right(y, x, n - 1);
        std::vector<Step> steps = prev.trace().steps;
        steps.push_back({Rule::S1R, {y, x.pow(n - 1), x}, 1});
        return Derivation::checked(steinberg(y, x.pow(n)),
                                   steinberg(y, x).scaled(n), std::move(steps));
    }
    Derivation pos = derive_pow_right(y, x, -n);
    std::vector<Step> steps = derive_right_one(y).trace().steps;
    steps.push_back({Rule::S1R, {y, x.pow(n), x.pow(-n)}, -1});
    for (const Step& s : pos.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    return Derivation::checked(steinberg(y, x.pow(n)), steinberg(y, x).scaled(n),
                               std::move(steps));
}

Derivation derive_rho_one(const LocalisationContext& ctx) {
    Element zero = Element::from_int(ctx.base(), 0);
    Element t = ctx.t();
    // D1(0,t): <0,t> + <-t,0>;  <-t,0> == 0 by D2
    std::vector<Step> steps = {{Rule::D1, {zero, t}, 1}};
    Derivation dz = derive_ds_zero_right(-t);
    for (const Step& s : dz.trace().steps)
        steps.push_back({s.rule, s.params, -s.coeff});
    return Derivation::checked(dennis_stein(zero, t), SymbolExpr::zero(ctx.base()),
                               std::move(steps));
}

Derivation derive_rho_hom(const LocalisationContext& ctx, const Element& f0,
                          const Element& g0) {
    Element f = ctx.to_base(f0), g = ctx.to_base(g0);
    Element one = Element::from_int(f.ring(), 1);
    const Element& t = ctx.t();
    Element a = (f - one).div(t);
    Element b = (g - one).div(t);
    Element fg = f * g;
    Element s = (fg - one).div(t);
    std::vector<Step> steps = {{Rule::D1, {s, t}, 1},
                               {Rule::D1, {a, t}, -1},
                               {Rule::D1, {b, t}, -1},
                               {Rule::D2, {-t, -a, -b}, 1}};
    return Derivation::checked(dennis_stein(s, t), dennis_stein(a, t) + dennis_stein(b, t),
                               std::move(steps));
}

Derivation derive_rho_pow(const LocalisationContext& ctx, const Element& x, long k) {
    SymbolExpr rx = SymbolExpr::single(rho_term(ctx, x));
    if (k == 1) return Derivation::reflexive(rx);
    if (k == 0) return derive_rho_one(ctx);
    if (k > 1) {
        Derivation prev = derive_rho_pow(ctx, x, k - 1);
        Derivation step = derive_rho_hom(ctx, ctx.to_base(x.pow(k - 1)), x);
        std::vector<Step> steps = step.trace().steps;
        steps.insert(steps.end(), prev.trace().steps.begin(), prev.trace().steps.end());
        return Derivation::checked(SymbolExpr::single(rho_term(ctx, ctx.to_base(x.pow(k)))),
                                   rx.scaled(k), std::move(steps));
    }
    // k < 0: rho(x^k) + rho(x^-k) == rho(1) == 0
    Derivation pos = derive_rho_pow(ctx, x, -k);
    Derivation sum = derive_rho_hom(ctx, ctx.to_base(x.pow(k)), ctx.to_base(x.pow(-k)));
    std::vector<Step> steps = derive_rho_one(ctx).trace().steps;
    for (const Step& s : sum.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    for (const Step& s : pos.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    return Derivation::checked(SymbolExpr::single(rho_term(ctx, ctx.to_base(x.pow(k)))),
                               rx.scaled(k), std::move(steps));
}

Derivation derive_rho_factor(const LocalisationContext& ctx, const Element& s0,
                             const Element& t0, const Element& f0) {
    Element s = ctx.to_base(s0), t = ctx.to_base(t0), f = ctx.to_base(f0);
    Element one = Element::from_int(f.ring(), 1);
    Element st = s * t;
    Element a = (f - one).div(st);
    return Derivation::checked(
        dennis_stein(a, st), dennis_stein(a * s, t) + dennis_stein(a * t, s),
        {{Rule::D3, {a, s, t}, 1}});
}

Derivation derive_power_identity(const LocalisationContext& ctx, const Element& u,
                                 long l, const std::vector<Element>& pool) {
    if (l < 1) throw MathError("power identity needs l >= 1");
    const Ring& R = ctx.base();
    Element one = Element::from_int(R, 1);
    Element tl = ctx.t_pow(l);
    Element f = one + tl * u;
    if (!u.is_unit()) throw NotAUnit("power identity: u must be a unit");
    if (!ctx.base_unit(f)) throw NotAUnit("power identity: 1+t^l*u must be a unit");

    // <u,t^l> == l * rho_t(f) by a D3 chain
    std::vector<Step> steps;
    for (long m = l; m >= 2; --m) {
        // <v,t^m> = <v t^{m-1}, t> + <v t, t^{m-1}> with v = u t^{l-m}
        Element v = ctx.to_base(u * ctx.t_pow(l - m));
        steps.push_back({Rule::D3, {v, ctx.t_pow(m - 1), ctx.t()}, 1});
    }
    Derivation chain = Derivation::checked(
        dennis_stein(u, ctx.to_base(tl)),
        SymbolExpr::single(rho_term(ctx, f)).scaled(l), std::move(steps));

    // <u,t^l> == {-u,f}: D1 + CONV + anticommutativity
    std::vector<Step> conv = {{Rule::D1, {u, ctx.to_base(tl)}, 1},
                              {Rule::CONV, {f, -u}, 1}};
    Derivation ac = derive_anticomm(f, -u, pool);
    for (const Step& s : ac.trace().steps) conv.push_back({s.rule, s.params, -s.coeff});
    Derivation to_st = Derivation::checked(dennis_stein(u, ctx.to_base(tl)),
                                           steinberg(-u, f), std::move(conv));

    return chain.reversed().then(to_st);
}

Derivation derive_ds_conversion(const SymbolTerm& d, const std::vector<Element>& pool) {
    if (d.kind != SymKind::DennisStein) throw MathError("not a Dennis-Stein term");
    const Ring& r = d.a.ring();
    Element one = Element::from_int(r, 1);
    Element w = one + d.a * d.b;
    if (d.a.is_unit()) {
        // <a,b> == {-a, 1+ab}:  D1, then CONV(1+ab, -a) on <-b,-a>, then anticomm
        std::vector<Step> steps = {{Rule::D1, {d.a, d.b}, 1}, {Rule::CONV, {w, -d.a}, 1}};
        Derivation ac = derive_anticomm(w, -d.a, pool);
        for (const Step& s : ac.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
        return Derivation::checked(SymbolExpr::single(d), steinberg(-d.a, w),
                                   std::move(steps));
    }
    if (d.b.is_unit()) {
        // <a,b> == {1+ab, b}: single CONV
        return Derivation::checked(SymbolExpr::single(d), steinberg(w, d.b),
                                   {{Rule::CONV, {w, d.b}, -1}});
    }
    throw NotAUnit("Dennis-Stein conversion: neither argument is a unit");
}

}  // namespace mk2
