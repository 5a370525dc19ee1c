#include "mk2/tame.hpp"

namespace mk2 {

Element tame_symbol(const Element& f, const Element& g, const LocalisationContext& ctx) {
    UnitDecomposition df = ctx.unit_decompose(f);
    UnitDecomposition dg = ctx.unit_decompose(g);
    long n = df.n, m = dg.n;
    Element sign = Element::from_int(ctx.base(), (n * m) % 2 ? -1 : 1);
    Element c = sign * df.u.pow(m) * dg.u.pow(-n);
    // direct route: the defining formula evaluated in the fraction field
    Element direct = sign * ctx.to_base(f).pow(m) * ctx.to_base(g).pow(-n);
    if (!(c == direct))
        throw MathError("tame symbol route mismatch for (" + f.str() + "," + g.str() + ")");
    if (!ctx.base_unit(c))
        throw MathError("tame symbol is not a unit of R: " + c.str());
    return c;
}

Element cbar(const SymbolExpr& e, const LocalisationContext& ctx) {
    Element acc = Element::from_int(ctx.base(), 1);
    for (const auto& [t, coeff] : e.terms()) {
        if (t.kind != SymKind::Steinberg)
            throw MathError("cbar is defined on Steinberg expressions");
        if (!coeff.fits_slong_p()) throw MathError("cbar coefficient out of range");
        acc = acc * tame_symbol(t.a, t.b, ctx).pow(coeff.get_si());
    }
    return ctx.residue(acc);
}

SymbolExpr split_symbol(const Element& f, const Element& g,
                        const LocalisationContext& ctx) {
    if (!ctx.localised_unit(f) || !ctx.localised_unit(g))
        throw NotAUnit("split_symbol needs units of R_t");
    UnitDecomposition df = ctx.unit_decompose(f);
    UnitDecomposition dg = ctx.unit_decompose(g);
    Element c = tame_symbol(f, g, ctx);
    return steinberg(ctx.to_localised(df.u), ctx.to_localised(dg.u)) +
           steinberg(ctx.to_localised(c), ctx.t_loc());
}

namespace {

// {P,T} == m*{U,T} + k*{V,T} for P = U^m * V^k (as computed), peeling factors.
Derivation expand_product_left(const Element& U, long m, const Element& V, long k,
                               const Element& T) {
    Element um = U.pow(m), vk = V.pow(k);
    Derivation du = derive_pow_left(U, m, T);
    Derivation dv = derive_pow_left(V, k, T);
    std::vector<Step> steps;
    steps.push_back({Rule::S1L, {um, vk, T}, 1});
    steps.insert(steps.end(), du.trace().steps.begin(), du.trace().steps.end());
    steps.insert(steps.end(), dv.trace().steps.begin(), dv.trace().steps.end());
    return Derivation::checked(steinberg(um * vk, T),
                               steinberg(U, T).scaled(m) + steinberg(V, T).scaled(k),
                               std::move(steps));
}

}  // namespace

Derivation derive_split(const LocalisationContext& ctx, const Element& f,
                        const Element& g, const std::vector<Element>& pool) {
    UnitDecomposition df = ctx.unit_decompose(f);
    UnitDecomposition dg = ctx.unit_decompose(g);
    long n = df.n, m = dg.n;
    Element U = ctx.to_localised(df.u), V = ctx.to_localised(dg.u);
    Element T = ctx.t_loc();
    Element F = ctx.to_localised(f), G = ctx.to_localised(g);
    Element C = ctx.to_localised(tame_symbol(f, g, ctx));
    Element mone = Element::from_int(F.ring(), -1);

    std::vector<Step> steps;
    auto add = [&steps](const Derivation& d, const mpz_class& c = 1) {
        for (const Step& s : d.trace().steps)
            steps.push_back({s.rule, s.params, s.coeff * c});
    };

    // {F,G} == {U,V} + m{U,T} + n{T,V} + nm{T,T}
    if (n != 0) {
        steps.push_back({Rule::S1L, {U, T.pow(n), G}, 1});
        add(derive_pow_left(T, n, G));
    }
    if (m != 0) {
        steps.push_back({Rule::S1R, {U, V, T.pow(m)}, 1});
        add(derive_pow_right(U, T, m));
        if (n != 0) {
            steps.push_back({Rule::S1R, {T, V, T.pow(m)}, mpz_class(n)});
            add(derive_pow_right(T, T, m), n);
        }
    }

    // {C,T} == odd*{-1,T} + m{U,T} - n{V,T}
    long odd = ((n * m) % 2 + 2) % 2;
    {
        if (odd) steps.push_back({Rule::S1L, {mone, U.pow(m) * V.pow(-n), T}, mpz_class(-1)});
        add(expand_product_left(U, m, V, -n, T), -1);
    }

    // n*({T,V}+{V,T}) and nm*({T,T}-{-1,T}) and the leftover even {-1,T}'s
    if (n != 0) add(derive_anticomm(T, V, pool), n);
    long nm = n * m;
    if (nm != 0) {
        steps.push_back({Rule::S1L, {mone, -T, T}, mpz_class(nm)});
        add(derive_skew(-T, pool), nm);
    }
    long even = nm - odd;
    if (even != 0) {
        // 2{-1,T} == {1,T} == 0
        add(derive_left_one(T), even / 2);
        steps.push_back({Rule::S1L, {mone, mone, T}, mpz_class(-even / 2)});
    }

    return Derivation::checked(steinberg(F, G),
                               steinberg(U, V) + steinberg(C, T), std::move(steps));
}

Derivation derive_rho_commutes(const LocalisationContext& ctx, const Element& w,
                               const std::vector<Element>& pool) {
    // {1+tw, t} == {-w, 1+tw} in K_2^M(R_t), for w a unit of R
    Element one = Element::from_int(ctx.base(), 1);
    Element fw = one + ctx.t() * w;
    if (!w.is_unit() || !ctx.base_unit(fw))
        throw NotAUnit("derive_rho_commutes needs w and 1+tw units of R");
    Element W = ctx.to_localised(w), F = ctx.to_localised(fw), T = ctx.t_loc();
    // {-w,1+wt} = {-wt,1+wt} - {t,1+wt} = 0 + {1+wt,t}
    std::vector<Step> steps;
    steps.push_back({Rule::S1L, {-W, T, F}, 1});
    steps.push_back({Rule::S3, {-W * T}, -1});
    Derivation ac = derive_anticomm(T, F, pool);
    steps.insert(steps.end(), ac.trace().steps.begin(), ac.trace().steps.end());
    return Derivation::checked(steinberg(F, T), steinberg(-W, F), std::move(steps));
}

const char* rho_tame_case_name(RhoTameCase c) {
    switch (c) {
        case RhoTameCase::NZero: return "n=m=0";
        case RhoTameCase::NPos: return "n>0";
        case RhoTameCase::MPos: return "m>0";
        case RhoTameCase::Neg: return "n=m<0";
    }
    return "?";
}

RhoTameResult derive_rho_tame(const LocalisationContext& ctx, const Element& f,
                              const Element& g, const std::vector<Element>& pool) {
    Element one = Element::from_int(ctx.base(), 1);
    if (!(ctx.to_base(f) + ctx.to_base(g) == one))
        throw MathError("rho/tame lemma needs f + g = 1");
    UnitDecomposition df = ctx.unit_decompose(f);
    UnitDecomposition dg = ctx.unit_decompose(g);
    long n = df.n, m = dg.n;
    const Element &u = df.u, &v = dg.u;
    Element c = tame_symbol(f, g, ctx);
    if (!ctx.one_plus_t_unit(c))
        throw MathError("tame symbol " + c.str() + " is not in (1+tR)^x");
    SymbolExpr zero = SymbolExpr::zero(ctx.base());

    if (n == 0 && m == 0) {
        // u+v = 1, c = 1: one Steinberg relation
        return {RhoTameCase::NZero,
                Derivation::checked(rho(ctx, c) + steinberg(u, v), zero,
                                    {{Rule::S3, {u}, 1}})};
    }

    RhoTameCase branch;
    std::vector<Step> steps;
    if (m > 0) {
        // u = 1-vt^m, c = u^m: rho(c) = m rho(u) = {v,u} = -{u,v}
        branch = RhoTameCase::MPos;
        Derivation hom = derive_rho_pow(ctx, u, m);               // rho(u^m) == m rho(u)
        Derivation pw = derive_power_identity(ctx, -v, m, pool);  // m rho(u) == {v,u}
        Derivation ac = derive_anticomm(v, u, pool);
        steps = hom.trace().steps;
        for (const Step& s : pw.trace().steps) steps.push_back(s);
        for (const Step& s : ac.trace().steps) steps.push_back(s);
    } else if (n > 0) {
        // v = 1-ut^n, c = v^{-n}: rho(c) = -n rho(v) = -{u,v}
        branch = RhoTameCase::NPos;
        Derivation hom = derive_rho_pow(ctx, v, -n);              // rho(v^{-n}) == -n rho(v)
        Derivation pw = derive_power_identity(ctx, -u, n, pool);  // n rho(v) == {u,v}
        steps = hom.trace().steps;
        for (const Step& s : pw.trace().steps) steps.push_back({s.rule, s.params, -s.coeff});
    } else {
        // n = m < 0: u+v = t^l, c = (1-u^{-1}t^l)^l
        branch = RhoTameCase::Neg;
        long l = -n;
        Element ui = u.inverse();
        Derivation hom = derive_rho_pow(ctx, one - ui * ctx.t_pow(l), l);
        Derivation pw = derive_power_identity(ctx, -ui, l, pool);  // l rho(h) == {u^{-1},h}
        steps = hom.trace().steps;
        for (const Step& s : pw.trace().steps) steps.push_back(s);
        // {u^{-1},h} == {u^{-1},v} + {u^{-1},-u^{-1}}  (h = v * (-u^{-1}))
        steps.push_back({Rule::S1R, {ui, v, -ui}, 1});
        Derivation sk = derive_skew(ui, pool);
        for (const Step& s : sk.trace().steps) steps.push_back(s);
        // {u^{-1},v} == -{u,v}: S1L(u,u^{-1},v) and {1,v} == 0
        steps.push_back({Rule::S1L, {u, ui, v}, -1});
        Derivation lo = derive_left_one(v);
        for (const Step& s : lo.trace().steps) steps.push_back(s);
    }
    // the derivation is phrased with <(c-1)/t, t>; bridge when c == 1
    if (c.is_one()) {
        Derivation bridge = derive_rho_one(ctx);
        for (const Step& s : bridge.trace().steps)
            steps.push_back({s.rule, s.params, -s.coeff});
    }
    return {branch,
            Derivation::checked(rho(ctx, c) + steinberg(u, v), zero, std::move(steps))};
}

}  // namespace mk2
