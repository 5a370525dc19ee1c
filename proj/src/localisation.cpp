#include "mk2/localisation.hpp"

#include <algorithm>
#include <cassert>

namespace mk2 {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw MathError(what);
}

// number of times d divides f exactly (f nonzero)
long divisibility_count(Poly f, const Poly& d) {
    long n = 0;
    for (;;) {
        auto q = f.divided_by(d);
        if (!q) return n;
        f = std::move(*q);
        ++n;
    }
}

Poly strip_all(Poly f, const Poly& d) {
    for (;;) {
        auto q = f.divided_by(d);
        if (!q) return f;
        f = std::move(*q);
    }
}

// remove variable `var` (which must not occur) and compact the index space
Poly drop_var(const Poly& f, int var) {
    std::vector<Poly::Term> ts;
    for (const auto& t : f.terms()) {
        assert(mono_exp(t.first, var) == 0);
        Monomial m = 0;
        int out = 0;
        for (int v = 0; v < f.nvars(); ++v) {
            if (v == var) continue;
            m = mono_set_exp(m, out, mono_exp(t.first, v));
            ++out;
        }
        ts.push_back({m, t.second});
    }
    return Poly::from_terms(f.char_p(), f.nvars() - 1, std::move(ts));
}

// inverse of drop_var: reinterpret over the larger variable set
Poly insert_var(const Poly& f, int var, int new_nvars) {
    std::vector<Poly::Term> ts;
    for (const auto& t : f.terms()) {
        Monomial m = 0;
        int in = 0;
        for (int v = 0; v < new_nvars; ++v) {
            if (v == var) continue;
            m = mono_set_exp(m, v, mono_exp(t.first, in));
            ++in;
        }
        ts.push_back({m, t.second});
    }
    return Poly::from_terms(f.char_p(), new_nvars, std::move(ts));
}

mpz_class rat_num(const mpq_class& q) { return q.get_num(); }
mpz_class rat_den(const mpq_class& q) { return q.get_den(); }

long mpz_val(const mpz_class& a, const mpz_class& p) {
    assert(a != 0);
    mpz_class r = a, q;
    long n = 0;
    for (;;) {
        mpz_class rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        if (rem != 0) return n;
        r = q;
        ++n;
    }
}

}  // namespace

LocalisationContext LocalisationContext::make(Ring base, Element t) {
    LocalisationContext ctx;
    ctx.base_ = base;
    ctx.t_ = t;
    require(same_ring(base, t.ring()), "t must be an element of the base ring");
    switch (base->kind) {
        case RingKind::RatFuncLocal: {
            const FracValue& tf = t.fraction();
            require(tf.den.is_constant() && tf.den.constant_term() == 1 &&
                        tf.num.degree() == 1 && tf.num.constant_term() == 0,
                    "t must be a degree-1 local parameter");
            ctx.t_monic_ = tf.num.monic();
            for (const Poly& e : base->inverted)
                require(!(e == ctx.t_monic_), "t is already inverted (a unit of R)");
            std::vector<Poly> inv = base->inverted;
            inv.push_back(ctx.t_monic_);
            ctx.localised_ = make_ratfunc(base->p, base->vars, std::move(inv));

            // residue map: eliminate the first variable occurring in t
            int nv = static_cast<int>(base->vars.size());
            int ev = -1;
            for (int v = 0; v < nv && ev < 0; ++v)
                if (ctx.t_monic_.degree_in(v) > 0) ev = v;
            ctx.elim_var_ = ev;
            // t_monic = x_ev + rest  =>  x_ev := -rest
            Poly rest = ctx.t_monic_ - Poly::variable(base->p, nv, ev);
            ctx.elim_sub_ = -rest;
            ctx.var_map_.assign(static_cast<std::size_t>(nv), -1);
            std::vector<std::string> qvars;
            for (int v = 0; v < nv; ++v) {
                if (v == ev) continue;
                ctx.var_map_[static_cast<std::size_t>(v)] = static_cast<int>(qvars.size());
                qvars.push_back(base->vars[static_cast<std::size_t>(v)]);
            }
            if (qvars.empty()) {
                ctx.quotient_ = make_prime_field(base->p);
            } else {
                std::vector<Poly> qinv;
                for (const Poly& e : base->inverted) {
                    Poly img = drop_var(e.substitute(ev, ctx.elim_sub_), ev);
                    require(!img.is_zero(), "inverted parameter vanishes mod t");
                    qinv.push_back(img);
                }
                ctx.quotient_ = make_ratfunc(base->p, std::move(qvars), std::move(qinv));
            }
            break;
        }
        case RingKind::Rationals: {
            const mpq_class& q = t.rational();
            require(q.get_den() == 1 && q.get_num() > 1 &&
                        mpz_probab_prime_p(q.get_num().get_mpz_t(), 30) != 0,
                    "t must be a prime integer");
            ctx.localised_ = base;
            ctx.quotient_ = make_prime_field(q.get_num().get_ui());
            break;
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = t.laurent();
            require(lv.offset == 1 && lv.coeffs.size() == 1 && lv.coeffs[0].is_one() &&
                        lv.exact(),
                    "t must be the series variable");
            ctx.localised_ = base;
            ctx.quotient_ = base->base;
            break;
        }
        default:
            throw MathError("localisation context unsupported for " + base->spec_string());
    }
    return ctx;
}

Element LocalisationContext::to_localised(const Element& x) const {
    if (base_->kind != RingKind::RatFuncLocal) return x;
    const FracValue& f = x.fraction();
    return Element::from_fraction(localised_, f.num, f.den);
}

Element LocalisationContext::to_base(const Element& x) const {
    if (base_->kind != RingKind::RatFuncLocal) return x;
    const FracValue& f = x.fraction();
    return Element::from_fraction(base_, f.num, f.den);
}

Element LocalisationContext::t_pow(long n) const { return t_.pow(n); }

long LocalisationContext::t_valuation(const Element& f) const {
    if (f.ring()->kind == RingKind::TruncLaurent) {
        const LaurentValue& lv = f.laurent();
        if (lv.coeffs.empty()) {
            if (lv.exact()) throw MathError("t_valuation of zero");
            throw PrecisionExhausted("t_valuation undecidable at this precision");
        }
        return lv.offset;
    }
    require(!f.is_zero(), "t_valuation of zero");
    switch (base_->kind) {
        case RingKind::RatFuncLocal: {
            const FracValue& fr = f.fraction();
            return divisibility_count(fr.num, t_monic_) - divisibility_count(fr.den, t_monic_);
        }
        case RingKind::Rationals: {
            const mpq_class& q = f.rational();
            const mpz_class p = rat_num(t_.rational());
            return mpz_val(rat_num(q), p) - mpz_val(rat_den(q), p);
        }
        default: break;
    }
    throw MathError("unreachable");
}

bool LocalisationContext::in_base(const Element& x) const {
    switch (base_->kind) {
        case RingKind::RatFuncLocal: {
            const FracValue& fr = x.fraction();
            Poly d = fr.den;
            for (const Poly& e : base_->inverted) d = strip_all(d, e);
            return d.constant_term() != 0;
        }
        case RingKind::Rationals:
            return x.rational() == 0 ||
                   mpz_val(rat_den(x.rational()), rat_num(t_.rational())) == 0;
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = x.laurent();
            return lv.coeffs.empty() ? true : lv.offset >= 0;
        }
        default: return false;
    }
}

bool LocalisationContext::base_unit(const Element& x) const {
    switch (base_->kind) {
        case RingKind::RatFuncLocal: return !x.is_zero() && to_base(x).is_unit();
        case RingKind::Rationals: {
            if (x.rational() == 0) return false;
            const mpz_class p = rat_num(t_.rational());
            return mpz_val(rat_num(x.rational()), p) == 0 &&
                   mpz_val(rat_den(x.rational()), p) == 0;
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = x.laurent();
            if (lv.coeffs.empty()) {
                if (lv.exact()) return false;
                throw PrecisionExhausted("unit test on O(t^k) value");
            }
            return lv.offset == 0 && lv.coeffs.front().is_unit();
        }
        default: return false;
    }
}

bool LocalisationContext::localised_unit(const Element& x) const {
    switch (base_->kind) {
        case RingKind::RatFuncLocal: return !x.is_zero() && to_localised(x).is_unit();
        case RingKind::Rationals: return x.rational() != 0;
        case RingKind::TruncLaurent: return x.is_unit();
        default: return false;
    }
}

bool LocalisationContext::one_plus_t_unit(const Element& f) const {
    if (!base_unit(f)) return false;
    Element d = f - Element::from_int(f.ring(), 1);
    if (d.is_zero()) return true;
    return in_base(d) && t_valuation(d) >= 1;
}

UnitDecomposition LocalisationContext::unit_decompose(const Element& f) const {
    if (!localised_unit(f))
        throw NotAUnit("unit_decompose: " + f.str() + " is not a unit of " +
                       localised_->spec_string());
    long n = t_valuation(f);
    Element u = to_base(f) * t_pow(-n);
    if (!base_unit(u))
        throw NotAUnit("unit_decompose: residual factor " + u.str() +
                       " is not a unit of R ((A1)-style decomposition failure)");
    return {to_base(u), n};
}

Element LocalisationContext::residue(const Element& x) const {
    if (!in_base(x)) throw NotInRing("residue_map: " + x.str() + " is not in R");
    switch (base_->kind) {
        case RingKind::RatFuncLocal: {
            const FracValue& fr = x.fraction();
            Poly n = fr.num.substitute(elim_var_, elim_sub_);
            Poly d = fr.den.substitute(elim_var_, elim_sub_);
            require(!d.is_zero(), "residue_map: denominator vanishes mod t");
            if (quotient_->kind == RingKind::PrimeField) {
                std::uint32_t nv = n.constant_term(), dv = d.constant_term();
                require(dv != 0, "residue_map: denominator vanishes mod t");
                return Element::from_int(quotient_,
                                         static_cast<std::int64_t>(
                                             mod_mul(nv, mod_inv(dv, base_->p), base_->p)));
            }
            return Element::from_fraction(quotient_, drop_var(n, elim_var_),
                                          drop_var(d, elim_var_));
        }
        case RingKind::Rationals: {
            const mpz_class p = rat_num(t_.rational());
            mpz_class n = rat_num(x.rational()) % p, d = rat_den(x.rational()) % p;
            if (n < 0) n += p;
            if (d < 0) d += p;
            std::uint64_t du = d.get_ui();
            return Element::from_int(quotient_,
                                     static_cast<std::int64_t>(mod_mul(
                                         n.get_ui(), mod_inv(du, p.get_ui()), p.get_ui())));
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = x.laurent();
            if (lv.coeffs.empty() || lv.offset > 0) return Element::from_int(quotient_, 0);
            return lv.coeffs.front();
        }
        default: break;
    }
    throw MathError("unreachable");
}

Element LocalisationContext::lift_unit(const Element& ubar) const {
    require(same_ring(ubar.ring(), quotient_), "lift_unit: value not in R/tR");
    require(ubar.is_unit(), "lift_unit: not a unit of R/tR");
    Element lifted = Element::from_int(base_, 0);
    switch (base_->kind) {
        case RingKind::Rationals:
        case RingKind::TruncLaurent: {
            if (base_->kind == RingKind::Rationals) {
                lifted = Element::from_int(base_, static_cast<std::int64_t>(ubar.residue()));
            } else {
                lifted = Element::from_laurent(base_, 0, {ubar});
            }
            break;
        }
        case RingKind::RatFuncLocal: {
            if (quotient_->kind == RingKind::PrimeField) {
                lifted = Element::from_int(base_, static_cast<std::int64_t>(ubar.residue()));
                break;
            }
            // peel image factors of the inverted parameters, lift the origin-unit
            // core verbatim, then restore the honest parameters
            Poly num = ubar.fraction().num, den = ubar.fraction().den;
            int nv = static_cast<int>(base_->vars.size());
            Element extra = Element::from_int(base_, 1);
            for (const Poly& e : base_->inverted) {
                Poly img = drop_var(e.substitute(elim_var_, elim_sub_), elim_var_).monic();
                long a = divisibility_count(num, img) - divisibility_count(den, img);
                num = strip_all(num, img);
                den = strip_all(den, img);
                Element ee = Element::from_fraction(
                    base_, e, Poly::constant(base_->p, nv, 1));
                extra = extra * ee.pow(a);
            }
            Element core = Element::from_fraction(base_, insert_var(num, elim_var_, nv),
                                                  insert_var(den, elim_var_, nv));
            lifted = core * extra;
            break;
        }
        default: throw MathError("unreachable");
    }
    require(base_unit(lifted), "lift_unit produced a non-unit");
    require(residue(lifted) == ubar, "lift_unit does not reduce to its input");
    return lifted;
}

long t_valuation(const Element& f, const LocalisationContext& ctx) {
    return ctx.t_valuation(f);
}
UnitDecomposition unit_decompose(const Element& f, const LocalisationContext& ctx) {
    return ctx.unit_decompose(f);
}
Element residue_map(const Element& x, const LocalisationContext& ctx) {
    return ctx.residue(x);
}

}  // namespace mk2
