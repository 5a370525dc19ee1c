#include "mk2/symbols.hpp"

namespace mk2 {

std::string SymbolTerm::label() const {
    if (kind == SymKind::Steinberg) return "{" + a.str() + "," + b.str() + "}";
    return "<" + a.str() + "," + b.str() + ">";
}

SymbolTerm steinberg_term(const Element& a, const Element& b) {
    if (!same_ring(a.ring(), b.ring())) throw MathError("symbol arguments over different rings");
    if (!a.is_unit()) throw NotAUnit("steinberg: " + a.str() + " is not a unit");
    if (!b.is_unit()) throw NotAUnit("steinberg: " + b.str() + " is not a unit");
    return {SymKind::Steinberg, a, b};
}

SymbolTerm dennis_stein_term(const Element& a, const Element& b) {
    if (!same_ring(a.ring(), b.ring())) throw MathError("symbol arguments over different rings");
    Element w = Element::from_int(a.ring(), 1) + a * b;
    if (!w.is_unit())
        throw NotAUnit("dennis_stein: 1+ab = " + w.str() + " is not a unit");
    return {SymKind::DennisStein, a, b};
}

SymbolExpr SymbolExpr::single(const SymbolTerm& t, const mpz_class& c) {
    SymbolExpr e(t.a.ring());
    e.add_term(t, c);
    return e;
}

void SymbolExpr::add_term(const SymbolTerm& t, const mpz_class& c) {
    if (c == 0) return;
    if (!ring_) ring_ = t.a.ring();
    auto [it, fresh] = terms_.emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymbolExpr SymbolExpr::operator+(const SymbolExpr& o) const {
    SymbolExpr r = *this;
    if (!r.ring_) r.ring_ = o.ring_;
    for (const auto& [t, c] : o.terms_) r.add_term(t, c);
    return r;
}

SymbolExpr SymbolExpr::operator-() const { return scaled(-1); }

SymbolExpr SymbolExpr::operator-(const SymbolExpr& o) const { return *this + (-o); }

SymbolExpr SymbolExpr::scaled(const mpz_class& c) const {
    SymbolExpr r(ring_);
    if (c == 0) return r;
    for (const auto& [t, k] : terms_) r.terms_.emplace(t, k * c);
    return r;
}

bool SymbolExpr::operator==(const SymbolExpr& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    TermLess less;
    for (; it != terms_.end(); ++it, ++jt) {
        if (less(it->first, jt->first) || less(jt->first, it->first)) return false;
        if (it->second != jt->second) return false;
    }
    return true;
}

std::string SymbolExpr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : terms_) {
        if (c >= 0 && !out.empty()) out += " + ";
        else if (c < 0) out += out.empty() ? "-" : " - ";
        mpz_class a = abs(c);
        if (a != 1) out += a.get_str() + "*";
        out += t.label();
    }
    return out;
}

SymbolExpr steinberg(const Element& a, const Element& b) {
    return SymbolExpr::single(steinberg_term(a, b));
}

SymbolExpr dennis_stein(const Element& a, const Element& b) {
    return SymbolExpr::single(dennis_stein_term(a, b));
}

SymbolTerm steinberg_to_ds(const SymbolTerm& s) {
    if (s.kind != SymKind::Steinberg) throw MathError("steinberg_to_ds: not a Steinberg term");
    Element one = Element::from_int(s.a.ring(), 1);
    return dennis_stein_term((s.a - one).div(s.b), s.b);
}

SymbolExpr ds_to_steinberg(const SymbolTerm& d) {
    if (d.kind != SymKind::DennisStein) throw MathError("ds_to_steinberg: not a Dennis-Stein term");
    Element one = Element::from_int(d.a.ring(), 1);
    Element w = one + d.a * d.b;
    if (d.a.is_unit()) return steinberg(-d.a, w);
    if (d.b.is_unit()) return steinberg(w, d.b);
    throw NotAUnit("ds_to_steinberg: neither argument is a unit");
}

SymbolTerm rho_term(const LocalisationContext& ctx, const Element& f) {
    if (!ctx.one_plus_t_unit(f))
        throw NotInRing("rho: " + f.str() + " is not in (1+tR)^x");
    Element fb = ctx.to_base(f);
    Element a = (fb - Element::from_int(fb.ring(), 1)).div(ctx.t());
    if (!ctx.in_base(a)) throw NotInRing("rho: (f-1)/t is not in R");
    return dennis_stein_term(ctx.to_base(a), ctx.t());
}

SymbolExpr rho(const LocalisationContext& ctx, const Element& f) {
    if (f.is_one()) {
        if (!ctx.one_plus_t_unit(f)) throw NotInRing("rho: 1 is not a unit here");
        return SymbolExpr::zero(ctx.base());
    }
    return SymbolExpr::single(rho_term(ctx, f));
}

SymbolExpr rho_as_steinberg(const LocalisationContext& ctx, const Element& f) {
    SymbolTerm d = rho_term(ctx, f);
    if (!d.a.is_unit())
        throw NotAUnit("rho_as_steinberg: coefficient " + d.a.str() + " is not a unit of R");
    Element one = Element::from_int(f.ring(), 1);
    return steinberg(-d.a, ctx.to_base(f));
}

}  // namespace mk2
