#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "mk2/localisation.hpp"
#include "mk2/ring.hpp"

namespace mk2 {

enum class SymKind { Steinberg, DennisStein };

/// A single symbol generator: Steinberg {a,b} (a, b units) or Dennis-Stein
/// <a,b> (1+ab a unit).  Validity is enforced at construction.
struct SymbolTerm {
    SymKind kind;
    Element a, b;
    std::string label() const;
};

SymbolTerm steinberg_term(const Element& a, const Element& b);
SymbolTerm dennis_stein_term(const Element& a, const Element& b);

struct TermLess {
    bool operator()(const SymbolTerm& s, const SymbolTerm& t) const {
        if (s.kind != t.kind) return s.kind < t.kind;
        int c = s.a.compare(t.a);
        if (c) return c < 0;
        return s.b.compare(t.b) < 0;
    }
};

/// Formal integer combination of symbol terms over one ring.
class SymbolExpr {
public:
    SymbolExpr() = default;
    explicit SymbolExpr(Ring r) : ring_(std::move(r)) {}

    static SymbolExpr zero(Ring r) { return SymbolExpr(std::move(r)); }
    static SymbolExpr single(const SymbolTerm& t, const mpz_class& c = 1);

    const Ring& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<SymbolTerm, mpz_class, TermLess>& terms() const { return terms_; }

    void add_term(const SymbolTerm& t, const mpz_class& c);
    SymbolExpr operator+(const SymbolExpr& o) const;
    SymbolExpr operator-(const SymbolExpr& o) const;
    SymbolExpr operator-() const;
    SymbolExpr scaled(const mpz_class& c) const;
    bool operator==(const SymbolExpr& o) const;

    std::string str() const;

private:
    Ring ring_;
    std::map<SymbolTerm, mpz_class, TermLess> terms_;
};

/// {a,b} for units a, b.
SymbolExpr steinberg(const Element& a, const Element& b);
/// <a,b> for 1+ab a unit.
SymbolExpr dennis_stein(const Element& a, const Element& b);

/// {a,b} = <(a-1)b^{-1}, b>.
SymbolTerm steinberg_to_ds(const SymbolTerm& s);
/// <a,b> = {-a, 1+ab} when a is a unit, {1+ab, b} when b is a unit.
SymbolExpr ds_to_steinberg(const SymbolTerm& d);

/// rho_t: (1+tR)^x -> K_2, 1+ta |-> <a,t>; the identity maps to 0.
SymbolExpr rho(const LocalisationContext& ctx, const Element& f);
/// <a,t> whether or not f = 1 (used inside derivations).
SymbolTerm rho_term(const LocalisationContext& ctx, const Element& f);
/// The Steinberg form {-w, 1+tw} of rho_t(1+tw), for w a unit of R.
SymbolExpr rho_as_steinberg(const LocalisationContext& ctx, const Element& f);

}  // namespace mk2
