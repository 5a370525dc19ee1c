#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mk2/symbols.hpp"

namespace mk2 {

/// Primitive relation rules.  Each instance expands to an expression that is
/// zero in the presented group:
///   S1L(a,c,b):  {ac,b} - {a,b} - {c,b}
///   S1R(a,b,c):  {a,bc} - {a,b} - {a,c}
///   S3(a):       {a,1-a}
///   D1(a,b):     <a,b> + <-b,-a>
///   D2(a,b,c):   <a,b> + <a,c> - <a,b+c+abc>
///   D3(a,b,c):   <a,bc> - <ab,c> - <ac,b>
///   CONV(a,b):   {a,b} - <(a-1)b^{-1},b>
enum class Rule { S1L, S1R, S3, D1, D2, D3, CONV };

const char* rule_name(Rule r);

struct Step {
    Rule rule;
    std::vector<Element> params;
    mpz_class coeff = 1;
};

/// Builds the relation instance, enforcing its unit preconditions.
SymbolExpr relation_expr(Rule rule, const std::vector<Element>& params);

struct DerivationTrace {
    std::vector<Step> steps;
    /// sum of coeff * relation_expr over all steps
    SymbolExpr combination(const Ring& r) const;
    std::string json() const;
};

/// A certified identity lhs == rhs modulo the relations: the trace balances,
/// i.e. lhs - rhs equals the trace's relation combination exactly.  Every
/// constructor and combinator re-verifies, so a Derivation cannot exist in an
/// unbalanced state.
class Derivation {
public:
    static Derivation reflexive(SymbolExpr e);
    /// relation == 0
    static Derivation by_relation(Rule rule, std::vector<Element> params);
    /// checked constructor: throws MathError unless the balance holds
    static Derivation checked(SymbolExpr lhs, SymbolExpr rhs, std::vector<Step> steps);

    const SymbolExpr& lhs() const { return lhs_; }
    const SymbolExpr& rhs() const { return rhs_; }
    const DerivationTrace& trace() const { return trace_; }

    Derivation scaled(const mpz_class& c) const;
    Derivation reversed() const;                    // rhs == lhs
    Derivation then(const Derivation& next) const;  // chain via rhs == next.lhs
    Derivation plus(const Derivation& o) const;     // termwise sum

private:
    SymbolExpr lhs_, rhs_;
    DerivationTrace trace_;
};

/// Deterministic unit pool used for stability-style witness searches.
std::vector<Element> default_witness_pool(const Ring& r);

// Derived-lemma builders.  Each returns a verified Derivation; builders that
// need a stability witness scan `pool` in order and throw MathError with an
// explanatory message when the search exhausts it.

Derivation derive_left_one(const Element& b);                    // {1,b} == 0
Derivation derive_right_one(const Element& a);                   // {a,1} == 0
Derivation derive_inv_right(const Element& a, const Element& b); // {a,b^-1}+{a,b} == 0
Derivation derive_ds_zero_right(const Element& a);               // <a,0> == 0
Derivation derive_ds_zero_left(const Element& b);                // <0,b> == 0
/// {a,-a} == 0 following the weak-stability proof (direct identity when 1-a
/// is a unit, otherwise the two-witness argument).
Derivation derive_skew(const Element& a, const std::vector<Element>& pool);
/// {a,b}+{b,a} == 0
Derivation derive_anticomm(const Element& a, const Element& b,
                           const std::vector<Element>& pool);
/// {x^n,y} == n*{x,y} (n may be negative)
Derivation derive_pow_left(const Element& x, long n, const Element& y);
/// {y,x^n} == n*{y,x}
Derivation derive_pow_right(const Element& y, const Element& x, long n);

/// <s,t> == 0 bridging rho-of-1: s must be 0.
Derivation derive_rho_one(const LocalisationContext& ctx);
/// rho(fg) == rho(f) + rho(g) as <.,t> terms (f, g, fg in (1+tR)^x).
Derivation derive_rho_hom(const LocalisationContext& ctx, const Element& f,
                          const Element& g);
/// rho(x^k) == k * rho(x), k any integer.
Derivation derive_rho_pow(const LocalisationContext& ctx, const Element& x, long k);
/// <a,st> == <as,t> + <at,s> for f = 1+sta.
Derivation derive_rho_factor(const LocalisationContext& ctx, const Element& s,
                             const Element& t, const Element& f);
/// l * rho_t(1+t^l u) == {-u, 1+t^l u}
Derivation derive_power_identity(const LocalisationContext& ctx, const Element& u,
                                 long l, const std::vector<Element>& pool);
/// <a,b> == its Steinberg form (a or b a unit).
Derivation derive_ds_conversion(const SymbolTerm& d, const std::vector<Element>& pool);

}  // namespace mk2
