#pragma once

#include "mk2/symbols.hpp"
#include "mk2/trace.hpp"

namespace mk2 {

/// Tame symbol c(f,g) = (-1)^{nu(f)nu(g)} f^{nu(g)} g^{-nu(f)} for units f, g
/// of R_t.  Computed from the unit decompositions and cross-checked against
/// direct evaluation of the formula; returns a unit of R (base-tagged).
Element tame_symbol(const Element& f, const Element& g, const LocalisationContext& ctx);

/// c-bar: product of tame symbols of the Steinberg terms of e (with
/// multiplicity), reduced mod t.  A unit of R/tR.
Element cbar(const SymbolExpr& e, const LocalisationContext& ctx);

/// {f,g} = {u,v} + {c(f,g),t} in K_2^M(R_t): returns the two-term right side.
SymbolExpr split_symbol(const Element& f, const Element& g,
                        const LocalisationContext& ctx);

/// Verified derivation of the splitting identity over R_t.
Derivation derive_split(const LocalisationContext& ctx, const Element& f,
                        const Element& g, const std::vector<Element>& pool);

/// Verified derivation of {1+tw, t} == {-w, 1+tw} over R_t (the commuting
/// square on generators of the form 1+wt).
Derivation derive_rho_commutes(const LocalisationContext& ctx, const Element& w,
                               const std::vector<Element>& pool);

/// Proof cases of the rho/tame compatibility lemma.
enum class RhoTameCase { NZero, NPos, MPos, Neg };
const char* rho_tame_case_name(RhoTameCase c);

/// Verified derivation of rho_t(c(f,g)) + {u,v} == 0 for f+g = 1, following
/// the lemma's case split; also checks c(f,g) in (1+tR)^x.
struct RhoTameResult {
    RhoTameCase branch;
    Derivation derivation;
};
RhoTameResult derive_rho_tame(const LocalisationContext& ctx, const Element& f,
                              const Element& g, const std::vector<Element>& pool);

}  // namespace mk2
