#pragma once

#include "mk2/ring.hpp"

namespace mk2 {

/// f = u * t^n with u a unit of the base ring.
struct UnitDecomposition {
    Element u;
    long n = 0;
};

/*
 * A ring R, a designated prime element t, and the associated valuation and
 * decomposition data: R_t, R/tR, nu_t, f = u*t^n.
 *
 * Supported bases: RatFuncLocal (t a degree-1 local parameter), Rationals
 * (t an integer prime; R is then Z localised at t, carved out of Q by the
 * membership predicates), TruncLaurent (t the series variable; R is the
 * non-negative-exponent part).
 */
class LocalisationContext {
public:
    static LocalisationContext make(Ring base, Element t);

    const Ring& base() const { return base_; }
    const Ring& localised() const { return localised_; }
    const Ring& quotient() const { return quotient_; }
    const Element& t() const { return t_; }
    /// t re-tagged as an element of R_t.
    Element t_loc() const { return to_localised(t_); }

    /// Exact t-adic valuation of a nonzero f in Frac(R).
    long t_valuation(const Element& f) const;

    /// Unique decomposition f = u * t^n for f a unit of R_t.
    UnitDecomposition unit_decompose(const Element& f) const;

    /// Reduction R -> R/tR.
    Element residue(const Element& x) const;

    bool in_base(const Element& x) const;
    bool base_unit(const Element& x) const;
    bool localised_unit(const Element& x) const;
    /// f in (1+tR)^x: a unit of R congruent to 1 mod t.
    bool one_plus_t_unit(const Element& f) const;

    /// (A4) lift: a unit of R/tR to a unit of R reducing to it.
    Element lift_unit(const Element& ubar) const;

    /// Retag a value (payload unchanged) under the localised / base descriptor.
    Element to_localised(const Element& x) const;
    Element to_base(const Element& x) const;
    Element t_pow(long n) const;  // t^n in the base-tagged fraction field

private:
    Ring base_, localised_, quotient_;
    Element t_;
    Poly t_monic_;      // RatFuncLocal: monic divisor form of t
    int elim_var_ = -1; // RatFuncLocal: variable eliminated by the residue map
    Poly elim_sub_;     // ... and its substitute in the remaining variables
    std::vector<int> var_map_;  // old var index -> quotient var index (-1 = eliminated)
};

/// Free-function forms matching the operation names used elsewhere.
long t_valuation(const Element& f, const LocalisationContext& ctx);
UnitDecomposition unit_decompose(const Element& f, const LocalisationContext& ctx);
Element residue_map(const Element& x, const LocalisationContext& ctx);

}  // namespace mk2
