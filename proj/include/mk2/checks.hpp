#pragma once

#include "mk2/report.hpp"
#include "mk2/tame.hpp"
#include "mk2/window.hpp"

namespace mk2 {

struct CheckParams {
    std::uint64_t seed = 1;
    long budget = 200;
    long max_degree = 1;  // window height bound
    long coeff_height = 2;
    int precision = 12;
    int jobs = 1;
};

/// rho_{st}(f) == rho_s(f) + rho_t(f) for one instance, certified by
/// replaying the single (D3) derivation.
VerificationReport rho_factor_identity_check(const LocalisationContext& ctx,
                                             const Element& s, const Element& t,
                                             const Element& f);

/// l * rho_t(1+t^l u) == {-u, 1+t^l u}, certified by derivation.
VerificationReport power_identity_check(const LocalisationContext& ctx,
                                        const Element& u, long l);

/// Exhaustive rho-map identity sweep: additivity of rho over all
/// f, g in (1+tR)^x with numerator/denominator degree <= max_degree, plus
/// the factorisation lemma and the power corollary on small instances.
VerificationReport rho_identities_check(const LocalisationContext& ctx,
                                        const CheckParams& p);

/// Single rho/tame lemma instance (f+g = 1).
VerificationReport rho_tame_lemma_check(const Element& f, const Element& g,
                                        const LocalisationContext& ctx);

/// Exhaustive rho/tame lemma over all f+g = 1 unit pairs of bounded degree,
/// with per-branch case counts.
VerificationReport rho_tame_sweep(const LocalisationContext& ctx, const CheckParams& p);

/// Tame-symbol laws: bimultiplicativity, reciprocity, c(f,-f)=1, two-route
/// agreement, over sampled window pairs.
VerificationReport tame_laws_check(const LocalisationContext& ctx, const CheckParams& p);

/// Co-Cartesian square checks: (i) commutativity on 1+tw generators,
/// (ii) window surjectivity via the splitting identity, (iii) the composite
/// X -> K2M(R_t) -> X is the identity on sampled pushout elements.
VerificationReport cocartesian_check(const LocalisationContext& ctx, const CheckParams& p);

/// Localisation short-exact-sequence checks: composite triviality, cbar
/// surjectivity onto quotient window generators, sampled kernel exactness.
VerificationReport ses_check(const LocalisationContext& ctx, const CheckParams& p);

/// Exhaustive k-fold stability of a finite ring (with witnesses on failure).
VerificationReport check_k_fold_stable(const Ring& r, long k);

/// Weak k-fold stability: exhaustive for finite rings, sampled with the
/// denominator-clearing witness strategy for localised function rings.
VerificationReport check_weak_k_fold_stable(const Ring& r, long k, const CheckParams& p);

VerificationReport check_A1(const LocalisationContext& ctx, const CheckParams& p);
VerificationReport check_A2(const Ring& r, const CheckParams& p);
VerificationReport check_A3(const LocalisationContext& ctx, const CheckParams& p);
VerificationReport check_A4(const LocalisationContext& ctx, const CheckParams& p);

/// Factors f in (1+tR)^x into elements 1+t*w_i with every w_i a unit of R,
/// via the 3-fold-stability search and, for localised rings, the
/// denominator-reduction step.  Throws MathError when the budget exhausts.
std::vector<Element> factor_one_plus_t(const LocalisationContext& ctx, const Element& f,
                                       long budget);

/// The Laurent-series instability example: O((t)) over the DVR model
/// F_p[s]_(s) is not 1-fold stable.  Decides "not a unit" for every
/// candidate with t-support in [-support,support] and coefficients of
/// height <= coeff_height, by the two-case valuation argument.
VerificationReport remark_3_5_check(int precision, int support, int coeff_height,
                                    std::uint64_t p = 7);

/// derive_skew_symmetry wrapper with report + serialised trace.
VerificationReport skew_check(const Ring& r, const Element& a, const CheckParams& p);

/// Deterministic sampling helpers shared by checks and the acceptance suite.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next();
    long below(long n);  // uniform in [0, n)
    Element poly_element(const Ring& r, long deg);          // random polynomial
    Element ring_element(const Ring& r, long deg);          // random fraction in R
    Element one_plus_t_unit(const LocalisationContext& ctx, long deg);
private:
    std::uint64_t state_;
};

}  // namespace mk2
