#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mk2 {

/// Arithmetic in Z/m for machine-word moduli (m >= 2).
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a mod m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
bool is_prime_u64(std::uint64_t n);
/// If n == p^k for a prime p, returns p; otherwise 0.
std::uint64_t prime_power_base(std::uint64_t n);

/*
 * Monomials are packed into one 64-bit word, 16 bits per exponent, with the
 * first declared variable in the most significant field.  Plain integer
 * comparison of packed words is then exactly lexicographic comparison in the
 * declared variable order, which is the monomial order used throughout.
 */
using Monomial = std::uint64_t;
inline constexpr int kMaxVars = 4;
inline constexpr int kMaxExp = 0xffff;

Monomial mono_var(int var);
int mono_exp(Monomial m, int var);
Monomial mono_set_exp(Monomial m, int var, int e);
int mono_total_degree(Monomial m);
Monomial mono_mul(Monomial a, Monomial b);
bool mono_divides(Monomial a, Monomial b);  // a | b
Monomial mono_div(Monomial b, Monomial a);  // b / a, requires a | b

/// Sparse multivariate polynomial over F_p.  Terms are kept sorted by
/// descending monomial (lex), coefficients reduced to [1, p).  The zero
/// polynomial has no terms.
class Poly {
public:
    using Term = std::pair<Monomial, std::uint32_t>;

    Poly() : p_(0), nvars_(0) {}
    Poly(std::uint32_t p, int nvars) : p_(p), nvars_(nvars) {}

    static Poly constant(std::uint32_t p, int nvars, std::int64_t c);
    static Poly variable(std::uint32_t p, int nvars, int var);
    static Poly from_terms(std::uint32_t p, int nvars, std::vector<Term> terms);

    std::uint32_t char_p() const { return p_; }
    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    std::uint32_t constant_term() const;  // coefficient of the 1 monomial
    std::uint32_t leading_coeff() const;  // coefficient of lex-largest monomial
    Monomial leading_mono() const;
    int degree() const;                   // total degree, -1 for zero
    int degree_in(int var) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(std::uint32_t c) const;
    Poly monic() const;  // divide by leading coefficient
    bool operator==(const Poly& o) const { return p_ == o.p_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Three-way compare on (term list) for canonical ordering of elements.
    int compare(const Poly& o) const;

    /// Exact division: returns b with (*this) == d * b, or nullopt.
    std::optional<Poly> divided_by(const Poly& d) const;

    /// Substitute variable `var` by `value` (a polynomial in the same ring).
    Poly substitute(int var, const Poly& value) const;

    /// Evaluate all variables at 0.
    std::uint32_t eval_origin() const { return constant_term(); }

    std::string str(const std::vector<std::string>& vars) const;

private:
    std::uint32_t p_;
    int nvars_;
    std::vector<Term> terms_;
    void normalize_sorted();
    friend Poly poly_gcd(const Poly&, const Poly&);
};

/// GCD over F_p[x1..xn], content-normalised: the result is monic.
Poly poly_gcd(const Poly& a, const Poly& b);

}  // namespace mk2
