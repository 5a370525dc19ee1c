#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mk2/errors.hpp"
#include "mk2/poly.hpp"

namespace mk2 {

enum class RingKind { ZMod, PrimeField, Rationals, RatFuncLocal, TruncLaurent };

struct RingData;
using Ring = std::shared_ptr<const RingData>;

/*
 * The supported ring family:
 *
 *   zmod:m                      Z/m
 *   fp:p                        F_p
 *   q                           Q  (with Z_(p) carved out by a context)
 *   ratfunc:p:x,y@invert(x,..)  F_p[x,y] localised at the origin, with the
 *                               listed degree-1 parameters inverted
 *   laurent(base,prec=k)        truncated Laurent series over a
 *                               one-variable DVR model, exact mod t^k windows
 */
struct RingData {
    RingKind kind;

    // ZMod / PrimeField
    std::uint64_t modulus = 0;
    std::uint64_t residue_char = 0;  // p when modulus == p^e, else 0
    bool finite_local = false;

    // RatFuncLocal
    std::uint32_t p = 0;
    std::vector<std::string> vars;
    std::vector<Poly> inverted;  // monic degree-1 forms vanishing at the origin

    // TruncLaurent
    Ring base;
    int precision = 0;

    std::string spec_string() const;
    bool is_finite() const { return kind == RingKind::ZMod || kind == RingKind::PrimeField; }
};

Ring make_zmod(std::uint64_t m);
Ring make_prime_field(std::uint64_t p);
Ring make_rationals();
Ring make_ratfunc(std::uint32_t p, std::vector<std::string> vars, std::vector<Poly> inverted);
Ring make_trunc_laurent(Ring base, int precision);

bool same_ring(const Ring& a, const Ring& b);

class Element;

/// Truncated Laurent payload.  Coefficients are elements of the base ring,
/// starting at exponent `offset`, first and last stored coefficients nonzero.
/// `known_end` is the first exponent the value is *not* known at
/// (INT_MAX when the value is an exact finite sum).
struct LaurentValue {
    int offset = 0;
    std::vector<Element> coeffs;
    int known_end = std::numeric_limits<int>::max();
    bool exact() const { return known_end == std::numeric_limits<int>::max(); }
};

struct FracValue {
    Poly num, den;  // coprime, den monic, zero = 0/1
};

/// Exactly represented ring element in canonical form.  Values of fraction
/// kinds range over the fraction field; membership in the descriptor's ring
/// (and unit groups) is decided by predicates, not by representation.
class Element {
public:
    Element() = default;

    static Element from_int(const Ring& r, std::int64_t v);
    static Element from_rational(const Ring& r, const mpq_class& q);
    static Element from_fraction(const Ring& r, Poly num, Poly den);
    static Element from_laurent(const Ring& r, int offset, std::vector<Element> coeffs,
                                int known_end = std::numeric_limits<int>::max());

    const Ring& ring() const { return ring_; }

    bool is_zero() const;
    bool is_one() const;
    /// Multiplicative invertibility in the descriptor's ring.
    bool is_unit() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator-() const;
    bool operator==(const Element& o) const { return compare(o) == 0; }
    bool operator!=(const Element& o) const { return compare(o) != 0; }

    /// Inverse in the fraction field (Q, RatFuncLocal) or of a unit
    /// (ZMod, TruncLaurent).  Throws NotAUnit / MathError otherwise.
    Element inverse() const;
    Element div(const Element& o) const { return *this * o.inverse(); }
    Element pow(long e) const;

    /// Total order on canonical forms (ring-compatible values only).
    int compare(const Element& o) const;

    std::string str() const;

    // payload accessors (checked by kind)
    std::uint64_t residue() const;
    const mpq_class& rational() const;
    const FracValue& fraction() const;
    const LaurentValue& laurent() const;

private:
    Ring ring_;
    std::variant<std::monostate, std::uint64_t, mpq_class, FracValue, LaurentValue> v_;
    static Element make(const Ring& r);
};

struct ElementLess {
    bool operator()(const Element& a, const Element& b) const { return a.compare(b) < 0; }
};

/// Units of a finite ring (ZMod / PrimeField), ascending residue order.
std::vector<Element> finite_ring_units(const Ring& r);
/// All elements of a finite ring, ascending residue order.
std::vector<Element> finite_ring_elements(const Ring& r);

}  // namespace mk2
