#include "mk2/ring.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace mk2 {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw MathError(what);
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

}  // namespace

std::string RingData::spec_string() const {
    switch (kind) {
        case RingKind::ZMod: return "zmod:" + std::to_string(modulus);
        case RingKind::PrimeField: return "fp:" + std::to_string(modulus);
        case RingKind::Rationals: return "q";
        case RingKind::RatFuncLocal: {
            std::string s = "ratfunc:" + std::to_string(p) + ":" + join(vars, ",");
            if (!inverted.empty()) {
                std::vector<std::string> es;
                for (const Poly& e : inverted) es.push_back(e.str(vars));
                s += "@invert(" + join(es, ",") + ")";
            }
            return s;
        }
        case RingKind::TruncLaurent:
            return "laurent(" + base->spec_string() + ",prec=" + std::to_string(precision) + ")";
    }
    return "?";
}

Ring make_zmod(std::uint64_t m) {
    require(m >= 2, "zmod modulus must be >= 2");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::ZMod;
    r->modulus = m;
    r->residue_char = prime_power_base(m);
    r->finite_local = r->residue_char != 0;
    return r;
}

Ring make_prime_field(std::uint64_t p) {
    require(is_prime_u64(p), "fp modulus must be prime");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::PrimeField;
    r->modulus = p;
    r->residue_char = p;
    r->finite_local = true;
    return r;
}

Ring make_rationals() {
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::Rationals;
    return r;
}

Ring make_ratfunc(std::uint32_t p, std::vector<std::string> vars, std::vector<Poly> inverted) {
    require(is_prime_u64(p), "ratfunc characteristic must be prime");
    require(!vars.empty() && vars.size() <= kMaxVars, "ratfunc needs 1..4 variables");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::RatFuncLocal;
    r->p = p;
    r->vars = std::move(vars);
    for (Poly& e : inverted) {
        require(e.char_p() == p && e.nvars() == static_cast<int>(r->vars.size()),
                "inverted parameter over wrong polynomial ring");
        require(e.degree() == 1 && e.constant_term() == 0,
                "inverted parameter must be a degree-1 form vanishing at the origin");
        e = e.monic();
        bool dup = false;
        for (const Poly& prev : r->inverted) dup = dup || prev == e;
        if (!dup) r->inverted.push_back(e);
    }
    return r;
}

Ring make_trunc_laurent(Ring base, int precision) {
    require(base != nullptr, "laurent base ring missing");
    require(base->kind == RingKind::RatFuncLocal && base->vars.size() == 1 &&
                base->inverted.empty(),
            "laurent base must be a one-variable local ring (DVR model)");
    require(precision >= 1, "laurent precision must be >= 1");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::TruncLaurent;
    r->base = std::move(base);
    r->precision = precision;
    return r;
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: return a->modulus == b->modulus;
        case RingKind::Rationals: return true;
        case RingKind::RatFuncLocal:
            return a->p == b->p && a->vars == b->vars && a->inverted == b->inverted;
        case RingKind::TruncLaurent:
            return a->precision == b->precision && same_ring(a->base, b->base);
    }
    return false;
}

Element Element::make(const Ring& r) {
    Element e;
    e.ring_ = r;
    return e;
}

Element Element::from_int(const Ring& r, std::int64_t v) {
    Element e = make(r);
    switch (r->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: {
            std::int64_t m = static_cast<std::int64_t>(r->modulus);
            std::int64_t res = v % m;
            if (res < 0) res += m;
            e.v_ = static_cast<std::uint64_t>(res);
            break;
        }
        case RingKind::Rationals: e.v_ = mpq_class(v); break;
        case RingKind::RatFuncLocal: {
            FracValue f{Poly::constant(r->p, static_cast<int>(r->vars.size()), v),
                        Poly::constant(r->p, static_cast<int>(r->vars.size()), 1)};
            e.v_ = std::move(f);
            break;
        }
        case RingKind::TruncLaurent: {
            LaurentValue lv;
            Element c = Element::from_int(r->base, v);
            if (!c.is_zero()) lv.coeffs.push_back(std::move(c));
            e.v_ = std::move(lv);
            break;
        }
    }
    return e;
}

Element Element::from_rational(const Ring& r, const mpq_class& q) {
    require(r->kind == RingKind::Rationals, "from_rational: ring is not q");
    if (q.get_den() == 0) throw MathError("division by zero in fraction construction");
    Element e = make(r);
    mpq_class c = q;
    c.canonicalize();
    e.v_ = std::move(c);
    return e;
}

Element Element::from_fraction(const Ring& r, Poly num, Poly den) {
    require(r->kind == RingKind::RatFuncLocal, "from_fraction: ring is not ratfunc");
    require(num.char_p() == r->p && den.char_p() == r->p &&
                num.nvars() == static_cast<int>(r->vars.size()) &&
                den.nvars() == static_cast<int>(r->vars.size()),
            "fraction over wrong polynomial ring");
    if (den.is_zero()) throw MathError("division by zero in fraction construction");
    Element e = make(r);
    FracValue f;
    if (num.is_zero()) {
        f.num = num;
        f.den = Poly::constant(r->p, num.nvars(), 1);
    } else {
        Poly g = poly_gcd(num, den);
        f.num = *num.divided_by(g);
        f.den = *den.divided_by(g);
        std::uint32_t lc = f.den.leading_coeff();
        if (lc != 1) {
            std::uint32_t inv = static_cast<std::uint32_t>(mod_inv(lc, r->p));
            f.num = f.num.scaled(inv);
            f.den = f.den.scaled(inv);
        }
    }
    e.v_ = std::move(f);
    return e;
}

Element Element::from_laurent(const Ring& r, int offset, std::vector<Element> coeffs,
                              int known_end) {
    require(r->kind == RingKind::TruncLaurent, "from_laurent: ring is not laurent");
    for (const Element& c : coeffs)
        require(same_ring(c.ring(), r->base), "laurent coefficient over wrong base ring");
    LaurentValue lv;
    lv.offset = offset;
    lv.coeffs = std::move(coeffs);
    lv.known_end = known_end;
    // strip leading zeros
    std::size_t lead = 0;
    while (lead < lv.coeffs.size() && lv.coeffs[lead].is_zero()) ++lead;
    if (lead) {
        lv.coeffs.erase(lv.coeffs.begin(), lv.coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
        lv.offset += static_cast<int>(lead);
    }
    // cut at the knowledge bound and at the precision window
    long cap = lv.exact() ? static_cast<long>(lv.offset) + r->precision
                          : std::min<long>(lv.known_end,
                                           static_cast<long>(lv.offset) + r->precision);
    if (static_cast<long>(lv.offset) + static_cast<long>(lv.coeffs.size()) > cap) {
        bool dropped_nonzero = false;
        while (static_cast<long>(lv.offset) + static_cast<long>(lv.coeffs.size()) > cap) {
            if (!lv.coeffs.back().is_zero()) dropped_nonzero = true;
            lv.coeffs.pop_back();
        }
        if (dropped_nonzero || !lv.exact()) lv.known_end = static_cast<int>(cap);
    }
    while (!lv.coeffs.empty() && lv.coeffs.back().is_zero()) lv.coeffs.pop_back();
    if (lv.coeffs.empty()) lv.offset = 0;
    Element e = make(r);
    e.v_ = std::move(lv);
    return e;
}

std::uint64_t Element::residue() const {
    return std::get<std::uint64_t>(v_);
}
const mpq_class& Element::rational() const { return std::get<mpq_class>(v_); }
const FracValue& Element::fraction() const { return std::get<FracValue>(v_); }
const LaurentValue& Element::laurent() const { return std::get<LaurentValue>(v_); }

bool Element::is_zero() const {
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: return residue() == 0;
        case RingKind::Rationals: return rational() == 0;
        case RingKind::RatFuncLocal: return fraction().num.is_zero();
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = laurent();
            if (!lv.coeffs.empty()) return false;
            if (lv.exact()) return true;
            throw PrecisionExhausted("cannot distinguish 0 from O(t^" +
                                     std::to_string(lv.known_end) + ")");
        }
    }
    return false;
}

bool Element::is_one() const {
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: return residue() == 1 % ring_->modulus;
        case RingKind::Rationals: return rational() == 1;
        case RingKind::RatFuncLocal: {
            const FracValue& f = fraction();
            return f.num.is_constant() && f.num.constant_term() == 1 && f.den == f.num;
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = laurent();
            return lv.coeffs.size() == 1 && lv.offset == 0 && lv.coeffs[0].is_one();
        }
    }
    return false;
}

namespace {

// Strip all inverted-parameter factors, then test for a unit at the origin.
bool local_unit_part(const RingData& r, Poly f) {
    if (f.is_zero()) return false;
    for (const Poly& e : r.inverted) {
        for (;;) {
            auto q = f.divided_by(e);
            if (!q) break;
            f = std::move(*q);
        }
    }
    return f.constant_term() != 0;
}

}  // namespace

bool Element::is_unit() const {
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: return gcd_u64(residue(), ring_->modulus) == 1;
        case RingKind::Rationals: return rational() != 0;
        case RingKind::RatFuncLocal: {
            const FracValue& f = fraction();
            return local_unit_part(*ring_, f.num) && local_unit_part(*ring_, f.den);
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = laurent();
            if (lv.coeffs.empty()) {
                if (lv.exact()) return false;
                throw PrecisionExhausted("unit test on value known only as O(t^" +
                                         std::to_string(lv.known_end) + ")");
            }
            return lv.coeffs.front().is_unit();
        }
    }
    return false;
}

Element Element::operator+(const Element& o) const {
    require(same_ring(ring_, o.ring_), "mixed-ring arithmetic");
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: {
            Element e = make(ring_);
            e.v_ = mod_add(residue(), o.residue(), ring_->modulus);
            return e;
        }
        case RingKind::Rationals: return from_rational(ring_, rational() + o.rational());
        case RingKind::RatFuncLocal: {
            const FracValue& a = fraction();
            const FracValue& b = o.fraction();
            return from_fraction(ring_, a.num * b.den + b.num * a.den, a.den * b.den);
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& a = laurent();
            const LaurentValue& b = o.laurent();
            if (a.coeffs.empty() && a.exact()) return o;
            if (b.coeffs.empty() && b.exact()) return *this;
            int ke = std::min(a.known_end, b.known_end);
            int lo = std::min(a.offset, b.offset);
            long hi = std::max(static_cast<long>(a.offset) + static_cast<long>(a.coeffs.size()),
                               static_cast<long>(b.offset) + static_cast<long>(b.coeffs.size()));
            std::vector<Element> cs;
            for (long k = lo; k < hi; ++k) {
                Element c = Element::from_int(ring_->base, 0);
                long ia = k - a.offset, ib = k - b.offset;
                if (ia >= 0 && ia < static_cast<long>(a.coeffs.size()))
                    c = c + a.coeffs[static_cast<std::size_t>(ia)];
                if (ib >= 0 && ib < static_cast<long>(b.coeffs.size()))
                    c = c + b.coeffs[static_cast<std::size_t>(ib)];
                cs.push_back(std::move(c));
            }
            return from_laurent(ring_, lo, std::move(cs), ke);
        }
    }
    throw MathError("unreachable");
}

Element Element::operator-() const {
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: {
            Element e = make(ring_);
            e.v_ = mod_sub(0, residue(), ring_->modulus);
            return e;
        }
        case RingKind::Rationals: return from_rational(ring_, -rational());
        case RingKind::RatFuncLocal: {
            const FracValue& f = fraction();
            return from_fraction(ring_, -f.num, f.den);
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = laurent();
            std::vector<Element> cs;
            cs.reserve(lv.coeffs.size());
            for (const Element& c : lv.coeffs) cs.push_back(-c);
            return from_laurent(ring_, lv.offset, std::move(cs), lv.known_end);
        }
    }
    throw MathError("unreachable");
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const {
    require(same_ring(ring_, o.ring_), "mixed-ring arithmetic");
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: {
            Element e = make(ring_);
            e.v_ = mod_mul(residue(), o.residue(), ring_->modulus);
            return e;
        }
        case RingKind::Rationals: return from_rational(ring_, rational() * o.rational());
        case RingKind::RatFuncLocal: {
            const FracValue& a = fraction();
            const FracValue& b = o.fraction();
            return from_fraction(ring_, a.num * b.num, a.den * b.den);
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& a = laurent();
            const LaurentValue& b = o.laurent();
            if ((a.coeffs.empty() && a.exact()) || (b.coeffs.empty() && b.exact()))
                return from_int(ring_, 0);
            if (a.coeffs.empty() || b.coeffs.empty())
                throw PrecisionExhausted("product with value known only as O(t^k)");
            long ke = std::numeric_limits<int>::max();
            if (!a.exact()) ke = std::min(ke, static_cast<long>(a.known_end) + b.offset);
            if (!b.exact()) ke = std::min(ke, static_cast<long>(b.known_end) + a.offset);
            int lo = a.offset + b.offset;
            std::size_t n = a.coeffs.size() + b.coeffs.size() - 1;
            std::vector<Element> cs(n, Element::from_int(ring_->base, 0));
            for (std::size_t i = 0; i < a.coeffs.size(); ++i)
                for (std::size_t j = 0; j < b.coeffs.size(); ++j)
                    cs[i + j] = cs[i + j] + a.coeffs[i] * b.coeffs[j];
            return from_laurent(ring_, lo, std::move(cs), static_cast<int>(std::min<long>(
                                                              ke, std::numeric_limits<int>::max())));
        }
    }
    throw MathError("unreachable");
}

Element Element::inverse() const {
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: {
            if (!is_unit()) throw NotAUnit(str() + " is not a unit of " + ring_->spec_string());
            Element e = make(ring_);
            e.v_ = mod_inv(residue(), ring_->modulus);
            return e;
        }
        case RingKind::Rationals: {
            if (rational() == 0) throw MathError("division by zero");
            return from_rational(ring_, 1 / rational());
        }
        case RingKind::RatFuncLocal: {
            const FracValue& f = fraction();
            if (f.num.is_zero()) throw MathError("division by zero");
            return from_fraction(ring_, f.den, f.num);
        }
        case RingKind::TruncLaurent: {
            if (!is_unit()) throw NotAUnit("inverse of a non-unit Laurent value");
            const LaurentValue& a = laurent();
            Element lead_inv = a.coeffs.front().inverse();
            int prec = ring_->precision;
            long ke = a.exact() ? std::numeric_limits<int>::max()
                                : static_cast<long>(a.known_end) - a.offset - a.offset;
            // power-series inversion of the regular part, `prec` coefficients
            std::vector<Element> cs(static_cast<std::size_t>(prec),
                                    Element::from_int(ring_->base, 0));
            cs[0] = lead_inv;
            for (int k = 1; k < prec; ++k) {
                Element s = Element::from_int(ring_->base, 0);
                for (int j = 1; j <= k && j < static_cast<int>(a.coeffs.size()); ++j)
                    s = s + a.coeffs[static_cast<std::size_t>(j)] *
                                cs[static_cast<std::size_t>(k - j)];
                cs[static_cast<std::size_t>(k)] = -(lead_inv * s);
            }
            bool monomial = a.coeffs.size() == 1 && a.exact();
            long end = monomial ? std::numeric_limits<int>::max()
                                : std::min<long>(ke, static_cast<long>(-a.offset) + prec);
            return from_laurent(ring_, -a.offset, std::move(cs),
                                static_cast<int>(std::min<long>(end,
                                                                std::numeric_limits<int>::max())));
        }
    }
    throw MathError("unreachable");
}

Element Element::pow(long e) const {
    Element base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Element acc = from_int(ring_, 1);
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

int Element::compare(const Element& o) const {
    assert(same_ring(ring_, o.ring_));
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: {
            std::uint64_t a = residue(), b = o.residue();
            return a < b ? -1 : a > b ? 1 : 0;
        }
        case RingKind::Rationals: {
            int c = cmp(rational(), o.rational());
            return c < 0 ? -1 : c > 0 ? 1 : 0;
        }
        case RingKind::RatFuncLocal: {
            int c = fraction().num.compare(o.fraction().num);
            if (c) return c;
            return fraction().den.compare(o.fraction().den);
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& a = laurent();
            const LaurentValue& b = o.laurent();
            if (a.offset != b.offset) return a.offset < b.offset ? -1 : 1;
            std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = a.coeffs[i].compare(b.coeffs[i]);
                if (c) return c;
            }
            if (a.coeffs.size() != b.coeffs.size())
                return a.coeffs.size() < b.coeffs.size() ? -1 : 1;
            if (a.known_end != b.known_end) return a.known_end < b.known_end ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

std::string Element::str() const {
    switch (ring_->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: return std::to_string(residue());
        case RingKind::Rationals: return rational().get_str();
        case RingKind::RatFuncLocal: {
            const FracValue& f = fraction();
            std::string n = f.num.str(ring_->vars);
            if (f.den.is_constant() && f.den.constant_term() == 1) return n;
            return "(" + n + ")/(" + f.den.str(ring_->vars) + ")";
        }
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = laurent();
            std::string out;
            for (std::size_t i = 0; i < lv.coeffs.size(); ++i) {
                if (lv.coeffs[i].is_zero()) continue;
                if (!out.empty()) out += "+";
                int e = lv.offset + static_cast<int>(i);
                out += "(" + lv.coeffs[i].str() + ")";
                if (e != 0) out += "*t^" + std::to_string(e);
            }
            if (out.empty()) out = "0";
            if (!lv.exact()) out += "+O(t^" + std::to_string(lv.known_end) + ")";
            return out;
        }
    }
    return "?";
}

std::vector<Element> finite_ring_elements(const Ring& r) {
    if (!r->is_finite()) throw MathError("ring is not finite");
    std::vector<Element> out;
    out.reserve(r->modulus);
    for (std::uint64_t i = 0; i < r->modulus; ++i)
        out.push_back(Element::from_int(r, static_cast<std::int64_t>(i)));
    return out;
}

std::vector<Element> finite_ring_units(const Ring& r) {
    std::vector<Element> out;
    for (Element& e : finite_ring_elements(r))
        if (e.is_unit()) out.push_back(std::move(e));
    return out;
}

}  // namespace mk2
