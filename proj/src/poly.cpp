#include "mk2/poly.hpp"

#include <algorithm>
#include <cassert>

namespace mk2 {

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m; b %= m;
    std::uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m; b %= m;
    return a >= b ? a - b : a + (m - b);
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a % m) * (b % m)) % m);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mod_mul(r, a, m);
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { std::uint64_t t = a % b; a = b; b = t; }
    return a;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m) {
    a %= m;
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("mod_inv: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t prime_power_base(std::uint64_t n) {
    if (n < 2) return 0;
    std::uint64_t d = 2;
    while (d * d <= n && n % d != 0) ++d;
    std::uint64_t p = (d * d > n) ? n : d;
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? p : 0;
}

namespace {
constexpr int kBits = 16;
int shift_for(int var) { return (kMaxVars - 1 - var) * kBits; }
}  // namespace

Monomial mono_var(int var) {
    assert(var >= 0 && var < kMaxVars);
    return Monomial(1) << shift_for(var);
}

int mono_exp(Monomial m, int var) {
    return static_cast<int>((m >> shift_for(var)) & 0xffff);
}

Monomial mono_set_exp(Monomial m, int var, int e) {
    assert(e >= 0 && e <= kMaxExp);
    m &= ~(Monomial(0xffff) << shift_for(var));
    return m | (Monomial(e) << shift_for(var));
}

int mono_total_degree(Monomial m) {
    int d = 0;
    for (int v = 0; v < kMaxVars; ++v) d += mono_exp(m, v);
    return d;
}

Monomial mono_mul(Monomial a, Monomial b) {
    for (int v = 0; v < kMaxVars; ++v) {
        if (mono_exp(a, v) + mono_exp(b, v) > kMaxExp)
            throw std::overflow_error("monomial exponent overflow");
    }
    return a + b;
}

bool mono_divides(Monomial a, Monomial b) {
    for (int v = 0; v < kMaxVars; ++v)
        if (mono_exp(a, v) > mono_exp(b, v)) return false;
    return true;
}

Monomial mono_div(Monomial b, Monomial a) {
    assert(mono_divides(a, b));
    return b - a;
}

Poly Poly::constant(std::uint32_t p, int nvars, std::int64_t c) {
    Poly r(p, nvars);
    std::int64_t cc = c % static_cast<std::int64_t>(p);
    if (cc < 0) cc += p;
    if (cc != 0) r.terms_.push_back({0, static_cast<std::uint32_t>(cc)});
    return r;
}

Poly Poly::variable(std::uint32_t p, int nvars, int var) {
    assert(var >= 0 && var < nvars);
    Poly r(p, nvars);
    r.terms_.push_back({mono_var(var), 1});
    return r;
}

Poly Poly::from_terms(std::uint32_t p, int nvars, std::vector<Term> terms) {
    Poly r(p, nvars);
    r.terms_ = std::move(terms);
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return a.first > b.first; });
    r.normalize_sorted();
    return r;
}

void Poly::normalize_sorted() {
    // merge equal monomials, drop zero coefficients (input sorted descending)
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        std::uint32_t c = t.second % p_;
        if (!out.empty() && out.back().first == t.first) {
            std::uint64_t s = out.back().second + static_cast<std::uint64_t>(c);
            out.back().second = static_cast<std::uint32_t>(s % p_);
        } else {
            out.push_back({t.first, c});
        }
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

std::uint32_t Poly::constant_term() const {
    if (terms_.empty() || terms_.back().first != 0) return 0;
    return terms_.back().second;
}

std::uint32_t Poly::leading_coeff() const {
    return terms_.empty() ? 0 : terms_.front().second;
}

Monomial Poly::leading_mono() const {
    return terms_.empty() ? 0 : terms_.front().first;
}

int Poly::degree() const {
    int d = -1;
    for (const Term& t : terms_) d = std::max(d, mono_total_degree(t.first));
    return d;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, mono_exp(t.first, var));
    return d;
}

Poly Poly::operator+(const Poly& o) const {
    assert(p_ == o.p_);
    Poly r(p_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first > o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first > terms_[i].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            std::uint32_t c = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(terms_[i].second) + o.terms_[j].second) % p_);
            if (c) r.terms_.push_back({terms_[i].first, c});
            ++i; ++j;
        }
    }
    return r;
}

Poly Poly::operator-() const {
    Poly r(p_, nvars_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.first, p_ - t.second});
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    assert(p_ == o.p_);
    Poly r(p_, nvars_);
    if (is_zero() || o.is_zero()) return r;
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : o.terms_)
            acc.push_back({mono_mul(a.first, b.first),
                           static_cast<std::uint32_t>(
                               (static_cast<std::uint64_t>(a.second) * b.second) % p_)});
    return from_terms(p_, nvars_, std::move(acc));
}

Poly Poly::scaled(std::uint32_t c) const {
    c %= p_;
    Poly r(p_, nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_)
        r.terms_.push_back({t.first, static_cast<std::uint32_t>(
                                         (static_cast<std::uint64_t>(t.second) * c) % p_)});
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(static_cast<std::uint32_t>(mod_inv(leading_coeff(), p_)));
}

int Poly::compare(const Poly& o) const {
    std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (terms_[i].first != o.terms_[i].first)
            return terms_[i].first < o.terms_[i].first ? -1 : 1;
        if (terms_[i].second != o.terms_[i].second)
            return terms_[i].second < o.terms_[i].second ? -1 : 1;
    }
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
    return 0;
}

std::optional<Poly> Poly::divided_by(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = *this;
    Poly quot(p_, nvars_);
    std::uint32_t lc_inv = static_cast<std::uint32_t>(mod_inv(d.leading_coeff(), p_));
    std::vector<Term> qterms;
    while (!rem.is_zero()) {
        Monomial lm = rem.leading_mono();
        if (!mono_divides(d.leading_mono(), lm)) return std::nullopt;
        Monomial qm = mono_div(lm, d.leading_mono());
        std::uint32_t qc = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(rem.leading_coeff()) * lc_inv) % p_);
        qterms.push_back({qm, qc});
        Poly piece(p_, nvars_);
        piece.terms_.push_back({qm, qc});
        rem = rem - piece * d;
    }
    return from_terms(p_, nvars_, std::move(qterms));
}

Poly Poly::substitute(int var, const Poly& value) const {
    Poly result(p_, nvars_);
    // group terms by exponent of `var`, apply Horner on the grouped parts
    int maxe = degree_in(var);
    std::vector<Poly> byexp(static_cast<std::size_t>(maxe) + 1, Poly(p_, nvars_));
    for (const Term& t : terms_) {
        int e = mono_exp(t.first, var);
        Monomial rest = mono_set_exp(t.first, var, 0);
        byexp[static_cast<std::size_t>(e)] =
            byexp[static_cast<std::size_t>(e)] + from_terms(p_, nvars_, {{rest, t.second}});
    }
    for (int e = maxe; e >= 0; --e)
        result = result * value + byexp[static_cast<std::size_t>(e)];
    return result;
}

std::string Poly::str(const std::vector<std::string>& vars) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) out += "+";
        first = false;
        bool printed = false;
        if (t.second != 1 || t.first == 0) {
            out += std::to_string(t.second);
            printed = true;
        }
        for (int v = 0; v < nvars_; ++v) {
            int e = mono_exp(t.first, v);
            if (e == 0) continue;
            if (printed) out += "*";
            out += vars[static_cast<std::size_t>(v)];
            if (e > 1) out += "^" + std::to_string(e);
            printed = true;
        }
    }
    return out;
}

namespace {

// View of a polynomial as univariate in variable `var` with Poly coefficients.
std::vector<Poly> coeffs_in(const Poly& a, int var) {
    std::vector<Poly> out(static_cast<std::size_t>(a.degree_in(var)) + 1,
                          Poly(a.char_p(), a.nvars()));
    for (const auto& t : a.terms()) {
        int e = mono_exp(t.first, var);
        Monomial rest = mono_set_exp(t.first, var, 0);
        out[static_cast<std::size_t>(e)] =
            out[static_cast<std::size_t>(e)] +
            Poly::from_terms(a.char_p(), a.nvars(), {{rest, t.second}});
    }
    return out;
}

Poly from_coeffs(std::uint32_t p, int nvars, int var, const std::vector<Poly>& cs) {
    Poly x = Poly::variable(p, nvars, var);
    Poly acc(p, nvars);
    for (std::size_t e = cs.size(); e-- > 0;)
        acc = acc * x + cs[e];
    return acc;
}

int main_var(const Poly& a, const Poly& b) {
    for (int v = 0; v < a.nvars(); ++v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return -1;
}

Poly content_in(const Poly& a, int var);

// gcd of the coefficient list
Poly gcd_list(const std::vector<Poly>& cs) {
    Poly g;
    bool started = false;
    for (const Poly& c : cs) {
        if (c.is_zero()) continue;
        if (!started) { g = c; started = true; }
        else g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Poly content_in(const Poly& a, int var) { return gcd_list(coeffs_in(a, var)); }

// pseudo-remainder of a by b in variable var (deg_var a >= deg_var b > 0)
Poly pseudo_rem(Poly a, const Poly& b, int var) {
    int db = b.degree_in(var);
    std::vector<Poly> bc = coeffs_in(b, var);
    Poly lb = bc[static_cast<std::size_t>(db)];
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        std::vector<Poly> ac = coeffs_in(a, var);
        Poly la = ac[static_cast<std::size_t>(da)];
        // a := lb*a - la*x^(da-db)*b
        Poly shift = Poly::constant(a.char_p(), a.nvars(), 1);
        for (int i = 0; i < da - db; ++i)
            shift = shift * Poly::variable(a.char_p(), a.nvars(), var);
        a = a * lb - b * la * shift;
    }
    return a;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.char_p(), a.nvars(), 1);
    int var = main_var(a, b);
    if (a.degree_in(var) == 0 || b.degree_in(var) == 0) {
        // one of them is free of the main variable: gcd divides its content
        const Poly& flat = a.degree_in(var) == 0 ? a : b;
        const Poly& other = a.degree_in(var) == 0 ? b : a;
        return poly_gcd(flat, content_in(other, var)).monic();
    }
    // primitive Euclidean algorithm in `var`
    Poly ca = content_in(a, var), cb = content_in(b, var);
    Poly cg = poly_gcd(ca, cb);
    Poly pa = *a.divided_by(ca), pb = *b.divided_by(cb);
    while (!pb.is_zero()) {
        Poly r = pseudo_rem(pa, pb, var);
        pa = pb;
        if (r.is_zero()) { pb = r; break; }
        Poly cr = content_in(r, var);
        pb = *r.divided_by(cr);
    }
    return (pa.divided_by(content_in(pa, var)).value() * cg).monic();
}

}  // namespace mk2
