#include "mk2/window.hpp"

#include <algorithm>

namespace mk2 {

namespace {

bool set_has(const std::vector<Element>& sorted, const Element& x) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x, ElementLess{});
    return it != sorted.end() && *it == x;
}

std::vector<Element> sorted_unique(std::set<Element, ElementLess>&& s) {
    return std::vector<Element>(s.begin(), s.end());
}

}  // namespace

bool SymbolWindow::has_unit(const Element& u) const { return set_has(units, u); }
bool SymbolWindow::has_element(const Element& e) const {
    return set_has(elements_sorted, e);
}

void SymbolWindow::set_elements(std::vector<Element> pool) {
    elements = std::move(pool);
    elements_sorted = elements;
    std::sort(elements_sorted.begin(), elements_sorted.end(),
              [](const Element& a, const Element& b) { return a.compare(b) < 0; });
}

std::string SymbolWindow::describe() const {
    std::string s = ring->spec_string() + " height<=" + std::to_string(height) +
                    " units=" + std::to_string(units.size());
    if (!elements.empty()) s += " elements=" + std::to_string(elements.size());
    return s;
}

long element_height(const Element& e) {
    switch (e.ring()->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField: return 0;
        case RingKind::Rationals: {
            mpz_class n = abs(e.rational().get_num());
            mpz_class d = e.rational().get_den();
            mpz_class m = n > d ? n : d;
            return m.fits_slong_p() ? m.get_si() : std::numeric_limits<long>::max();
        }
        case RingKind::RatFuncLocal:
            return std::max(e.fraction().num.degree(), e.fraction().den.degree());
        case RingKind::TruncLaurent: {
            const LaurentValue& lv = e.laurent();
            return std::max<long>(std::abs(lv.offset),
                                  std::abs(lv.offset +
                                           static_cast<int>(lv.coeffs.size()) - 1));
        }
    }
    return 0;
}

namespace {

// all polynomials of total degree <= h over the ring's variables
std::vector<Poly> all_polys(const Ring& r, long h, std::size_t cap) {
    int nv = static_cast<int>(r->vars.size());
    std::vector<Monomial> monos;
    // enumerate monomials of total degree <= h (lex-ordered recursion)
    std::vector<int> exp(static_cast<std::size_t>(nv), 0);
    auto rec = [&](auto&& self, int var, long left) -> void {
        if (var == nv) {
            Monomial m = 0;
            for (int v = 0; v < nv; ++v) m = mono_set_exp(m, v, exp[static_cast<std::size_t>(v)]);
            monos.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exp[static_cast<std::size_t>(var)] = e;
            self(self, var + 1, left - e);
        }
        exp[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, 0, h);
    double total = 1;
    for (std::size_t i = 0; i < monos.size(); ++i) total *= r->p;
    if (total > static_cast<double>(cap) * 64)
        throw MathError("window enumeration too large (degree bound " + std::to_string(h) +
                        " over " + r->spec_string() + ")");
    std::vector<Poly> out;
    std::vector<std::uint32_t> coef(monos.size(), 0);
    for (;;) {
        std::vector<Poly::Term> ts;
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (coef[i]) ts.push_back({monos[i], coef[i]});
        out.push_back(Poly::from_terms(r->p, nv, std::move(ts)));
        std::size_t i = 0;
        while (i < monos.size() && coef[i] + 1 == r->p) coef[i++] = 0;
        if (i == monos.size()) break;
        ++coef[i];
    }
    return out;
}

void finish_window(SymbolWindow& w, std::set<Element, ElementLess>&& us) {
    us.insert(Element::from_int(w.ring, 1));
    us.insert(Element::from_int(w.ring, -1));
    w.units = sorted_unique(std::move(us));
    w.set_elements(w.units);
}

}  // namespace

SymbolWindow full_unit_window(const Ring& r, long h, std::size_t cap) {
    SymbolWindow w;
    w.ring = r;
    w.height = h;
    std::set<Element, ElementLess> us;
    switch (r->kind) {
        case RingKind::ZMod:
        case RingKind::PrimeField:
            for (Element& u : finite_ring_units(r)) us.insert(std::move(u));
            break;
        case RingKind::Rationals: {
            for (long a = 1; a <= h; ++a)
                for (long b = 1; b <= h; ++b) {
                    if (gcd_u64(static_cast<std::uint64_t>(a),
                                static_cast<std::uint64_t>(b)) != 1)
                        continue;
                    mpq_class q(a, b);
                    us.insert(Element::from_rational(r, q));
                    us.insert(Element::from_rational(r, -q));
                }
            break;
        }
        case RingKind::RatFuncLocal: {
            std::vector<Poly> nums = all_polys(r, h, cap);
            for (const Poly& den : nums) {
                if (den.is_zero() || den.leading_coeff() != 1) continue;
                for (const Poly& num : nums) {
                    if (num.is_zero()) continue;
                    Element e = Element::from_fraction(r, num, den);
                    if (element_height(e) > h) continue;
                    if (!e.is_unit()) continue;
                    us.insert(std::move(e));
                    if (us.size() > cap) throw MathError("window unit cap exceeded");
                }
            }
            break;
        }
        default:
            throw MathError("unit window enumeration unsupported for " + r->spec_string());
    }
    finish_window(w, std::move(us));
    return w;
}

SymbolWindow window_from_seeds(const Ring& r, std::vector<Element> seeds, long h,
                               std::size_t cap) {
    SymbolWindow w;
    w.ring = r;
    w.height = h;
    std::set<Element, ElementLess> us;
    us.insert(Element::from_int(r, 1));
    us.insert(Element::from_int(r, -1));
    std::vector<Element> queue;
    auto push = [&](const Element& e) {
        if (!e.is_unit() || element_height(e) > h) return;
        if (us.insert(e).second) {
            queue.push_back(e);
            Element inv = e.inverse();
            if (element_height(inv) <= h && us.insert(inv).second) queue.push_back(inv);
        }
        if (us.size() > cap) throw MathError("window unit cap exceeded");
    };
    for (const Element& s : seeds) push(s);
    push(Element::from_int(r, 1));
    push(Element::from_int(r, -1));
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Element a = queue[i];  // copy: queue may reallocate
        std::vector<Element> snapshot(us.begin(), us.end());
        for (const Element& b : snapshot) {
            Element p = a * b;
            if (element_height(p) <= h) push(p);
        }
    }
    finish_window(w, std::move(us));
    return w;
}

void window_add_elements(SymbolWindow& w, const std::vector<Element>& pool) {
    std::set<Element, ElementLess> es(w.elements.begin(), w.elements.end());
    for (const Element& e : pool) es.insert(e);
    w.set_elements(sorted_unique(std::move(es)));
}

std::vector<RelationInstance> instantiate_relations(const SymbolWindow& w,
                                                    RelationSystem sys) {
    std::vector<RelationInstance> out;
    Element one = Element::from_int(w.ring, 1);
    if (sys == RelationSystem::S || sys == RelationSystem::Combined) {
        const auto& U = w.units;
        for (std::size_t i = 0; i < U.size(); ++i)
            for (std::size_t k = i; k < U.size(); ++k) {
                Element prod = U[i] * U[k];
                if (!w.has_unit(prod)) continue;
                for (const Element& b : U) {
                    out.push_back({Rule::S1L, {U[i], U[k], b}});
                    out.push_back({Rule::S1R, {b, U[i], U[k]}});
                }
            }
        for (const Element& a : U) {
            Element m = one - a;
            if (w.has_unit(m)) out.push_back({Rule::S3, {a}});
        }
    }
    if (sys == RelationSystem::D || sys == RelationSystem::Combined) {
        const auto& E = w.elements;
        auto ds_ok = [&](const Element& a, const Element& b) {
            return (one + a * b).is_unit();
        };
        for (const Element& a : E)
            for (const Element& b : E)
                if (ds_ok(a, b)) out.push_back({Rule::D1, {a, b}});
        for (const Element& a : E)
            for (std::size_t i = 0; i < E.size(); ++i) {
                if (!ds_ok(a, E[i])) continue;
                for (std::size_t k = i; k < E.size(); ++k) {
                    const Element &b = E[i], &c = E[k];
                    if (!ds_ok(a, c)) continue;
                    Element d = b + c + a * b * c;
                    if (!w.has_element(d)) continue;
                    out.push_back({Rule::D2, {a, b, c}});
                }
            }
        for (const Element& a : E)
            for (std::size_t i = 0; i < E.size(); ++i)
                for (std::size_t k = i; k < E.size(); ++k) {
                    const Element &b = E[i], &c = E[k];
                    if (!(one + a * b * c).is_unit()) continue;
                    if (!w.has_element(b * c) || !w.has_element(a * b) ||
                        !w.has_element(a * c))
                        continue;
                    out.push_back({Rule::D3, {a, b, c}});
                }
    }
    if (sys == RelationSystem::Combined) {
        for (const Element& a : w.units)
            for (const Element& b : w.units) out.push_back({Rule::CONV, {a, b}});
    }
    return out;
}

WindowPresentation::WindowPresentation(SymbolWindow w, RelationSystem sys)
    : win_(std::move(w)) {
    Element one = Element::from_int(win_.ring, 1);
    if (sys == RelationSystem::S || sys == RelationSystem::Combined) {
        if (win_.units.size() * win_.units.size() > 300000)
            throw MathError("window too large to materialise a presentation: " +
                            win_.describe());
        for (const Element& a : win_.units)
            for (const Element& b : win_.units)
                group_.add_generator(steinberg_term(a, b).label());
    }
    if (sys == RelationSystem::D || sys == RelationSystem::Combined) {
        for (const Element& a : win_.elements)
            for (const Element& b : win_.elements)
                if ((one + a * b).is_unit())
                    group_.add_generator(SymbolTerm{SymKind::DennisStein, a, b}.label());
    }
    if (sys == RelationSystem::Combined) {
        // conversion images <(a-1)/b, b> may fall outside the element pool
        for (const Element& a : win_.units)
            for (const Element& b : win_.units)
                group_.add_generator(steinberg_to_ds(steinberg_term(a, b)).label());
    }
    for (RelationInstance& ri : instantiate_relations(win_, sys)) {
        SymbolExpr e = relation_expr(ri.rule, ri.params);
        SparseVec v;
        bool inside = true;
        for (const auto& [t, c] : e.terms()) {
            int idx = group_.gen_index(t.label());
            if (idx < 0) { inside = false; break; }
            v.push_back({idx, c});
        }
        if (!inside) continue;
        int id = group_.add_relation(sparse_normalize(std::move(v)));
        if (id >= 0) {
            inst_.push_back(std::move(ri));
            lattice_.add_row(group_.relations()[static_cast<std::size_t>(id)]);
        }
    }
}

std::optional<SparseVec> WindowPresentation::expr_vector(const SymbolExpr& e) const {
    SparseVec v;
    for (const auto& [t, c] : e.terms()) {
        int idx = group_.gen_index(t.label());
        if (idx < 0) return std::nullopt;
        v.push_back({idx, c});
    }
    return sparse_normalize(std::move(v));
}

CertifyResult WindowPresentation::certify(const SymbolExpr& e) const {
    auto v = expr_vector(e);
    if (!v) throw MathError("certify: term outside window " + win_.describe());
    auto m = lattice_.member(*v);
    CertifyResult r;
    if (!m.member) {
        r.note = "not in the relation span of the window (" + win_.describe() + ")";
        return r;
    }
    for (const auto& [idx, c] : m.combination) {
        const RelationInstance& ri = inst_[static_cast<std::size_t>(idx)];
        r.trace.steps.push_back({ri.rule, ri.params, c});
    }
    // replay: the combination must reproduce e exactly
    if (!(r.trace.combination(win_.ring) == e))
        throw MathError("certificate replay failed");
    r.zero = true;
    return r;
}

WindowPresentation build_k2m_window(const SymbolWindow& w) {
    return WindowPresentation(w, RelationSystem::S);
}
WindowPresentation build_ds_window(const SymbolWindow& w) {
    return WindowPresentation(w, RelationSystem::D);
}
WindowPresentation build_combined_window(const SymbolWindow& w) {
    return WindowPresentation(w, RelationSystem::Combined);
}

WindowPresentation build_ds_full(const Ring& r, const std::vector<Element>* order) {
    if (!r->is_finite() || !r->finite_local)
        throw MathError("build_ds_full needs a finite local ring, got " + r->spec_string());
    SymbolWindow w;
    w.ring = r;
    std::set<Element, ElementLess> us;
    for (Element& u : finite_ring_units(r)) us.insert(std::move(u));
    w.units = sorted_unique(std::move(us));
    w.set_elements(order ? *order : finite_ring_elements(r));
    if (order) {
        // the pool must still be the whole ring, only the order may differ
        std::set<Element, ElementLess> check(w.elements.begin(), w.elements.end());
        if (check.size() != r->modulus)
            throw MathError("build_ds_full: element order is not a permutation");
    }
    return WindowPresentation(std::move(w), RelationSystem::D);
}

CertifyResult certify_zero(const SymbolExpr& e, const SymbolWindow& w) {
    bool has_s = false, has_d = false;
    for (const auto& [t, c] : e.terms()) {
        has_s = has_s || t.kind == SymKind::Steinberg;
        has_d = has_d || t.kind == SymKind::DennisStein;
    }
    RelationSystem sys = has_d ? (has_s ? RelationSystem::Combined : RelationSystem::D)
                               : RelationSystem::S;
    WindowPresentation p(w, sys);
    return p.certify(e);
}

DerivationTrace derive_skew_symmetry(const Element& a, const SymbolWindow& w) {
    Derivation d = derive_skew(a, w.units);
    return d.trace();
}

}  // namespace mk2
