#pragma once

#include <optional>
#include <set>

#include "mk2/presentation.hpp"
#include "mk2/trace.hpp"

namespace mk2 {

/*
 * A finite window into the (generally infinite) symbol groups: a set of
 * units closed under inverse and under products within a height bound, plus
 * an optional element pool for Dennis-Stein pairs.  Presentations built from
 * a window are sound sub-presentations: anything certified zero in a window
 * is zero in the full group, and certification never claims "nonzero".
 */
struct SymbolWindow {
    Ring ring;
    std::vector<Element> units;     // sorted, canonical, 1 and -1 present
    std::vector<Element> elements;  // DS pool in enumeration order
    std::vector<Element> elements_sorted;
    std::optional<Element> t;       // designated parameter, when relevant
    long height = 0;

    bool has_unit(const Element& u) const;
    bool has_element(const Element& e) const;
    void set_elements(std::vector<Element> pool);
    std::string describe() const;
};

/// Height of a canonical element: fraction degree bound, |num|/|den| bound
/// over Q, 0 for finite-ring elements.
long element_height(const Element& e);

/// All units of height <= h (exhaustive; throws when the enumeration would
/// exceed `cap` candidates).
SymbolWindow full_unit_window(const Ring& r, long h, std::size_t cap = 200000);

/// Closure of the seeds under inverse and height-bounded products.
SymbolWindow window_from_seeds(const Ring& r, std::vector<Element> seeds, long h,
                               std::size_t cap = 200000);

/// Extends the element pool (e.g. with non-units for DS pairs).
void window_add_elements(SymbolWindow& w, const std::vector<Element>& pool);

enum class RelationSystem { S, D, Combined };

struct RelationInstance {
    Rule rule;
    std::vector<Element> params;
};

/// Every relation instance all of whose participating elements and terms lie
/// in the window, in deterministic enumeration order.
std::vector<RelationInstance> instantiate_relations(const SymbolWindow& w,
                                                    RelationSystem sys);

struct CertifyResult {
    bool zero = false;
    DerivationTrace trace;  // populated when zero
    std::string note;       // reason when unknown (window bounds etc.)
};

/// A window materialised as a finitely presented group with its relation
/// instances, supporting exact zero-certification with derivation traces.
class WindowPresentation {
public:
    WindowPresentation(SymbolWindow w, RelationSystem sys);

    const SymbolWindow& window() const { return win_; }
    const PresentedGroup& group() const { return group_; }
    const std::vector<RelationInstance>& instances() const { return inst_; }

    GroupInvariants invariants() const { return mk2::invariants(group_); }

    /// Vector of e over the generator index; nullopt when a term is missing.
    std::optional<SparseVec> expr_vector(const SymbolExpr& e) const;

    /// Sound, incomplete zero test: zero-with-trace or unknown.
    /// Throws MathError when a term lies outside the window.
    CertifyResult certify(const SymbolExpr& e) const;

private:
    SymbolWindow win_;
    PresentedGroup group_;
    std::vector<RelationInstance> inst_;
    RelationLattice lattice_;
};

/// K_2^M window presentation: generators all ordered unit pairs, relations
/// (S1) and (S3) only.
WindowPresentation build_k2m_window(const SymbolWindow& w);
/// Dennis-Stein window presentation over the element pool.
WindowPresentation build_ds_window(const SymbolWindow& w);
/// Combined S/D presentation with the conversion relations linking them.
WindowPresentation build_combined_window(const SymbolWindow& w);

/// Complete Dennis-Stein presentation of a finite local ring; the invariants
/// equal K_2 of the ring.  `order` permutes element enumeration (the result
/// is invariant under it).
WindowPresentation build_ds_full(const Ring& r,
                                 const std::vector<Element>* order = nullptr);

/// Convenience: certify in a freshly built window presentation (combined
/// when e mixes kinds, S or D presentation otherwise).
CertifyResult certify_zero(const SymbolExpr& e, const SymbolWindow& w);

/// The spec'd skew-symmetry derivation, searching witnesses in window order.
DerivationTrace derive_skew_symmetry(const Element& a, const SymbolWindow& w);

}  // namespace mk2
