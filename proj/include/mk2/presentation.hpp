#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace mk2 {

/// Sparse integer vector over a generator index: sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, mpz_class>>;

SparseVec sparse_normalize(SparseVec v);
SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, const mpz_class& c);
bool sparse_is_zero(const SparseVec& v);

/// Finitely presented abelian group: an append-only generator index and a
/// deduplicated list of integer relation vectors.
class PresentedGroup {
public:
    int add_generator(const std::string& label);
    int gen_index(const std::string& label) const;  // -1 when absent
    int gen_count() const { return static_cast<int>(gens_.size()); }
    const std::vector<std::string>& generators() const { return gens_; }
    const std::vector<SparseVec>& relations() const { return relations_; }

    /// Adds a relation (support must lie inside the generator index);
    /// duplicates and zero vectors are dropped.  Returns the relation's
    /// index, or -1 if it was dropped.
    int add_relation(SparseVec v);

    std::string to_text() const;
    static PresentedGroup from_text(const std::string& text);

private:
    std::vector<std::string> gens_;
    std::map<std::string, int> index_;
    std::vector<SparseVec> relations_;
    std::set<SparseVec> seen_;
};

using Mat = std::vector<std::vector<mpz_class>>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);

/// Smith normal form with explicit unimodular transform witnesses:
/// row_transform * A * col_transform = diag(diagonal), and the recorded
/// inverses certify unimodularity by multiplication.
struct SNFCertificate {
    std::vector<mpz_class> diagonal;  // d1 | d2 | ..., non-negative
    Mat row_transform, row_inverse;
    Mat col_transform, col_inverse;
    int rows = 0, cols = 0;
};

SNFCertificate smith_normal_form(const Mat& a);
/// Full certificate check: reconstruction, inverse witnesses, divisibility.
bool snf_verify(const Mat& a, const SNFCertificate& c);

struct GroupInvariants {
    std::vector<mpz_class> torsion;  // elementary divisors > 1
    int free_rank = 0;
    bool is_trivial() const { return torsion.empty() && free_rank == 0; }
    bool operator==(const GroupInvariants& o) const = default;
    std::string json() const;  // {"torsion":[...],"rank":n}
};

GroupInvariants invariants_from_diagonal(const std::vector<mpz_class>& d, int gen_count);

/*
 * Incremental integer row-lattice in echelon form.  Each basis row carries a
 * provenance combination over the originally inserted rows, so membership
 * tests can return an explicit certificate in terms of the input relations.
 */
class RelationLattice {
public:
    /// Inserts a row; returns its original-row id.
    int add_row(SparseVec v);

    struct Membership {
        bool member = false;
        std::vector<std::pair<int, mpz_class>> combination;  // original-row id -> coeff
    };
    /// Tests lattice membership of v; on success the certificate satisfies
    /// sum(coeff * original_row) == v exactly.
    Membership member(const SparseVec& v) const;

    const std::vector<SparseVec>& original_rows() const { return original_; }
    /// Echelon basis rows, ascending pivot column.
    std::vector<SparseVec> basis() const;
    Mat basis_matrix(int ncols) const;

private:
    struct Row {
        SparseVec vec;
        SparseVec combo;  // over original-row ids
    };
    std::map<int, Row> pivots_;  // leading column -> row
    std::vector<SparseVec> original_;
};

GroupInvariants invariants(const PresentedGroup& g);

struct ZeroCertificate {
    bool zero = false;
    std::vector<std::pair<int, mpz_class>> combination;  // relation index -> coeff
};
/// True iff v lies in the integer row span of g's relations; certificates
/// are re-verified against the stored relations before being returned.
ZeroCertificate is_zero_element(const PresentedGroup& g, const SparseVec& v);

/// Pushout (G + H)/<(-f(c), j(c))> of presented groups along arrows given as
/// sparse matrices (one row per generator of C).
struct PushoutResult {
    PresentedGroup group;
    int g_offset = 0;  // index of G's generators inside the pushout
    int h_offset = 0;  // index of H's generators inside the pushout
};
PushoutResult pushout(const std::vector<SparseVec>& f, const std::vector<SparseVec>& j,
                      const PresentedGroup& G, const PresentedGroup& H);

}  // namespace mk2
