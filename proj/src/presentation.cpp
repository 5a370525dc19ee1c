#include "mk2/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mk2/errors.hpp"

namespace mk2 {

SparseVec sparse_normalize(SparseVec v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.push_back({i, c});
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    return out;
}

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, const mpz_class& c) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            mpz_class x = b[j].second * c;
            if (x != 0) out.push_back({b[j].first, std::move(x)});
            ++j;
        } else {
            mpz_class x = a[i].second + b[j].second * c;
            if (x != 0) out.push_back({a[i].first, std::move(x)});
            ++i; ++j;
        }
    }
    return out;
}

bool sparse_is_zero(const SparseVec& v) { return v.empty(); }

int PresentedGroup::add_generator(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(gens_.size());
    gens_.push_back(label);
    index_.emplace(label, id);
    return id;
}

int PresentedGroup::gen_index(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

int PresentedGroup::add_relation(SparseVec v) {
    v = sparse_normalize(std::move(v));
    if (v.empty()) return -1;
    for (const auto& [i, c] : v)
        if (i < 0 || i >= gen_count())
            throw MathError("relation vector outside the generator index");
    if (!seen_.insert(v).second) return -1;
    relations_.push_back(std::move(v));
    return static_cast<int>(relations_.size()) - 1;
}

namespace {

// splits "2*{a,b} - <c,d>" on top-level +/- (depth-aware for (){}<>)
std::vector<std::pair<int, std::string>> split_signed_terms(const std::string& s) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0, sign = 1;
    std::string cur;
    auto flush = [&]() {
        std::string t = cur;
        cur.clear();
        // trim
        std::size_t b = t.find_first_not_of(" \t");
        std::size_t e = t.find_last_not_of(" \t");
        if (b == std::string::npos) return;
        out.push_back({sign, t.substr(b, e - b + 1)});
    };
    for (char ch : s) {
        if (ch == '(' || ch == '{' || ch == '<') ++depth;
        if (ch == ')' || ch == '}' || ch == '>') --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            flush();
            sign = ch == '+' ? 1 : -1;
            continue;
        }
        cur += ch;
    }
    flush();
    return out;
}

}  // namespace

std::string PresentedGroup::to_text() const {
    std::string out;
    for (const std::string& g : gens_) out += g + "\n";
    out += "\n";
    for (const SparseVec& r : relations_) {
        std::string line;
        for (const auto& [i, c] : r) {
            if (!line.empty()) line += c >= 0 ? " + " : " - ";
            else if (c < 0) line += "-";
            mpz_class a = abs(c);
            line += a.get_str() + "*" + gens_[static_cast<std::size_t>(i)];
        }
        out += line + "\n";
    }
    return out;
}

PresentedGroup PresentedGroup::from_text(const std::string& text) {
    PresentedGroup g;
    std::istringstream in(text);
    std::string line;
    bool in_relations = false;
    while (std::getline(in, line)) {
        if (line.empty()) { in_relations = true; continue; }
        if (!in_relations) {
            g.add_generator(line);
            continue;
        }
        SparseVec v;
        for (auto& [sign, term] : split_signed_terms(line)) {
            std::size_t star = term.find('*');
            if (star == std::string::npos) throw ParseError("relation term missing '*': " + term);
            mpz_class coef(term.substr(0, star));
            std::string label = term.substr(star + 1);
            int idx = g.gen_index(label);
            if (idx < 0) throw ParseError("unknown generator: " + label);
            v.push_back({idx, coef * sign});
        }
        g.add_relation(std::move(v));
    }
    return g;
}

Mat mat_identity(int n) {
    Mat m(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t m = a.size(), k = m ? a[0].size() : 0, n = b.empty() ? 0 : b[0].size();
    Mat c(m, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

namespace {

struct SNFWork {
    Mat a, u, uinv, v, vinv;
    int m, n;

    void row_sub(int i, int k, const mpz_class& q) {  // row_i -= q * row_k
        for (int j = 0; j < n; ++j) a[i][j] -= q * a[k][j];
        for (int j = 0; j < m; ++j) u[i][j] -= q * u[k][j];
        for (int j = 0; j < m; ++j) uinv[j][k] += q * uinv[j][i];
    }
    void col_sub(int j, int k, const mpz_class& q) {  // col_j -= q * col_k
        for (int i = 0; i < m; ++i) a[i][j] -= q * a[i][k];
        for (int i = 0; i < n; ++i) v[i][j] -= q * v[i][k];
        for (int i = 0; i < n; ++i) vinv[k][i] += q * vinv[j][i];
    }
    void row_swap(int i, int k) {
        if (i == k) return;
        std::swap(a[i], a[k]);
        std::swap(u[i], u[k]);
        for (int j = 0; j < m; ++j) std::swap(uinv[j][i], uinv[j][k]);
    }
    void col_swap(int j, int k) {
        if (j == k) return;
        for (int i = 0; i < m; ++i) std::swap(a[i][j], a[i][k]);
        for (int i = 0; i < n; ++i) std::swap(v[i][j], v[i][k]);
        std::swap(vinv[j], vinv[k]);
    }
    void row_negate(int i) {
        for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
        for (int j = 0; j < m; ++j) u[i][j] = -u[i][j];
        for (int j = 0; j < m; ++j) uinv[j][i] = -uinv[j][i];
    }

    // nearest-integer quotient keeps coefficients small
    static mpz_class nquot(const mpz_class& a, const mpz_class& b) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (2 * r > abs(b)) q += 1;
        return q;
    }

    // Diagonalise position k over rows/cols >= k.
    void eliminate_at(int k) {
        for (;;) {
            // pivot: smallest |entry| in the submatrix
            int pi = -1, pj = -1;
            for (int i = k; i < m; ++i)
                for (int j = k; j < n; ++j)
                    if (a[i][j] != 0 &&
                        (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
            if (pi < 0) return;
            row_swap(k, pi);
            col_swap(k, pj);
            bool clean = true;
            for (int i = k + 1; i < m; ++i) {
                if (a[i][k] == 0) continue;
                row_sub(i, k, nquot(a[i][k], a[k][k]));
                if (a[i][k] != 0) clean = false;
            }
            for (int j = k + 1; j < n; ++j) {
                if (a[k][j] == 0) continue;
                col_sub(j, k, nquot(a[k][j], a[k][k]));
                if (a[k][j] != 0) clean = false;
            }
            if (clean) return;
        }
    }
};

}  // namespace

SNFCertificate smith_normal_form(const Mat& a0) {
    SNFWork w;
    w.m = static_cast<int>(a0.size());
    w.n = w.m ? static_cast<int>(a0[0].size()) : 0;
    w.a = a0;
    w.u = mat_identity(w.m);
    w.uinv = mat_identity(w.m);
    w.v = mat_identity(w.n);
    w.vinv = mat_identity(w.n);

    int r = std::min(w.m, w.n);
    for (int k = 0; k < r; ++k) w.eliminate_at(k);

    // enforce the divisibility chain d_k | d_l
    for (int k = 0; k < r; ++k) {
        if (w.a[k][k] == 0) break;
        for (int l = k + 1; l < r; ++l) {
            if (w.a[l][l] == 0) continue;
            if (w.a[l][l] % w.a[k][k] == 0) continue;
            w.col_sub(k, l, mpz_class(-1));  // col_k += col_l
            w.eliminate_at(k);
            l = k;  // rescan
        }
    }
    for (int k = 0; k < r; ++k)
        if (w.a[k][k] < 0) w.row_negate(k);

    SNFCertificate c;
    c.rows = w.m;
    c.cols = w.n;
    for (int k = 0; k < r; ++k) c.diagonal.push_back(w.a[k][k]);
    c.row_transform = std::move(w.u);
    c.row_inverse = std::move(w.uinv);
    c.col_transform = std::move(w.v);
    c.col_inverse = std::move(w.vinv);
    return c;
}

bool snf_verify(const Mat& a, const SNFCertificate& c) {
    int m = c.rows, n = c.cols;
    Mat prod = mat_mul(mat_mul(c.row_transform, a), c.col_transform);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            mpz_class want = (i == j && i < static_cast<int>(c.diagonal.size()))
                                 ? c.diagonal[static_cast<std::size_t>(i)]
                                 : mpz_class(0);
            if (prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != want)
                return false;
        }
    if (mat_mul(c.row_transform, c.row_inverse) != mat_identity(m)) return false;
    if (mat_mul(c.col_transform, c.col_inverse) != mat_identity(n)) return false;
    for (std::size_t k = 0; k + 1 < c.diagonal.size(); ++k) {
        if (c.diagonal[k] == 0 && c.diagonal[k + 1] != 0) return false;
        if (c.diagonal[k] != 0 && c.diagonal[k + 1] % c.diagonal[k] != 0) return false;
    }
    return true;
}

GroupInvariants invariants_from_diagonal(const std::vector<mpz_class>& d, int gen_count) {
    GroupInvariants g;
    int nonzero = 0;
    for (const mpz_class& x : d) {
        if (x == 0) continue;
        ++nonzero;
        if (x > 1) g.torsion.push_back(x);
    }
    std::sort(g.torsion.begin(), g.torsion.end());
    g.free_rank = gen_count - nonzero;
    return g;
}

std::string GroupInvariants::json() const {
    std::string s = "{\"torsion\":[";
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (i) s += ",";
        s += torsion[i].get_str();
    }
    s += "],\"rank\":" + std::to_string(free_rank) + "}";
    return s;
}

int RelationLattice::add_row(SparseVec v) {
    v = sparse_normalize(std::move(v));
    int id = static_cast<int>(original_.size());
    original_.push_back(v);
    Row row{std::move(v), {{id, mpz_class(1)}}};
    while (!row.vec.empty()) {
        int c = row.vec.front().first;
        auto it = pivots_.find(c);
        if (it == pivots_.end()) {
            pivots_.emplace(c, std::move(row));
            return id;
        }
        Row& p = it->second;
        const mpz_class& b = p.vec.front().second;
        const mpz_class& a = row.vec.front().second;
        if (a % b == 0) {
            mpz_class q = -(a / b);
            row.vec = sparse_add_scaled(row.vec, p.vec, q);
            row.combo = sparse_add_scaled(row.combo, p.combo, q);
        } else {
            // xgcd merge: g = x*b + y*a
            mpz_class g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), b.get_mpz_t(),
                       a.get_mpz_t());
            Row np;
            np.vec = sparse_add_scaled(
                SparseVec{}, p.vec, x);
            np.vec = sparse_add_scaled(np.vec, row.vec, y);
            np.combo = sparse_add_scaled(SparseVec{}, p.combo, x);
            np.combo = sparse_add_scaled(np.combo, row.combo, y);
            mpz_class bq = b / g, aq = a / g;
            Row nr;
            nr.vec = sparse_add_scaled(SparseVec{}, row.vec, bq);
            nr.vec = sparse_add_scaled(nr.vec, p.vec, -aq);
            nr.combo = sparse_add_scaled(SparseVec{}, row.combo, bq);
            nr.combo = sparse_add_scaled(nr.combo, p.combo, -aq);
            it->second = std::move(np);
            row = std::move(nr);
        }
    }
    return id;
}

RelationLattice::Membership RelationLattice::member(const SparseVec& v0) const {
    SparseVec v = sparse_normalize(v0);
    SparseVec combo;
    while (!v.empty()) {
        int c = v.front().first;
        auto it = pivots_.find(c);
        if (it == pivots_.end()) return {};
        const Row& p = it->second;
        const mpz_class& b = p.vec.front().second;
        const mpz_class& a = v.front().second;
        if (a % b != 0) return {};
        mpz_class q = a / b;
        v = sparse_add_scaled(v, p.vec, -q);
        combo = sparse_add_scaled(combo, p.combo, q);
    }
    Membership m;
    m.member = true;
    m.combination.assign(combo.begin(), combo.end());
    return m;
}

std::vector<SparseVec> RelationLattice::basis() const {
    std::vector<SparseVec> out;
    out.reserve(pivots_.size());
    for (const auto& [c, row] : pivots_) out.push_back(row.vec);
    return out;
}

Mat RelationLattice::basis_matrix(int ncols) const {
    Mat m;
    for (const auto& [c, row] : pivots_) {
        std::vector<mpz_class> dense(static_cast<std::size_t>(ncols), 0);
        for (const auto& [i, x] : row.vec) dense[static_cast<std::size_t>(i)] = x;
        m.push_back(std::move(dense));
    }
    return m;
}

GroupInvariants invariants(const PresentedGroup& g) {
    RelationLattice lat;
    for (const SparseVec& r : g.relations()) lat.add_row(r);
    Mat basis = lat.basis_matrix(g.gen_count());
    SNFCertificate c = smith_normal_form(basis);
    return invariants_from_diagonal(c.diagonal, g.gen_count());
}

ZeroCertificate is_zero_element(const PresentedGroup& g, const SparseVec& v0) {
    SparseVec v = sparse_normalize(v0);
    for (const auto& [i, c] : v)
        if (i < 0 || i >= g.gen_count())
            throw MathError("vector support outside the generator index");
    RelationLattice lat;
    for (const SparseVec& r : g.relations()) lat.add_row(r);
    auto m = lat.member(v);
    if (!m.member) return {};
    // re-verify the certificate against the stored relations
    SparseVec sum;
    for (const auto& [idx, c] : m.combination)
        sum = sparse_add_scaled(sum, g.relations()[static_cast<std::size_t>(idx)], c);
    if (sparse_normalize(sum) != v)
        throw MathError("zero certificate failed re-verification");
    ZeroCertificate z;
    z.zero = true;
    z.combination = m.combination;
    return z;
}

PushoutResult pushout(const std::vector<SparseVec>& f, const std::vector<SparseVec>& j,
                      const PresentedGroup& G, const PresentedGroup& H) {
    if (f.size() != j.size())
        throw MathError("pushout: arrow matrices have different source ranks");
    PushoutResult out;
    for (const std::string& g : G.generators()) out.group.add_generator("G." + g);
    out.h_offset = out.group.gen_count();
    for (const std::string& h : H.generators()) out.group.add_generator("H." + h);
    for (const SparseVec& r : G.relations()) out.group.add_relation(r);
    for (const SparseVec& r : H.relations()) {
        SparseVec shifted;
        for (const auto& [i, c] : r) shifted.push_back({i + out.h_offset, c});
        out.group.add_relation(std::move(shifted));
    }
    for (std::size_t k = 0; k < f.size(); ++k) {
        SparseVec delta;
        for (const auto& [i, c] : f[k]) {
            if (i < 0 || i >= G.gen_count()) throw MathError("pushout: f index mismatch");
            delta.push_back({i, -c});
        }
        for (const auto& [i, c] : j[k]) {
            if (i < 0 || i >= H.gen_count()) throw MathError("pushout: j index mismatch");
            delta.push_back({i + out.h_offset, c});
        }
        out.group.add_relation(sparse_normalize(std::move(delta)));
    }
    return out;
}

}  // namespace mk2
