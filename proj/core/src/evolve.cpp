#include "tetra/evolve.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace tetra {

namespace {

using RF = RationalFunction;

RF var(const std::string& name) { return RF::variable(name); }

std::string matrix_str(const MatrixRF& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).render();
        s += "]";
    }
    return s + "]";
}

std::string perm_str(const Permutation& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

// Generic symbolic n x n matrix m{i}{j}, restricted by keep(i, j) (1-based).
template <typename Keep>
MatrixRF generic(std::size_t n, const std::string& prefix, Keep keep, bool unit_on_keep_diag = false,
                 bool anti = false) {
    MatrixRF m(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            if (!keep(i, j)) continue;
            bool diag = anti ? (i + j == n + 1) : (i == j);
            m(i - 1, j - 1) = (unit_on_keep_diag && diag) ? RF(1)
                                                          : var(prefix + std::to_string(i) + std::to_string(j));
        }
    return m;
}

}  // namespace

MatrixRF::MatrixRF(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

MatrixRF MatrixRF::identity(std::size_t n) {
    MatrixRF m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RF(1);
    return m;
}

MatrixRF MatrixRF::from_rows(const std::vector<std::vector<RF>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    MatrixRF m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ArityMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

MatrixRF MatrixRF::column(const std::vector<RF>& entries) {
    MatrixRF m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

MatrixRF MatrixRF::operator*(const MatrixRF& o) const {
    if (cols_ != o.rows_) throw ArityMismatch("matrix product of incompatible shapes");
    MatrixRF r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const RF& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o(k, j).is_zero()) r(i, j) += x * o(k, j);
        }
    return r;
}

MatrixRF MatrixRF::operator+(const MatrixRF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ArityMismatch("matrix sum of incompatible shapes");
    MatrixRF r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
}

MatrixRF MatrixRF::operator-(const MatrixRF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ArityMismatch("matrix difference of incompatible shapes");
    MatrixRF r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
}

MatrixRF MatrixRF::transpose() const {
    MatrixRF r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool MatrixRF::equals(const MatrixRF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!rf_equal(data_[k], o.data_[k])) return false;
    return true;
}

bool MatrixRF::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const RF& x) { return x.is_zero(); });
}

std::vector<std::vector<std::string>> MatrixRF::render() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).render());
    return out;
}

MatrixRF substitute(const MatrixRF& m, const Bindings& b) {
    MatrixRF r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = substitute(m(i, j), b);
    return r;
}

RF determinant(const MatrixRF& m) {
    if (!m.is_square()) throw ArityMismatch("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return RF(1);
    if (n > 12) throw ArityMismatch("determinant supports n <= 12");
    // minors over the last rows, keyed by the set of columns still free
    std::unordered_map<unsigned, RF> memo;
    auto rec = [&](auto&& self, unsigned mask) -> RF {
        int used = static_cast<int>(n) - std::popcount(mask);
        if (mask == 0) return RF(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        RF acc(0);
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const RF& e = m(used, j);
            if (!e.is_zero()) {
                RF minor = self(self, mask & ~(1u << j));
                acc += (pos % 2 ? -e : e) * minor;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, (1u << n) - 1);
}

MatrixRF inverse(const MatrixRF& m) {
    if (!m.is_square()) throw ArityMismatch("inverse of a non-square matrix");
    std::size_t n = m.rows();
    RF d = determinant(m);
    if (d.is_zero()) throw DivisionByZeroFunction("singular matrix");
    MatrixRF r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MatrixRF minor(n - 1, n - 1);
            for (std::size_t a = 0, ra = 0; a < n; ++a) {
                if (a == j) continue;
                for (std::size_t b = 0, cb = 0; b < n; ++b) {
                    if (b == i) continue;
                    minor(ra, cb++) = m(a, b);
                }
                ++ra;
            }
            RF c = determinant(minor) / d;
            r(i, j) = (i + j) % 2 ? -c : c;
        }
    return r;
}

MatrixRF anti_identity(std::size_t n) {
    MatrixRF m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = RF(1);
    return m;
}

MatrixRF permutation_matrix(const Permutation& w) {
    std::size_t n = w.size();
    MatrixRF m(n, n);
    for (std::size_t j = 0; j < n; ++j) m(w[j] - 1, j) = RF(1);
    return m;
}

std::size_t template_width(Template t) {
    switch (t) {
        case Template::ABC: return 3;
        case Template::AB:
        case Template::Flacon: return 2;
        default: return 1;
    }
}

std::string template_name(Template t) {
    switch (t) {
        case Template::ABC: return "abc";
        case Template::AB: return "ab";
        case Template::A: return "a";
        case Template::BZ: return "bz";
        case Template::Neg: return "neg";
        case Template::Unipotent: return "unipotent";
        case Template::Diag: return "diag";
        case Template::Flacon: return "flacon";
    }
    return "?";
}

Template parse_template(const std::string& name) {
    for (Template t : {Template::ABC, Template::AB, Template::A, Template::BZ, Template::Neg, Template::Unipotent,
                       Template::Diag, Template::Flacon})
        if (template_name(t) == name) return t;
    throw UnknownSymbol("unknown matrix template '" + name + "'");
}

MatrixRF template_matrix(Template t, const std::vector<RF>& p) {
    if (p.size() != template_width(t))
        throw ArityMismatch("template " + template_name(t) + " takes " + std::to_string(template_width(t)) +
                            " parameters, got " + std::to_string(p.size()));
    switch (t) {
        case Template::ABC: return MatrixRF::from_rows({{p[0], p[1]}, {p[2], RF(0)}});
        case Template::AB: return MatrixRF::from_rows({{p[0], p[1]}, {p[1].inverse(), RF(0)}});
        case Template::A: return MatrixRF::from_rows({{p[0], RF(1)}, {RF(1), RF(0)}});
        case Template::BZ: return MatrixRF::from_rows({{p[0].inverse(), RF(1)}, {RF(0), p[0]}});
        case Template::Neg: return MatrixRF::from_rows({{p[0], RF(-1)}, {RF(1), RF(0)}});
        case Template::Unipotent: return MatrixRF::from_rows({{RF(1), p[0]}, {RF(0), RF(1)}});
        case Template::Diag: return MatrixRF::from_rows({{p[0].inverse(), RF(0)}, {RF(0), p[0]}});
        case Template::Flacon: return MatrixRF::from_rows({{p[0].inverse(), p[1]}, {RF(0), p[0]}});
    }
    throw UnknownSymbol("bad template");
}

std::vector<std::vector<RF>> symbolic_blocks(Template t, std::size_t count) {
    std::vector<std::string> letters = {"a", "b", "c"};
    if (t == Template::Flacon) letters = {"a", "x"};
    letters.resize(template_width(t));
    std::vector<std::vector<RF>> out;
    for (std::size_t k = 1; k <= count; ++k) {
        std::vector<RF> block;
        for (const auto& l : letters) block.push_back(var(l + std::to_string(k)));
        out.push_back(std::move(block));
    }
    return out;
}

MatrixRF pair_embed(const MatrixRF& a, int p, int q, std::size_t n) {
    int N = static_cast<int>(n);
    if (a.rows() != 2 || a.cols() != 2) throw ArityMismatch("embedding needs a 2x2 block");
    if (p < 1 || q > N || p >= q)
        throw IndexOutOfRange("embedding at (" + std::to_string(p) + "," + std::to_string(q) + ") in n=" +
                              std::to_string(n));
    MatrixRF m = MatrixRF::identity(n);
    m(p - 1, p - 1) = a(0, 0);
    m(p - 1, q - 1) = a(0, 1);
    m(q - 1, p - 1) = a(1, 0);
    m(q - 1, q - 1) = a(1, 1);
    return m;
}

MatrixRF phi_embed(const MatrixRF& a, int i, std::size_t n) {
    if (i < 1 || i + 1 > static_cast<int>(n))
        throw IndexOutOfRange("phi_" + std::to_string(i) + " needs 1 <= i <= n-1 with n=" + std::to_string(n));
    return pair_embed(a, i, i + 1, n);
}

MatrixRF m13_embed(const MatrixRF& a, std::size_t n) { return pair_embed(a, 1, 3, n); }

std::vector<MatrixRF> product_along_word(std::size_t n, const std::vector<int>& letters,
                                         const std::vector<std::vector<RF>>& blocks, Template t) {
    if (blocks.size() != letters.size())
        throw ArityMismatch(std::to_string(blocks.size()) + " blocks for a word of length " +
                            std::to_string(letters.size()));
    std::vector<MatrixRF> out{MatrixRF::identity(n)};
    for (std::size_t k = 0; k < letters.size(); ++k)
        out.push_back(out.back() * phi_embed(template_matrix(t, blocks[k]), letters[k], n));
    return out;
}

std::vector<MatrixRF> product_along_word(const ReducedWord& w, const std::vector<std::vector<RF>>& blocks,
                                         Template t) {
    return product_along_word(static_cast<std::size_t>(w.n), w.letters, blocks, t);
}

std::string to_string(TriangularityClass c) {
    switch (c) {
        case TriangularityClass::cUpperN: return "cUpperN";
        case TriangularityClass::cLowerN: return "cLowerN";
        case TriangularityClass::cUpperB: return "cUpperB";
        case TriangularityClass::cLowerB: return "cLowerB";
        case TriangularityClass::UpperN: return "UpperN";
        case TriangularityClass::LowerN: return "LowerN";
        case TriangularityClass::UpperB: return "UpperB";
        case TriangularityClass::LowerB: return "LowerB";
        case TriangularityClass::None: return "None";
    }
    return "?";
}

bool in_class(const MatrixRF& m, TriangularityClass c) {
    if (!m.is_square()) return false;
    std::size_t n = m.rows();
    if (c == TriangularityClass::None) return true;
    bool anti = c == TriangularityClass::cUpperN || c == TriangularityClass::cLowerN ||
                c == TriangularityClass::cUpperB || c == TriangularityClass::cLowerB;
    bool upper = c == TriangularityClass::cUpperN || c == TriangularityClass::cUpperB ||
                 c == TriangularityClass::UpperN || c == TriangularityClass::UpperB;
    bool unit = c == TriangularityClass::cUpperN || c == TriangularityClass::cLowerN ||
                c == TriangularityClass::UpperN || c == TriangularityClass::LowerN;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            const RF& e = m(i - 1, j - 1);
            // key > 0 is the side that must vanish
            long key = anti ? static_cast<long>(i + j) - static_cast<long>(n + 1) : static_cast<long>(i) - static_cast<long>(j);
            if (!upper) key = -key;
            if (key > 0 && !e.is_zero()) return false;
            if (key == 0) {
                if (unit ? !rf_equal(e, RF(1)) : e.is_zero()) return false;
            }
        }
    return true;
}

TriangularityClass classify_triangularity(const MatrixRF& m) {
    for (auto c : {TriangularityClass::cUpperN, TriangularityClass::cLowerN, TriangularityClass::cUpperB,
                   TriangularityClass::cLowerB, TriangularityClass::UpperN, TriangularityClass::LowerN,
                   TriangularityClass::UpperB, TriangularityClass::LowerB})
        if (in_class(m, c)) return c;
    return TriangularityClass::None;
}

CheckReport quaternity_check(std::size_t n, bool n_variant) {
    using TC = TriangularityClass;
    CheckReport r(std::string(n_variant ? "N" : "B") + "-quaternity n=" + std::to_string(n));
    MatrixRF I = anti_identity(n);
    r.require(I.equals(I.transpose()) && (I * I).equals(MatrixRF::identity(n)), "I(n)^2 = I_n");

    // corners in loop order, each with the map leaving it
    struct Corner {
        TC cls;
        bool left;  // next map multiplies by I(n) on the left
    };
    std::vector<Corner> loop = {{n_variant ? TC::UpperN : TC::UpperB, true},
                                {n_variant ? TC::cLowerN : TC::cLowerB, false},
                                {n_variant ? TC::LowerN : TC::LowerB, true},
                                {n_variant ? TC::cUpperN : TC::cUpperB, false}};
    auto sample = [&](TC c) {
        auto keep = [&](std::size_t i, std::size_t j) {
            switch (c) {
                case TC::UpperB: case TC::UpperN: return i <= j;
                case TC::LowerB: case TC::LowerN: return i >= j;
                case TC::cUpperB: case TC::cUpperN: return i + j <= n + 1;
                default: return i + j >= n + 1;
            }
        };
        bool anti = c == TC::cUpperB || c == TC::cUpperN || c == TC::cLowerB || c == TC::cLowerN;
        return generic(n, "m", keep, n_variant, anti);
    };
    for (std::size_t start = 0; start < 4; ++start) {
        MatrixRF a = sample(loop[start].cls);
        r.require(in_class(a, loop[start].cls), "sample lies in " + to_string(loop[start].cls));
        MatrixRF cur = a;
        for (std::size_t step = 0; step < 4; ++step) {
            const Corner& from = loop[(start + step) % 4];
            const Corner& to = loop[(start + step + 1) % 4];
            cur = from.left ? I * cur : cur * I;
            r.require(in_class(cur, to.cls), to_string(from.cls) + " -> " + to_string(to.cls) + " lands in " +
                                                 to_string(classify_triangularity(cur)));
        }
        r.require(cur.equals(a), "loop from " + to_string(loop[start].cls) + " is the identity");
    }
    if (r.passed) r.note("loop " + to_string(loop[0].cls) + " -> " + to_string(loop[1].cls) + " -> " +
                         to_string(loop[2].cls) + " -> " + to_string(loop[3].cls) + " -> " + to_string(loop[0].cls) +
                         " is the identity from every corner");
    return throw_unless<QuaternityFails>(r);
}

CheckReport reversal_identities(std::size_t n) {
    CheckReport r("reversal n=" + std::to_string(n));
    MatrixRF a = generic(n, "m", [](std::size_t, std::size_t) { return true; });
    MatrixRF I = anti_identity(n);
    MatrixRF left = I * a, right = a * I;
    bool rows_ok = true, cols_ok = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rows_ok = rows_ok && rf_equal(left(i, j), a(n - 1 - i, j));
            cols_ok = cols_ok && rf_equal(right(i, j), a(i, n - 1 - j));
        }
    r.require(rows_ok, "I(n) A reverses rows");
    r.require(cols_ok, "A I(n) reverses columns");
    r.require((I * I).equals(MatrixRF::identity(n)), "I(n)^2 = I_n");
    return r;
}

MatrixRF elementary(std::size_t n, int i, int j, const RF& a) {
    int N = static_cast<int>(n);
    if (i < 1 || j < 1 || i > N || j > N || i == j)
        throw IndexOutOfRange("e_" + std::to_string(i) + std::to_string(j) + " in n=" + std::to_string(n));
    MatrixRF m = MatrixRF::identity(n);
    m(i - 1, j - 1) = a;
    return m;
}

CheckReport elementary_identities(std::size_t n) {
    CheckReport r("SL_" + std::to_string(n) + " identities");
    if (n < 3) throw IndexOutOfRange("elementary identities need n >= 3");
    int N = static_cast<int>(n);
    RF a = var("a"), b = var("b");
    MatrixRF I = MatrixRF::identity(n);
    auto comm = [](const MatrixRF& x, const MatrixRF& y) { return x * y * inverse(x) * inverse(y); };
    std::size_t inverses = 0, commutators = 0, disjoint = 0;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            if (i == j) continue;
            MatrixRF e = elementary(n, i, j, a);
            r.require((e * elementary(n, i, j, -a)).equals(I) && inverse(e).equals(elementary(n, i, j, -a)),
                      "(e^a_" + std::to_string(i) + std::to_string(j) + ")^-1 = e^-a");
            ++inverses;
            for (int k = 1; k <= N; ++k) {
                if (k == j || k == i) continue;
                MatrixRF lhs = e * elementary(n, j, k, b) * elementary(n, i, j, -a) * elementary(n, j, k, -b);
                r.require(lhs.equals(elementary(n, i, k, a * b)) && comm(e, elementary(n, j, k, b)).equals(lhs),
                          "[e^a_" + std::to_string(i) + std::to_string(j) + ", e^b_" + std::to_string(j) +
                              std::to_string(k) + "] = e^ab_" + std::to_string(i) + std::to_string(k));
                ++commutators;
            }
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l) {
                    if (k == l || k == i || k == j || l == i || l == j) continue;
                    r.require(comm(e, elementary(n, k, l, b)).equals(I),
                              "[e^a_" + std::to_string(i) + std::to_string(j) + ", e^b_" + std::to_string(k) +
                                  std::to_string(l) + "] = I");
                    ++disjoint;
                }
        }
    r.note(std::to_string(inverses) + " inverses, " + std::to_string(commutators) + " commutators, " +
           std::to_string(disjoint) + " disjoint commutators checked");
    return throw_unless<IdentityFails>(r);
}

namespace {

// Leading-term pattern of A applied to (u_n, .., u_1), u_i = x^(i-1)/(i-1)! + h_i x^i.
// Component k must start with +-x^(k-1)/(k-1)!; returns the signs.
std::vector<int> column_pattern(const MatrixRF& a, CheckReport& r) {
    std::size_t n = a.rows();
    std::vector<RF> col(n);
    RF x = var("x");
    RF fact(1);
    std::vector<RF> u(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        if (i > 1) fact = fact * RF(static_cast<long>(i - 1));
        u[i] = x.pow(static_cast<int>(i - 1)) / fact + var("h" + std::to_string(i)) * x.pow(static_cast<int>(i));
    }
    for (std::size_t k = 0; k < n; ++k) col[k] = u[n - k];
    MatrixRF img = a * MatrixRF::column(col);
    std::vector<int> signs;
    RF f(1);
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) f = f * RF(static_cast<long>(k));
        auto s = TruncatedSeries::from_rf(img(k, 0), "x", static_cast<unsigned>(n + 1));
        bool low_zero = true;
        for (std::size_t j = 0; j < k; ++j) low_zero = low_zero && s[static_cast<unsigned>(j)].is_zero();
        const RF& lead = s[static_cast<unsigned>(k)];
        int sign = rf_equal(lead, RF(1) / f) ? 1 : rf_equal(lead, RF(-1) / f) ? -1 : 0;
        r.require(low_zero && sign != 0, "component " + std::to_string(k + 1) + " starts with +-x^" +
                                             std::to_string(k) + "/" + std::to_string(k) + "!, got " +
                                             s.render());
        signs.push_back(sign);
    }
    return signs;
}

std::string sign_pattern(const std::vector<int>& signs) {
    std::string s;
    const char* tail[] = {"1", "x", "x^2/2", "x^3/6", "x^4/24", "x^5/120"};
    for (std::size_t k = 0; k < signs.size(); ++k)
        s += std::string(k ? ", " : "") + (signs[k] > 0 ? "" : "-") + (k < 6 ? tail[k] : "?") + " + ...";
    return "(" + s + ")";
}

}  // namespace

CheckReport triple_quadruple_evolution() {
    CheckReport r("triple/quadruple evolution");
    RF a = var("a"), b = var("b"), c = var("c");
    auto A = [](std::size_t n, int i, const RF& p) { return phi_embed(template_matrix(Template::Neg, {p}), i, n); };

    MatrixRF ab = A(3, 1, a) * A(3, 2, b);
    MatrixRF ab_paper = MatrixRF::from_rows({{a, -b, RF(1)}, {RF(1), RF(0), RF(0)}, {RF(0), RF(1), RF(0)}});
    r.require(ab.equals(ab_paper), "A1(a)A2(b) = " + matrix_str(ab_paper) + ", got " + matrix_str(ab));
    MatrixRF swapped = permutation_matrix({1, 3, 2}) * ab;
    r.require(in_class(swapped, TriangularityClass::cUpperB), "A1(a)A2(b) with rows 2,3 swapped is c-upper");

    MatrixRF abc = ab * A(3, 1, c);
    MatrixRF abc_paper =
        MatrixRF::from_rows({{a * c - b, -a, RF(1)}, {c, RF(-1), RF(0)}, {RF(1), RF(0), RF(0)}});
    r.require(abc.equals(abc_paper), "A1(a)A2(b)A1(c) = " + matrix_str(abc_paper) + ", got " + matrix_str(abc));
    r.require(in_class(abc, TriangularityClass::cUpperB), "triple product is c-upper");
    auto s3 = column_pattern(abc, r);
    r.require(s3 == std::vector<int>{1, -1, 1}, "triple column image is (1, -x, x^2/2) + ...");
    r.note("triple column image " + sign_pattern(s3));

    MatrixRF quad = A(4, 1, a) * A(4, 2, b) * A(4, 1, a) * A(4, 3, c) * A(4, 2, b) * A(4, 1, a);
    r.require(in_class(quad, TriangularityClass::cUpperB), "quadruple product is c-upper");
    bool pm1 = true;
    for (std::size_t i = 0; i < 4; ++i) {
        const RF& e = quad(i, 3 - i);
        pm1 = pm1 && (rf_equal(e, RF(1)) || rf_equal(e, RF(-1)));
    }
    r.require(pm1, "quadruple complementary diagonal is +-1");
    auto s4 = column_pattern(quad, r);
    r.note("quadruple product " + matrix_str(quad));
    r.note("quadruple column image " + sign_pattern(s4));
    return throw_unless<IdentityFails>(r);
}

CheckReport bz_braid_check() {
    CheckReport r("BZ braid relation");
    RF a = var("a"), b = var("b"), c = var("c");
    RF ap = b * c / (a * c + b), bp = a * c, cp = (a * c + b) / c;
    auto A = [](int i, const RF& p) { return phi_embed(template_matrix(Template::BZ, {p}), i, 3); };
    MatrixRF lhs = A(1, c) * A(2, b) * A(1, a);
    MatrixRF rhs = A(2, cp) * A(1, bp) * A(2, ap);
    r.require(lhs.equals(rhs), "A1(c)A2(b)A1(a) = A2(c')A1(b')A2(a'): " + matrix_str(lhs) + " vs " +
                                   matrix_str(rhs));
    r.note("a' = " + ap.render() + ", b' = " + bp.render() + ", c' = " + cp.render());
    return throw_unless<IdentityFails>(r);
}

MatrixRF long_product_triangularity(const ReducedWord& w) {
    auto blocks = symbolic_blocks(Template::ABC, w.length());
    MatrixRF m = product_along_word(w, blocks, Template::ABC).back();
    if (!in_class(m, TriangularityClass::cUpperB))
        throw TheoremViolated("product along " + w.str() + " is " + to_string(classify_triangularity(m)) +
                              ", not c-upper");
    return m;
}

Permutation permutation_factorization(const MatrixRF& prefix, Side side) {
    std::size_t n = prefix.rows();
    if (!prefix.is_square() || n == 0 || n > 6) throw ArityMismatch("permutation factorization needs 1 <= n <= 6");
    Permutation sigma = identity_permutation(static_cast<int>(n));
    std::vector<Permutation> hits;
    do {
        // iota(s) M has row s(j) equal to row j of M; M iota(s) has column j equal to column s(j)
        MatrixRF moved(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (side == Side::Left)
                    moved(sigma[i] - 1, j) = prefix(i, j);
                else
                    moved(i, j) = prefix(i, sigma[j] - 1);
            }
        if (in_class(moved, TriangularityClass::cUpperB)) hits.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    std::string where = side == Side::Left ? "iota(s) M" : "M iota(s)";
    if (hits.empty()) throw NoPermutation("no s with " + where + " c-upper");
    if (hits.size() > 1)
        throw NonUniquePermutation(std::to_string(hits.size()) + " permutations put " + where + " in B+^c, e.g. " +
                                   perm_str(hits[0]) + " and " + perm_str(hits[1]));
    return hits.front();
}

std::vector<FactorizationRow> factorization_table(const ReducedWord& w, Side side) {
    auto blocks = symbolic_blocks(Template::ABC, w.length());
    auto prefixes = product_along_word(w, blocks, Template::ABC);
    std::vector<FactorizationRow> out;
    for (std::size_t k = 0; k < prefixes.size(); ++k) {
        FactorizationRow row;
        row.k = k;
        row.found = permutation_factorization(prefixes[k], side);
        row.prefix = word_to_permutation(w.n, std::vector<int>(w.letters.begin(), w.letters.begin() + k));
        row.suffix = word_to_permutation(w.n, std::vector<int>(w.letters.begin() + k, w.letters.end()));
        out.push_back(std::move(row));
    }
    return out;
}

CheckReport determinant_multiplicativity(std::size_t n) {
    CheckReport r("det multiplicativity n=" + std::to_string(n));
    for (Template t : {Template::ABC, Template::AB, Template::BZ, Template::Neg}) {
        ReducedWord w = minimal_word(static_cast<int>(n));
        auto blocks = symbolic_blocks(t, w.length());
        MatrixRF prod = product_along_word(w, blocks, t).back();
        RF expected(1);
        for (std::size_t k = 0; k < blocks.size(); ++k)
            expected *= determinant(phi_embed(template_matrix(t, blocks[k]), w.letters[k], n));
        r.require(rf_equal(determinant(prod), expected), "det along " + w.str() + " with " + template_name(t));
    }
    if (n <= 3) {
        MatrixRF g = generic(n, "m", [](std::size_t, std::size_t) { return true; });
        MatrixRF h = generic(n, "p", [](std::size_t, std::size_t) { return true; });
        r.require(rf_equal(determinant(g * h), determinant(g) * determinant(h)), "det(GH) = det G det H");
    }
    return r;
}

}  // namespace tetra
