#pragma once

// Sparse exact linear algebra.  Row-major storage with sorted column lists.
// Elimination is fraction-free (Bareiss two-term updates, exact divisions by
// the previous pivot) with Markowitz min-fill pivot selection and (row, col)
// lexicographic tie-breaks, so results are deterministic across runs and
// platforms.  RREF / kernel bases / solutions are the canonical ones (RREF is
// unique, kernel columns come from free columns in ascending order).

#include "tiltcover/rational.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace tiltcover {

template <class K>
class SpMat {
public:
    using Entry = std::pair<int, K>;  // (col, value), value != 0
    using Row = std::vector<Entry>;   // sorted by col

    SpMat() : nrows_(0), ncols_(0) {}
    SpMat(int r, int c) : nrows_(r), ncols_(c), rows_(r) {
        assert(r >= 0 && c >= 0);
    }

    static SpMat identity(int n) {
        SpMat m(n, n);
        for (int i = 0; i < n; ++i) m.rows_[i].push_back({i, K(1)});
        return m;
    }
    static SpMat zero(int r, int c) { return SpMat(r, c); }

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }

    const Row& row(int r) const { return rows_[r]; }

    K get(int r, int c) const {
        assert(r >= 0 && r < nrows_ && c >= 0 && c < ncols_);
        const Row& rw = rows_[r];
        auto it = std::lower_bound(rw.begin(), rw.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        if (it != rw.end() && it->first == c) return it->second;
        return K(0);
    }

    void set(int r, int c, const K& v) {
        assert(r >= 0 && r < nrows_ && c >= 0 && c < ncols_);
        Row& rw = rows_[r];
        auto it = std::lower_bound(rw.begin(), rw.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        bool present = (it != rw.end() && it->first == c);
        if (is_zero_val(v)) {
            if (present) rw.erase(it);
        } else if (present) {
            it->second = v;
        } else {
            rw.insert(it, {c, v});
        }
    }

    void add_to(int r, int c, const K& v) { set(r, c, get(r, c) + v); }

    int nnz() const {
        int n = 0;
        for (const Row& r : rows_) n += static_cast<int>(r.size());
        return n;
    }

    bool is_zero_matrix() const {
        for (const Row& r : rows_)
            if (!r.empty()) return false;
        return true;
    }

    SpMat transpose() const {
        SpMat t(ncols_, nrows_);
        for (int r = 0; r < nrows_; ++r)
            for (const Entry& e : rows_[r]) t.rows_[e.first].push_back({r, e.second});
        // column-order traversal already emits sorted rows
        return t;
    }

    friend SpMat operator*(const SpMat& a, const SpMat& b) {
        assert(a.ncols_ == b.nrows_);
        SpMat c(a.nrows_, b.ncols_);
        std::vector<K> acc(b.ncols_, K(0));
        std::vector<int> touched;
        for (int r = 0; r < a.nrows_; ++r) {
            touched.clear();
            for (const Entry& ea : a.rows_[r])
                for (const Entry& eb : b.rows_[ea.first]) {
                    if (is_zero_val(acc[eb.first])) touched.push_back(eb.first);
                    acc[eb.first] = acc[eb.first] + ea.second * eb.second;
                }
            std::sort(touched.begin(), touched.end());
            for (int col : touched) {
                if (!is_zero_val(acc[col])) c.rows_[r].push_back({col, acc[col]});
                acc[col] = K(0);
            }
        }
        return c;
    }

    friend SpMat operator+(const SpMat& a, const SpMat& b) { return combine(a, b, K(1)); }
    friend SpMat operator-(const SpMat& a, const SpMat& b) { return combine(a, b, K(-1)); }

    SpMat scaled(const K& s) const {
        SpMat m(nrows_, ncols_);
        if (is_zero_val(s)) return m;
        for (int r = 0; r < nrows_; ++r) {
            m.rows_[r].reserve(rows_[r].size());
            for (const Entry& e : rows_[r]) m.rows_[r].push_back({e.first, e.second * s});
        }
        return m;
    }

    friend bool operator==(const SpMat& a, const SpMat& b) {
        return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const SpMat& a, const SpMat& b) { return !(a == b); }

    // stack b below this
    static SpMat vstack(const SpMat& a, const SpMat& b) {
        assert(a.ncols_ == b.ncols_);
        SpMat m(a.nrows_ + b.nrows_, a.ncols_);
        for (int r = 0; r < a.nrows_; ++r) m.rows_[r] = a.rows_[r];
        for (int r = 0; r < b.nrows_; ++r) m.rows_[a.nrows_ + r] = b.rows_[r];
        return m;
    }
    static SpMat hstack(const SpMat& a, const SpMat& b) {
        assert(a.nrows_ == b.nrows_);
        SpMat m(a.nrows_, a.ncols_ + b.ncols_);
        for (int r = 0; r < a.nrows_; ++r) {
            m.rows_[r] = a.rows_[r];
            for (const Entry& e : b.rows_[r]) m.rows_[r].push_back({a.ncols_ + e.first, e.second});
        }
        return m;
    }

    SpMat submatrix_rows(const std::vector<int>& sel) const {
        SpMat m(static_cast<int>(sel.size()), ncols_);
        for (int i = 0; i < static_cast<int>(sel.size()); ++i) m.rows_[i] = rows_[sel[i]];
        return m;
    }
    SpMat submatrix_cols(int c0, int c1) const {  // columns [c0, c1)
        SpMat m(nrows_, c1 - c0);
        for (int r = 0; r < nrows_; ++r)
            for (const Entry& e : rows_[r])
                if (e.first >= c0 && e.first < c1) m.rows_[r].push_back({e.first - c0, e.second});
        return m;
    }

    void set_row(int r, const Row& rw) { rows_[r] = rw; }

    std::string to_string() const {
        std::ostringstream os;
        for (int r = 0; r < nrows_; ++r) {
            for (int c = 0; c < ncols_; ++c) {
                if (c) os << ' ';
                os << get(r, c);
            }
            os << '\n';
        }
        return os.str();
    }

private:
    static bool is_zero_val(const K& v) {
        if constexpr (std::is_same_v<K, Fp>) return v.is_zero();
        else return sgn(v) == 0;
    }

    static SpMat combine(const SpMat& a, const SpMat& b, const K& s) {
        assert(a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_);
        SpMat m(a.nrows_, a.ncols_);
        for (int r = 0; r < a.nrows_; ++r) {
            const Row& x = a.rows_[r];
            const Row& y = b.rows_[r];
            Row out;
            out.reserve(x.size() + y.size());
            std::size_t i = 0, j = 0;
            while (i < x.size() || j < y.size()) {
                if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                    out.push_back(x[i++]);
                } else if (i == x.size() || y[j].first < x[i].first) {
                    K v = y[j].second * s;
                    if (!is_zero_val(v)) out.push_back({y[j].first, v});
                    ++j;
                } else {
                    K v = x[i].second + y[j].second * s;
                    if (!is_zero_val(v)) out.push_back({x[i].first, v});
                    ++i; ++j;
                }
            }
            m.rows_[r] = std::move(out);
        }
        return m;
    }

    int nrows_, ncols_;
    std::vector<Row> rows_;

    template <class K2> friend struct Eliminator;
};

using QMat = SpMat<Rational>;
using FMat = SpMat<Fp>;

// Forward elimination state shared by rank / rref / solve / kernel.
template <class K>
struct Eliminator {
    using Row = typename SpMat<K>::Row;
    using Entry = typename SpMat<K>::Entry;

    std::vector<Row> work;
    std::vector<char> row_active;
    std::vector<char> col_active;
    std::vector<std::pair<int, int>> pivots;  // (work row, col) in elimination order
    int ncols;
    int pivot_col_limit = -1;  // when >= 0, only columns < limit may pivot

    explicit Eliminator(const SpMat<K>& m) : ncols(m.cols()) {
        work.reserve(m.rows());
        for (int r = 0; r < m.rows(); ++r) work.push_back(m.rows_[r]);
        row_active.assign(m.rows(), 1);
        col_active.assign(m.cols(), 1);
    }

    static bool zero_val(const K& v) {
        if constexpr (std::is_same_v<K, Fp>) return v.is_zero();
        else return sgn(v) == 0;
    }

    // Markowitz cost (nnz_row - 1)(nnz_col - 1), ties broken by (row, col).
    bool pick_pivot(int& pr, int& pc) {
        std::vector<int> col_nnz(ncols, 0);
        for (std::size_t r = 0; r < work.size(); ++r)
            if (row_active[r])
                for (const Entry& e : work[r]) ++col_nnz[e.first];
        long best = -1;
        pr = pc = -1;
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (!row_active[r]) continue;
            long rn = static_cast<long>(work[r].size()) - 1;
            for (const Entry& e : work[r]) {
                if (pivot_col_limit >= 0 && e.first >= pivot_col_limit) continue;
                long cost = rn * (col_nnz[e.first] - 1);
                if (best < 0 || cost < best ||
                    (cost == best && (static_cast<int>(r) < pr || (static_cast<int>(r) == pr && e.first < pc)))) {
                    best = cost;
                    pr = static_cast<int>(r);
                    pc = e.first;
                }
            }
        }
        return pr >= 0;
    }

    // Bareiss forward sweep: row_j <- (piv*row_j - a*row_piv) / prev_piv.
    void forward() {
        K prev(1);
        int pr, pc;
        while (pick_pivot(pr, pc)) {
            const K piv = value_at(work[pr], pc);
            for (std::size_t r = 0; r < work.size(); ++r) {
                if (!row_active[r] || static_cast<int>(r) == pr) continue;
                const K a = value_at(work[r], pc);
                if (zero_val(a)) continue;
                work[r] = row_combine_div(piv, work[r], a, work[pr], prev);
            }
            row_active[pr] = 0;
            col_active[pc] = 0;
            pivots.push_back({pr, pc});
            prev = piv;
        }
    }

    static K value_at(const Row& row, int col) {
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const Entry& e, int c) { return e.first < c; });
        if (it != row.end() && it->first == col) return it->second;
        return K(0);
    }

    // (p*x - a*y) / d, exact
    static Row row_combine_div(const K& p, const Row& x, const K& a, const Row& y, const K& d) {
        Row out;
        out.reserve(x.size() + y.size());
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                K v = (p * x[i].second) / d;
                if (!zero_val(v)) out.push_back({x[i].first, v});
                ++i;
            } else if (i == x.size() || y[j].first < x[i].first) {
                K v = (K(0) - a * y[j].second) / d;
                if (!zero_val(v)) out.push_back({y[j].first, v});
                ++j;
            } else {
                K v = (p * x[i].second - a * y[j].second) / d;
                if (!zero_val(v)) out.push_back({x[i].first, v});
                ++i; ++j;
            }
        }
        return out;
    }

    // Unique RREF from the frozen pivot rows: Gauss-Jordan with columns taken
    // in ascending pivot-column order.  The pivot rows restricted to the pivot
    // columns are invertible, so a nonzero pivot always exists.
    SpMat<K> rref(std::vector<int>* pivot_cols_out) const {
        std::vector<int> cols_sorted;
        cols_sorted.reserve(pivots.size());
        for (const auto& pc : pivots) cols_sorted.push_back(pc.second);
        std::sort(cols_sorted.begin(), cols_sorted.end());
        int k = static_cast<int>(pivots.size());
        std::vector<Row> rr;
        rr.reserve(k);
        for (const auto& pc : pivots) rr.push_back(work[pc.first]);
        for (int i = 0; i < k; ++i) {
            int c = cols_sorted[i];
            int sel = -1;
            for (int j = i; j < k; ++j)
                if (!zero_val(value_at(rr[j], c))) { sel = j; break; }
            assert(sel >= 0 && "pivot submatrix must be invertible");
            std::swap(rr[i], rr[sel]);
            const K piv = value_at(rr[i], c);
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                const K a = value_at(rr[j], c);
                if (zero_val(a)) continue;
                rr[j] = row_combine_div(piv, rr[j], a, rr[i], piv);  // row_j - (a/piv) row_i
            }
        }
        SpMat<K> R(k, ncols);
        for (int i = 0; i < k; ++i) {
            const K piv = value_at(rr[i], cols_sorted[i]);
            Row norm;
            norm.reserve(rr[i].size());
            for (const Entry& e : rr[i]) norm.push_back({e.first, e.second / piv});
            R.rows_[i] = std::move(norm);
        }
        if (pivot_cols_out) *pivot_cols_out = cols_sorted;
        return R;
    }
};

template <class K>
int rank(const SpMat<K>& m) {
    Eliminator<K> e(m);
    e.forward();
    return static_cast<int>(e.pivots.size());
}

// Unique reduced row echelon form; rows sorted by pivot column.
template <class K>
SpMat<K> rref(const SpMat<K>& m, std::vector<int>* pivot_cols = nullptr) {
    Eliminator<K> e(m);
    e.forward();
    return e.rref(pivot_cols);
}

// Columns form the canonical basis of { x : m x = 0 }: one column per free
// column of rref(m), in ascending free-column order.
template <class K>
SpMat<K> kernel_basis(const SpMat<K>& m) {
    std::vector<int> piv;
    SpMat<K> R = rref(m, &piv);
    std::vector<char> is_piv(m.cols(), 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    SpMat<K> ker(m.cols(), static_cast<int>(free_cols.size()));
    for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
        int f = free_cols[j];
        ker.set(f, j, K(1));
        for (int i = 0; i < R.rows(); ++i) {
            K v = R.get(i, f);
            if (!Eliminator<K>::zero_val(v)) ker.set(piv[i], j, K(0) - v);
        }
    }
    return ker;
}

// Solve m X = B for the canonical particular solution (free variables = 0).
// Returns nullopt when inconsistent.
template <class K>
std::optional<SpMat<K>> solve_matrix(const SpMat<K>& m, const SpMat<K>& B) {
    assert(m.rows() == B.rows());
    SpMat<K> aug = SpMat<K>::hstack(m, B);
    Eliminator<K> e(aug);
    e.pivot_col_limit = m.cols();  // never pivot inside the right-hand block
    e.forward();
    // active rows are now supported in the augmented block only
    for (std::size_t r = 0; r < e.work.size(); ++r)
        if (e.row_active[r] && !e.work[r].empty()) return std::nullopt;
    std::vector<int> piv;
    SpMat<K> R = e.rref(&piv);
    SpMat<K> X(m.cols(), B.cols());
    for (int i = 0; i < R.rows(); ++i) {
        for (const auto& en : R.row(i))
            if (en.first >= m.cols()) X.set(piv[i], en.first - m.cols(), en.second);
    }
    return X;
}

template <class K>
std::optional<SpMat<K>> inverse(const SpMat<K>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto X = solve_matrix(m, SpMat<K>::identity(m.rows()));
    if (!X) return std::nullopt;
    if (!((m * *X) == SpMat<K>::identity(m.rows()))) return std::nullopt;  // rank deficient
    return X;
}

// Rows of the result form the canonical basis of { x : x m = 0 }.
template <class K>
SpMat<K> left_kernel(const SpMat<K>& m) {
    return kernel_basis(m.transpose()).transpose();
}

// Canonical basis (RREF rows) of the row space.
template <class K>
SpMat<K> row_space_basis(const SpMat<K>& m) {
    return rref(m);
}

// Coordinates of the rows of V in the row basis B: solves X B = V.
template <class K>
std::optional<SpMat<K>> coords_in_rows(const SpMat<K>& B, const SpMat<K>& V) {
    auto Xt = solve_matrix(B.transpose(), V.transpose());
    if (!Xt) return std::nullopt;
    return Xt->transpose();
}

// Fast screening rank over F_p.  Callers must confirm rationally; see tests.
inline int rank_mod_p(const QMat& m) {
    FMat f(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r)) f.set(r, e.first, Fp::from_rational(e.second));
    return rank(f);
}

}  // namespace tiltcover
