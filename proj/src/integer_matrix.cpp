#include "chowquot/integer_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "chowquot/errors.hpp"

namespace chowquot {

IntegerMatrix::IntegerMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("matrix dimensions must be nonnegative");
}

IntegerMatrix::IntegerMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0 || a_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("matrix entry count does not match dimensions");
}

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<ZVector>& rows) {
    if (rows.empty()) return IntegerMatrix(0, 0);
    int cols = static_cast<int>(rows[0].size());
    IntegerMatrix m(static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw std::invalid_argument("ragged row lengths");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
}

ZVector IntegerMatrix::row(int i) const {
    ZVector r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

ZVector IntegerMatrix::col(int j) const {
    ZVector c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntegerMatrix IntegerMatrix::multiplied(const IntegerMatrix& rhs) const {
    assert(cols_ == rhs.rows_);
    IntegerMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += aik * rhs.at(k, j);
        }
    return out;
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Int IntegerMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntegerMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact division
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

Int IntegerMatrix::max_abs_entry() const {
    Int m = 0;
    for (const Int& x : a_) {
        Int ax = abs(x);
        if (ax > m) m = ax;
    }
    return m;
}

void IntegerMatrix::check_magnitude(const Int& limit, const char* where) const {
    if (max_abs_entry() > limit)
        throw ArithmeticOverflowError(std::string(where) +
                                      ": entry magnitude exceeds guard");
}

std::vector<Int> SmithDecomposition::diagonal() const {
    std::vector<Int> out;
    int n = std::min(d.rows(), d.cols());
    for (int i = 0; i < n; ++i)
        if (d.at(i, i) != 0) out.push_back(d.at(i, i));
    return out;
}

namespace {

// Elementary operations on the working matrix B, mirrored onto U (so that
// A = U*B*V stays true) and onto V / V^{-1}.
struct SnfState {
    IntegerMatrix b, u, v, w;  // w = v^{-1}
    const Int* work_limit;

    void guard() const {
        b.check_magnitude(*work_limit, "smith_normal_form");
        u.check_magnitude(*work_limit, "smith_normal_form");
        v.check_magnitude(*work_limit, "smith_normal_form");
        w.check_magnitude(*work_limit, "smith_normal_form");
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < b.cols(); ++c) std::swap(b.at(i, c), b.at(j, c));
        for (int r = 0; r < u.rows(); ++r) std::swap(u.at(r, i), u.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < b.rows(); ++r) std::swap(b.at(r, i), b.at(r, j));
        for (int c = 0; c < v.cols(); ++c) std::swap(v.at(i, c), v.at(j, c));
        for (int r = 0; r < w.rows(); ++r) std::swap(w.at(r, i), w.at(r, j));
    }
    void negate_row(int i) {
        for (int c = 0; c < b.cols(); ++c) b.at(i, c) = -b.at(i, c);
        for (int r = 0; r < u.rows(); ++r) u.at(r, i) = -u.at(r, i);
    }
    // row_i += k * row_j on B; U gets col_j -= k * col_i.
    void add_row(int i, int j, const Int& k) {
        if (k == 0) return;
        for (int c = 0; c < b.cols(); ++c) b.at(i, c) += k * b.at(j, c);
        for (int r = 0; r < u.rows(); ++r) u.at(r, j) -= k * u.at(r, i);
    }
    // col_i += k * col_j on B; V gets row_j -= k * row_i, V^{-1} col_i += k * col_j... mirrored.
    void add_col(int i, int j, const Int& k) {
        if (k == 0) return;
        for (int r = 0; r < b.rows(); ++r) b.at(r, i) += k * b.at(r, j);
        for (int c = 0; c < v.cols(); ++c) v.at(j, c) -= k * v.at(i, c);
        for (int r = 0; r < w.rows(); ++r) w.at(r, i) += k * w.at(r, j);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a, const SnfOptions& options) {
    if (a.empty()) throw std::invalid_argument("smith_normal_form: empty matrix");
    a.check_magnitude(options.input_limit, "smith_normal_form input");

    SnfState s{a, IntegerMatrix::identity(a.rows()), IntegerMatrix::identity(a.cols()),
               IntegerMatrix::identity(a.cols()), &options.work_limit};

    const int m = a.rows(), n = a.cols();
    const int steps = std::min(m, n);
    int t = 0;
    for (; t < steps; ++t) {
        // Pivot: smallest nonzero |entry| of the trailing block.
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (s.b.at(i, j) == 0) continue;
                Int ax = abs(s.b.at(i, j));
                if (pi < 0 || ax < best) { best = ax; pi = i; pj = j; }
            }
        if (pi < 0) break;  // trailing block is zero
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);

        for (;;) {
            // Clear column t below the pivot and row t right of the pivot,
            // re-pivoting on remainders until everything divides.
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (s.b.at(i, t) == 0) continue;
                Int q;
                // Round-to-nearest quotient keeps growth tame.
                mpz_fdiv_q(q.get_mpz_t(), s.b.at(i, t).get_mpz_t(), s.b.at(t, t).get_mpz_t());
                s.add_row(i, t, -q);
                if (s.b.at(i, t) != 0) {
                    s.swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (s.b.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.b.at(t, j).get_mpz_t(), s.b.at(t, t).get_mpz_t());
                s.add_col(j, t, -q);
                if (s.b.at(t, j) != 0) {
                    s.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // Pivot must divide the whole trailing block for the chain.
            bool divides_all = true;
            for (int i = t + 1; i < m && divides_all; ++i)
                for (int j = t + 1; j < n && divides_all; ++j)
                    if (s.b.at(i, j) % s.b.at(t, t) != 0) {
                        s.add_row(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
            s.guard();
        }
        if (s.b.at(t, t) < 0) s.negate_row(t);
        s.guard();
    }

    SmithDecomposition out;
    out.u = std::move(s.u);
    out.v = std::move(s.v);
    out.v_inverse = std::move(s.w);
    out.d = std::move(s.b);
    out.rank = 0;
    for (int i = 0; i < steps; ++i)
        if (out.d.at(i, i) != 0) ++out.rank;
    return out;
}

IntegerMatrix integer_kernel(const IntegerMatrix& a) {
    if (a.empty()) return IntegerMatrix(a.cols(), 0);
    SmithDecomposition snf = smith_normal_form(a);
    // A x = 0  <=>  D (V x) = 0  <=>  (V x)_i = 0 for i < rank.
    // Kernel basis: columns of V^{-1} with index >= rank.
    int free_cols = a.cols() - snf.rank;
    IntegerMatrix kernel(a.cols(), free_cols);
    for (int j = 0; j < free_cols; ++j)
        for (int i = 0; i < a.cols(); ++i)
            kernel.at(i, j) = snf.v_inverse.at(i, snf.rank + j);
    return kernel;
}

int rank(const IntegerMatrix& a) {
    if (a.empty()) return 0;
    return smith_normal_form(a).rank;
}

}  // namespace chowquot
