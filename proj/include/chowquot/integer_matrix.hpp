// Dense exact integer matrices and the Smith normal form, the workhorse
// behind every stabilizer and lattice-saturation computation.

#pragma once

#include <vector>

#include "chowquot/rational.hpp"

namespace chowquot {

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols);
    IntegerMatrix(int rows, int cols, std::vector<Int> entries);
    static IntegerMatrix identity(int n);
    static IntegerMatrix from_rows(const std::vector<ZVector>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    ZVector row(int i) const;
    ZVector col(int j) const;

    IntegerMatrix multiplied(const IntegerMatrix& rhs) const;
    IntegerMatrix transposed() const;

    // Exact determinant by fraction-free elimination (square matrices).
    Int determinant() const;

    bool operator==(const IntegerMatrix& other) const = default;

    // Largest |entry|; zero matrix reports 0.
    Int max_abs_entry() const;

    // Throws ArithmeticOverflowError when any |entry| exceeds the limit.
    void check_magnitude(const Int& limit, const char* where) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

struct SnfOptions {
    // Inputs with larger entries are rejected outright.
    Int input_limit = Int(1) << 200;
    // Guard on intermediate growth during the reduction.
    Int work_limit = Int(1) << 16384;
};

// A = U * D * V with U (rows x rows) and V (cols x cols) unimodular and
// D diagonal with d_1 | d_2 | ... | d_r, d_i >= 0. v_inverse is tracked
// alongside so that lattice-membership coordinates come for free.
struct SmithDecomposition {
    IntegerMatrix u, d, v;
    IntegerMatrix v_inverse;
    int rank = 0;

    // Nonzero diagonal entries, in chain order.
    std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntegerMatrix& a,
                                     const SnfOptions& options = {});

// Basis of { x in Z^cols : A x = 0 }, one vector per column of the result.
// Empty kernel yields a cols x 0 matrix.
IntegerMatrix integer_kernel(const IntegerMatrix& a);

// Rank over Q.
int rank(const IntegerMatrix& a);

}  // namespace chowquot
