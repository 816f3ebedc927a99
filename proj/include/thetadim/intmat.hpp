#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetadim {

using i64 = long long;
using Vec = std::vector<i64>;

i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);
i64 gcd_i64(i64 a, i64 b);
// g = a*x + b*y
i64 ext_gcd(i64 a, i64 b, i64 &x, i64 &y);
i64 mod_pos(i64 a, i64 m);

// Row-major dense integer matrix.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<i64> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    i64 &operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    i64 operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(int n);
    Vec col(int c) const;
    void set_col(int c, const Vec &v);
    bool operator==(const Mat &o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat mat_mul(const Mat &A, const Mat &B);
Vec mat_vec(const Mat &A, const Vec &x);
// x^T * A, as a vector of length A.cols
Vec vec_mat(const Vec &x, const Mat &A);
i64 dot(const Vec &x, const Vec &y);
Vec vec_add(const Vec &x, const Vec &y);
Vec vec_sub(const Vec &x, const Vec &y);
Vec vec_scale(i64 c, const Vec &x);
bool is_zero_vec(const Vec &x);
Mat transpose(const Mat &A);
Mat mat_from_cols(const std::vector<Vec> &cols, int rows);

// Smith normal form U*A*V = S with U, V unimodular and S diagonal,
// divisors d_1 | d_2 | ... >= 0.
struct SmithForm {
    Mat U, S, V;
    Vec divisors; // length min(rows, cols), nonnegative
    int rank = 0; // number of nonzero divisors
};
SmithForm smith_form(const Mat &A);

// Unimodular inverse (|det| = 1 required).
Mat unimodular_inverse(const Mat &U);

// Basis of the lattice spanned by the columns of gens: full-column-rank
// matrix in column Hermite form.
Mat hnf_basis(const Mat &gens);

// Solve B*x = y over the integers; false if no solution.
bool solve_columns(const Mat &B, const Vec &y, Vec &out);

// Columns span {x : A*x = 0} over Z (a saturated sublattice).
Mat integer_kernel(const Mat &A);

// Basis of the intersection of two column lattices in the same ambient space.
Mat lattice_intersection(const Mat &A, const Mat &B);

// Canonical coset representative of y modulo the column lattice of `basis`.
// Works for sublattices of any rank; equal outputs iff same coset.
struct CosetReducer {
    Mat hnf;                 // column HNF of the basis
    std::vector<int> pivot_row; // pivot row of each HNF column
    CosetReducer() = default;
    explicit CosetReducer(const Mat &basis);
    Vec reduce(Vec y) const;
};

std::string vec_str(const Vec &v);

} // namespace thetadim
