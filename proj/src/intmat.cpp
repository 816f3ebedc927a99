#include "thetadim/intmat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thetadim {

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

i64 gcd_i64(i64 a, i64 b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 ext_gcd(i64 a, i64 b, i64 &x, i64 &y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return std::llabs(a);
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i64 mod_pos(i64 a, i64 m) {
    if (m <= 0) throw std::invalid_argument("mod_pos: modulus must be positive");
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

Mat Mat::identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Vec Mat::col(int c) const {
    Vec v(rows);
    for (int r = 0; r < rows; ++r) v[r] = (*this)(r, c);
    return v;
}

void Mat::set_col(int c, const Vec &v) {
    for (int r = 0; r < rows; ++r) (*this)(r, c) = v[r];
}

Mat mat_mul(const Mat &A, const Mat &B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            i64 aik = A(i, k);
            if (!aik) continue;
            for (int j = 0; j < B.cols; ++j)
                C(i, j) = checked_add(C(i, j), checked_mul(aik, B(k, j)));
        }
    return C;
}

Vec mat_vec(const Mat &A, const Vec &x) {
    if (A.cols != static_cast<int>(x.size())) throw std::invalid_argument("mat_vec: shape mismatch");
    Vec y(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        i64 s = 0;
        for (int j = 0; j < A.cols; ++j) s = checked_add(s, checked_mul(A(i, j), x[j]));
        y[i] = s;
    }
    return y;
}

Vec vec_mat(const Vec &x, const Mat &A) {
    if (A.rows != static_cast<int>(x.size())) throw std::invalid_argument("vec_mat: shape mismatch");
    Vec y(A.cols, 0);
    for (int j = 0; j < A.cols; ++j) {
        i64 s = 0;
        for (int i = 0; i < A.rows; ++i) s = checked_add(s, checked_mul(x[i], A(i, j)));
        y[j] = s;
    }
    return y;
}

i64 dot(const Vec &x, const Vec &y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    i64 s = 0;
    for (size_t i = 0; i < x.size(); ++i) s = checked_add(s, checked_mul(x[i], y[i]));
    return s;
}

Vec vec_add(const Vec &x, const Vec &y) {
    Vec z(x);
    for (size_t i = 0; i < x.size(); ++i) z[i] = checked_add(z[i], y[i]);
    return z;
}

Vec vec_sub(const Vec &x, const Vec &y) {
    Vec z(x);
    for (size_t i = 0; i < x.size(); ++i) z[i] = checked_add(z[i], -y[i]);
    return z;
}

Vec vec_scale(i64 c, const Vec &x) {
    Vec z(x);
    for (auto &v : z) v = checked_mul(c, v);
    return z;
}

bool is_zero_vec(const Vec &x) {
    return std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; });
}

Mat transpose(const Mat &A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

Mat mat_from_cols(const std::vector<Vec> &cols, int rows) {
    Mat M(rows, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        if (static_cast<int>(cols[c].size()) != rows)
            throw std::invalid_argument("mat_from_cols: column size mismatch");
        M.set_col(static_cast<int>(c), cols[c]);
    }
    return M;
}

namespace {

void row_swap(Mat &M, int r1, int r2) {
    for (int c = 0; c < M.cols; ++c) std::swap(M(r1, c), M(r2, c));
}
void col_swap(Mat &M, int c1, int c2) {
    for (int r = 0; r < M.rows; ++r) std::swap(M(r, c1), M(r, c2));
}
// row r1 += k * row r2
void row_addmul(Mat &M, int r1, int r2, i64 k) {
    for (int c = 0; c < M.cols; ++c) M(r1, c) = checked_add(M(r1, c), checked_mul(k, M(r2, c)));
}
void col_addmul(Mat &M, int c1, int c2, i64 k) {
    for (int r = 0; r < M.rows; ++r) M(r, c1) = checked_add(M(r, c1), checked_mul(k, M(r, c2)));
}
void row_negate(Mat &M, int r) {
    for (int c = 0; c < M.cols; ++c) M(r, c) = -M(r, c);
}
void col_negate(Mat &M, int c) {
    for (int r = 0; r < M.rows; ++r) M(r, c) = -M(r, c);
}

} // namespace

SmithForm smith_form(const Mat &A) {
    SmithForm f;
    f.S = A;
    f.U = Mat::identity(A.rows);
    f.V = Mat::identity(A.cols);
    Mat &S = f.S;
    int m = A.rows, n = A.cols;
    int t = 0;
    while (t < m && t < n) {
        // locate minimal nonzero entry in the trailing block
        int pr = -1, pc = -1;
        i64 best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                i64 v = std::llabs(S(i, j));
                if (v != 0 && (pr < 0 || v < best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        if (pr != t) { row_swap(S, t, pr); row_swap(f.U, t, pr); }
        if (pc != t) { col_swap(S, t, pc); col_swap(f.V, t, pc); }
        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
            if (S(i, t) != 0) {
                i64 q = S(i, t) / S(t, t);
                row_addmul(S, i, t, -q);
                row_addmul(f.U, i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
        }
        for (int j = t + 1; j < n; ++j) {
            if (S(t, j) != 0) {
                i64 q = S(t, j) / S(t, t);
                col_addmul(S, j, t, -q);
                col_addmul(f.V, j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
        }
        if (!clean) continue; // smaller remainders exist, pick a new pivot
        // pivot must divide the rest of the block
        bool divides = true;
        for (int i = t + 1; i < m && divides; ++i)
            for (int j = t + 1; j < n; ++j)
                if (S(i, j) % S(t, t) != 0) {
                    row_addmul(S, t, i, 1);
                    row_addmul(f.U, t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (S(t, t) < 0) { row_negate(S, t); row_negate(f.U, t); }
        ++t;
    }
    int k = std::min(m, n);
    f.divisors.assign(k, 0);
    for (int i = 0; i < k; ++i) f.divisors[i] = S(i, i);
    f.rank = 0;
    for (int i = 0; i < k; ++i)
        if (f.divisors[i] != 0) ++f.rank;
    return f;
}

Mat unimodular_inverse(const Mat &U) {
    if (U.rows != U.cols) throw std::invalid_argument("unimodular_inverse: not square");
    // U A V = I for unimodular A, so A^{-1} = V U
    SmithForm f = smith_form(U);
    for (i64 d : f.divisors)
        if (d != 1) throw std::invalid_argument("unimodular_inverse: |det| != 1");
    return mat_mul(f.V, f.U);
}

Mat hnf_basis(const Mat &gens) {
    Mat H = gens;
    int m = H.rows, n = H.cols;
    int row = 0, col = 0;
    while (row < m && col < n) {
        int p = -1;
        for (int j = col; j < n; ++j)
            if (H(row, j) != 0 && (p < 0 || std::llabs(H(row, j)) < std::llabs(H(row, p)))) p = j;
        if (p < 0) { ++row; continue; }
        if (p != col) col_swap(H, col, p);
        bool again = true;
        while (again) {
            again = false;
            for (int j = col + 1; j < n; ++j) {
                if (H(row, j) == 0) continue;
                i64 q = H(row, j) / H(row, col);
                col_addmul(H, j, col, -q);
                if (H(row, j) != 0) { col_swap(H, j, col); again = true; }
            }
        }
        if (H(row, col) < 0) col_negate(H, col);
        // reduce earlier columns against this pivot
        for (int j = 0; j < col; ++j) {
            i64 q = (H(row, j) >= 0 ? H(row, j) / H(row, col) : -((-H(row, j) + H(row, col) - 1) / H(row, col)));
            if (q != 0) col_addmul(H, j, col, -q);
        }
        ++row;
        ++col;
    }
    // drop zero columns
    std::vector<Vec> keep;
    for (int j = 0; j < n; ++j) {
        Vec c = H.col(j);
        if (!is_zero_vec(c)) keep.push_back(c);
    }
    return mat_from_cols(keep, m);
}

bool solve_columns(const Mat &B, const Vec &y, Vec &out) {
    if (B.rows != static_cast<int>(y.size())) throw std::invalid_argument("solve_columns: shape mismatch");
    if (B.cols == 0) {
        out.clear();
        return is_zero_vec(y);
    }
    SmithForm f = smith_form(B);
    Vec uy = mat_vec(f.U, y);
    int k = std::min(B.rows, B.cols);
    Vec z(B.cols, 0);
    for (int i = 0; i < B.rows; ++i) {
        i64 d = (i < k) ? f.divisors[i] : 0;
        if (i < k && d != 0) {
            if (uy[i] % d != 0) return false;
            z[i] = uy[i] / d;
        } else {
            if (uy[i] != 0) return false;
        }
    }
    out = mat_vec(f.V, z);
    return true;
}

Mat integer_kernel(const Mat &A) {
    if (A.cols == 0) return Mat(A.cols, 0);
    SmithForm f = smith_form(A);
    std::vector<Vec> cols;
    for (int j = f.rank; j < A.cols; ++j) cols.push_back(f.V.col(j));
    return mat_from_cols(cols, A.cols);
}

Mat lattice_intersection(const Mat &A, const Mat &B) {
    if (A.rows != B.rows) throw std::invalid_argument("lattice_intersection: ambient mismatch");
    // x in both lattices: A*u = B*v; kernel of [A | -B] gives (u, v)
    Mat C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
        for (int j = 0; j < B.cols; ++j) C(i, A.cols + j) = -B(i, j);
    }
    Mat K = integer_kernel(C);
    std::vector<Vec> cols;
    for (int j = 0; j < K.cols; ++j) {
        Vec u(A.cols);
        for (int i = 0; i < A.cols; ++i) u[i] = K(i, j);
        cols.push_back(mat_vec(A, u));
    }
    if (cols.empty()) return Mat(A.rows, 0);
    return hnf_basis(mat_from_cols(cols, A.rows));
}

CosetReducer::CosetReducer(const Mat &basis) {
    hnf = hnf_basis(basis);
    pivot_row.assign(hnf.cols, -1);
    for (int j = 0; j < hnf.cols; ++j) {
        for (int r = 0; r < hnf.rows; ++r)
            if (hnf(r, j) != 0) { pivot_row[j] = r; break; }
    }
}

Vec CosetReducer::reduce(Vec y) const {
    for (int j = 0; j < hnf.cols; ++j) {
        int r = pivot_row[j];
        if (r < 0) continue;
        i64 p = hnf(r, j);
        i64 q = y[r] >= 0 ? y[r] / p : -((-y[r] + p - 1) / p);
        if (q != 0)
            for (int i = 0; i < hnf.rows; ++i) y[i] = checked_add(y[i], checked_mul(-q, hnf(i, j)));
    }
    return y;
}

std::string vec_str(const Vec &v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "]";
    return os.str();
}

} // namespace thetadim
