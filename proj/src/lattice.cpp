#include "thetadim/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace thetadim {

i64 CoverSpec::b_form(const Vec &x, const Vec &y) const {
    return dot(x, mat_vec(gram, y));
}

i64 CoverSpec::d_form(const Vec &x, const Vec &y) const {
    return dot(x, mat_vec(bisector, y));
}

i64 CoverSpec::q_of(const Vec &y) const {
    i64 b = b_form(y, y);
    if (b % 2 != 0) throw std::logic_error("B_Q(y,y) must be even");
    return b / 2;
}

namespace {

// Q on the simple coroots, proportional with Q_j * C(i,j) symmetric and the
// minimum scaled to q_short.
Vec solve_q_values(const Mat &cartan, int rank, i64 q_short) {
    if (rank == 0) return Vec();
    // ratios as fractions num/den over a spanning walk of the Dynkin graph
    std::vector<std::pair<i64, i64>> ratio(rank, {0, 1});
    ratio[0] = {1, 1};
    std::vector<int> todo{0};
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < rank; ++j) {
            if (j == i || cartan(i, j) == 0 || ratio[j].first != 0) continue;
            // Q_j * C(i,j) = Q_i * C(j,i)
            i64 num = ratio[i].first * cartan(j, i);
            i64 den = ratio[i].second * cartan(i, j);
            if (den < 0) { num = -num; den = -den; }
            i64 g = gcd_i64(num, den);
            ratio[j] = {num / g, den / g};
            todo.push_back(j);
        }
    }
    i64 lcm_den = 1;
    for (auto [num, den] : ratio) {
        if (num == 0) throw std::invalid_argument("disconnected Dynkin diagram is not supported");
        lcm_den = lcm_den / gcd_i64(lcm_den, den) * den;
    }
    Vec q(rank);
    for (int j = 0; j < rank; ++j) q[j] = ratio[j].first * (lcm_den / ratio[j].second);
    i64 mn = *std::min_element(q.begin(), q.end());
    for (auto &v : q) {
        if (v % mn != 0) throw std::logic_error("non-integral coroot length ratio");
        v = v / mn * q_short;
    }
    return q;
}

} // namespace

CoverSpec make_cover(const RootDatum &datum, int n, i64 q_short, bool upper_bisector) {
    if (n < 1) throw std::invalid_argument("degree must be >= 1");
    CoverSpec c;
    c.datum = datum;
    c.n = n;
    c.q_short = q_short;
    int m = datum.y_rank;
    c.gram = Mat(m, m);
    if (datum.family == Family::GL) {
        KPParams kp = *datum.kp;
        if (2 * kp.p - kp.q != -1 && 2 * kp.p - kp.q != 1)
            throw std::invalid_argument("Kazhdan-Patterson parameters need |2p - q| = 1");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) c.gram(i, j) = (i == j) ? 2 * kp.p : kp.q;
        c.q_simple.assign(datum.rank, 2 * kp.p - kp.q);
    } else {
        if (q_short < 1) throw std::invalid_argument("q_short must be >= 1");
        c.q_simple = solve_q_values(datum.cartan, datum.rank, q_short);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                c.gram(i, j) = checked_mul(c.q_simple[j], datum.cartan(i, j));
    }
    // Weyl invariance and symmetry are structural; verify once per cover.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (c.gram(i, j) != c.gram(j, i)) throw std::logic_error("B_Q not symmetric");
    for (int j = 0; j < datum.rank; ++j) {
        Vec a = datum.simple_coroot(j);
        for (int k = 0; k < m; ++k) {
            Vec e(m, 0);
            e[k] = 1;
            Vec wa = datum.reflect(j, a);
            Vec we = datum.reflect(j, e);
            if (c.b_form(wa, we) != c.b_form(a, e)) throw std::logic_error("B_Q not Weyl invariant");
        }
    }
    c.bisector = Mat(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j)
                c.bisector(i, j) = c.gram(i, i) / 2;
            else if (i > j)
                c.bisector(i, j) = c.gram(i, j);
        }
    if (upper_bisector) c.bisector = transpose(c.bisector);
    return c;
}

i64 n_alpha(const CoverSpec &cover, int root_index) {
    i64 q = cover.q_simple.at(root_index);
    i64 g = gcd_i64(cover.n, q);
    return cover.n / g;
}

Sublattice sublattice_yqn(const CoverSpec &cover) {
    int m = cover.datum.y_rank;
    // y with gram * y = 0 mod n: from U G V = S, the solutions are
    // V * diag(n / gcd(n, d_i)).
    SmithForm f = smith_form(cover.gram);
    Mat B(m, m);
    for (int j = 0; j < m; ++j) {
        i64 d = f.divisors[j];
        i64 scale = cover.n / gcd_i64(cover.n, d);
        for (int i = 0; i < m; ++i) B(i, j) = checked_mul(f.V(i, j), scale);
    }
    Sublattice s{hnf_basis(B), LatticeKind::YQn};
    return s;
}

Sublattice sublattice_yqn_sc(const CoverSpec &cover) {
    const RootDatum &d = cover.datum;
    std::vector<Vec> gens;
    for (int j = 0; j < d.rank; ++j) gens.push_back(vec_scale(n_alpha(cover, j), d.simple_coroot(j)));
    // close under the Weyl action; the generated lattice must be W-stable
    for (const Vec &v : d.positive_coroots) {
        i64 q = cover.q_of(v);
        i64 na = cover.n / gcd_i64(cover.n, q);
        gens.push_back(vec_scale(na, v));
    }
    if (gens.empty()) return Sublattice{Mat(d.y_rank, 0), LatticeKind::YQnSc};
    Sublattice s{hnf_basis(mat_from_cols(gens, d.y_rank)), LatticeKind::YQnSc};
    return s;
}

Sublattice sublattice_j(const CoverSpec &cover) {
    int m = cover.datum.y_rank;
    Sublattice sc = sublattice_yqn_sc(cover);
    Mat gens(m, m + sc.basis.cols);
    for (int i = 0; i < m; ++i) gens(i, i) = cover.n;
    for (int j = 0; j < sc.basis.cols; ++j)
        for (int i = 0; i < m; ++i) gens(i, m + j) = sc.basis(i, j);
    return Sublattice{hnf_basis(gens), LatticeKind::J};
}

bool member(const Sublattice &sub, const Vec &y) {
    Vec c;
    return solve_columns(sub.basis, y, c);
}

i64 QuotientEnum::class_of(const Vec &y) const {
    Vec z = mat_vec(U, y);
    i64 idx = 0;
    for (size_t i = 0; i < divisors.size(); ++i)
        idx += strides[i] * mod_pos(z[i], divisors[i]);
    return idx;
}

Vec QuotientEnum::rep(i64 index) const {
    Vec t(divisors.size(), 0);
    for (size_t i = 0; i < divisors.size(); ++i) {
        t[i] = (index / strides[i]) % divisors[i];
    }
    return mat_vec(U_inv, t);
}

std::vector<Vec> QuotientEnum::reps() const {
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(size));
    for (i64 i = 0; i < size; ++i) out.push_back(rep(i));
    return out;
}

QuotientEnum quotient(int ambient_rank, const Sublattice &sub) {
    if (sub.basis.cols != ambient_rank)
        throw std::invalid_argument("quotient: sublattice has infinite index");
    SmithForm f = smith_form(sub.basis);
    QuotientEnum q;
    q.U = f.U;
    q.U_inv = unimodular_inverse(f.U);
    q.divisors.assign(ambient_rank, 1);
    for (int i = 0; i < ambient_rank; ++i) {
        if (f.divisors[i] == 0) throw std::invalid_argument("quotient: sublattice has infinite index");
        q.divisors[i] = f.divisors[i];
    }
    q.strides.assign(ambient_rank, 1);
    i64 acc = 1;
    for (int i = 0; i < ambient_rank; ++i) {
        q.strides[i] = acc;
        acc = checked_mul(acc, q.divisors[i]);
    }
    q.size = acc;
    return q;
}

i64 sublattice_index(const Sublattice &inner, const Sublattice &outer) {
    if (inner.basis.cols < outer.basis.cols) return 0;
    // coordinates of inner basis in the outer basis
    Mat coords(outer.basis.cols, inner.basis.cols);
    for (int j = 0; j < inner.basis.cols; ++j) {
        Vec c;
        if (!solve_columns(outer.basis, inner.basis.col(j), c))
            throw std::invalid_argument("sublattice_index: not a sublattice");
        coords.set_col(j, c);
    }
    SmithForm f = smith_form(coords);
    if (f.rank < outer.basis.cols) return 0;
    i64 idx = 1;
    for (int i = 0; i < outer.basis.cols; ++i) idx = checked_mul(idx, f.divisors[i]);
    return idx;
}

Mat coroot_saturation(const RootDatum &datum) {
    if (datum.rank == 0) return Mat(datum.y_rank, 0);
    Mat K = integer_kernel(transpose(datum.coroots)); // functionals vanishing on coroots
    if (K.cols == 0) return Mat::identity(datum.y_rank);
    return integer_kernel(transpose(K));
}

} // namespace thetadim
