#include "thetadim/rootdata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace thetadim {

Family family_from_string(const std::string &s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    if (s == "C" || s == "c") return Family::C;
    if (s == "D" || s == "d") return Family::D;
    if (s == "E" || s == "e") return Family::E;
    if (s == "F" || s == "f") return Family::F;
    if (s == "G" || s == "g") return Family::G;
    if (s == "GL" || s == "gl" || s == "Gl") return Family::GL;
    throw std::invalid_argument("unknown family: " + s);
}

std::string family_to_string(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::GL: return "GL";
    }
    return "?";
}

i64 RootDatum::pair(const Vec &y, int root_index) const {
    if (root_index < 0 || root_index >= rank) throw std::out_of_range("pair: bad root index");
    i64 s = 0;
    for (int k = 0; k < y_rank; ++k) s = checked_add(s, checked_mul(y[k], pairing(k, root_index)));
    return s;
}

Vec RootDatum::reflect(int j, const Vec &y) const {
    i64 p = pair(y, j);
    Vec r = y;
    Vec cv = simple_coroot(j);
    for (int k = 0; k < y_rank; ++k) r[k] -= p * cv[k];
    return r;
}

namespace {

Mat cartan_matrix(Family family, int rank) {
    auto chain = [&](Mat &C) {
        for (int i = 0; i + 1 < rank; ++i) {
            C(i, i + 1) = -1;
            C(i + 1, i) = -1;
        }
    };
    Mat C(rank, rank);
    for (int i = 0; i < rank; ++i) C(i, i) = 2;
    switch (family) {
    case Family::A:
        if (rank < 1) throw std::invalid_argument("A needs rank >= 1");
        chain(C);
        break;
    case Family::B:
        // alpha_r^vee is the long coroot
        if (rank < 2) throw std::invalid_argument("B needs rank >= 2");
        chain(C);
        C(rank - 2, rank - 1) = -1;
        C(rank - 1, rank - 2) = -2;
        break;
    case Family::C:
        // alpha_r^vee is the short coroot
        if (rank < 2) throw std::invalid_argument("C needs rank >= 2");
        chain(C);
        C(rank - 2, rank - 1) = -2;
        C(rank - 1, rank - 2) = -1;
        break;
    case Family::D:
        if (rank < 3) throw std::invalid_argument("D needs rank >= 3");
        for (int i = 0; i + 1 < rank - 1; ++i) {
            C(i, i + 1) = -1;
            C(i + 1, i) = -1;
        }
        C(rank - 3, rank - 1) = -1;
        C(rank - 1, rank - 3) = -1;
        break;
    case Family::E: {
        if (rank < 6 || rank > 8) throw std::invalid_argument("E needs rank 6, 7 or 8");
        // Bourbaki labels: node 2 hangs off node 4; 1-3-4-5-6(-7-8) chain
        auto link = [&](int i, int j) { C(i - 1, j - 1) = -1; C(j - 1, i - 1) = -1; };
        link(1, 3);
        link(3, 4);
        link(2, 4);
        link(4, 5);
        link(5, 6);
        if (rank >= 7) link(6, 7);
        if (rank >= 8) link(7, 8);
        break;
    }
    case Family::F:
        if (rank != 4) throw std::invalid_argument("F needs rank 4");
        chain(C);
        C(1, 2) = -1;
        C(2, 1) = -2;
        break;
    case Family::G:
        if (rank != 2) throw std::invalid_argument("G needs rank 2");
        C(0, 1) = -1;
        C(1, 0) = -3;
        break;
    case Family::GL:
        throw std::logic_error("cartan_matrix: GL handled separately");
    }
    return C;
}

// Enumerate the positive elements of the closure of `seeds` under the simple
// reflections given by coordinate vectors in the seed basis. act(coords, j)
// applies w_j to the coordinate vector.
template <typename ActFn>
std::vector<Vec> positive_closure(const std::vector<Vec> &seeds, int nrefl, ActFn act) {
    std::set<Vec> all(seeds.begin(), seeds.end());
    std::vector<Vec> frontier(seeds.begin(), seeds.end());
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec &v : frontier)
            for (int j = 0; j < nrefl; ++j) {
                Vec w = act(v, j);
                if (all.insert(w).second) next.push_back(w);
            }
        frontier = std::move(next);
        if (all.size() > 100000) throw std::runtime_error("root closure too large");
    }
    std::vector<Vec> pos;
    for (const Vec &v : all) {
        bool nonneg = std::all_of(v.begin(), v.end(), [](i64 x) { return x >= 0; });
        if (nonneg && !is_zero_vec(v)) pos.push_back(v);
    }
    return pos;
}

} // namespace

RootDatum build_root_datum(Family family, int rank, std::optional<KPParams> kp) {
    RootDatum d;
    d.family = family;
    d.rank = rank;
    if (family == Family::GL) {
        if (rank < 1) throw std::invalid_argument("GL needs rank >= 1");
        if (!kp) throw std::invalid_argument("GL needs Kazhdan-Patterson parameters");
        d.kp = kp;
        d.rank = rank - 1;
        d.y_rank = rank;
        d.cartan = d.rank > 0 ? cartan_matrix(Family::A, d.rank) : Mat(0, 0);
        d.coroots = Mat(d.y_rank, d.rank);
        d.pairing = Mat(d.y_rank, d.rank);
        for (int j = 0; j < d.rank; ++j) {
            d.coroots(j, j) = 1;
            d.coroots(j + 1, j) = -1;
            d.pairing(j, j) = 1;
            d.pairing(j + 1, j) = -1;
        }
    } else {
        d.cartan = cartan_matrix(family, rank);
        d.y_rank = rank;
        d.coroots = Mat::identity(rank);
        d.pairing = d.cartan;
        d.kp.reset();
    }

    // positive coroots: closure of the simple ones under the reflections,
    // tracked in simple-coroot coordinates
    if (d.rank > 0) {
        std::vector<Vec> seeds;
        for (int j = 0; j < d.rank; ++j) {
            Vec e(d.rank, 0);
            e[j] = 1;
            seeds.push_back(e);
        }
        auto act_coroot = [&](const Vec &c, int j) {
            // w_j(v) = v - <v, alpha_j> alpha_j^vee in coroot coordinates
            i64 p = 0;
            for (int k = 0; k < d.rank; ++k) p += c[k] * d.cartan(k, j);
            Vec r = c;
            r[j] -= p;
            return r;
        };
        std::vector<Vec> pos = positive_closure(seeds, d.rank, act_coroot);
        d.positive_coroots.clear();
        for (const Vec &c : pos) d.positive_coroots.push_back(mat_vec(d.coroots, c));
        std::sort(d.positive_coroots.begin(), d.positive_coroots.end());

        d.two_rho.assign(d.y_rank, 0);
        for (const Vec &v : d.positive_coroots) d.two_rho = vec_add(d.two_rho, v);

        // positive roots in simple-root coordinates, for the 2 rho_X functional
        auto act_root = [&](const Vec &c, int j) {
            i64 p = 0;
            for (int k = 0; k < d.rank; ++k) p += c[k] * d.cartan(j, k);
            Vec r = c;
            r[j] -= p;
            return r;
        };
        std::vector<Vec> pos_roots = positive_closure(seeds, d.rank, act_root);
        Vec rho_x_coords(d.rank, 0);
        for (const Vec &c : pos_roots) rho_x_coords = vec_add(rho_x_coords, c);
        d.two_rho_x.assign(d.y_rank, 0);
        for (int k = 0; k < d.y_rank; ++k) {
            i64 s = 0;
            for (int j = 0; j < d.rank; ++j) s += rho_x_coords[j] * d.pairing(k, j);
            d.two_rho_x[k] = s;
        }
    } else {
        d.two_rho.assign(d.y_rank, 0);
        d.two_rho_x.assign(d.y_rank, 0);
    }

    for (int j = 0; j < d.rank; ++j)
        if (d.pair(d.two_rho, j) != 2) throw std::logic_error("two_rho pairing check failed");
    return d;
}

WeylGroup weyl_elements(const RootDatum &datum, size_t max_size) {
    WeylGroup W;
    int m = datum.y_rank;
    W.simple_matrices.reserve(datum.rank);
    for (int j = 0; j < datum.rank; ++j) {
        Mat M = Mat::identity(m);
        for (int c = 0; c < m; ++c) {
            Vec e(m, 0);
            e[c] = 1;
            M.set_col(c, datum.reflect(j, e));
        }
        W.simple_matrices.push_back(M);
    }

    Vec rho2 = datum.two_rho;
    auto make_element = [&](Mat mat, std::vector<int> word) {
        WeylElement e;
        e.matrix = std::move(mat);
        e.word = std::move(word);
        e.length = static_cast<int>(e.word.size());
        Vec wr = mat_vec(e.matrix, rho2);
        e.shift.assign(m, 0);
        for (int k = 0; k < m; ++k) {
            i64 dkk = rho2[k] - wr[k];
            if (dkk % 2 != 0) throw std::logic_error("rho shift not integral");
            e.shift[k] = dkk / 2;
        }
        return e;
    };

    std::map<std::vector<i64>, int> seen;
    std::vector<WeylElement> elems;
    elems.push_back(make_element(Mat::identity(m), {}));
    seen[elems[0].matrix.a] = 0;

    std::vector<int> level{0};
    while (!level.empty()) {
        std::vector<std::pair<std::vector<int>, Mat>> cand;
        for (int idx : level)
            for (int j = 0; j < datum.rank; ++j) {
                Mat M = mat_mul(elems[idx].matrix, W.simple_matrices[j]);
                if (seen.count(M.a)) continue;
                std::vector<int> w = elems[idx].word;
                w.push_back(j);
                cand.emplace_back(std::move(w), std::move(M));
            }
        std::sort(cand.begin(), cand.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<int> next;
        for (auto &[w, M] : cand) {
            if (seen.count(M.a)) continue;
            int idx = static_cast<int>(elems.size());
            seen[M.a] = idx;
            elems.push_back(make_element(M, w));
            next.push_back(idx);
            if (elems.size() > max_size) throw std::runtime_error("Weyl group too large to materialize");
        }
        level = std::move(next);
    }

    for (size_t i = 0; i < elems.size(); ++i) {
        elems[i].index = static_cast<int>(i);
        Mat inv = unimodular_inverse(elems[i].matrix);
        auto it = seen.find(inv.a);
        if (it == seen.end()) throw std::logic_error("Weyl inverse not found");
        elems[i].inverse = it->second;
    }
    W.elements = std::move(elems);
    W.longest = static_cast<int>(W.elements.size()) - 1;
    for (size_t i = 0; i < W.elements.size(); ++i)
        if (W.elements[i].length > W.elements[W.longest].length) W.longest = static_cast<int>(i);
    return W;
}

Vec shifted_apply(const RootDatum &datum, const WeylElement &w, const Vec &y) {
    (void)datum;
    return vec_add(mat_vec(w.matrix, y), w.shift);
}

Vec shifted_reflect(const RootDatum &datum, int root_index, const Vec &y) {
    i64 p = datum.pair(y, root_index);
    Vec r = y;
    Vec cv = datum.simple_coroot(root_index);
    for (size_t k = 0; k < r.size(); ++k) r[k] += (1 - p) * cv[k];
    return r;
}

int braid_order(const RootDatum &datum, int a, int b) {
    if (a == b) return 1;
    i64 prod = datum.cartan(a, b) * datum.cartan(b, a);
    switch (prod) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw std::logic_error("unexpected Cartan product");
    }
}

namespace {
void reduced_words_rec(const RootDatum &datum, const Mat &M, const Vec &probe,
                       std::vector<int> &acc, std::vector<std::vector<int>> &out,
                       const std::vector<Mat> &simples, int len, size_t cap) {
    if (len == 0) {
        std::vector<int> w(acc.rbegin(), acc.rend());
        out.push_back(w);
        if (out.size() > cap) throw std::runtime_error("too many reduced words");
        return;
    }
    // descent j: l(w w_j) < l(w) iff w sends alpha_j^vee negative
    for (int j = 0; j < datum.rank; ++j) {
        Vec img = mat_vec(M, datum.simple_coroot(j));
        // positivity test in simple-coroot coordinates
        Vec coords;
        if (!solve_columns(datum.coroots, img, coords)) throw std::logic_error("coroot not in span");
        bool neg = true;
        for (i64 c : coords)
            if (c > 0) { neg = false; break; }
        if (!neg) continue;
        Mat M2 = mat_mul(M, simples[j]);
        acc.push_back(j);
        reduced_words_rec(datum, M2, probe, acc, out, simples, len - 1, cap);
        acc.pop_back();
    }
}
} // namespace

std::vector<std::vector<int>> all_reduced_words(const RootDatum &datum, const WeylGroup &W,
                                                const WeylElement &w, size_t cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    reduced_words_rec(datum, w.matrix, Vec(), acc, out, W.simple_matrices, w.length, cap);
    return out;
}

} // namespace thetadim
