#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetadim/intmat.hpp"

namespace thetadim {

enum class Family { A, B, C, D, E, F, G, GL };

Family family_from_string(const std::string &s);
std::string family_to_string(Family f);

struct KPParams {
    i64 p = 0;
    i64 q = 0;
};

// Root datum on the cocharacter lattice Y (coordinates in a fixed Z-basis of Y).
// For the semisimple families the basis is the simple coroots themselves; for
// GL_r the basis is e_1..e_r with simple coroots e_i - e_{i+1}.
struct RootDatum {
    Family family;
    int rank;   // semisimple rank
    int y_rank; // rank of Y
    Mat cartan; // cartan(i,j) = <alpha_i^vee, alpha_j>
    Mat coroots;  // y_rank x rank, column j = simple coroot alpha_j^vee
    Mat pairing;  // y_rank x rank, <y, alpha_j> = sum_k y[k] * pairing(k,j)
    Vec two_rho;  // sum of positive coroots
    Vec two_rho_x; // functional: <y, sum of positive roots> = dot(two_rho_x, y)
    std::vector<Vec> positive_coroots;
    std::optional<KPParams> kp;

    i64 pair(const Vec &y, int root_index) const; // <y, alpha_j>
    Vec simple_coroot(int j) const { return coroots.col(j); }
    Vec reflect(int j, const Vec &y) const; // w_alpha_j(y)
    bool semisimple() const { return y_rank == rank; }
};

RootDatum build_root_datum(Family family, int rank,
                           std::optional<KPParams> kp = std::nullopt);

struct WeylElement {
    int index = 0;
    Mat matrix;            // action on Y
    std::vector<int> word; // one fixed reduced word (simple root indices)
    int length = 0;
    Vec shift;             // rho - w(rho), integral
    int inverse = 0;       // index of w^{-1}
};

struct WeylGroup {
    std::vector<WeylElement> elements;
    int longest = 0;
    std::vector<Mat> simple_matrices;

    size_t size() const { return elements.size(); }
};

// All Weyl elements, ordered by length then lexicographic reduced word.
// Element 0 is the identity. Throws if the group exceeds max_size.
WeylGroup weyl_elements(const RootDatum &datum, size_t max_size = 2000000);

// w[y] = w(y - rho) + rho, computed integrally as w(y) + (rho - w(rho)).
Vec shifted_apply(const RootDatum &datum, const WeylElement &w, const Vec &y);
// Shifted action of a single simple reflection: y + (1 - <y,alpha>) alpha^vee.
Vec shifted_reflect(const RootDatum &datum, int root_index, const Vec &y);

// Braid order m_{ab} of w_a w_b from the Cartan matrix (2, 3, 4 or 6).
int braid_order(const RootDatum &datum, int a, int b);

// All reduced words of w (exponential in general; intended for small ranks).
std::vector<std::vector<int>> all_reduced_words(const RootDatum &datum,
                                                const WeylGroup &W,
                                                const WeylElement &w,
                                                size_t cap = 100000);

} // namespace thetadim
