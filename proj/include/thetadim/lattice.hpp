#pragma once

#include <optional>
#include <vector>

#include "thetadim/intmat.hpp"
#include "thetadim/rootdata.hpp"

namespace thetadim {

// Covering datum: degree n, Weyl-invariant form B_Q on the Y basis, and a
// bisector D with D + D^T = B_Q.
struct CoverSpec {
    RootDatum datum;
    int n = 1;
    i64 q_short = 1;
    Mat gram;     // B_Q on the Y basis
    Mat bisector; // D
    Vec q_simple; // Q(alpha_j^vee) per simple root

    i64 b_form(const Vec &x, const Vec &y) const;
    i64 d_form(const Vec &x, const Vec &y) const;
    i64 q_of(const Vec &y) const; // B_Q(y, y) / 2
};

// q_short is the value of Q on a short simple coroot; ignored for GL where
// the Kazhdan-Patterson parameters on the datum fix the form.
CoverSpec make_cover(const RootDatum &datum, int n, i64 q_short = 1,
                     bool upper_bisector = false);

i64 n_alpha(const CoverSpec &cover, int root_index);

enum class LatticeKind { YQn, YQnSc, J, Custom };

struct Sublattice {
    Mat basis; // y_rank x k, column Hermite form, full column rank
    LatticeKind kind = LatticeKind::Custom;
};

Sublattice sublattice_yqn(const CoverSpec &cover);
Sublattice sublattice_yqn_sc(const CoverSpec &cover);
Sublattice sublattice_j(const CoverSpec &cover); // n Y + Y_{Q,n}^sc

bool member(const Sublattice &sub, const Vec &y);

// Finite quotient Y / (column lattice), enumerated through Smith form.
struct QuotientEnum {
    Vec divisors;      // all elementary divisors (>= 1)
    Mat U;             // y -> U y gives Smith coordinates
    Mat U_inv;
    i64 size = 1;
    Vec strides;

    i64 class_of(const Vec &y) const;
    Vec rep(i64 index) const;
    std::vector<Vec> reps() const;
};

// Throws for infinite index (rank-deficient sublattice).
QuotientEnum quotient(int ambient_rank, const Sublattice &sub);

// |outer / inner| with inner a finite-index sublattice of outer; 0 if the
// index is infinite.
i64 sublattice_index(const Sublattice &inner, const Sublattice &outer);

// Basis of Y ∩ Q-span(coroots) (the saturation of the coroot lattice in Y).
Mat coroot_saturation(const RootDatum &datum);

} // namespace thetadim
