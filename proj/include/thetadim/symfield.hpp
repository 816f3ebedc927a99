#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thetadim/intmat.hpp"

namespace thetadim {

// Canonical symbolic scalar attached to a covering degree n:
//
//   sign * q^(q2/2) * eps^e * gamma^g * gamma'^gp * omega^w * prod_j g(j)^m_j
//
// eps    = unit symbol of -1 (order 2; identically 1 for odd n)
// gamma  = Weil index of the base additive character (gamma^2 = eps^(n/2))
// gamma' = Weil index of an auxiliary additive character (same relation)
// omega  = unit symbol of the twisting unit (order dividing n)
// g(j)   = formal Gauss sum, keys reduced to 1 <= j < n/2
//
// Reductions applied on construction and multiplication:
//   g(kn) = -1/q,  g(n/2) = q^{-1/2} gamma^{-1},  g(n-j) = eps^j q^{-1} g(j)^{-1}
struct SymVal {
    int n = 1;
    bool zero = false;
    int sign = 1;  // +1 or -1
    i64 q2 = 0;    // twice the exponent of q
    int eps = 0;   // mod 2
    int gamma = 0; // 0 or 1
    int gamma_p = 0;
    i64 omega = 0; // mod n
    std::map<i64, i64> gauss;

    bool operator==(const SymVal &o) const;
};

SymVal sym_one(int n);
SymVal sym_zero(int n);
SymVal sym_int(int n, i64 value); // value in {1, -1} only
SymVal sym_q_half(int n, i64 half_exponent);
SymVal sym_eps(int n, i64 e = 1);
SymVal sym_gamma(int n, i64 e = 1);       // throws for odd n unless 4 | e
SymVal sym_gamma_prime(int n, i64 e = 1); // same constraint
SymVal sym_omega(int n, i64 e = 1);
SymVal sym_gauss(int n, i64 index, i64 e = 1);

SymVal sym_mul(const SymVal &a, const SymVal &b);
SymVal sym_inv(const SymVal &a);
SymVal sym_pow(const SymVal &a, i64 e);
SymVal sym_neg(const SymVal &a);
SymVal sym_conj(const SymVal &a);
bool sym_equal(const SymVal &a, const SymVal &b);
bool sym_is_one(const SymVal &a);
// true when the value is a root of unity (no q power, no Gauss factor)
bool sym_is_unit(const SymVal &a);
bool sym_has_omega(const SymVal &a);
bool sym_has_gamma_prime(const SymVal &a);

// Atoms for normalize(): a raw product of (kind, argument, exponent) triples.
enum class SymAtom { One, MinusOne, QHalf, Eps, Gamma, GammaPrime, Omega, Gauss };
struct RawFactor {
    SymAtom kind;
    i64 arg = 0; // gauss index; q2 amount for QHalf
    i64 exp = 1;
};
SymVal normalize(int n, const std::vector<RawFactor> &raw);

std::string sym_str(const SymVal &a);
SymVal sym_parse(int n, const std::string &text);

// The full piecewise Gauss sum G_psi(a, b).
enum class GaussKind { Zero, UnitMeasure /* 1 - 1/q */, Monomial };
struct GaussValue {
    GaussKind kind;
    SymVal value; // meaningful for Monomial
};
GaussValue gauss_sum(int n, i64 a, i64 b);

} // namespace thetadim
