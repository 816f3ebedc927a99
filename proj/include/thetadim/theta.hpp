#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetadim/orbits.hpp"
#include "thetadim/symfield.hpp"

namespace thetadim {

// Which additive character the Weil-index data refers to.
struct TwistSpec {
    enum class Mode {
        Base,          // the fixed character psi
        UnitTwist,     // psi_a for a unit a, tracked through omega
        AbstractPrime, // an unrelated psi', tracked through gamma'
    };
    Mode mode = Mode::Base;
    // For UnitTwist: exponent multiplier on the tracked unit symbol
    // (1 = fully symbolic unit).
    i64 omega_exp = 1;
};

struct ThetaContext {
    OrbitSetting os;
    Sublattice j;
    // basis {y_i} of Y_{Q,n} with {k_i y_i} a basis of J = nY + Y_{Q,n}^sc
    std::vector<Vec> basis_qn;
    Vec mult_j;
    Mat basis_qn_mat;
    // basis {z_i} of Y_{Q,n} with {m_i z_i} a basis of Y_{Q,n}^sc
    std::vector<Vec> sc_adapted;
    Vec sc_orders;
    Mat sc_adapted_mat;
    std::vector<int> torsor_positions; // indices i with m_i > 1
    i64 torsor_size = 0;               // 0 when infinite (non-semisimple Y)

    const CoverSpec &cover() const { return os.cover; }
    int degree() const { return os.cover.n; }
};

ThetaContext make_context(const CoverSpec &cover);
ThetaContext make_context(const OrbitSetting &setting);
// Same lattice data but without materializing the Weyl group; supports the
// character machinery and bigT_word, not orbit enumeration.
ThetaContext make_context_light(const CoverSpec &cover);

// t(w_alpha, y) = q^{k-1} eps^{<y_rho,alpha> D(y,alpha^vee)} g(<y_rho,alpha> Q(alpha^vee))^{-1}
SymVal tfactor(const ThetaContext &ctx, int root_index, const Vec &y);

// Product of t-factors along the stored reduced word of w.
SymVal bigT(const ThetaContext &ctx, const WeylElement &w, const Vec &y);
SymVal bigT_word(const ThetaContext &ctx, const std::vector<int> &word, const Vec &y);

struct ExceptionalCharacter {
    enum class Provenance { Abstract, DistinguishedTwist };
    std::vector<SymVal> values; // on basis_qn
    Provenance provenance = Provenance::DistinguishedTwist;
    TwistSpec twist;
};

// Value of chi at s_y for y in Y_{Q,n}; throws if y is outside Y_{Q,n}.
SymVal char_eval(const ThetaContext &ctx, const ExceptionalCharacter &chi, const Vec &y);

// Unitary-distinguished character times the exceptional q-power twist.
ExceptionalCharacter distinguished_char(const ThetaContext &ctx, const TwistSpec &twist);

// Scattering matrix entries (tau^1, tau^2) for an exceptional character.
std::pair<SymVal, SymVal> tau_entry(const ThetaContext &ctx, const ExceptionalCharacter &chi,
                                    int root_index, const Vec &y1, const Vec &y);

struct Condition {
    Vec element;     // v = w[y] - y in Y_{Q,n}
    SymVal required; // eps^{D(v,y)} T(w, y)
    int w_index = 0;
    Vec at; // the y the pair was found at
};

// Conditions at the base of an sc-free orbit, one per nontrivial class
// stabilizer element, deduplicated.
std::vector<Condition> orbit_conditions(const ThetaContext &ctx, const OrbitRecord &orb);

// All conditions from every same-class pair across the orbit (small orbits
// only; used to validate the stabilizer reduction).
std::vector<Condition> orbit_conditions_full(const ThetaContext &ctx, const OrbitRecord &orb);

// Two condition systems cut out the same set of exceptional characters.
bool conditions_equivalent(const ThetaContext &ctx, const std::vector<Condition> &a,
                           const std::vector<Condition> &b);

enum class SatisfiedState { Yes, No, Conditional };

struct ImageConditionReport {
    std::vector<i64> image;
    i64 orbit_base_class = 0;
    std::vector<Condition> conditions;
    bool satisfiable = true; // some exceptional character satisfies them
    SatisfiedState concrete = SatisfiedState::Yes;
    std::vector<SymVal> residuals; // unresolved residuals in concrete mode
};

struct BranchRow {
    i64 dim = 0;
    i64 num_characters = 0;
    std::vector<std::string> conditions; // with = / != markers
};

struct DimReport {
    i64 lower = 0, upper = 0, total_classes = 0;
    i64 torsor_size = 0; // 0 = infinite
    std::optional<i64> dim; // set in concrete mode or when lower == upper
    std::vector<BranchRow> branches;
    std::vector<ImageConditionReport> images;
    std::vector<std::string> notes;
};

// With a character: the dimension for that character. Without: the branch
// table over all exceptional characters.
DimReport dim_whittaker(const ThetaContext &ctx,
                        const std::optional<ExceptionalCharacter> &chi = std::nullopt);

struct SolvedCondition {
    std::string equation;                   // e.g. "omega^5 = 1"
    std::optional<std::string> unit_class;  // e.g. "a in (O_F^x)^2"
};

struct DistinguishedVerdict {
    bool unconditional = false;
    i64 dim_if_satisfied = 0;
    i64 dim_otherwise = 0;
    std::vector<SolvedCondition> conditions;
};

DistinguishedVerdict decide_distinguished(const ThetaContext &ctx, const TwistSpec &twist);

// Restate a unit residual r (condition r = 1) as a solved equation.
SolvedCondition solve_residual_condition(const ThetaContext &ctx, const SymVal &r);

struct TorsorInfo {
    std::vector<Vec> basis_qn;
    Vec mult_j;
    std::vector<Vec> free_generators;
    Vec generator_orders;
    i64 torsor_size = 0;
    std::vector<SymVal> base_values; // distinguished base point on basis_qn
    std::vector<std::string> value_families;
};

TorsorInfo exceptional_chars(const ThetaContext &ctx);

struct Rank2Report {
    i64 checked = 0;
    i64 failures = 0;
    std::string first_failure;
};

// Inverse law and the braid product for an adjacent (or equal) pair.
Rank2Report verify_rank2(const ThetaContext &ctx, int a, int b, int sample_count,
                         unsigned long long seed = 12345);

} // namespace thetadim
