#include "thetadim/theta.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace thetadim {

namespace {

i64 ceil_div(i64 a, i64 b) {
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

} // namespace

ThetaContext make_context(const OrbitSetting &setting) {
    ThetaContext ctx;
    ctx.os = setting;
    const int m = ctx.os.cover.datum.y_rank;
    ctx.j = sublattice_j(ctx.os.cover);

    const Mat &B = ctx.os.yqn.basis;
    auto coords_in_B = [&](const Mat &sub) {
        Mat C(m, sub.cols);
        for (int jcol = 0; jcol < sub.cols; ++jcol) {
            Vec c;
            if (!solve_columns(B, sub.col(jcol), c))
                throw std::logic_error("sublattice not inside Y_{Q,n}");
            C.set_col(jcol, c);
        }
        return C;
    };

    {
        SmithForm f = smith_form(coords_in_B(ctx.j.basis));
        Mat Uinv = unimodular_inverse(f.U);
        Mat nb = mat_mul(B, Uinv);
        ctx.basis_qn.clear();
        for (int i = 0; i < m; ++i) ctx.basis_qn.push_back(nb.col(i));
        ctx.mult_j = f.divisors;
        ctx.basis_qn_mat = nb;
    }

    if (ctx.os.sc.basis.cols == m) {
        SmithForm f = smith_form(coords_in_B(ctx.os.sc.basis));
        Mat Uinv = unimodular_inverse(f.U);
        Mat nb = mat_mul(B, Uinv);
        ctx.sc_adapted.clear();
        for (int i = 0; i < m; ++i) ctx.sc_adapted.push_back(nb.col(i));
        ctx.sc_orders = f.divisors;
        ctx.sc_adapted_mat = nb;
        ctx.torsor_size = 1;
        for (int i = 0; i < m; ++i) {
            if (ctx.sc_orders[i] > 1) ctx.torsor_positions.push_back(i);
            ctx.torsor_size = checked_mul(ctx.torsor_size, ctx.sc_orders[i]);
        }
    } else {
        ctx.torsor_size = 0;
    }
    return ctx;
}

ThetaContext make_context(const CoverSpec &cover) {
    return make_context(make_orbit_setting(cover));
}

ThetaContext make_context_light(const CoverSpec &cover) {
    OrbitSetting s;
    s.cover = cover;
    s.yqn = sublattice_yqn(cover);
    s.sc = sublattice_yqn_sc(cover);
    s.classes = quotient(cover.datum.y_rank, s.yqn);
    s.sc_reducer = CosetReducer(s.sc.basis);
    s.dual_center_order =
        (s.sc.basis.cols == s.yqn.basis.cols) ? sublattice_index(s.sc, s.yqn) : 0;
    return make_context(s);
}

SymVal tfactor(const ThetaContext &ctx, int root_index, const Vec &y) {
    const CoverSpec &cov = ctx.cover();
    const int n = cov.n;
    i64 yr = cov.datum.pair(y, root_index) - 1; // <y_rho, alpha>
    i64 na = n_alpha(cov, root_index);
    i64 k = ceil_div(yr + 1, na);
    Vec av = cov.datum.simple_coroot(root_index);
    SymVal v = sym_q_half(n, 2 * (k - 1));
    v = sym_mul(v, sym_eps(n, checked_mul(yr, cov.d_form(y, av))));
    v = sym_mul(v, sym_inv(sym_gauss(n, checked_mul(yr, cov.q_simple[root_index]))));
    return v;
}

SymVal bigT_word(const ThetaContext &ctx, const std::vector<int> &word, const Vec &y) {
    SymVal acc = sym_one(ctx.degree());
    Vec cur = y;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        acc = sym_mul(acc, tfactor(ctx, *it, cur));
        cur = shifted_reflect(ctx.cover().datum, *it, cur);
    }
    return acc;
}

SymVal bigT(const ThetaContext &ctx, const WeylElement &w, const Vec &y) {
    return bigT_word(ctx, w.word, y);
}

namespace {

// chi(s_{c * u}) from chi(s_u), via the eps cocycle: extra eps^{Q(u) c(c-1)/2}
SymVal char_power(const ThetaContext &ctx, const SymVal &value, const Vec &u, i64 c) {
    SymVal v = sym_pow(value, c);
    i64 qu = ctx.cover().q_of(u);
    return sym_mul(v, sym_eps(ctx.degree(), checked_mul(qu, c * (c - 1) / 2)));
}

} // namespace

SymVal char_eval(const ThetaContext &ctx, const ExceptionalCharacter &chi, const Vec &y) {
    Vec c;
    if (!solve_columns(ctx.basis_qn_mat, y, c))
        throw std::invalid_argument("char_eval: element outside Y_{Q,n}");
    const int n = ctx.degree();
    SymVal acc = sym_one(n);
    Vec acc_vec(y.size(), 0);
    for (size_t i = 0; i < ctx.basis_qn.size(); ++i) {
        if (c[i] == 0) continue;
        Vec part = vec_scale(c[i], ctx.basis_qn[i]);
        SymVal term = char_power(ctx, chi.values[i], ctx.basis_qn[i], c[i]);
        acc = sym_mul(acc, sym_mul(term, sym_eps(n, ctx.cover().d_form(acc_vec, part))));
        acc_vec = vec_add(acc_vec, part);
    }
    return acc;
}

ExceptionalCharacter distinguished_char(const ThetaContext &ctx, const TwistSpec &twist) {
    const CoverSpec &cov = ctx.cover();
    const int n = cov.n;
    if (!cov.datum.semisimple())
        throw std::invalid_argument("distinguished characters are built on semisimple Y only");

    // q-power twist forced by the exceptional condition: exponent
    // <y, x_{Q,n}> with x_{Q,n} = sum over simple roots of omega_alpha / n_alpha
    i64 L = 1;
    for (int jr = 0; jr < cov.datum.rank; ++jr) L = lcm_i64(L, n_alpha(cov, jr));

    ExceptionalCharacter chi;
    chi.provenance = ExceptionalCharacter::Provenance::DistinguishedTwist;
    chi.twist = twist;
    for (size_t i = 0; i < ctx.basis_qn.size(); ++i) {
        const Vec &yi = ctx.basis_qn[i];
        i64 ki = ctx.mult_j[i];
        i64 qi = cov.q_of(yi);
        i64 num = checked_mul(2 * (ki - 1), qi);
        if (num % n != 0)
            throw std::invalid_argument("non-integral Weil-index exponent in distinguished character");
        i64 e = num / n;

        SymVal v = sym_one(n);
        switch (twist.mode) {
        case TwistSpec::Mode::Base:
            v = sym_mul(v, sym_gamma(n, e));
            break;
        case TwistSpec::Mode::UnitTwist:
            v = sym_mul(v, sym_gamma(n, e));
            if (n % 2 == 0)
                v = sym_mul(v, sym_omega(n, checked_mul(checked_mul(e, n / 2), twist.omega_exp)));
            break;
        case TwistSpec::Mode::AbstractPrime:
            v = sym_mul(v, sym_gamma_prime(n, e));
            break;
        }

        // twist exponent 2<y_i, x_{Q,n}> in halves of q
        Vec coords;
        if (!solve_columns(cov.datum.coroots, yi, coords))
            throw std::logic_error("basis vector outside the coroot span");
        i64 acc = 0;
        for (int jr = 0; jr < cov.datum.rank; ++jr)
            acc = checked_add(acc, checked_mul(coords[jr], 2 * (L / n_alpha(cov, jr))));
        if (acc % L != 0) throw std::logic_error("non-integral exceptional twist exponent");
        v = sym_mul(v, sym_q_half(n, -(acc / L)));
        chi.values.push_back(v);
    }

    // the construction must land on an exceptional character
    for (int jr = 0; jr < cov.datum.rank; ++jr) {
        Vec na_av = vec_scale(n_alpha(cov, jr), cov.datum.simple_coroot(jr));
        if (!(char_eval(ctx, chi, na_av) == sym_q_half(n, -2)))
            throw std::logic_error("distinguished twist fails the exceptional condition");
    }
    return chi;
}

std::pair<SymVal, SymVal> tau_entry(const ThetaContext &ctx, const ExceptionalCharacter &chi,
                                    int root_index, const Vec &y1, const Vec &y) {
    const CoverSpec &cov = ctx.cover();
    const int n = cov.n;
    const QuotientEnum &cls = ctx.os.classes;
    Vec av = cov.datum.simple_coroot(root_index);

    auto wchi_val = [&](const Vec &mu) {
        // twisted character on s_mu for mu in Y_{Q,n}
        i64 p = cov.datum.pair(mu, root_index);
        SymVal v = char_eval(ctx, chi, mu);
        return sym_mul(v, char_eval(ctx, chi, vec_scale(-p, av)));
    };

    SymVal tau1 = sym_zero(n), tau2 = sym_zero(n);
    i64 cls_y1 = cls.class_of(y1), cls_y = cls.class_of(y);
    if (cls_y1 == cls_y) {
        i64 k = ceil_div(cov.datum.pair(y, root_index), n_alpha(cov, root_index));
        SymVal t = sym_q_half(n, -2 * k);
        Vec lam = vec_sub(y1, y);
        t = sym_mul(t, sym_eps(n, cov.d_form(y, lam)));
        t = sym_mul(t, sym_inv(wchi_val(lam)));
        tau1 = t;
    }
    Vec wy = shifted_reflect(cov.datum, root_index, y);
    if (cls_y1 == cls.class_of(wy)) {
        i64 yr = cov.datum.pair(y, root_index) - 1;
        SymVal t = sym_eps(n, checked_mul(yr, cov.d_form(y, av)));
        t = sym_mul(t, sym_gauss(n, checked_mul(yr, cov.q_simple[root_index])));
        Vec lam = vec_sub(y1, wy);
        t = sym_mul(t, sym_eps(n, cov.d_form(wy, lam)));
        t = sym_mul(t, sym_inv(wchi_val(lam)));
        tau2 = t;
    }
    return {tau1, tau2};
}

namespace {

Condition make_condition(const ThetaContext &ctx, const WeylElement &w, const Vec &y) {
    Vec v = vec_sub(shifted_apply(ctx.cover().datum, w, y), y);
    SymVal req = sym_mul(sym_eps(ctx.degree(), ctx.cover().d_form(v, y)), bigT(ctx, w, y));
    return Condition{v, req, w.index, y};
}

void dedup_conditions(std::vector<Condition> &conds) {
    std::set<std::pair<Vec, std::string>> seen;
    std::vector<Condition> out;
    for (auto &c : conds)
        if (seen.emplace(c.element, sym_str(c.required)).second) out.push_back(std::move(c));
    conds = std::move(out);
}

} // namespace

std::vector<Condition> orbit_conditions(const ThetaContext &ctx, const OrbitRecord &orb) {
    if (!orb.is_sc_free)
        throw std::invalid_argument("orbit_conditions: orbit is not Y_{Q,n}^sc-free");
    std::vector<Condition> out;
    for (int wi : orb.qn_stab) {
        if (wi == 0) continue;
        out.push_back(make_condition(ctx, ctx.os.weyl.elements[wi], orb.base));
    }
    dedup_conditions(out);
    return out;
}

std::vector<Condition> orbit_conditions_full(const ThetaContext &ctx, const OrbitRecord &orb) {
    if (!orb.is_sc_free)
        throw std::invalid_argument("orbit_conditions_full: orbit is not Y_{Q,n}^sc-free");
    if (orb.elements.empty())
        throw std::invalid_argument("orbit_conditions_full needs stored elements");
    std::map<std::vector<i64>, int> index_of;
    for (const auto &w : ctx.os.weyl.elements) index_of[w.matrix.a] = w.index;
    std::map<i64, std::vector<int>> by_class;
    for (size_t i = 0; i < orb.elements.size(); ++i)
        by_class[ctx.os.classes.class_of(orb.elements[i])].push_back(static_cast<int>(i));
    std::vector<Condition> out;
    for (const auto &[cls, members] : by_class) {
        (void)cls;
        for (int i1 : members)
            for (int i2 : members) {
                if (i1 == i2) continue;
                const Mat &m2 = ctx.os.weyl.elements[i2].matrix;
                const WeylElement &w1 = ctx.os.weyl.elements[i1];
                Mat prod = mat_mul(m2, ctx.os.weyl.elements[w1.inverse].matrix);
                auto it = index_of.find(prod.a);
                if (it == index_of.end()) throw std::logic_error("composition not found");
                out.push_back(make_condition(ctx, ctx.os.weyl.elements[it->second], orb.elements[i1]));
            }
    }
    dedup_conditions(out);
    return out;
}

namespace {

// torsor coordinates of v in Y_{Q,n}/Y_{Q,n}^sc, over the generator positions
Vec torsor_coords(const ThetaContext &ctx, const Vec &v) {
    Vec c;
    if (!solve_columns(ctx.os.yqn.basis, v, c))
        throw std::invalid_argument("torsor_coords: element outside Y_{Q,n}");
    Vec x;
    if (!solve_columns(ctx.sc_adapted_mat, v, x))
        throw std::logic_error("torsor_coords: adapted basis failure");
    Vec out;
    for (int pos : ctx.torsor_positions) out.push_back(mod_pos(x[pos], ctx.sc_orders[pos]));
    return out;
}

struct Signature {
    bool satisfiable = true;
    Mat lattice;                // HNF basis of the solution constraint group + relations
    std::vector<std::string> phi;
    std::vector<std::string> display; // pinned value conditions
    std::string key;
};

// joint solvability and count of characters satisfying a set of
// (class coords, residual) constraints; returns (consistent, count)
std::pair<bool, i64> constraint_count(const ThetaContext &ctx,
                                      const std::vector<Vec> &acols,
                                      const std::vector<SymVal> &resid) {
    int s = static_cast<int>(ctx.torsor_positions.size());
    int K = static_cast<int>(acols.size());
    Mat M(s, K + s);
    for (int t = 0; t < K; ++t)
        for (int i = 0; i < s; ++i) M(i, t) = acols[t][i];
    for (int i = 0; i < s; ++i) M(i, K + i) = ctx.sc_orders[ctx.torsor_positions[i]];
    Mat ker = integer_kernel(M);
    for (int jc = 0; jc < ker.cols; ++jc) {
        SymVal prod = sym_one(ctx.degree());
        for (int t = 0; t < K; ++t)
            if (ker(t, jc) != 0) prod = sym_mul(prod, sym_pow(resid[t], ker(t, jc)));
        if (!sym_is_one(prod)) return {false, 0};
    }
    Mat L = hnf_basis(M);
    i64 det = 1;
    for (int jc = 0; jc < L.cols; ++jc) {
        int pr = -1;
        for (int r = 0; r < L.rows; ++r)
            if (L(r, jc) != 0) { pr = r; break; }
        det = checked_mul(det, L(pr, jc));
    }
    if (L.cols != s) throw std::logic_error("constraint lattice rank drop");
    return {true, det};
}

Signature build_signature(const ThetaContext &ctx, const ExceptionalCharacter &base,
                          const std::vector<Condition> &conds,
                          std::vector<Vec> &acols_out, std::vector<SymVal> &resid_out) {
    Signature sig;
    int s = static_cast<int>(ctx.torsor_positions.size());
    std::vector<Vec> acols;
    std::vector<SymVal> resid;
    for (const Condition &c : conds) {
        SymVal r = sym_mul(c.required, sym_inv(char_eval(ctx, base, c.element)));
        if (!sym_is_unit(r)) {
            sig.satisfiable = false;
            return sig;
        }
        acols.push_back(torsor_coords(ctx, c.element));
        resid.push_back(r);
    }
    auto [ok, count] = constraint_count(ctx, acols, resid);
    (void)count;
    if (!ok) {
        sig.satisfiable = false;
        return sig;
    }
    int K = static_cast<int>(acols.size());
    Mat M(s, K + s);
    for (int t = 0; t < K; ++t)
        for (int i = 0; i < s; ++i) M(i, t) = acols[t][i];
    for (int i = 0; i < s; ++i) M(i, K + i) = ctx.sc_orders[ctx.torsor_positions[i]];
    sig.lattice = hnf_basis(M);
    for (int jc = 0; jc < sig.lattice.cols; ++jc) {
        Vec col = sig.lattice.col(jc);
        Vec x;
        if (!solve_columns(M, col, x)) throw std::logic_error("signature basis not expressible");
        SymVal phi = sym_one(ctx.degree());
        for (int t = 0; t < K; ++t)
            if (x[t] != 0) phi = sym_mul(phi, sym_pow(resid[t], x[t]));
        sig.phi.push_back(sym_str(phi));
        // pinned display (skip columns inside the relation lattice)
        bool in_rel = true;
        for (int i = 0; i < s; ++i)
            if (mod_pos(col[i], ctx.sc_orders[ctx.torsor_positions[i]]) != 0) { in_rel = false; break; }
        if (!in_rel) {
            Vec lift(ctx.cover().datum.y_rank, 0);
            for (int i = 0; i < s; ++i)
                lift = vec_add(lift, vec_scale(col[i], ctx.sc_adapted[ctx.torsor_positions[i]]));
            SymVal val = sym_mul(phi, char_eval(ctx, base, lift));
            sig.display.push_back("chi(s" + vec_str(lift) + ") = " + sym_str(val));
        }
    }
    std::ostringstream os;
    for (i64 v : sig.lattice.a) os << v << ",";
    os << "|";
    for (const auto &p : sig.phi) os << p << ";";
    sig.key = os.str();
    acols_out = std::move(acols);
    resid_out = std::move(resid);
    return sig;
}

} // namespace

bool conditions_equivalent(const ThetaContext &ctx, const std::vector<Condition> &a,
                           const std::vector<Condition> &b) {
    ExceptionalCharacter base = distinguished_char(ctx, TwistSpec{});
    std::vector<Vec> ac, bc;
    std::vector<SymVal> ar, br;
    Signature sa = build_signature(ctx, base, a, ac, ar);
    Signature sb = build_signature(ctx, base, b, bc, br);
    if (sa.satisfiable != sb.satisfiable) return false;
    if (!sa.satisfiable) return true;
    return sa.key == sb.key;
}

DimReport dim_whittaker(const ThetaContext &ctx, const std::optional<ExceptionalCharacter> &chi) {
    DimReport rep;
    OrbitSurvey sv = survey(ctx.os);
    rep.lower = sv.lower;
    rep.upper = sv.upper;
    rep.total_classes = sv.total_classes;
    rep.torsor_size = ctx.torsor_size;

    // conditioned images
    for (const auto &im : sv.sc_free_images) {
        if (im.qn_free) continue;
        OrbitRecord orb = orbit(ctx.os, im.orbit_base_class, false);
        ImageConditionReport icr;
        icr.image = im.key;
        icr.orbit_base_class = im.orbit_base_class;
        icr.conditions = orbit_conditions(ctx, orb);
        rep.images.push_back(std::move(icr));
    }

    if (chi) {
        i64 dim = rep.lower;
        bool decidable = true;
        for (auto &icr : rep.images) {
            icr.concrete = SatisfiedState::Yes;
            for (const Condition &c : icr.conditions) {
                SymVal r = sym_mul(c.required, sym_inv(char_eval(ctx, *chi, c.element)));
                if (sym_is_one(r)) continue;
                if (!sym_is_unit(r) || (sym_is_unit(r) && r.eps == 0 && r.gamma == 0 &&
                                        r.gamma_p == 0 && r.omega == 0)) {
                    icr.concrete = SatisfiedState::No;
                    break;
                }
                icr.concrete = SatisfiedState::Conditional;
                icr.residuals.push_back(r);
            }
            if (icr.concrete == SatisfiedState::Yes) ++dim;
            if (icr.concrete == SatisfiedState::Conditional) decidable = false;
        }
        if (decidable)
            rep.dim = dim;
        else
            rep.notes.push_back("dimension depends on unresolved unit symbols; see decide_distinguished");
        return rep;
    }

    if (rep.images.empty()) {
        rep.dim = rep.lower;
        BranchRow row;
        row.dim = rep.lower;
        row.num_characters = ctx.torsor_size;
        rep.branches.push_back(row);
        return rep;
    }
    if (ctx.torsor_size == 0) {
        rep.notes.push_back("infinite exceptional family with conditioned images; no branch table");
        return rep;
    }

    ExceptionalCharacter base = distinguished_char(ctx, TwistSpec{});

    // group images by signature
    struct SigGroup {
        Signature sig;
        std::vector<Vec> acols;
        std::vector<SymVal> resid;
        i64 image_count = 0;
        std::vector<std::string> raw;
    };
    std::vector<SigGroup> groups;
    std::map<std::string, size_t> slot;
    i64 never = 0;
    for (auto &icr : rep.images) {
        std::vector<Vec> acols;
        std::vector<SymVal> resid;
        Signature sig = build_signature(ctx, base, icr.conditions, acols, resid);
        icr.satisfiable = sig.satisfiable;
        if (!sig.satisfiable) {
            ++never;
            continue;
        }
        auto it = slot.find(sig.key);
        if (it == slot.end()) {
            slot.emplace(sig.key, groups.size());
            SigGroup g;
            g.sig = std::move(sig);
            g.acols = std::move(acols);
            g.resid = std::move(resid);
            g.image_count = 1;
            for (const auto &c : icr.conditions)
                g.raw.push_back("chi(s" + vec_str(c.element) + ") = " + sym_str(c.required));
            groups.push_back(std::move(g));
        } else {
            ++groups[it->second].image_count;
        }
    }
    (void)never;

    size_t S = groups.size();
    if (S > 16) throw std::runtime_error("too many distinct condition signatures");
    std::vector<i64> n_all(1ull << S, 0);
    for (size_t mask = 0; mask < (1ull << S); ++mask) {
        std::vector<Vec> acols;
        std::vector<SymVal> resid;
        for (size_t i = 0; i < S; ++i)
            if (mask & (1ull << i)) {
                acols.insert(acols.end(), groups[i].acols.begin(), groups[i].acols.end());
                resid.insert(resid.end(), groups[i].resid.begin(), groups[i].resid.end());
            }
        auto [ok, count] = constraint_count(ctx, acols, resid);
        n_all[mask] = ok ? count : 0;
    }
    i64 total_chars = 0;
    for (size_t pattern = 0; pattern < (1ull << S); ++pattern) {
        // inclusion-exclusion over supersets
        i64 cnt = 0;
        size_t rest = (~pattern) & ((1ull << S) - 1);
        for (size_t sub = rest;; sub = (sub - 1) & rest) {
            int bits = __builtin_popcountll(sub);
            cnt += (bits % 2 ? -1 : 1) * n_all[pattern | sub];
            if (sub == 0) break;
        }
        if (cnt < 0) throw std::logic_error("negative character count");
        if (cnt == 0) continue;
        total_chars += cnt;
        BranchRow row;
        row.dim = rep.lower;
        for (size_t i = 0; i < S; ++i) {
            bool on = pattern & (1ull << i);
            if (on) row.dim += groups[i].image_count;
            for (const auto &d : groups[i].sig.display)
                row.conditions.push_back(on ? d : ("not: " + d));
        }
        row.num_characters = cnt;
        rep.branches.push_back(row);
    }
    if (total_chars != ctx.torsor_size) throw std::logic_error("branch character counts do not add up");
    std::sort(rep.branches.begin(), rep.branches.end(),
              [](const BranchRow &a, const BranchRow &b) { return a.dim > b.dim; });
    if (std::all_of(rep.branches.begin(), rep.branches.end(),
                    [&](const BranchRow &r) { return r.dim == rep.branches.front().dim; }))
        rep.dim = rep.branches.front().dim;
    return rep;
}

namespace {

std::optional<std::string> unit_class_for(const ThetaContext &ctx, i64 k, const SymVal &rhs) {
    const int n = ctx.degree();
    if (n % 2 != 0 || k != n / 2) return std::nullopt;
    if (sym_is_one(rhs)) return "a in (O_F^x)^2";
    if (rhs == sym_eps(n, n / 2)) return "a in -(O_F^x)^2";
    if (rhs == sym_neg(sym_one(n))) return "a not in (O_F^x)^2";
    if (rhs == sym_neg(sym_eps(n, n / 2))) return "a not in -(O_F^x)^2";
    return std::nullopt;
}

SolvedCondition solve_residual_impl(const ThetaContext &ctx, const SymVal &r) {
    SolvedCondition out;
    if (r.gamma_p) {
        SymVal u = r;
        u.gamma_p = 0;
        SymVal rhs = sym_inv(u);
        out.equation = "gamma' = " + sym_str(rhs);
        return out;
    }
    if (r.omega) {
        i64 k = r.omega;
        SymVal u = r;
        u.omega = 0;
        SymVal rhs = sym_inv(u);
        std::ostringstream os;
        os << "omega";
        if (k != 1) os << "^" << k;
        os << " = " << sym_str(rhs);
        out.equation = os.str();
        out.unit_class = unit_class_for(ctx, k, rhs);
        return out;
    }
    out.equation = sym_str(r) + " = 1";
    return out;
}

} // namespace

SolvedCondition solve_residual_condition(const ThetaContext &ctx, const SymVal &r) {
    return solve_residual_impl(ctx, r);
}

DistinguishedVerdict decide_distinguished(const ThetaContext &ctx, const TwistSpec &twist) {
    ExceptionalCharacter chi = distinguished_char(ctx, twist);
    DimReport rep = dim_whittaker(ctx, chi);
    DistinguishedVerdict v;
    i64 base = rep.lower;
    std::map<std::string, SolvedCondition> pending;
    i64 pending_images = 0;
    for (const auto &icr : rep.images) {
        if (icr.concrete == SatisfiedState::Yes) ++base;
        if (icr.concrete != SatisfiedState::Conditional) continue;
        ++pending_images;
        std::set<std::string> eqs;
        for (const SymVal &r : icr.residuals) {
            SolvedCondition sc = solve_residual_impl(ctx, r);
            eqs.insert(sc.equation);
            pending.emplace(sc.equation, sc);
        }
        if (eqs.size() > 1)
            throw std::runtime_error("image carries several distinct unit conditions");
    }
    if (pending.size() > 1)
        throw std::runtime_error("instance carries several distinct unit conditions");
    if (pending.empty()) {
        v.unconditional = true;
        v.dim_if_satisfied = v.dim_otherwise = base;
        return v;
    }
    v.unconditional = false;
    v.dim_if_satisfied = base + pending_images;
    v.dim_otherwise = base;
    for (auto &[k, sc] : pending) {
        (void)k;
        v.conditions.push_back(sc);
    }
    return v;
}

TorsorInfo exceptional_chars(const ThetaContext &ctx) {
    TorsorInfo info;
    info.basis_qn = ctx.basis_qn;
    info.mult_j = ctx.mult_j;
    info.torsor_size = ctx.torsor_size;
    for (int pos : ctx.torsor_positions) {
        info.free_generators.push_back(ctx.sc_adapted[pos]);
        info.generator_orders.push_back(ctx.sc_orders[pos]);
    }
    ExceptionalCharacter base = distinguished_char(ctx, TwistSpec{});
    info.base_values = base.values;
    for (size_t i = 0; i < info.free_generators.size(); ++i) {
        std::ostringstream os;
        os << "chi(s" << vec_str(info.free_generators[i]) << ") = "
           << sym_str(char_eval(ctx, base, info.free_generators[i])) << " * zeta, zeta^"
           << info.generator_orders[i] << " = 1";
        info.value_families.push_back(os.str());
    }
    return info;
}

Rank2Report verify_rank2(const ThetaContext &ctx, int a, int b, int sample_count,
                         unsigned long long seed) {
    Rank2Report rep;
    const RootDatum &d = ctx.cover().datum;
    const int n = ctx.degree();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> dist(-3LL * n, 3LL * n);

    // nontrivial dihedral subgroup elements as alternating words
    int m = (a == b) ? 1 : braid_order(d, a, b);
    std::vector<std::vector<int>> words;
    for (int len = 1; len <= 2 * m - 1; ++len) {
        for (int first : {a, b}) {
            std::vector<int> w;
            int cur = first;
            for (int i = 0; i < len; ++i) {
                w.push_back(cur);
                cur = (cur == a) ? b : a;
            }
            words.push_back(w);
            if (a == b) break;
        }
    }
    auto apply_word = [&](const std::vector<int> &w, Vec y) {
        for (auto it = w.rbegin(); it != w.rend(); ++it) y = shifted_reflect(d, *it, y);
        return y;
    };

    int tried = 0;
    while (rep.checked < sample_count && tried < 200 * sample_count) {
        ++tried;
        Vec y(d.y_rank);
        for (auto &v : y) v = dist(rng);
        // local sc-freeness across the dihedral subgroup
        Vec key = ctx.os.sc_reducer.reduce(y);
        bool ok = true;
        for (const auto &w : words)
            if (ctx.os.sc_reducer.reduce(apply_word(w, y)) == key) { ok = false; break; }
        if (!ok) continue;
        ++rep.checked;

        auto record_failure = [&](const std::string &what, const SymVal &got) {
            ++rep.failures;
            if (rep.first_failure.empty()) {
                std::ostringstream os;
                os << what << " at y=" << vec_str(y) << " gave " << sym_str(got);
                rep.first_failure = os.str();
            }
        };

        for (int r : {a, b}) {
            SymVal prod = sym_mul(tfactor(ctx, r, shifted_reflect(d, r, y)), tfactor(ctx, r, y));
            if (!sym_is_one(prod)) record_failure("inverse law", prod);
            if (a == b) break;
        }
        if (a != b) {
            SymVal prod = sym_one(n);
            Vec cur = y;
            for (int i = 1; i <= m; ++i) {
                cur = shifted_reflect(d, a, shifted_reflect(d, b, cur));
                SymVal t2 = sym_mul(tfactor(ctx, a, shifted_reflect(d, b, cur)), tfactor(ctx, b, cur));
                prod = sym_mul(prod, t2);
            }
            if (!sym_is_one(prod)) record_failure("braid product", prod);
        }
    }
    if (rep.checked < sample_count && rep.first_failure.empty())
        rep.first_failure = "could not sample enough locally free elements";
    return rep;
}

} // namespace thetadim
