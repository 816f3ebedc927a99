#include "thetadim/symfield.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace thetadim {

namespace {

void check_same_degree(const SymVal &a, const SymVal &b) {
    if (a.n != b.n) throw std::invalid_argument("symbolic values from different covers");
}

// Accumulate eps^e.
void add_eps(SymVal &v, i64 e) {
    if (v.n % 2 == 1) return; // eps = 1 for odd n
    v.eps = static_cast<int>(mod_pos(v.eps + e, 2));
}

// Accumulate gamma^e (or gamma'^e), folding gamma^2 = eps^(n/2).
void add_gamma(SymVal &v, i64 e, bool prime) {
    if (e == 0) return;
    if (v.n % 2 == 1) {
        if (mod_pos(e, 4) != 0) throw std::invalid_argument("Weil index atom requires even degree");
        return; // gamma^4 = 1
    }
    int &slot = prime ? v.gamma_p : v.gamma;
    i64 total = slot + e;
    i64 r = mod_pos(total, 2);
    i64 pairs = (total - r) / 2;
    add_eps(v, pairs * (v.n / 2));
    slot = static_cast<int>(r);
}

void add_omega(SymVal &v, i64 e) { v.omega = mod_pos(v.omega + e, v.n); }

void add_q2(SymVal &v, i64 e) { v.q2 = checked_add(v.q2, e); }

void add_sign(SymVal &v, i64 e) {
    if (mod_pos(e, 2)) v.sign = -v.sign;
}

// Accumulate g(index)^e in canonical form.
void add_gauss(SymVal &v, i64 index, i64 e) {
    if (e == 0) return;
    i64 n = v.n;
    i64 j = mod_pos(index, n);
    if (j == 0) {
        // g(kn) = -1/q
        add_sign(v, e);
        add_q2(v, -2 * e);
        return;
    }
    if (n % 2 == 0 && j == n / 2) {
        // g(n/2) = q^{-1/2} gamma^{-1}
        add_q2(v, -e);
        add_gamma(v, -e, false);
        return;
    }
    if (2 * j > n) {
        // g(n - j') = eps^{j'} q^{-1} g(j')^{-1}
        i64 jp = n - j;
        add_eps(v, jp * e);
        add_q2(v, -2 * e);
        j = jp;
        e = -e;
    }
    auto it = v.gauss.find(j);
    if (it == v.gauss.end()) {
        v.gauss.emplace(j, e);
    } else {
        it->second += e;
        if (it->second == 0) v.gauss.erase(it);
    }
}

} // namespace

bool SymVal::operator==(const SymVal &o) const {
    if (n != o.n) return false;
    if (zero || o.zero) return zero == o.zero;
    return sign == o.sign && q2 == o.q2 && eps == o.eps && gamma == o.gamma &&
           gamma_p == o.gamma_p && omega == o.omega && gauss == o.gauss;
}

SymVal sym_one(int n) {
    if (n < 1) throw std::invalid_argument("degree must be >= 1");
    SymVal v;
    v.n = n;
    return v;
}

SymVal sym_zero(int n) {
    SymVal v = sym_one(n);
    v.zero = true;
    return v;
}

SymVal sym_int(int n, i64 value) {
    if (value == 0) return sym_zero(n);
    if (value != 1 && value != -1) throw std::invalid_argument("sym_int accepts only 0, 1, -1");
    SymVal v = sym_one(n);
    v.sign = static_cast<int>(value);
    return v;
}

SymVal sym_q_half(int n, i64 half_exponent) {
    SymVal v = sym_one(n);
    v.q2 = half_exponent;
    return v;
}

SymVal sym_eps(int n, i64 e) {
    SymVal v = sym_one(n);
    add_eps(v, e);
    return v;
}

SymVal sym_gamma(int n, i64 e) {
    SymVal v = sym_one(n);
    add_gamma(v, e, false);
    return v;
}

SymVal sym_gamma_prime(int n, i64 e) {
    SymVal v = sym_one(n);
    add_gamma(v, e, true);
    return v;
}

SymVal sym_omega(int n, i64 e) {
    SymVal v = sym_one(n);
    add_omega(v, e);
    return v;
}

SymVal sym_gauss(int n, i64 index, i64 e) {
    SymVal v = sym_one(n);
    add_gauss(v, index, e);
    return v;
}

SymVal sym_mul(const SymVal &a, const SymVal &b) {
    check_same_degree(a, b);
    if (a.zero || b.zero) return sym_zero(a.n);
    SymVal v = a;
    add_sign(v, b.sign == -1 ? 1 : 0);
    add_q2(v, b.q2);
    add_eps(v, b.eps);
    add_gamma(v, b.gamma, false);
    add_gamma(v, b.gamma_p, true);
    add_omega(v, b.omega);
    for (const auto &[j, e] : b.gauss) add_gauss(v, j, e);
    return v;
}

SymVal sym_pow(const SymVal &a, i64 e) {
    if (a.zero) {
        if (e <= 0) throw std::invalid_argument("zero to a nonpositive power");
        return a;
    }
    SymVal v = sym_one(a.n);
    add_sign(v, a.sign == -1 ? e : 0);
    add_q2(v, checked_mul(a.q2, e));
    add_eps(v, checked_mul(a.eps, e));
    add_gamma(v, checked_mul(a.gamma, e), false);
    add_gamma(v, checked_mul(a.gamma_p, e), true);
    add_omega(v, checked_mul(a.omega, e));
    for (const auto &[j, m] : a.gauss) add_gauss(v, j, checked_mul(m, e));
    return v;
}

SymVal sym_inv(const SymVal &a) {
    if (a.zero) throw std::invalid_argument("inverse of zero");
    return sym_pow(a, -1);
}

SymVal sym_neg(const SymVal &a) {
    if (a.zero) return a;
    SymVal v = a;
    v.sign = -v.sign;
    return v;
}

SymVal sym_conj(const SymVal &a) {
    if (a.zero) return a;
    // conj fixes sign, q, eps; inverts the unitary atoms; conj g(j) = eps^j g(-j)
    SymVal v = sym_one(a.n);
    v.sign = a.sign;
    v.q2 = a.q2;
    v.eps = a.eps;
    add_gamma(v, -a.gamma, false);
    add_gamma(v, -a.gamma_p, true);
    add_omega(v, -a.omega);
    for (const auto &[j, e] : a.gauss) {
        add_eps(v, j * e);
        add_gauss(v, -j, e);
    }
    return v;
}

bool sym_equal(const SymVal &a, const SymVal &b) { return a == b; }

bool sym_is_one(const SymVal &a) { return a == sym_one(a.n); }

bool sym_is_unit(const SymVal &a) { return !a.zero && a.q2 == 0 && a.gauss.empty(); }

bool sym_has_omega(const SymVal &a) { return !a.zero && a.omega != 0; }

bool sym_has_gamma_prime(const SymVal &a) { return !a.zero && a.gamma_p != 0; }

SymVal normalize(int n, const std::vector<RawFactor> &raw) {
    SymVal v = sym_one(n);
    for (const RawFactor &f : raw) {
        switch (f.kind) {
        case SymAtom::One: break;
        case SymAtom::MinusOne: add_sign(v, f.exp); break;
        case SymAtom::QHalf: add_q2(v, checked_mul(f.arg, f.exp)); break;
        case SymAtom::Eps: add_eps(v, f.exp); break;
        case SymAtom::Gamma: add_gamma(v, f.exp, false); break;
        case SymAtom::GammaPrime: add_gamma(v, f.exp, true); break;
        case SymAtom::Omega: add_omega(v, f.exp); break;
        case SymAtom::Gauss: add_gauss(v, f.arg, f.exp); break;
        }
    }
    return v;
}

std::string sym_str(const SymVal &a) {
    if (a.zero) return "0";
    std::vector<std::string> parts;
    if (a.sign < 0) parts.push_back("-1");
    if (a.q2 != 0) {
        std::ostringstream os;
        os << "q^{";
        if (a.q2 % 2 == 0)
            os << a.q2 / 2;
        else
            os << a.q2 << "/2";
        os << "}";
        parts.push_back(os.str());
    }
    if (a.eps) parts.push_back("eps");
    if (a.gamma) parts.push_back("gamma");
    if (a.gamma_p) parts.push_back("gamma'");
    if (a.omega) {
        std::ostringstream os;
        os << "omega";
        if (a.omega != 1) os << "^" << a.omega;
        parts.push_back(os.str());
    }
    for (const auto &[j, e] : a.gauss) {
        std::ostringstream os;
        os << "g(" << j << ")";
        if (e != 1) os << "^" << e;
        parts.push_back(os.str());
    }
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += " · " + parts[i];
    return out;
}

namespace {

struct Tok {
    std::string text;
};

std::vector<std::string> split_factors(const std::string &text) {
    std::vector<std::string> out;
    std::string cur;
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = text[i];
        if (c == '*' || (c == 0xC2 && i + 1 < text.size() && (unsigned char)text[i + 1] == 0xB7)) {
            if (c == 0xC2) ++i;
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(static_cast<char>(c));
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string &s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

i64 parse_int(const std::string &s) {
    if (s.empty()) throw std::invalid_argument("empty integer in symbolic literal");
    size_t pos = 0;
    i64 v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
}

// exponent suffix "^k" or "^{k}"; returns 1 when absent
i64 take_exponent(std::string &s) {
    size_t caret = s.find('^');
    if (caret == std::string::npos) return 1;
    std::string e = strip(s.substr(caret + 1));
    s = strip(s.substr(0, caret));
    if (!e.empty() && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
    return parse_int(e);
}

} // namespace

SymVal sym_parse(int n, const std::string &text) {
    std::string t = strip(text);
    if (t == "0") return sym_zero(n);
    std::vector<RawFactor> raw;
    for (std::string part : split_factors(t)) {
        part = strip(part);
        if (part.empty()) throw std::invalid_argument("empty factor in symbolic literal");
        if (part == "1") continue;
        if (part == "-1") {
            raw.push_back({SymAtom::MinusOne, 0, 1});
            continue;
        }
        if (part.rfind("q^", 0) == 0) {
            std::string e = part.substr(2);
            if (!e.empty() && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
            i64 num;
            size_t slash = e.find('/');
            if (slash != std::string::npos) {
                num = parse_int(e.substr(0, slash));
                if (strip(e.substr(slash + 1)) != "2") throw std::invalid_argument("q exponent denominator must be 2");
            } else {
                num = 2 * parse_int(e);
            }
            raw.push_back({SymAtom::QHalf, num, 1});
            continue;
        }
        if (part == "q") {
            raw.push_back({SymAtom::QHalf, 2, 1});
            continue;
        }
        if (part.rfind("g(", 0) == 0) {
            size_t close = part.find(')');
            if (close == std::string::npos) throw std::invalid_argument("unterminated g(...)");
            i64 idx = parse_int(strip(part.substr(2, close - 2)));
            std::string rest = strip(part.substr(close + 1));
            i64 e = 1;
            if (!rest.empty()) {
                std::string dummy = "x" + rest;
                e = take_exponent(dummy);
                if (dummy != "x") throw std::invalid_argument("bad gauss factor: " + part);
            }
            raw.push_back({SymAtom::Gauss, idx, e});
            continue;
        }
        std::string name = part;
        i64 e = take_exponent(name);
        if (name == "eps")
            raw.push_back({SymAtom::Eps, 0, e});
        else if (name == "gamma")
            raw.push_back({SymAtom::Gamma, 0, e});
        else if (name == "gamma'")
            raw.push_back({SymAtom::GammaPrime, 0, e});
        else if (name == "omega")
            raw.push_back({SymAtom::Omega, 0, e});
        else
            throw std::invalid_argument("unknown symbolic atom: " + name);
    }
    return normalize(n, raw);
}

GaussValue gauss_sum(int n, i64 a, i64 b) {
    if (b < -1) return {GaussKind::Zero, sym_zero(n)};
    bool divisible = mod_pos(a, n) == 0;
    if (b >= 0) {
        if (divisible) return {GaussKind::UnitMeasure, sym_one(n)};
        return {GaussKind::Zero, sym_zero(n)};
    }
    // b == -1
    if (divisible) return {GaussKind::Monomial, sym_neg(sym_q_half(n, -2))};
    return {GaussKind::Monomial, sym_gauss(n, a)};
}

} // namespace thetadim
