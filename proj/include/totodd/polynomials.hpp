#pragma once

#include <totodd/exact_linalg.hpp>
#include <totodd/numbers.hpp>
#include <totodd/odd_indices.hpp>

#include <json.hpp>

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace totodd {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in lexicographically decreasing key order so that iteration and
/// serialization are deterministic. Exponents may be zero or odd; the
/// restricted totally even constraint lives in EvenPolynomial only.
class GeneralPolynomial {
public:
    using TermMap = std::map<Exponents, Rat, std::greater<Exponents>>;

    explicit GeneralPolynomial(int nvars = 0) : nvars_(nvars) {}

    static GeneralPolynomial monomial(int nvars, Exponents e, Rat c = 1) {
        GeneralPolynomial p(nvars);
        p.add_term(std::move(e), c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rat coefficient(const Exponents& e) const {
        const auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(Exponents e, const Rat& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("GeneralPolynomial::add_term: arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GeneralPolynomial& operator+=(const GeneralPolynomial& o) {
        require_same_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    GeneralPolynomial& operator-=(const GeneralPolynomial& o) {
        require_same_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    GeneralPolynomial& operator*=(const Rat& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend GeneralPolynomial operator+(GeneralPolynomial a, const GeneralPolynomial& b) {
        a += b;
        return a;
    }
    friend GeneralPolynomial operator-(GeneralPolynomial a, const GeneralPolynomial& b) {
        a -= b;
        return a;
    }
    friend GeneralPolynomial operator*(GeneralPolynomial a, const Rat& s) {
        a *= s;
        return a;
    }
    friend bool operator==(const GeneralPolynomial& a, const GeneralPolynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            deg = std::max(deg, d);
        }
        return deg;
    }

    bool is_homogeneous() const {
        bool first = true;
        int deg = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            if (first) {
                deg = d;
                first = false;
            } else if (d != deg) {
                return false;
            }
        }
        return true;
    }

private:
    void require_same_arity(const GeneralPolynomial& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("GeneralPolynomial: arity mismatch");
    }

    int nvars_;
    TermMap terms_;
};

/// Argument substitution: replace an argument either by a single variable or
/// by a difference x[hi] - x[lo] of two output variables.
struct ArgSub {
    static ArgSub var(int v) { return {false, v, -1}; }
    static ArgSub diff(int hi, int lo) { return {true, hi, lo}; }

    bool is_diff = false;
    int var_or_hi = 0;
    int lo = -1;
};

/// p(args...) with each argument replaced per `subs`, expanded and collected
/// over `out_nvars` output variables. Differences are expanded binomially
/// term by term, which keeps everything exact.
inline GeneralPolynomial substitute_args(const GeneralPolynomial& p,
                                         const std::vector<ArgSub>& subs, int out_nvars) {
    if (static_cast<int>(subs.size()) != p.nvars())
        throw std::invalid_argument("substitute_args: one substitution per argument required");
    GeneralPolynomial out(out_nvars);
    for (const auto& [e, c] : p.terms()) {
        // partial expansions of this term
        std::vector<std::pair<Exponents, Rat>> partial{{Exponents(out_nvars, 0), c}};
        for (std::size_t a = 0; a < subs.size(); ++a) {
            const int d = e[a];
            if (d == 0) continue;
            const ArgSub& s = subs[a];
            if (!s.is_diff) {
                for (auto& [exp, coeff] : partial) exp[s.var_or_hi] += d;
                continue;
            }
            std::vector<std::pair<Exponents, Rat>> next;
            next.reserve(partial.size() * (d + 1));
            for (const auto& [exp, coeff] : partial) {
                for (int k = 0; k <= d; ++k) {
                    Exponents e2 = exp;
                    e2[s.var_or_hi] += k;
                    e2[s.lo] += d - k;
                    next.emplace_back(std::move(e2),
                                      coeff * Rat(binomial(d, k) * parity_sign(d - k)));
                }
            }
            partial = std::move(next);
        }
        for (auto& [exp, coeff] : partial) out.add_term(std::move(exp), coeff);
    }
    return out;
}

/// Polynomial representation of the Ihara action:
///   (f ∘ g)(x_1..x_r) = f(x_1) g(x_2..x_r)
///     + sum_{i=1}^{r-1} [ f(x_{i+1}-x_i) g(x_1,..,omit x_{i+1},..,x_r)
///                         - (-1)^{deg f} f(x_i-x_{i+1}) g(x_1,..,omit x_i,..,x_r) ]
/// with f univariate and g in r-1 variables, both homogeneous.
inline GeneralPolynomial ihara_action(const GeneralPolynomial& f, const GeneralPolynomial& g) {
    if (f.nvars() != 1)
        throw std::invalid_argument("ihara_action: f must be univariate");
    if (!f.is_homogeneous() || !g.is_homogeneous())
        throw std::invalid_argument("ihara_action: inputs must be homogeneous");
    const int r = g.nvars() + 1;
    if (r < 2) throw std::invalid_argument("ihara_action: g must have at least one variable");

    // H(y_0,..,y_{r-1}) = f(y_0) * g(y_1,..,y_{r-1}); each Ihara summand is a
    // substitution instance of H.
    GeneralPolynomial h(r);
    for (const auto& [ef, cf] : f.terms()) {
        for (const auto& [eg, cg] : g.terms()) {
            Exponents e(r);
            e[0] = ef[0];
            std::copy(eg.begin(), eg.end(), e.begin() + 1);
            h.add_term(std::move(e), cf * cg);
        }
    }
    if (h.is_zero()) return GeneralPolynomial(r);

    const int deg_f = f.total_degree();

    std::vector<ArgSub> subs(r);
    for (int k = 0; k < r; ++k) subs[k] = ArgSub::var(k);
    GeneralPolynomial result = substitute_args(h, subs, r);

    for (int i = 1; i <= r - 1; ++i) {
        // f(x_{i+1}-x_i), g over x_1..x_r omitting x_{i+1}
        subs[0] = ArgSub::diff(i, i - 1);
        int slot = 1;
        for (int v = 0; v < r; ++v) {
            if (v == i) continue;
            subs[slot++] = ArgSub::var(v);
        }
        result += substitute_args(h, subs, r);

        // f(x_i-x_{i+1}), g over x_1..x_r omitting x_i, weighted by -(-1)^{deg f}
        subs[0] = ArgSub::diff(i - 1, i);
        slot = 1;
        for (int v = 0; v < r; ++v) {
            if (v == i - 1) continue;
            subs[slot++] = ArgSub::var(v);
        }
        result -= substitute_args(h, subs, r) * Rat(parity_sign(deg_f));
    }
    return result;
}

/// Full expansion x_1^{m_1-1} ∘ (x_1^{m_2-1} ... x_{r-1}^{m_r-1}); the
/// coefficient of x_1^{n_1-1}..x_r^{n_r-1} is e(m_1..m_r; n_1..n_r).
inline GeneralPolynomial ihara_monomial_expansion(const OddComposition& m) {
    const int r = static_cast<int>(m.size());
    if (r < 2) throw std::invalid_argument("ihara_monomial_expansion: depth must be >= 2");
    GeneralPolynomial f = GeneralPolynomial::monomial(1, {m[0] - 1});
    Exponents tail(r - 1);
    for (int k = 1; k < r; ++k) tail[k - 1] = m[k] - 1;
    return ihara_action(f, GeneralPolynomial::monomial(r - 1, std::move(tail)));
}

/// e(m; n) read off from the defining Ihara expansion. Serves as the
/// independent oracle for the closed formula below.
inline Int e_coefficient_expansion(const OddComposition& m, const std::vector<int>& n) {
    if (m.size() != n.size())
        throw std::invalid_argument("e_coefficient_expansion: depth mismatch");
    if (composition_weight(m) != composition_weight(OddComposition(n.begin(), n.end()))) return 0;
    if (m.size() == 1) return m == n ? 1 : 0;
    Exponents target(n.size());
    for (std::size_t k = 0; k < n.size(); ++k) target[k] = n[k] - 1;
    const Rat c = ihara_monomial_expansion(m).coefficient(target);
    if (denominator(c) != 1)
        throw std::logic_error("e_coefficient_expansion: non-integer coefficient");
    return numerator(c);
}

/// Closed formula for e(m; n):
///   e(m;n) = delta(m;n) + sum_{i=1}^{r-1} delta(m_2..m_i,m_{i+2}..m_r ;
///                                               n_1..n_{i-1},n_{i+2}..n_r)
///            * [ (-1)^{n_i} C(m_1-1, n_i-1) + (-1)^{m_1-n_{i+1}} C(m_1-1, n_{i+1}-1) ]
/// This is the production path for matrix entries; the expansion above is the
/// oracle that pins it down.
inline Int e_coefficient(const OddComposition& m, const std::vector<int>& n) {
    const std::size_t r = m.size();
    if (n.size() != r) throw std::invalid_argument("e_coefficient: depth mismatch");
    long wm = 0, wn = 0;
    for (std::size_t k = 0; k < r; ++k) {
        wm += m[k];
        wn += n[k];
    }
    if (wm != wn) return 0;

    Int value = (std::equal(m.begin(), m.end(), n.begin()) ? 1 : 0);
    for (std::size_t i = 1; i <= r - 1; ++i) {  // 1-based outer index
        const std::size_t i0 = i - 1;
        bool hat_delta = true;
        for (std::size_t t = 0; t + 1 <= i0 && hat_delta; ++t)
            hat_delta = (m[t + 1] == n[t]);
        for (std::size_t t = i0 + 2; t < r && hat_delta; ++t) hat_delta = (m[t] == n[t]);
        if (!hat_delta) continue;
        value += parity_sign(n[i0]) * binomial(m[0] - 1, n[i0] - 1) +
                 parity_sign(m[0] - n[i0 + 1]) * binomial(m[0] - 1, n[i0 + 1] - 1);
    }
    return value;
}

/// Element of the space of restricted totally even homogeneous polynomials:
/// every monomial x_1^{m_1-1}..x_r^{m_r-1} is keyed by its totally odd index
/// (m_1,..,m_r), so each exponent is even and at least 2.
class EvenPolynomial {
public:
    using TermMap = std::map<OddComposition, Rat, std::greater<OddComposition>>;

    EvenPolynomial(int weight, int depth) : weight_(weight), depth_(depth) {}

    static EvenPolynomial monomial(const OddComposition& m, Rat c = 1) {
        EvenPolynomial p(composition_weight(m), static_cast<int>(m.size()));
        p.add_term(m, c);
        return p;
    }

    int weight() const { return weight_; }
    int depth() const { return depth_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    Rat coefficient(const OddComposition& m) const {
        const auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const OddComposition& m, const Rat& c) {
        if (static_cast<int>(m.size()) != depth_ || composition_weight(m) != weight_ ||
            !all_parts_odd_ge3(m))
            throw std::invalid_argument("EvenPolynomial::add_term: index outside the space");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    EvenPolynomial& operator+=(const EvenPolynomial& o) {
        require_same_space(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    EvenPolynomial& operator-=(const EvenPolynomial& o) {
        require_same_space(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    EvenPolynomial& operator*=(const Rat& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend EvenPolynomial operator+(EvenPolynomial a, const EvenPolynomial& b) {
        a += b;
        return a;
    }
    friend EvenPolynomial operator-(EvenPolynomial a, const EvenPolynomial& b) {
        a -= b;
        return a;
    }
    friend EvenPolynomial operator*(EvenPolynomial a, const Rat& s) {
        a *= s;
        return a;
    }
    friend bool operator==(const EvenPolynomial& a, const EvenPolynomial& b) {
        return a.weight_ == b.weight_ && a.depth_ == b.depth_ && a.terms_ == b.terms_;
    }

    GeneralPolynomial to_general() const {
        GeneralPolynomial g(depth_);
        for (const auto& [m, c] : terms_) {
            Exponents e(depth_);
            for (int k = 0; k < depth_; ++k) e[k] = m[k] - 1;
            g.add_term(std::move(e), c);
        }
        return g;
    }

    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : terms_)
            terms.push_back({{"m", m}, {"c", rat_to_string(c)}});
        return {{"N", weight_}, {"r", depth_}, {"terms", terms}};
    }

    static EvenPolynomial from_json(const nlohmann::json& j) {
        EvenPolynomial p(j.at("N").get<int>(), j.at("r").get<int>());
        for (const auto& t : j.at("terms"))
            p.add_term(t.at("m").get<OddComposition>(), rat_from_string(t.at("c").get<std::string>()));
        return p;
    }

private:
    void require_same_space(const EvenPolynomial& o) const {
        if (weight_ != o.weight_ || depth_ != o.depth_)
            throw std::invalid_argument("EvenPolynomial: space mismatch");
    }

    int weight_;
    int depth_;
    TermMap terms_;
};

/// Projection keeping exactly the monomials whose every exponent is even and
/// at least 2. The single gate between general and restricted polynomials.
inline EvenPolynomial restricted_even_part(const GeneralPolynomial& p, int weight, int depth) {
    if (p.nvars() != depth)
        throw std::invalid_argument("restricted_even_part: arity mismatch");
    EvenPolynomial out(weight, depth);
    for (const auto& [e, c] : p.terms()) {
        bool keep = true;
        int total = 0;
        for (int x : e) {
            total += x;
            if (x < 2 || x % 2 != 0) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        if (total != weight - depth)
            throw std::logic_error("restricted_even_part: inhomogeneous input");
        OddComposition m(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) m[k] = e[k] + 1;
        out.add_term(m, c);
    }
    return out;
}

/// The natural isomorphism onto coefficient row vectors indexed by the
/// lex-decreasing table.
inline std::vector<Rat> coefficient_vector(const EvenPolynomial& p, const IndexTable& table) {
    if (p.weight() != table.weight() || p.depth() != table.depth())
        throw std::invalid_argument("coefficient_vector: table mismatch");
    std::vector<Rat> v(table.size(), Rat(0));
    for (const auto& [m, c] : p.terms()) v[table.position_of(m)] = c;
    return v;
}

inline EvenPolynomial polynomial_from_vector(const std::vector<Rat>& v, const IndexTable& table) {
    if (v.size() != table.size())
        throw std::invalid_argument("polynomial_from_vector: size mismatch");
    EvenPolynomial p(table.weight(), table.depth());
    for (std::size_t i = 0; i < v.size(); ++i) p.add_term(table[i], v[i]);
    return p;
}

inline std::vector<Rat> coefficient_vector(const EvenPolynomial& p) {
    return coefficient_vector(p, IndexTable(p.weight(), p.depth()));
}

/// Integer coefficient vector; requires all denominators to be 1.
inline std::vector<Int> integer_coefficient_vector(const EvenPolynomial& p, const IndexTable& table) {
    const std::vector<Rat> v = coefficient_vector(p, table);
    std::vector<Int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (denominator(v[i]) != 1)
            throw std::logic_error("integer_coefficient_vector: non-integer coefficient");
        w[i] = numerator(v[i]);
    }
    return w;
}

/// The endomorphism of the restricted totally even space whose matrix in the
/// canonical basis is the depth-j sliced Ihara matrix: the restricted totally
/// even part of
///   Q(x_1..x_r) + sum_{i=r-j+1}^{r-1} [ Q(x_1..x_{r-j}, x_{i+1}-x_i,
///       x_{r-j+1},..,omit x_{i+1},..,x_r)
///     - Q(x_1..x_{r-j}, x_{i+1}-x_i, x_{r-j+1},..,omit x_i,..,x_r) ].
/// j = 1 is the identity.
inline EvenPolynomial phi_action(const EvenPolynomial& q, int j) {
    const int r = q.depth();
    if (j < 1 || j > r) throw std::invalid_argument("phi_action: j out of range");
    if (j == 1 || q.is_zero()) return q;

    const GeneralPolynomial g = q.to_general();
    GeneralPolynomial acc = g;
    std::vector<ArgSub> subs(r);
    for (int i = r - j + 1; i <= r - 1; ++i) {  // 1-based variable index
        for (int omit : {i + 1, i}) {
            for (int a = 0; a < r - j; ++a) subs[a] = ArgSub::var(a);
            subs[r - j] = ArgSub::diff(i, i - 1);  // x_{i+1} - x_i, zero-based
            int slot = r - j + 1;
            for (int v = r - j; v < r; ++v) {
                if (v == omit - 1) continue;
                subs[slot++] = ArgSub::var(v);
            }
            const GeneralPolynomial term = substitute_args(g, subs, r);
            if (omit == i + 1)
                acc += term;
            else
                acc -= term;
        }
    }
    return restricted_even_part(acc, q.weight(), q.depth());
}

}  // namespace totodd
