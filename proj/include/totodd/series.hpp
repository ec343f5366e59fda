#pragma once

#include <totodd/numbers.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace totodd {

/// Integer power series truncated at a fixed maximal exponent (inclusive).
/// Multiplication truncates, never wraps; all arithmetic is exact.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int bound) : coeffs_(bound + 1) {
        if (bound < 0) throw std::invalid_argument("TruncatedSeries: bound must be >= 0");
    }

    static TruncatedSeries one(int bound) {
        TruncatedSeries s(bound);
        s.coeffs_[0] = 1;
        return s;
    }

    int bound() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Int& coeff(int n) const { return coeffs_.at(n); }
    Int& coeff(int n) { return coeffs_.at(n); }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        require_same_bound(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        require_same_bound(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        a += b;
        return a;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
        a -= b;
        return a;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_same_bound(b);
        TruncatedSeries c(a.bound());
        for (int i = 0; i <= a.bound(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (int j = 0; i + j <= a.bound(); ++j) {
                if (!b.coeffs_[j].is_zero()) c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return c;
    }

    friend TruncatedSeries operator*(TruncatedSeries a, const Int& s) {
        for (auto& c : a.coeffs_) c *= s;
        return a;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

    TruncatedSeries pow(int k) const {
        if (k < 0) throw std::invalid_argument("TruncatedSeries::pow: negative exponent");
        TruncatedSeries result = one(bound());
        for (int i = 0; i < k; ++i) result = result * *this;
        return result;
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    void require_same_bound(const TruncatedSeries& o) const {
        if (coeffs_.size() != o.coeffs_.size())
            throw std::invalid_argument("TruncatedSeries: bound mismatch");
    }

    std::vector<Int> coeffs_;
};

/// x^3 + x^5 + x^7 + ... : one totally odd part.
inline TruncatedSeries odd_series(int bound) {
    TruncatedSeries s(bound);
    for (int n = 3; n <= bound; n += 2) s.coeff(n) = 1;
    return s;
}

/// x^2 + x^4 + x^6 + ...
inline TruncatedSeries even_series(int bound) {
    TruncatedSeries s(bound);
    for (int n = 2; n <= bound; n += 2) s.coeff(n) = 1;
    return s;
}

/// x^12 / ((1-x^4)(1-x^6)): the dimension series of cusp forms, equivalently
/// of restricted even period polynomials in two variables.
inline TruncatedSeries cusp_dim_series(int bound) {
    TruncatedSeries s(bound);
    for (int a = 0; 12 + 4 * a <= bound; ++a)
        for (int b = 0; 12 + 4 * a + 6 * b <= bound; ++b) s.coeff(12 + 4 * a + 6 * b) += 1;
    return s;
}

/// Coefficient of y^r in 1 / (1 - O(x) y + S(x) y^2): the conjectured rank
/// series of the depth-r matrices. Satisfies R_0 = 1, R_1 = O and
/// R_r = O R_{r-1} - S R_{r-2}.
inline TruncatedSeries conjectured_rank_series(int r, int bound) {
    if (r < 0) throw std::invalid_argument("conjectured_rank_series: depth must be >= 0");
    const TruncatedSeries o = odd_series(bound), s = cusp_dim_series(bound);
    TruncatedSeries prev = TruncatedSeries::one(bound);  // R_0
    if (r == 0) return prev;
    TruncatedSeries cur = o;  // R_1
    for (int k = 2; k <= r; ++k) {
        TruncatedSeries next = o * cur - s * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Kernel-dimension series of the depth-r matrices under the isomorphism
/// conjectures, via the recursion
///   T_r = O T_{r-1} - S T_{r-2} + O^{r-2} S,   T_0 = T_1 = 0.
/// Entries of `known` override the recursion at their depth, which allows
/// splicing in empirically computed series.
inline TruncatedSeries kernel_series_recursion(int r, int bound,
                                               const std::map<int, TruncatedSeries>& known = {}) {
    if (r < 0) throw std::invalid_argument("kernel_series_recursion: depth must be >= 0");
    const auto hit = known.find(r);
    if (hit != known.end()) return hit->second;
    if (r <= 1) return TruncatedSeries(bound);
    const TruncatedSeries o = odd_series(bound), s = cusp_dim_series(bound);
    return o * kernel_series_recursion(r - 1, bound, known) -
           s * kernel_series_recursion(r - 2, bound, known) + o.pow(r - 2) * s;
}

/// Series of restricted-chain image dimensions under the same conjectures:
///   B_2 = S,   B_r = O^{r-2} S - sum_{j=2}^{r-2} O^{r-j-2} S B_j.
inline TruncatedSeries image_series_recursion(int r, int bound) {
    if (r < 2) throw std::invalid_argument("image_series_recursion: depth must be >= 2");
    const TruncatedSeries o = odd_series(bound), s = cusp_dim_series(bound);
    if (r == 2) return s;
    TruncatedSeries b = o.pow(r - 2) * s;
    for (int j = 2; j <= r - 2; ++j) b -= o.pow(r - j - 2) * s * image_series_recursion(j, bound);
    return b;
}

/// Bivariate series as an array of x-series per y-degree, truncated in both
/// variables.
using BivariateSeries = std::vector<TruncatedSeries>;

inline BivariateSeries bivariate_mul(const BivariateSeries& a, const BivariateSeries& b,
                                     int ybound, int xbound) {
    BivariateSeries c(ybound + 1, TruncatedSeries(xbound));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(ybound); ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

struct SeriesIdentityReport {
    bool pass = true;
    std::string detail;
};

/// Checks (1 - O y + S y^2) * sum_r (O^r - T_r) y^r == 1 as truncated
/// bivariate arithmetic, with T_r from the recursion. An algebraic identity;
/// failure means the series plumbing is broken.
inline SeriesIdentityReport verify_series_identity(int xbound, int ybound) {
    const TruncatedSeries o = odd_series(xbound), s = cusp_dim_series(xbound);

    BivariateSeries lhs(3, TruncatedSeries(xbound));
    lhs[0] = TruncatedSeries::one(xbound);
    lhs[1] -= o;
    lhs[2] = s;

    BivariateSeries rank_series(ybound + 1, TruncatedSeries(xbound));
    for (int r = 0; r <= ybound; ++r)
        rank_series[r] = o.pow(r) - kernel_series_recursion(r, xbound);

    const BivariateSeries product = bivariate_mul(lhs, rank_series, ybound, xbound);
    for (int r = 0; r <= ybound; ++r) {
        const TruncatedSeries expected =
            r == 0 ? TruncatedSeries::one(xbound) : TruncatedSeries(xbound);
        if (!(product[r] == expected)) {
            return {false, "coefficient of y^" + std::to_string(r) + " is not " +
                               (r == 0 ? "1" : "0")};
        }
    }
    return {true, "identity holds up to x^" + std::to_string(xbound) + ", y^" +
                      std::to_string(ybound)};
}

}  // namespace totodd
