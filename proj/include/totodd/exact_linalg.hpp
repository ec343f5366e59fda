#pragma once

#include <totodd/exact_matrix.hpp>
#include <totodd/numbers.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace totodd {

/// Basis of a (left or right) kernel. Every vector is scaled to primitive
/// integer form: coprime entries, first nonzero entry positive. Vectors are
/// ordered by their free column, which makes bases reproducible.
struct KernelBasis {
    std::size_t ambient = 0;
    std::vector<std::vector<Int>> vectors;

    std::size_t dimension() const { return vectors.size(); }
};

struct EchelonForm {
    ExactMatrix u;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// Fraction-free (Bareiss) row elimination. Pivots are the first nonzero
/// entry in column order, ties broken by lowest row index; every division by
/// the previous pivot is checked to be exact.
inline EchelonForm fraction_free_echelon(ExactMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    EchelonForm ech;
    Int prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && m(p, col).is_zero()) ++p;
        if (p == rows) continue;
        m.swap_rows(p, row);
        const Int pivot = m(row, col);
        for (std::size_t i = row + 1; i < rows; ++i) {
            const Int factor = m(i, col);
            for (std::size_t j = col + 1; j < cols; ++j)
                m(i, j) = exact_div(m(i, j) * pivot - factor * m(row, j), prev);
            m(i, col) = 0;
        }
        prev = pivot;
        ech.pivot_cols.push_back(col);
        ++row;
    }
    ech.rank = row;
    ech.u = std::move(m);
    return ech;
}

inline std::size_t rank(const ExactMatrix& m) {
    if (m.empty()) return 0;
    return fraction_free_echelon(m).rank;
}

/// Primitive integer form of a rational vector: clear denominators, divide
/// by the gcd, make the first nonzero entry positive. The zero vector is
/// returned unchanged.
inline std::vector<Int> primitive_normalized(const std::vector<Rat>& v) {
    Int common_den = 1;
    for (const Rat& x : v) common_den = lcm(common_den, denominator(x));
    std::vector<Int> w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = numerator(v[i]) * (common_den / denominator(v[i]));
        g = gcd(g, w[i]);
    }
    if (g.is_zero()) return w;
    int sign = 0;
    for (const Int& x : w) {
        if (!x.is_zero()) {
            sign = x < 0 ? -1 : 1;
            break;
        }
    }
    for (Int& x : w) x = x * sign / g;
    return w;
}

inline std::vector<Int> primitive_normalized(const std::vector<Int>& v) {
    std::vector<Rat> r(v.begin(), v.end());
    return primitive_normalized(r);
}

/// Basis of { v : m v^T = 0 }, dimension cols - rank(m).
inline KernelBasis right_kernel(const ExactMatrix& m) {
    KernelBasis basis;
    basis.ambient = m.cols();
    if (m.cols() == 0) return basis;
    if (m.rows() == 0) {
        for (std::size_t f = 0; f < m.cols(); ++f) {
            std::vector<Int> e(m.cols(), 0);
            e[f] = 1;
            basis.vectors.push_back(std::move(e));
        }
        return basis;
    }

    const EchelonForm ech = fraction_free_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;

    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> x(m.cols(), Rat(0));
        x[f] = 1;
        for (std::size_t k = ech.rank; k-- > 0;) {
            const std::size_t pc = ech.pivot_cols[k];
            Rat sum = 0;
            for (std::size_t j = pc + 1; j < m.cols(); ++j) {
                if (!x[j].is_zero()) sum += Rat(ech.u(k, j)) * x[j];
            }
            x[pc] = -sum / Rat(ech.u(k, pc));
        }
        basis.vectors.push_back(primitive_normalized(x));
    }
    return basis;
}

inline KernelBasis left_kernel(const ExactMatrix& m) { return right_kernel(m.transposed()); }

inline ExactMatrix stack_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
    ExactMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("stack_rows: width mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

inline std::size_t rank_of_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return rank(stack_rows(rows, cols));
}

/// dim( row space of a  ∩  left kernel of b ) = rank(a) - rank(a b).
/// The row space of `a` maps onto the row space of `a b` under right
/// multiplication by `b`, and the kernel of that surjection is exactly the
/// intersection.
inline std::size_t intersection_dim(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("intersection_dim: dimension mismatch");
    return rank(a) - rank(a * b);
}

/// Whether v lies in the row span of m.
inline bool in_row_span(const ExactMatrix& m, const std::vector<Int>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("in_row_span: width mismatch");
    ExactMatrix extended = m;
    extended.append_row(v);
    return rank(m) == rank(extended);
}

inline bool span_equal(const KernelBasis& u, const KernelBasis& v) {
    if (u.ambient != v.ambient)
        throw std::invalid_argument("span_equal: ambient dimension mismatch");
    if (u.dimension() != v.dimension()) return false;
    if (u.dimension() == 0) return true;
    std::vector<std::vector<Int>> all = u.vectors;
    all.insert(all.end(), v.vectors.begin(), v.vectors.end());
    return rank_of_rows(all, u.ambient) == u.dimension();
}

inline std::vector<Int> row_times_matrix(const std::vector<Int>& v, const ExactMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("row_times_matrix: size mismatch");
    std::vector<Int> out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_zero()) out[j] += v[i] * m(i, j);
        }
    }
    return out;
}

inline std::vector<Rat> row_times_matrix(const std::vector<Rat>& v, const ExactMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("row_times_matrix: size mismatch");
    std::vector<Rat> out(m.cols(), Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_zero()) out[j] += v[i] * Rat(m(i, j));
        }
    }
    return out;
}

inline bool is_zero_vector(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x.is_zero(); });
}

}  // namespace totodd
