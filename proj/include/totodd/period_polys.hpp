#pragma once

#include <totodd/exact_linalg.hpp>
#include <totodd/matrix_factory.hpp>
#include <totodd/polynomials.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace totodd {

/// Raised when a proved statement fails on a concrete instance. This always
/// means an implementation bug, never a mathematical finding.
struct TheoremViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Basis of the subspace of restricted totally even polynomials satisfying
///   P(x_1,..,x_r) = P(x_2-x_1, x_2, x_3,..) - P(x_2-x_1, x_1, x_3,..).
struct PeriodBasis {
    int weight = 0;
    int depth = 2;
    std::vector<EvenPolynomial> basis;

    std::size_t dimension() const { return basis.size(); }
};

/// Exact expansion of the defining relation; true iff p is a (sum of)
/// restricted even period polynomial(s) in the first two variables.
inline bool satisfies_period_relation(const EvenPolynomial& p) {
    const int r = p.depth();
    if (r < 2) throw std::invalid_argument("satisfies_period_relation: depth must be >= 2");
    const GeneralPolynomial g = p.to_general();

    std::vector<ArgSub> subs(r);
    subs[0] = ArgSub::diff(1, 0);  // x_2 - x_1
    subs[1] = ArgSub::var(1);
    for (int k = 2; k < r; ++k) subs[k] = ArgSub::var(k);
    GeneralPolynomial residual = g - substitute_args(g, subs, r);

    subs[1] = ArgSub::var(0);
    residual += substitute_args(g, subs, r);
    return residual.is_zero();
}

namespace detail {

/// Depth-2 case, solved directly: the kernel of the substitution-difference
/// operator on the monomial basis. The cusp-form dimension series is a
/// cross-check on the result, not an input.
inline PeriodBasis period_basis_depth2(int weight) {
    PeriodBasis out{weight, 2, {}};
    const IndexTable table(weight, 2);
    if (table.empty()) return out;

    // Rows: all exponent pairs (a, weight-2-a); columns: monomials of the
    // restricted space. Entry = coefficient of the row monomial in the
    // relation residual of the column monomial.
    const int degree = weight - 2;
    ExactMatrix system(degree + 1, table.size());
    std::vector<ArgSub> first{ArgSub::diff(1, 0), ArgSub::var(1)};
    std::vector<ArgSub> second{ArgSub::diff(1, 0), ArgSub::var(0)};
    for (std::size_t col = 0; col < table.size(); ++col) {
        const GeneralPolynomial mono =
            EvenPolynomial::monomial(table[col]).to_general();
        GeneralPolynomial residual = mono - substitute_args(mono, first, 2);
        residual += substitute_args(mono, second, 2);
        for (const auto& [e, c] : residual.terms()) {
            if (denominator(c) != 1)
                throw std::logic_error("period_basis_depth2: non-integer system entry");
            system(e[0], col) = numerator(c);
        }
    }

    for (const auto& vec : right_kernel(system).vectors) {
        std::vector<Rat> coeffs(vec.begin(), vec.end());
        out.basis.push_back(polynomial_from_vector(coeffs, table));
    }
    return out;
}

}  // namespace detail

/// Basis of the weight-N, depth-r period-polynomial space. Depth 2 solves the
/// functional equation directly; higher depth multiplies depth-2 solutions by
/// the totally even monomials in the remaining variables, stratified by the
/// weight carried by the first two variables.
inline PeriodBasis period_basis(int weight, int depth) {
    if (depth < 2) throw std::invalid_argument("period_basis: depth must be >= 2");
    if (depth == 2) return detail::period_basis_depth2(weight);

    PeriodBasis out{weight, depth, {}};
    for (int n = 12; n <= weight - 3 * (depth - 2); n += 2) {
        const PeriodBasis head = detail::period_basis_depth2(n);
        if (head.dimension() == 0) continue;
        const IndexTable tails(weight - n, depth - 2);
        for (const auto& w : head.basis) {
            for (const auto& tail : tails.entries()) {
                EvenPolynomial prod(weight, depth);
                for (const auto& [m2, c] : w.terms()) {
                    OddComposition key;
                    key.reserve(depth);
                    key.insert(key.end(), m2.begin(), m2.end());
                    key.insert(key.end(), tail.begin(), tail.end());
                    prod.add_term(key, c);
                }
                out.basis.push_back(std::move(prod));
            }
        }
    }
    return out;
}

/// Images pi(P) F of the period basis. Well-definedness (each image
/// annihilates the e-coefficient matrix from the left) is a proved statement
/// and is enforced.
inline std::vector<std::vector<Int>> tasaka_image(int weight, int depth, MatrixCache& cache) {
    const PeriodBasis wb = period_basis(weight, depth);
    std::vector<std::vector<Int>> images;
    if (wb.dimension() == 0) return images;

    const IndexTable table(weight, depth);
    const ExactMatrix& e = cache.get("E", weight, depth);
    for (const auto& p : wb.basis) {
        const std::vector<Int> v = integer_coefficient_vector(p, table);
        std::vector<Int> img = row_times_matrix(v, e);
        for (std::size_t i = 0; i < img.size(); ++i) img[i] -= v[i];  // v (E - id)
        if (!is_zero_vector(row_times_matrix(img, e)))
            throw TheoremViolation("tasaka_image: image vector does not annihilate E_{" +
                                   std::to_string(weight) + "," + std::to_string(depth) +
                                   "} from the left");
        images.push_back(std::move(img));
    }
    return images;
}

/// Outcome of one verification; `pass` flags whether the expected relation
/// was observed. Theorem-backed checks throw TheoremViolation instead of
/// returning pass = false.
struct CheckReport {
    std::string check;
    int weight = 0;
    int depth = 0;
    int j = -1;
    bool pass = true;
    std::string expected;
    std::string observed;
};

/// Span equality between the coefficient vectors of the depth-2 period space
/// and the left kernel of the depth-2 e-coefficient matrix (proved).
inline CheckReport verify_baumard_schneps(int weight, MatrixCache& cache) {
    CheckReport report{"baumard-schneps", weight, 2};
    const PeriodBasis wb = detail::period_basis_depth2(weight);
    const IndexTable table(weight, 2);

    KernelBasis periods;
    periods.ambient = table.size();
    for (const auto& p : wb.basis)
        periods.vectors.push_back(primitive_normalized(integer_coefficient_vector(p, table)));

    const KernelBasis kernel = left_kernel(cache.get("E", weight, 2));
    report.expected = "span pi(periods) == left kernel";
    report.observed = "dim " + std::to_string(periods.dimension()) + " vs " +
                      std::to_string(kernel.dimension());
    if (!span_equal(periods, kernel))
        throw TheoremViolation("baumard-schneps span equality failed at weight " +
                               std::to_string(weight));
    return report;
}

/// pi(-P) E^(r-1) == pi(P) (E - id) for every period basis element (proved).
inline CheckReport verify_f_identity(int weight, int depth, MatrixCache& cache) {
    if (depth < 3) throw std::invalid_argument("verify_f_identity: depth must be >= 3");
    CheckReport report{"fnr", weight, depth};
    const PeriodBasis wb = period_basis(weight, depth);
    report.expected = "pi(-P) E^(r-1) == pi(P) F for all basis P";
    report.observed = std::to_string(wb.dimension()) + " basis elements";
    if (wb.dimension() == 0) return report;

    const IndexTable table(weight, depth);
    const ExactMatrix& e = cache.get("E", weight, depth);
    const ExactMatrix& eslice = cache.get("Ej", weight, depth, depth - 1);
    for (const auto& p : wb.basis) {
        const std::vector<Int> v = integer_coefficient_vector(p, table);
        std::vector<Int> neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        const std::vector<Int> lhs = row_times_matrix(neg, eslice);
        std::vector<Int> rhs = row_times_matrix(v, e);
        for (std::size_t i = 0; i < v.size(); ++i) rhs[i] -= v[i];
        if (lhs != rhs)
            throw TheoremViolation("F-identity failed at (" + std::to_string(weight) + ", " +
                                   std::to_string(depth) + ")");
    }
    return report;
}

/// Conjecture evidence: is the map P -> pi(P) F injective onto the left
/// kernel? Mismatches are findings, not errors.
inline CheckReport injectivity_report(int weight, int depth, MatrixCache& cache) {
    CheckReport report{"tasaka-injectivity", weight, depth};
    const std::vector<std::vector<Int>> images = tasaka_image(weight, depth, cache);
    const std::size_t dim_w = period_basis(weight, depth).dimension();
    const IndexTable table(weight, depth);
    const ExactMatrix& e = cache.get("E", weight, depth);
    const std::size_t image_rank = rank_of_rows(images, table.size());
    const std::size_t kernel_dim = table.size() - rank(e);

    report.expected = "rank == dim W (injective) and rank == dim ker^T E (surjective)";
    report.observed = "dim W = " + std::to_string(dim_w) + ", rank = " +
                      std::to_string(image_rank) + ", dim ker^T E = " +
                      std::to_string(kernel_dim);
    report.pass = (image_rank == dim_w) && (image_rank == kernel_dim);
    return report;
}

/// phi_j restricted to the period subspace: requires 2 <= j <= r-2, checks
/// the membership precondition on the input and the (proved) closure of the
/// subspace under the map.
inline EvenPolynomial phi_restricted(const EvenPolynomial& q, int j) {
    const int r = q.depth();
    if (j < 2 || j > r - 2) throw std::invalid_argument("phi_restricted: need 2 <= j <= depth-2");

    const IndexTable table(q.weight(), r);
    const PeriodBasis wb = period_basis(q.weight(), r);
    std::vector<std::vector<Int>> rows;
    for (const auto& p : wb.basis) rows.push_back(integer_coefficient_vector(p, table));
    const ExactMatrix span = stack_rows(rows, table.size());

    const std::vector<Int> vq = primitive_normalized(coefficient_vector(q, table));
    if (!q.is_zero() && !in_row_span(span, vq))
        throw std::invalid_argument("phi_restricted: input is not in the period subspace");

    EvenPolynomial out = phi_action(q, j);
    const std::vector<Int> vout = primitive_normalized(coefficient_vector(out, table));
    if (!out.is_zero() && !in_row_span(span, vout))
        throw TheoremViolation("phi_restricted: image left the period subspace at (" +
                               std::to_string(q.weight()) + ", " + std::to_string(r) + ")");
    return out;
}

/// dim Im( phi_{r-1} ∘ phi_{r-2}|_W ∘ ... ∘ phi_2|_W ) on the period space,
/// with the proved inclusion of the image in ker phi_r ∩ Im(unrestricted
/// chain) enforced along the way.
inline std::size_t restricted_chain_image_dim(int weight, int depth, MatrixCache& cache) {
    if (depth < 3)
        throw std::invalid_argument("restricted_chain_image_dim: depth must be >= 3");
    const PeriodBasis wb = period_basis(weight, depth);
    if (wb.dimension() == 0) return 0;

    const IndexTable table(weight, depth);
    std::vector<std::vector<Int>> span_rows;
    for (const auto& p : wb.basis)
        span_rows.push_back(integer_coefficient_vector(p, table));
    const ExactMatrix span = stack_rows(span_rows, table.size());

    std::vector<EvenPolynomial> current = wb.basis;
    for (int j = 2; j <= depth - 2; ++j) {
        for (auto& p : current) {
            p = phi_action(p, j);
            const std::vector<Int> v = primitive_normalized(coefficient_vector(p, table));
            if (!p.is_zero() && !in_row_span(span, v))
                throw TheoremViolation("restricted chain left the period subspace at slice " +
                                       std::to_string(j));
        }
    }

    std::vector<std::vector<Int>> images;
    const ExactMatrix& e = cache.get("E", weight, depth);
    const ExactMatrix slice_product = cache.slice_product(weight, depth);
    for (auto& p : current) {
        const EvenPolynomial img = phi_action(p, depth - 1);
        const std::vector<Int> v = primitive_normalized(coefficient_vector(img, table));
        if (!is_zero_vector(row_times_matrix(v, e)))
            throw TheoremViolation("chain image escaped the left kernel at (" +
                                   std::to_string(weight) + ", " + std::to_string(depth) + ")");
        if (!is_zero_vector(v) && !in_row_span(slice_product, v))
            throw TheoremViolation("chain image escaped the unrestricted chain image at (" +
                                   std::to_string(weight) + ", " + std::to_string(depth) + ")");
        images.push_back(v);
    }
    return rank_of_rows(images, table.size());
}

/// Conjecture evidence (Glanois): the restricted chain image fills all of
/// ker phi_r ∩ Im(phi_{r-1} ∘ .. ∘ phi_2), measured through the matrix
/// realization rank(E^(2)..E^(r-1)) - rank(C).
inline CheckReport glanois_report(int weight, int depth, MatrixCache& cache) {
    if (depth < 3) throw std::invalid_argument("glanois_report: depth must be >= 3");
    CheckReport report{"glanois", weight, depth};
    const std::size_t chain_dim = restricted_chain_image_dim(weight, depth, cache);

    const IndexTable table(weight, depth);
    std::size_t intersection = 0;
    if (!table.empty()) {
        const ExactMatrix product = cache.slice_product(weight, depth);
        intersection = intersection_dim(product, cache.get("E", weight, depth));
    }
    report.expected = "restricted chain image dim == dim(Im^T(slices) ∩ ker^T E)";
    report.observed = std::to_string(chain_dim) + " vs " + std::to_string(intersection);
    report.pass = (chain_dim == intersection);
    return report;
}

/// dim ker of the sliced action on the full restricted space decomposes over
/// the strata (proved): |S_{N,r}| - rank E^(j)_{N,r} ==
///   sum_n |S_{N-n,r-j}| * (|S_{n,j}| - rank E_{n,j}).
inline CheckReport verify_phi_kernel_dim(int weight, int depth, int j, MatrixCache& cache) {
    if (j < 2 || j > depth - 1)
        throw std::invalid_argument("verify_phi_kernel_dim: need 2 <= j <= depth-1");
    CheckReport report{"phi-kernel-dim", weight, depth, j};
    const std::size_t size = IndexTable(weight, depth).size();
    const std::size_t lhs = size - rank(cache.get("Ej", weight, depth, j));

    std::size_t rhs = 0;
    for (int n = 3 * j; n <= weight - 3 * (depth - j); ++n) {
        const std::int64_t factor = count_totally_odd(weight - n, depth - j);
        if (factor == 0) continue;
        const std::size_t size_n = IndexTable(n, j).size();
        if (size_n == 0) continue;
        rhs += static_cast<std::size_t>(factor) * (size_n - rank(cache.get("E", n, j)));
    }
    report.expected = "kernel dimension splits over strata";
    report.observed = std::to_string(lhs) + " vs " + std::to_string(rhs);
    if (lhs != rhs)
        throw TheoremViolation("phi kernel decomposition failed at (" + std::to_string(weight) +
                               ", " + std::to_string(depth) + ", " + std::to_string(j) + ")");
    return report;
}

/// Same decomposition for the restriction to the period subspace (proved):
/// dim ker phi_j|_W == sum_n dim W_{N-n,r-j} * (|S_{n,j}| - rank E_{n,j}).
inline CheckReport verify_restricted_phi_kernel_dim(int weight, int depth, int j,
                                                    MatrixCache& cache) {
    if (j < 2 || j > depth - 2)
        throw std::invalid_argument("verify_restricted_phi_kernel_dim: need 2 <= j <= depth-2");
    CheckReport report{"restricted-phi-kernel-dim", weight, depth, j};

    const PeriodBasis wb = period_basis(weight, depth);
    const IndexTable table(weight, depth);
    std::vector<std::vector<Int>> image_rows;
    const ExactMatrix& slice = cache.get("Ej", weight, depth, j);
    for (const auto& p : wb.basis)
        image_rows.push_back(row_times_matrix(integer_coefficient_vector(p, table), slice));
    const std::size_t lhs = wb.dimension() - rank_of_rows(image_rows, table.size());

    std::size_t rhs = 0;
    for (int n = 3 * j; n <= weight - 12; ++n) {
        const std::size_t w_dim = period_basis(weight - n, depth - j).dimension();
        if (w_dim == 0) continue;
        const std::size_t size_n = IndexTable(n, j).size();
        if (size_n == 0) continue;
        rhs += w_dim * (size_n - rank(cache.get("E", n, j)));
    }
    report.expected = "restricted kernel dimension splits over strata";
    report.observed = std::to_string(lhs) + " vs " + std::to_string(rhs);
    if (lhs != rhs)
        throw TheoremViolation("restricted phi kernel decomposition failed at (" +
                               std::to_string(weight) + ", " + std::to_string(depth) + ", " +
                               std::to_string(j) + ")");
    return report;
}

}  // namespace totodd
