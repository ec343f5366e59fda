#include <totodd/exact_linalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace totodd;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int span = 6) {
    std::uniform_int_distribution<int> dist(-span, span);
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

std::vector<Int> matrix_times_column(const ExactMatrix& m, const std::vector<Int>& v) {
    std::vector<Int> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

}  // namespace

TEST_CASE("rank basics", "[exact-linalg]") {
    CHECK(rank(ExactMatrix::identity(4)) == 4);
    CHECK(rank(ExactMatrix::from_rows({{2, 4}, {1, 2}})) == 1);
    CHECK(rank(ExactMatrix(3, 3)) == 0);
    CHECK(rank(ExactMatrix()) == 0);
}

TEST_CASE("right kernel on fixed matrices", "[exact-linalg]") {
    const KernelBasis zero_kernel = right_kernel(ExactMatrix(3, 3));
    REQUIRE(zero_kernel.dimension() == 3);
    CHECK(zero_kernel.vectors[0] == std::vector<Int>{1, 0, 0});
    CHECK(zero_kernel.vectors[1] == std::vector<Int>{0, 1, 0});
    CHECK(zero_kernel.vectors[2] == std::vector<Int>{0, 0, 1});

    CHECK(right_kernel(ExactMatrix::identity(5)).dimension() == 0);

    const KernelBasis forced = right_kernel(ExactMatrix::from_rows({{1, 1}, {0, 0}}));
    REQUIRE(forced.dimension() == 1);
    CHECK(forced.vectors[0] == std::vector<Int>{1, -1});
}

TEST_CASE("kernel properties on random matrices", "[exact-linalg]") {
    std::mt19937_64 rng(20240809);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + trial % 6, cols = 1 + (trial * 7) % 6;
        const ExactMatrix m = random_matrix(rng, rows, cols);

        CHECK(rank(m) == rank(m.transposed()));

        const KernelBasis kernel = right_kernel(m);
        CHECK(kernel.dimension() + rank(m) == cols);
        for (const auto& v : kernel.vectors) {
            for (const auto& entry : matrix_times_column(m, v)) CHECK(entry.is_zero());
            Int g = 0;
            for (const auto& x : v) g = gcd(g, x);
            CHECK(g == 1);  // primitive
            for (const auto& x : v) {
                if (!x.is_zero()) {
                    CHECK(x > 0);  // leading sign rule
                    break;
                }
            }
        }

        const KernelBasis lk = left_kernel(m);
        const KernelBasis rk_t = right_kernel(m.transposed());
        REQUIRE(lk.dimension() == rk_t.dimension());
        CHECK(span_equal(lk, rk_t));
    }
}

TEST_CASE("intersection dimension", "[exact-linalg]") {
    CHECK(intersection_dim(ExactMatrix::identity(4), ExactMatrix::identity(4)) == 0);
    CHECK(intersection_dim(ExactMatrix::identity(4), ExactMatrix(4, 4)) == 4);
    CHECK_THROWS_AS(intersection_dim(ExactMatrix(2, 3), ExactMatrix(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("intersection dimension agrees with the subspace-sum method", "[exact-linalg]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ExactMatrix a = random_matrix(rng, 1 + trial % 4, n, 3);
        const ExactMatrix b = random_matrix(rng, n, 1 + (trial * 5) % 4, 3);

        // dim(U ∩ W) = dim U + dim W - dim(U + W) with U the row space of a
        // and W the left kernel of b.
        const KernelBasis w = left_kernel(b);
        std::vector<std::vector<Int>> stacked;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::vector<Int> row(a.cols());
            for (std::size_t j = 0; j < a.cols(); ++j) row[j] = a(i, j);
            stacked.push_back(std::move(row));
        }
        const std::size_t dim_u = rank(a);
        stacked.insert(stacked.end(), w.vectors.begin(), w.vectors.end());
        const std::size_t dim_sum = rank_of_rows(stacked, n);

        CHECK(intersection_dim(a, b) == dim_u + w.dimension() - dim_sum);
    }
}

TEST_CASE("span comparison", "[exact-linalg]") {
    KernelBasis u{3, {{1, 0, 0}}};
    KernelBasis scaled{3, {{2, 0, 0}}};
    KernelBasis other{3, {{0, 1, 0}}};
    CHECK(span_equal(u, scaled));
    CHECK_FALSE(span_equal(u, other));
    CHECK(span_equal(KernelBasis{3, {}}, KernelBasis{3, {}}));
    CHECK_THROWS_AS(span_equal(u, KernelBasis{2, {}}), std::invalid_argument);
}

TEST_CASE("primitive normalization", "[exact-linalg]") {
    CHECK(primitive_normalized(std::vector<Rat>{Rat(1, 2), Rat(-1, 3)}) ==
          std::vector<Int>{3, -2});
    CHECK(primitive_normalized(std::vector<Rat>{Rat(-2), Rat(4)}) == std::vector<Int>{1, -2});
    CHECK(primitive_normalized(std::vector<Rat>{Rat(0), Rat(0)}) == std::vector<Int>{0, 0});
}

TEST_CASE("row span membership", "[exact-linalg]") {
    const ExactMatrix m = ExactMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
    CHECK(in_row_span(m, {1, 1, 2}));
    CHECK(in_row_span(m, {0, 0, 0}));
    CHECK_FALSE(in_row_span(m, {0, 0, 1}));
}
