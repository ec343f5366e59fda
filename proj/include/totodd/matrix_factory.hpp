#pragma once

#include <totodd/exact_linalg.hpp>
#include <totodd/exact_matrix.hpp>
#include <totodd/odd_indices.hpp>
#include <totodd/polynomials.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unistd.h>

namespace totodd {

/// Square matrix (e(m; n))_{m,n} over the lex-decreasing index table;
/// 0x0 when the index set is empty.
inline ExactMatrix build_E(int weight, int depth) {
    const IndexTable table(weight, depth);
    ExactMatrix m(table.size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t k = 0; k < table.size(); ++k)
            m(i, k) = e_coefficient(table[i], table[k]);
    return m;
}

/// Depth-j slice: Kronecker delta on the first r-j coordinates times the
/// e-coefficient of the last j. Coincides with build_E when j == r.
inline ExactMatrix build_Ej(int weight, int depth, int j) {
    if (j < 2 || j > depth) throw std::invalid_argument("build_Ej: need 2 <= j <= depth");
    const IndexTable table(weight, depth);
    const int split = depth - j;
    ExactMatrix out(table.size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const OddComposition& m = table[i];
        for (std::size_t k = 0; k < table.size(); ++k) {
            const OddComposition& n = table[k];
            if (!std::equal(m.begin(), m.begin() + split, n.begin())) continue;
            out(i, k) = e_coefficient(OddComposition(m.begin() + split, m.end()),
                                      std::vector<int>(n.begin() + split, n.end()));
        }
    }
    return out;
}

/// The product of all slices: E^(2) E^(3) ... E^(r-1) E. The prefix is empty
/// for depth <= 2, so the depth-2 matrix is the plain e-coefficient matrix.
inline ExactMatrix build_C(int weight, int depth) {
    ExactMatrix c = build_E(weight, depth);
    for (int j = depth - 1; j >= 2; --j) c = build_Ej(weight, depth, j) * c;
    return c;
}

inline ExactMatrix build_F(int weight, int depth) {
    const ExactMatrix e = build_E(weight, depth);
    return e - ExactMatrix::identity(e.rows());
}

inline ExactMatrix build_kind(const std::string& kind, int weight, int depth, int j = -1) {
    if (kind == "E") return build_E(weight, depth);
    if (kind == "F") return build_F(weight, depth);
    if (kind == "C") return build_C(weight, depth);
    if (kind == "Ej") {
        if (j < 0) throw std::invalid_argument("build_kind: Ej requires the slice parameter j");
        return build_Ej(weight, depth, j);
    }
    throw std::invalid_argument("build_kind: unknown kind '" + kind + "'");
}

struct StructuralReport {
    bool pass = true;
    std::string detail;
};

namespace detail {

/// Start offsets of the constant-first-coordinate strata of the table, in
/// table order (first coordinate decreasing, tail weight increasing).
inline std::vector<std::pair<std::size_t, std::size_t>> strata_offsets(const IndexTable& table) {
    std::vector<std::pair<std::size_t, std::size_t>> strata;  // (offset, length)
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= table.size(); ++i) {
        if (i == table.size() || table[i][0] != table[begin][0]) {
            strata.emplace_back(begin, i - begin);
            begin = i;
        }
    }
    return strata;
}

inline StructuralReport compare_block_diagonal(const ExactMatrix& whole, const IndexTable& table,
                                               const std::function<ExactMatrix(int)>& block_of,
                                               const std::string& what) {
    const auto strata = strata_offsets(table);
    std::size_t offset_check = 0;
    for (const auto& [offset, len] : strata) {
        const int tail_weight = table.weight() - table[offset][0];
        const ExactMatrix block = block_of(tail_weight);
        if (block.rows() != len || offset != offset_check) {
            return {false, what + ": stratum size mismatch at tail weight " +
                               std::to_string(tail_weight)};
        }
        offset_check += len;
        for (std::size_t i = 0; i < len; ++i) {
            for (std::size_t k = 0; k < len; ++k) {
                if (whole(offset + i, offset + k) != block(i, k)) {
                    return {false, what + ": entry (" + std::to_string(offset + i) + ", " +
                                       std::to_string(offset + k) + ") differs from block " +
                                       std::to_string(tail_weight)};
                }
            }
        }
    }
    // everything off the diagonal blocks must vanish
    for (std::size_t si = 0; si < strata.size(); ++si) {
        for (std::size_t sk = 0; sk < strata.size(); ++sk) {
            if (si == sk) continue;
            const auto [ro, rl] = strata[si];
            const auto [co, cl] = strata[sk];
            for (std::size_t i = 0; i < rl; ++i)
                for (std::size_t k = 0; k < cl; ++k)
                    if (!whole(ro + i, co + k).is_zero())
                        return {false, what + ": nonzero entry (" + std::to_string(ro + i) + ", " +
                                           std::to_string(co + k) + ") off the diagonal blocks"};
        }
    }
    return {true, what + ": " + std::to_string(strata.size()) + " diagonal blocks"};
}

}  // namespace detail

/// In the lex-decreasing order the depth-j slice (j <= r-1) splits along the
/// first coordinate into the depth-(r-1) slices of the tail weights
/// 3(r-1), 3(r-1)+2, ..., N-3.
inline StructuralReport verify_block_diagonal(int weight, int depth, int j) {
    if (j < 2 || j > depth - 1)
        throw std::invalid_argument("verify_block_diagonal: need 2 <= j <= depth-1");
    const IndexTable table(weight, depth);
    if (table.empty()) return {true, "empty index set (vacuous)"};
    const ExactMatrix whole = build_Ej(weight, depth, j);
    return detail::compare_block_diagonal(
        whole, table, [&](int k) { return build_Ej(k, depth - 1, j); }, "Ej blocks");
}

/// The slice product E^(2)..E^(r-1) is block diagonal with the full depth-(r-1)
/// products of the tail weights as blocks.
inline StructuralReport verify_product_is_diag_C(int weight, int depth) {
    if (depth < 3) throw std::invalid_argument("verify_product_is_diag_C: need depth >= 3");
    const IndexTable table(weight, depth);
    if (table.empty()) return {true, "empty index set (vacuous)"};
    ExactMatrix product = build_Ej(weight, depth, depth - 1);
    for (int j = depth - 2; j >= 2; --j) product = build_Ej(weight, depth, j) * product;
    return detail::compare_block_diagonal(
        product, table, [&](int k) { return build_C(k, depth - 1); }, "C blocks");
}

/// Disk-backed store of factory matrices, one text file per (kind, N, r, j)
/// with a write-temp-then-rename protocol so concurrent builders never see
/// partial files. A small in-memory layer avoids re-parsing hot matrices.
class MatrixCache {
public:
    explicit MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(const std::string& kind, int weight, int depth,
                                   int j = -1) const {
        std::string name = kind + "_" + std::to_string(weight) + "_" + std::to_string(depth);
        if (j >= 0) name += "_" + std::to_string(j);
        return dir_ / (name + ".mat");
    }

    const ExactMatrix& get(const std::string& kind, int weight, int depth, int j = -1) {
        const auto key = std::make_tuple(kind, weight, depth, j);
        const auto hit = memory_.find(key);
        if (hit != memory_.end()) return hit->second;

        const std::filesystem::path path = path_for(kind, weight, depth, j);
        if (std::filesystem::exists(path)) {
            std::ifstream in(path);
            LoadedMatrix loaded = read_matrix(in);
            if (loaded.meta.kind != kind || loaded.meta.weight != weight ||
                loaded.meta.depth != depth || loaded.meta.j != j)
                throw std::runtime_error("cache file does not match its name: " + path.string());
            return memory_.emplace(key, std::move(loaded.matrix)).first->second;
        }

        ExactMatrix built = build_kind(kind, weight, depth, j);
        write_file(path, built, MatrixMeta{kind, weight, depth, j});
        return memory_.emplace(key, std::move(built)).first->second;
    }

    /// Build (or load) and persist; returns the file path and its checksum.
    std::pair<std::filesystem::path, std::uint64_t> store(const std::string& kind, int weight,
                                                          int depth, int j = -1) {
        const ExactMatrix& m = get(kind, weight, depth, j);
        const std::filesystem::path path = path_for(kind, weight, depth, j);
        if (!std::filesystem::exists(path))
            write_file(path, m, MatrixMeta{kind, weight, depth, j});
        return {path, matrix_checksum(m, MatrixMeta{kind, weight, depth, j})};
    }

    /// The slice product E^(2)..E^(r-1) (identity-free prefix of the full
    /// product); shared by several verifications.
    ExactMatrix slice_product(int weight, int depth) {
        if (depth < 3) throw std::invalid_argument("slice_product: need depth >= 3");
        ExactMatrix p = get("Ej", weight, depth, 2);
        for (int j = 3; j <= depth - 1; ++j) p = p * get("Ej", weight, depth, j);
        return p;
    }

private:
    void write_file(const std::filesystem::path& path, const ExactMatrix& m,
                    const MatrixMeta& meta) {
        std::filesystem::create_directories(dir_);
        std::filesystem::path tmp = path;
        tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
            write_matrix(out, m, meta);
        }
        std::filesystem::rename(tmp, path);
    }

    std::filesystem::path dir_;
    std::map<std::tuple<std::string, int, int, int>, ExactMatrix> memory_;
};

}  // namespace totodd
