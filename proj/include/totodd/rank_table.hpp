#pragma once

#include <totodd/exact_linalg.hpp>
#include <totodd/matrix_factory.hpp>
#include <totodd/odd_indices.hpp>
#include <totodd/series.hpp>

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace totodd {

/// One line of the empirical rank table: exact rank of the depth-r product
/// matrix next to the coefficient the conjectured generating series predicts.
struct RankRow {
    int weight = 0;
    int depth = 0;
    std::size_t size = 0;
    std::size_t rank = 0;
    std::size_t dim_ker = 0;
    Int conjectured;
    std::string status;  // "match", "mismatch" or "not-computed"
};

/// Exact ranks for every (N, r) in the sweep, compared against the
/// conjectured series. Matrices larger than `max_size` are reported as
/// not-computed so truncated sweeps stay honest.
inline std::vector<RankRow> rank_table(int weight_max, int depth_max, MatrixCache& cache,
                                       std::size_t max_size = 2000) {
    std::vector<RankRow> rows;
    for (int r = 1; r <= depth_max; ++r) {
        const TruncatedSeries predicted = conjectured_rank_series(r, weight_max);
        for (int n = 1; n <= weight_max; ++n) {
            RankRow row;
            row.weight = n;
            row.depth = r;
            row.size = static_cast<std::size_t>(count_totally_odd(n, r));
            row.conjectured = predicted.coeff(n);
            if (row.size > max_size) {
                row.status = "not-computed";
            } else {
                const ExactMatrix& c = cache.get("C", n, r);
                row.rank = totodd::rank(c);
                row.dim_ker = row.size - row.rank;
                row.status = (Int(row.rank) == row.conjectured) ? "match" : "mismatch";
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline void write_table_csv(std::ostream& out, const std::vector<RankRow>& rows) {
    out << "N,r,size,rank,dim_ker,conjectured_rank,status\n";
    for (const auto& row : rows) {
        out << row.weight << "," << row.depth << "," << row.size << ",";
        if (row.status == "not-computed")
            out << ",,";
        else
            out << row.rank << "," << row.dim_ker << ",";
        out << row.conjectured << "," << row.status << "\n";
    }
}

inline nlohmann::json table_to_json(const std::vector<RankRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json entry = {{"N", row.weight},
                                {"r", row.depth},
                                {"size", row.size},
                                {"conjectured_rank", row.conjectured.str()},
                                {"status", row.status}};
        if (row.status != "not-computed") {
            entry["rank"] = row.rank;
            entry["dim_ker"] = row.dim_ker;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace totodd
