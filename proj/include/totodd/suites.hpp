#pragma once

#include <totodd/matrix_factory.hpp>
#include <totodd/period_polys.hpp>
#include <totodd/polynomials.hpp>
#include <totodd/rank_table.hpp>
#include <totodd/reports.hpp>
#include <totodd/series.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace totodd {

struct RunConfig {
    int weight_max = -1;  // -1: per-suite default
    int depth_max = -1;
    std::filesystem::path cache_dir = "cache";
    std::string format = "text";
    std::uint64_t seed = 1;
    int commute_samples = 100;
};

struct SuiteResult {
    std::string suite;
    std::vector<ReportRecord> records;

    bool has_violation() const {
        for (const auto& r : records)
            if (r.status == Status::violation) return true;
        return false;
    }
    std::size_t count(Status s) const {
        std::size_t n = 0;
        for (const auto& r : records) n += (r.status == s);
        return n;
    }
};

namespace detail {

inline int pick(int configured, int fallback) { return configured > 0 ? configured : fallback; }

/// Runs one check, timing it and downgrading TheoremViolation into a
/// violation record so a suite never aborts half-way.
inline void run_check(std::vector<ReportRecord>& out, ReportRecord base,
                      const std::function<void(ReportRecord&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
        body(base);
    } catch (const TheoremViolation& ex) {
        base.status = Status::violation;
        base.observed = ex.what();
    }
    base.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(base));
}

template <typename Fn>
void for_each_composition(int total, int parts, std::vector<int>& prefix, const Fn& fn) {
    if (parts == 1) {
        if (total >= 1) {
            prefix.push_back(total);
            fn(prefix);
            prefix.pop_back();
        }
        return;
    }
    for (int p = 1; p <= total - (parts - 1); ++p) {
        prefix.push_back(p);
        for_each_composition(total - p, parts - 1, prefix, fn);
        prefix.pop_back();
    }
}

inline EvenPolynomial random_even_polynomial(const IndexTable& table, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-9, 9);
    EvenPolynomial p(table.weight(), table.depth());
    for (const auto& c : table.entries()) p.add_term(c, dist(rng));
    return p;
}

}  // namespace detail

/// Formula-vs-expansion equality of e(m; n) for every totally odd m and every
/// positive composition n of the weight. Exact equality; any mismatch is a
/// bug in one of the two routes.
inline SuiteResult suite_oracle_e(const RunConfig& cfg) {
    SuiteResult result{"oracle-e", {}};
    const int weight_max = detail::pick(cfg.weight_max, 21);
    const int depth_max = detail::pick(cfg.depth_max, 4);
    for (int r = 2; r <= depth_max; ++r) {
        for (int n = 3 * r; n <= weight_max; ++n) {
            const IndexTable table(n, r);
            if (table.empty()) continue;
            ReportRecord rec{"oracle-e", n, r};
            detail::run_check(result.records, rec, [&](ReportRecord& out) {
                std::size_t pairs = 0;
                for (const auto& m : table.entries()) {
                    const GeneralPolynomial expansion = ihara_monomial_expansion(m);
                    std::vector<int> prefix;
                    detail::for_each_composition(n, r, prefix, [&](const std::vector<int>& comp) {
                        Exponents target(comp.size());
                        for (std::size_t i = 0; i < comp.size(); ++i) target[i] = comp[i] - 1;
                        const Rat via_expansion = expansion.coefficient(target);
                        const Int via_formula = e_coefficient(m, comp);
                        if (via_expansion != Rat(via_formula))
                            throw TheoremViolation(
                                "e-coefficient mismatch between expansion and formula");
                        ++pairs;
                    });
                }
                out.expected = "formula == expansion";
                out.observed = std::to_string(pairs) + " pairs identical";
            });
        }
    }
    return result;
}

/// Block-diagonal structure of the slices and of their product.
inline SuiteResult suite_block_diag(const RunConfig& cfg) {
    SuiteResult result{"block-diag", {}};
    const int weight_max = detail::pick(cfg.weight_max, 27);
    const int depth_max = detail::pick(cfg.depth_max, 5);
    for (int r = 3; r <= depth_max; ++r) {
        for (int n = 1; n <= weight_max; ++n) {
            if (count_totally_odd(n, r) == 0) continue;
            for (int j = 2; j <= r - 1; ++j) {
                ReportRecord rec{"block-diag", n, r, j};
                detail::run_check(result.records, rec, [&](ReportRecord& out) {
                    const StructuralReport sr = verify_block_diagonal(n, r, j);
                    out.expected = "slice splits into depth-(r-1) blocks";
                    out.observed = sr.detail;
                    if (!sr.pass) throw TheoremViolation(sr.detail);
                });
            }
            ReportRecord rec{"product-diag-C", n, r};
            detail::run_check(result.records, rec, [&](ReportRecord& out) {
                const StructuralReport sr = verify_product_is_diag_C(n, r);
                out.expected = "slice product splits into depth-(r-1) C blocks";
                out.observed = sr.detail;
                if (!sr.pass) throw TheoremViolation(sr.detail);
            });
        }
    }
    return result;
}

/// Commuting diagram: the coefficient vector of phi_j(q) equals pi(q) E^(j)
/// for seeded random polynomials q.
inline SuiteResult suite_commute(const RunConfig& cfg) {
    SuiteResult result{"commute", {}};
    const int weight_max = detail::pick(cfg.weight_max, 21);
    const int depth_max = detail::pick(cfg.depth_max, 4);
    MatrixCache cache(cfg.cache_dir);
    std::mt19937_64 rng(cfg.seed);
    for (int r = 2; r <= depth_max; ++r) {
        for (int n = 3 * r; n <= weight_max; ++n) {
            const IndexTable table(n, r);
            if (table.empty()) continue;
            for (int j = 2; j <= r; ++j) {
                ReportRecord rec{"commute", n, r, j};
                detail::run_check(result.records, rec, [&](ReportRecord& out) {
                    const ExactMatrix& slice = cache.get("Ej", n, r, j);
                    for (int sample = 0; sample < cfg.commute_samples; ++sample) {
                        const EvenPolynomial q = detail::random_even_polynomial(table, rng);
                        const std::vector<Rat> lhs = coefficient_vector(phi_action(q, j), table);
                        const std::vector<Rat> rhs =
                            row_times_matrix(coefficient_vector(q, table), slice);
                        if (lhs != rhs)
                            throw TheoremViolation("phi_action disagrees with the slice matrix");
                    }
                    out.expected = "pi(phi_j(q)) == pi(q) E^(j)";
                    out.observed = std::to_string(cfg.commute_samples) + " samples exact";
                });
            }
        }
    }
    return result;
}

/// Depth-2 span equality, plus the dimension consequences: the left-kernel
/// dimension equals the cusp-form dimension and the rank is the complement.
inline SuiteResult suite_baumard_schneps(const RunConfig& cfg) {
    SuiteResult result{"baumard-schneps", {}};
    const int weight_max = detail::pick(cfg.weight_max, 28);
    MatrixCache cache(cfg.cache_dir);
    const TruncatedSeries s = cusp_dim_series(weight_max);
    for (int n = 2; n <= weight_max; n += 2) {
        ReportRecord rec{"baumard-schneps", n, 2};
        detail::run_check(result.records, rec, [&](ReportRecord& out) {
            const CheckReport cr = verify_baumard_schneps(n, cache);
            const std::size_t size = IndexTable(n, 2).size();
            const std::size_t kernel_dim = size - rank(cache.get("E", n, 2));
            out.expected = "span equality; dim ker^T E == " + s.coeff(n).str();
            out.observed = cr.observed + "; dim ker^T E = " + std::to_string(kernel_dim);
            if (Int(kernel_dim) != s.coeff(n))
                throw TheoremViolation("depth-2 kernel dimension differs from cusp dimension");
        });
    }
    return result;
}

/// Well-definedness of the period-to-kernel map (proved).
inline SuiteResult suite_tasaka_map(const RunConfig& cfg) {
    SuiteResult result{"tasaka-map", {}};
    const int weight_max = detail::pick(cfg.weight_max, 25);
    const int depth_max = detail::pick(cfg.depth_max, 5);
    MatrixCache cache(cfg.cache_dir);
    for (int r = 3; r <= depth_max; ++r) {
        for (int n = 3 * r; n <= weight_max; ++n) {
            if (count_totally_odd(n, r) == 0) continue;
            ReportRecord rec{"tasaka-map", n, r};
            detail::run_check(result.records, rec, [&](ReportRecord& out) {
                const auto images = tasaka_image(n, r, cache);
                out.expected = "every pi(P) F lies in ker^T E";
                out.observed = std::to_string(images.size()) + " images verified";
            });
        }
    }
    return result;
}

inline SuiteResult suite_fnr(const RunConfig& cfg) {
    SuiteResult result{"fnr", {}};
    const int weight_max = detail::pick(cfg.weight_max, 25);
    const int depth_max = detail::pick(cfg.depth_max, 5);
    MatrixCache cache(cfg.cache_dir);
    for (int r = 3; r <= depth_max; ++r) {
        for (int n = 3 * r; n <= weight_max; ++n) {
            if (count_totally_odd(n, r) == 0) continue;
            ReportRecord rec{"fnr", n, r};
            detail::run_check(result.records, rec, [&](ReportRecord& out) {
                const CheckReport cr = verify_f_identity(n, r, cache);
                out.expected = cr.expected;
                out.observed = cr.observed;
            });
        }
    }
    return result;
}

/// Kernel decompositions of the sliced action (full space and period
/// subspace) and the dimension series of the period spaces.
inline SuiteResult suite_kernels(const RunConfig& cfg) {
    SuiteResult result{"kernels", {}};
    const int weight_max = detail::pick(cfg.weight_max, 21);
    const int depth_max = detail::pick(cfg.depth_max, 4);
    MatrixCache cache(cfg.cache_dir);

    const int dim_weight_max = detail::pick(cfg.weight_max, 30);
    const int dim_depth_max = detail::pick(cfg.depth_max, 5);
    const TruncatedSeries o = odd_series(dim_weight_max);
    const TruncatedSeries s = cusp_dim_series(dim_weight_max);
    for (int r = 2; r <= dim_depth_max; ++r) {
        const TruncatedSeries predicted = o.pow(r - 2) * s;
        ReportRecord rec{"period-dim-series", -1, r};
        detail::run_check(result.records, rec, [&](ReportRecord& out) {
            for (int n = 1; n <= dim_weight_max; ++n) {
                const std::size_t dim = period_basis(n, r).dimension();
                if (Int(dim) != predicted.coeff(n))
                    throw TheoremViolation("period dimension series mismatch at weight " +
                                           std::to_string(n));
            }
            out.expected = "dim W == coefficient of O^(r-2) S";
            out.observed = "weights 1.." + std::to_string(dim_weight_max) + " match";
        });
    }

    for (int r = 3; r <= depth_max; ++r) {
        for (int n = 3 * r; n <= weight_max; ++n) {
            if (count_totally_odd(n, r) == 0) continue;
            for (int j = 2; j <= r - 1; ++j) {
                ReportRecord rec{"phi-kernel-dim", n, r, j};
                detail::run_check(result.records, rec, [&](ReportRecord& out) {
                    const CheckReport cr = verify_phi_kernel_dim(n, r, j, cache);
                    out.expected = cr.expected;
                    out.observed = cr.observed;
                });
            }
            for (int j = 2; j <= r - 2; ++j) {
                ReportRecord rec{"restricted-phi-kernel-dim", n, r, j};
                detail::run_check(result.records, rec, [&](ReportRecord& out) {
                    const CheckReport cr = verify_restricted_phi_kernel_dim(n, r, j, cache);
                    out.expected = cr.expected;
                    out.observed = cr.observed;
                });
            }
        }
    }
    return result;
}

/// Conjecture evidence: injectivity/surjectivity of the period-to-kernel map
/// and the Glanois image equality. Mismatches are findings.
inline SuiteResult suite_glanois(const RunConfig& cfg) {
    SuiteResult result{"glanois", {}};
    const int weight_max = detail::pick(cfg.weight_max, 21);
    const int depth_max = detail::pick(cfg.depth_max, 4);
    MatrixCache cache(cfg.cache_dir);
    for (int r = 3; r <= depth_max; ++r) {
        for (int n = 3 * r; n <= weight_max; ++n) {
            if (count_totally_odd(n, r) == 0) continue;
            ReportRecord inj{"tasaka-injectivity", n, r};
            detail::run_check(result.records, inj, [&](ReportRecord& out) {
                const CheckReport cr = injectivity_report(n, r, cache);
                out.expected = cr.expected;
                out.observed = cr.observed;
                if (!cr.pass) out.status = Status::finding;
            });
            ReportRecord gl{"glanois", n, r};
            detail::run_check(result.records, gl, [&](ReportRecord& out) {
                const CheckReport cr = glanois_report(n, r, cache);
                out.expected = cr.expected;
                out.observed = cr.observed;
                if (!cr.pass) out.status = Status::finding;
            });
        }
    }
    return result;
}

inline SuiteResult suite_series_identity(const RunConfig& cfg) {
    SuiteResult result{"series-identity", {}};
    const int xbound = detail::pick(cfg.weight_max, 35);
    const int ybound = detail::pick(cfg.depth_max, 6);

    ReportRecord rec{"series-identity", xbound, ybound};
    detail::run_check(result.records, rec, [&](ReportRecord& out) {
        const SeriesIdentityReport sr = verify_series_identity(xbound, ybound);
        out.expected = "(1 - O y + S y^2) * sum (O^r - T_r) y^r == 1";
        out.observed = sr.detail;
        if (!sr.pass) throw TheoremViolation(sr.detail);
    });

    ReportRecord closed{"series-closed-forms", xbound, ybound};
    detail::run_check(result.records, closed, [&](ReportRecord& out) {
        const TruncatedSeries o = odd_series(xbound), s = cusp_dim_series(xbound);
        if (!(kernel_series_recursion(2, xbound) == s))
            throw TheoremViolation("T_2 != S");
        if (!(kernel_series_recursion(3, xbound) == o * s * Int(2)))
            throw TheoremViolation("T_3 != 2 O S");
        if (!(kernel_series_recursion(5, xbound) ==
              o.pow(3) * s * Int(4) - o * s * s * Int(3)))
            throw TheoremViolation("T_5 != 4 O^3 S - 3 O S^2");
        if (!(image_series_recursion(3, xbound) == o * s))
            throw TheoremViolation("B_3 != O S");
        if (!(image_series_recursion(4, xbound) == o.pow(2) * s - s * s))
            throw TheoremViolation("B_4 != O^2 S - S^2");
        for (int r = 3; r <= ybound; ++r) {
            const TruncatedSeries lhs = kernel_series_recursion(r, xbound);
            const TruncatedSeries rhs = o * kernel_series_recursion(r - 1, xbound) +
                                        image_series_recursion(r, xbound);
            if (!(lhs == rhs)) throw TheoremViolation("T_r != O T_(r-1) + B_r");
            if (!(conjectured_rank_series(r, xbound) == o.pow(r) - lhs))
                throw TheoremViolation("rank series != O^r - T_r");
        }
        out.expected = "recursions match their closed forms";
        out.observed = "depths 2.." + std::to_string(ybound) + " verified";
    });
    return result;
}

/// Exact ranks against the conjectured series; equality is reported, never
/// asserted. The conditional kernel lower bounds ride along.
inline SuiteResult suite_rank_vs_conjecture(const RunConfig& cfg) {
    SuiteResult result{"rank-vs-conjecture", {}};
    const int weight_max = detail::pick(cfg.weight_max, 25);
    const int depth_max = detail::pick(cfg.depth_max, 4);
    MatrixCache cache(cfg.cache_dir);

    const auto rows = rank_table(weight_max, depth_max, cache);
    for (const auto& row : rows) {
        if (row.size == 0) continue;  // parity/threshold gaps carry no information
        ReportRecord rec{"rank-vs-conjecture", row.weight, row.depth};
        rec.expected = "rank C == " + row.conjectured.str();
        if (row.status == "not-computed") {
            rec.observed = "not computed (size " + std::to_string(row.size) + ")";
        } else {
            rec.observed = "rank " + std::to_string(row.rank) + ", ker " +
                           std::to_string(row.dim_ker);
            if (row.status != "match") rec.status = Status::finding;
        }
        result.records.push_back(std::move(rec));
    }

    for (int r = 3; r <= depth_max; ++r) {
        const TruncatedSeries bound = kernel_series_recursion(r, weight_max);
        for (const auto& row : rows) {
            if (row.depth != r || row.size == 0 || row.status != "match") continue;
            if (Int(row.dim_ker) < bound.coeff(row.weight)) {
                ReportRecord rec{"ker-lower-bound", row.weight, row.depth};
                rec.expected = "dim ker >= " + bound.coeff(row.weight).str();
                rec.observed = "dim ker = " + std::to_string(row.dim_ker) +
                               " (contradicts the conditional bound; check injectivity evidence)";
                rec.status = Status::finding;
                result.records.push_back(std::move(rec));
            }
        }
    }
    return result;
}

inline std::vector<std::string> suite_names() {
    return {"oracle-e", "block-diag",  "commute", "baumard-schneps",
            "tasaka-map", "fnr",       "kernels", "glanois",
            "series-identity", "rank-vs-conjecture"};
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "oracle-e") return suite_oracle_e(cfg);
    if (name == "block-diag") return suite_block_diag(cfg);
    if (name == "commute") return suite_commute(cfg);
    if (name == "baumard-schneps") return suite_baumard_schneps(cfg);
    if (name == "tasaka-map") return suite_tasaka_map(cfg);
    if (name == "fnr") return suite_fnr(cfg);
    if (name == "kernels") return suite_kernels(cfg);
    if (name == "glanois") return suite_glanois(cfg);
    if (name == "series-identity") return suite_series_identity(cfg);
    if (name == "rank-vs-conjecture") return suite_rank_vs_conjecture(cfg);
    if (name == "all") {
        SuiteResult all{"all", {}};
        for (const auto& sub : suite_names()) {
            SuiteResult r = run_suite(sub, cfg);
            all.records.insert(all.records.end(), r.records.begin(), r.records.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

inline nlohmann::json suite_result_to_json(const SuiteResult& result, const RunConfig& cfg) {
    return {{"suite", result.suite},
            {"config",
             {{"Nmax", cfg.weight_max},
              {"rmax", cfg.depth_max},
              {"seed", cfg.seed},
              {"cache_dir", cfg.cache_dir.string()}}},
            {"records", records_to_json(result.records)}};
}

}  // namespace totodd
