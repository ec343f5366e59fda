// Command-line frontend: build and rank the totally odd depth-graded
// matrices, extract kernels, run the verification suites, and emit the
// empirical rank tables and generating series.

#include <totodd/totodd.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace totodd;

int require_valid_params(const std::string& kind, int weight, int depth, int j) {
    if (depth < 1) throw CLI::ValidationError("r must be >= 1");
    if (kind == "Ej") {
        if (j < 2 || j > depth) throw CLI::ValidationError("Ej requires 2 <= j <= r");
    } else if (j >= 0) {
        throw CLI::ValidationError("only Ej takes a slice parameter j");
    }
    if (kind == "C" && depth < 1) throw CLI::ValidationError("C requires r >= 1");
    return 0;
}

void print_kernel(const KernelBasis& basis, const std::string& side, const std::string& kind,
                  int weight, int depth, const std::string& format) {
    if (format == "json") {
        nlohmann::json vectors = nlohmann::json::array();
        for (const auto& v : basis.vectors) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& x : v) row.push_back(x.str());
            vectors.push_back(std::move(row));
        }
        nlohmann::json out = {{"kind", kind}, {"N", weight},       {"r", depth},
                              {"side", side}, {"ambient", basis.ambient}, {"vectors", vectors}};
        out["index_table"] = IndexTable(weight, depth).to_json();
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::cout << side << " kernel of " << kind << "_{" << weight << "," << depth
              << "}: dimension " << basis.dimension() << "\n";
    for (const auto& v : basis.vectors) {
        for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic laboratory for totally odd depth-graded "
                 "multiple zeta value relations"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string cache_dir = "cache";
    app.add_option("--cache-dir", cache_dir, "matrix cache directory")
        ->envname("TOTODD_CACHE")
        ->capture_default_str();
    app.add_option("--format", cfg.format, "output format: text|csv|json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for the randomized property suites")
        ->capture_default_str();
    app.add_option("--Nmax", cfg.weight_max, "weight bound for sweeps");
    app.add_option("--rmax", cfg.depth_max, "depth bound for sweeps");

    std::string kind;
    int weight = 0, depth = 0, slice = -1;

    auto add_matrix_args = [&](CLI::App* cmd) {
        cmd->add_option("kind", kind, "matrix family: E|Ej|C|F")
            ->required()
            ->check(CLI::IsMember({"E", "Ej", "C", "F"}));
        cmd->add_option("N", weight, "weight")->required();
        cmd->add_option("r", depth, "depth")->required();
        cmd->add_option("j", slice, "slice parameter (Ej only)");
    };

    CLI::App* cmd_build = app.add_subcommand("build", "build a matrix and write it to the cache");
    add_matrix_args(cmd_build);

    CLI::App* cmd_rank = app.add_subcommand("rank", "exact rank and kernel dimension");
    add_matrix_args(cmd_rank);

    CLI::App* cmd_kernel = app.add_subcommand("kernel", "kernel basis in primitive integer form");
    add_matrix_args(cmd_kernel);
    std::string side = "right";
    cmd_kernel->add_option("--side", side, "right (annihilators) or left")
        ->check(CLI::IsMember({"right", "left"}))
        ->capture_default_str();

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    {
        auto names = suite_names();
        names.push_back("all");
        cmd_verify->add_option("suite", suite, "suite name")
            ->required()
            ->check(CLI::IsMember(names));
    }
    std::string report_path;
    cmd_verify->add_option("--report", report_path, "report file (default totodd-report-<suite>.json)");

    CLI::App* cmd_table = app.add_subcommand("table", "empirical rank table vs the conjectured series");
    std::string out_path;
    cmd_table->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* cmd_series = app.add_subcommand("series", "print generating series coefficients");
    std::string what = "conjectured-rank";
    int series_depth = 2;
    int bound = 30;
    cmd_series->add_option("--what", what, "odd|even|cusp|kernel|image|conjectured-rank")
        ->check(CLI::IsMember({"odd", "even", "cusp", "kernel", "image", "conjectured-rank"}))
        ->capture_default_str();
    cmd_series->add_option("--r", series_depth, "depth for depth-indexed series")->capture_default_str();
    cmd_series->add_option("--bound", bound, "truncation bound")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    cfg.cache_dir = cache_dir;

    try {
        if (*cmd_build) {
            require_valid_params(kind, weight, depth, slice);
            MatrixCache cache(cfg.cache_dir);
            const auto [path, checksum] = cache.store(kind, weight, depth, slice);
            std::cout << path.string() << " checksum " << totodd::detail::hex64(checksum) << "\n";
            return 0;
        }

        if (*cmd_rank) {
            require_valid_params(kind, weight, depth, slice);
            MatrixCache cache(cfg.cache_dir);
            const ExactMatrix& m = cache.get(kind, weight, depth, slice);
            const std::size_t rk = rank(m);
            std::cout << "rank " << rk << ", ker " << (m.cols() - rk) << "\n";
            return 0;
        }

        if (*cmd_kernel) {
            require_valid_params(kind, weight, depth, slice);
            MatrixCache cache(cfg.cache_dir);
            const ExactMatrix& m = cache.get(kind, weight, depth, slice);
            const KernelBasis basis = side == "right" ? right_kernel(m) : left_kernel(m);
            print_kernel(basis, side, kind, weight, depth, cfg.format);
            return 0;
        }

        if (*cmd_verify) {
            const SuiteResult result = run_suite(suite, cfg);
            for (const auto& rec : result.records) {
                std::cout << "[" << to_string(rec.status) << "] " << rec.check;
                if (rec.weight >= 0) std::cout << " N=" << rec.weight;
                if (rec.depth >= 0) std::cout << " r=" << rec.depth;
                if (rec.j >= 0) std::cout << " j=" << rec.j;
                std::cout << ": " << rec.observed << "\n";
            }
            std::cout << result.records.size() << " checks, " << result.count(Status::pass)
                      << " pass, " << result.count(Status::finding) << " findings, "
                      << result.count(Status::violation) << " violations\n";
            const std::string path =
                report_path.empty() ? "totodd-report-" + suite + ".json" : report_path;
            std::ofstream out(path);
            out << suite_result_to_json(result, cfg).dump(2) << "\n";
            std::cout << "report written to " << path << "\n";
            return result.has_violation() ? 1 : 0;
        }

        if (*cmd_table) {
            MatrixCache cache(cfg.cache_dir);
            const int weight_max = cfg.weight_max > 0 ? cfg.weight_max : 20;
            const int depth_max = cfg.depth_max > 0 ? cfg.depth_max : 3;
            const auto rows = rank_table(weight_max, depth_max, cache);
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw std::runtime_error("cannot open " + out_path);
                out = &file;
            }
            if (cfg.format == "json")
                *out << table_to_json(rows).dump(2) << "\n";
            else
                write_table_csv(*out, rows);
            return 0;
        }

        if (*cmd_series) {
            TruncatedSeries s(bound);
            if (what == "odd") s = odd_series(bound);
            else if (what == "even") s = even_series(bound);
            else if (what == "cusp") s = cusp_dim_series(bound);
            else if (what == "kernel") s = kernel_series_recursion(series_depth, bound);
            else if (what == "image") s = image_series_recursion(series_depth, bound);
            else s = conjectured_rank_series(series_depth, bound);
            if (cfg.format == "json") {
                nlohmann::json coeffs = nlohmann::json::array();
                for (int n = 0; n <= bound; ++n) coeffs.push_back(s.coeff(n).str());
                std::cout << nlohmann::json{{"what", what}, {"r", series_depth}, {"bound", bound},
                                            {"coefficients", coeffs}}
                                 .dump(2)
                          << "\n";
            } else {
                for (int n = 0; n <= bound; ++n) {
                    if (!s.coeff(n).is_zero())
                        std::cout << "x^" << n << ": " << s.coeff(n) << "\n";
                }
            }
            return 0;
        }
    } catch (const CLI::ValidationError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const TheoremViolation& ex) {
        std::cerr << "theorem violation: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
