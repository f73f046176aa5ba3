#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "treeproj/etp.hpp"
#include "treeproj/gta.hpp"
#include "treeproj/io.hpp"
#include "treeproj/oracle.hpp"
#include "treeproj/random.hpp"
#include "treeproj/topology.hpp"
#include "treeproj/types.hpp"

namespace {

using treeproj::NodeId;
using treeproj::Signal;
using treeproj::Support;
using treeproj::TreeTopology;

struct BenchRecord {
    std::int64_t d = 0;
    std::int64_t J = 0;
    std::int64_t N = 0;
    std::int64_t k = 0;
    std::int64_t rep = 0;
    std::uint64_t seed = 0;
    std::int64_t additions = 0;
    std::int64_t comparisons = 0;
    std::int64_t pass2_comparisons = 0;
    std::int64_t bound = 0;
    double wall_time = 0.0;
};

std::int64_t parse_int(std::string_view token, const char* what) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument("cannot parse '" + std::string(token) + "' as " + what);
    }
    return value;
}

std::int64_t ceil_sqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::llround(std::floor(std::sqrt(static_cast<double>(n)))));
    while (r * r < n) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

// Comma-separated cardinality rule. Entries are integers, inclusive ranges
// "A..B", or the N-dependent symbols sqrt (ceil of the square root), quarter
// (ceil of N/4), and full (N). The result is sorted and deduplicated.
std::vector<std::int64_t> resolve_k_rule(const std::string& rule, std::int64_t n) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= rule.size()) {
        const std::size_t comma = rule.find(',', pos);
        const std::size_t end = comma == std::string::npos ? rule.size() : comma;
        std::string_view token(rule.data() + pos, end - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (token.empty()) {
            throw std::invalid_argument("empty entry in k list '" + rule + "'");
        }
        if (token == "sqrt") {
            out.push_back(ceil_sqrt(n));
        } else if (token == "quarter") {
            out.push_back((n + 3) / 4);
        } else if (token == "full") {
            out.push_back(n);
        } else if (const std::size_t dots = token.find(".."); dots != std::string_view::npos) {
            const std::int64_t lo = parse_int(token.substr(0, dots), "a cardinality");
            const std::int64_t hi = parse_int(token.substr(dots + 2), "a cardinality");
            if (lo > hi) {
                throw std::invalid_argument("descending range '" + std::string(token) +
                                            "' in k list");
            }
            for (std::int64_t k = lo; k <= hi; ++k) out.push_back(k);
        } else {
            out.push_back(parse_int(token, "a cardinality"));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::int64_t k : out) {
        if (k < 1 || k > n) {
            throw std::invalid_argument("cardinality " + std::to_string(k) + " outside 1.." +
                                        std::to_string(n));
        }
    }
    return out;
}

std::uint64_t record_seed(std::uint64_t base, std::int64_t d, std::int64_t levels,
                          std::int64_t rep) {
    using treeproj::mix64;
    std::uint64_t s = mix64(base);
    s = mix64(s + static_cast<std::uint64_t>(d));
    s = mix64(s + static_cast<std::uint64_t>(levels));
    s = mix64(s + static_cast<std::uint64_t>(rep));
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string format_support(const Support& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        if (i) os << ',';
        os << s.nodes[i];
    }
    os << ']';
    return os.str();
}

struct ProjectArgs {
    std::string input;
    std::int64_t d = 0;
    std::int64_t k = 0;
    std::string output;
};

int run_project(const ProjectArgs& args, bool greedy) {
    std::vector<double> values = treeproj::read_coefficients_file(args.input);
    const std::int64_t levels = treeproj::infer_levels(args.d, static_cast<std::int64_t>(values.size()));
    const TreeTopology t(args.d, levels);
    const Signal y(std::move(values));
    const treeproj::ProjectionResult result =
        greedy ? treeproj::gta_project(t, y, args.k) : treeproj::etp_project(t, y, args.k);
    const std::int64_t bound = treeproj::operation_bound(args.d, t.node_count(), args.k);
    write_text(args.output, treeproj::result_document(t, args.k, result, bound).dump(2) + "\n");
    return 0;
}

struct CheckArgs {
    std::string input;
    std::uint64_t seed = 0;
    bool random = false;
    std::int64_t d = 0;
    std::int64_t levels = 0;
    std::int64_t k = 0;
    std::string k_list;
    std::int64_t max_enum = treeproj::kDefaultEnumerationCeiling;
};

int run_check(const CheckArgs& args) {
    std::vector<double> values;
    std::int64_t levels = args.levels;
    if (!args.input.empty()) {
        values = treeproj::read_coefficients_file(args.input);
        const std::int64_t inferred =
            treeproj::infer_levels(args.d, static_cast<std::int64_t>(values.size()));
        if (levels != 0 && levels != inferred) {
            throw std::invalid_argument("--J " + std::to_string(levels) +
                                        " contradicts the input length (J = " +
                                        std::to_string(inferred) + ")");
        }
        levels = inferred;
    } else {
        if (levels == 0) throw std::invalid_argument("--random requires --J");
    }
    const TreeTopology t(args.d, levels);
    if (args.input.empty()) values = treeproj::gaussian_signal(args.seed, t.node_count());
    const Signal y(std::move(values));

    // Support comparison runs on a deterministically perturbed copy whose
    // optimum is unique, so equal supports are actually required.
    std::vector<double> perturbed(static_cast<std::size_t>(t.node_count()));
    for (NodeId i = 1; i <= t.node_count(); ++i) {
        perturbed[static_cast<std::size_t>(i - 1)] = std::abs(y[i]) + static_cast<double>(i) * 1e-6;
    }
    const Signal m(std::move(perturbed));

    const std::vector<std::int64_t> ks = resolve_k_rule(
        args.k_list.empty() ? std::to_string(args.k) : args.k_list, t.node_count());

    bool all_pass = true;
    for (std::int64_t k : ks) {
        const auto fast = treeproj::etp_project(t, y, k);
        const auto exact = treeproj::brute_force_project(t, y, k, args.max_enum);
        const auto fast_m = treeproj::etp_project(t, m, k);
        const auto exact_m = treeproj::brute_force_project(t, m, k, args.max_enum);
        const double gap = std::abs(fast.energy - exact.energy);
        const double scale = std::max(std::abs(fast.energy), std::abs(exact.energy));
        const bool energy_ok = gap <= 1e-9 * scale;
        const bool support_ok = fast_m.support == exact_m.support;
        if (energy_ok && support_ok) {
            std::cout << "k=" << k << " PASS energy " << fast.energy << " = " << exact.energy
                      << "\n";
        } else {
            all_pass = false;
            std::cout << "k=" << k << " FAIL\n"
                      << std::setprecision(17) << "  energies " << fast.energy << " vs "
                      << exact.energy << " (exhaustive)\n"
                      << "  supports " << format_support(fast_m.support) << " vs "
                      << format_support(exact_m.support) << " (exhaustive, perturbed)\n"
                      << std::setprecision(6);
        }
    }
    return all_pass ? 0 : 1;
}

struct BenchArgs {
    std::vector<std::int64_t> ds;
    std::vector<std::int64_t> Js;
    std::int64_t k = 0;
    std::string k_list;
    std::uint64_t seed = 0;
    std::int64_t reps = 1;
    std::string output;
};

int run_bench(const BenchArgs& args) {
    if (args.reps < 1) throw std::invalid_argument("--reps must be at least 1");
    std::vector<BenchRecord> records;
    for (std::int64_t d : args.ds) {
        for (std::int64_t levels : args.Js) {
            const TreeTopology t(d, levels);
            const std::int64_t n = t.node_count();
            const std::vector<std::int64_t> ks =
                args.k_list.empty() ? resolve_k_rule(std::to_string(args.k), n)
                                    : resolve_k_rule(args.k_list, n);
            for (std::int64_t rep = 0; rep < args.reps; ++rep) {
                const std::uint64_t seed = record_seed(args.seed, d, levels, rep);
                const Signal y(treeproj::gaussian_signal(seed, n));
                for (std::int64_t k : ks) {
                    const auto start = std::chrono::steady_clock::now();
                    const auto result = treeproj::etp_project(t, y, k);
                    const std::chrono::duration<double> elapsed =
                        std::chrono::steady_clock::now() - start;
                    BenchRecord r;
                    r.d = d;
                    r.J = levels;
                    r.N = n;
                    r.k = k;
                    r.rep = rep;
                    r.seed = seed;
                    r.additions = result.ops.additions;
                    r.comparisons = result.ops.comparisons;
                    r.pass2_comparisons = result.ops.pass2_comparisons;
                    r.bound = treeproj::operation_bound(d, n, k);
                    r.wall_time = elapsed.count();
                    if (r.additions + r.comparisons + r.pass2_comparisons > r.bound) {
                        std::cerr << "operation count exceeds the guaranteed bound at d=" << d
                                  << " J=" << levels << " k=" << k << " rep=" << rep << "\n";
                        return 1;
                    }
                    records.push_back(r);
                }
            }
        }
    }
    std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.d, a.J, a.k, a.rep) < std::tie(b.d, b.J, b.k, b.rep);
    });

    std::ostringstream csv;
    csv << "d,J,N,k,rep,seed,additions,comparisons,pass2_comparisons,bound,wall_time_s\n";
    for (const BenchRecord& r : records) {
        csv << r.d << ',' << r.J << ',' << r.N << ',' << r.k << ',' << r.rep << ',' << r.seed
            << ',' << r.additions << ',' << r.comparisons << ',' << r.pass2_comparisons << ','
            << r.bound << ',' << std::fixed << std::setprecision(6) << r.wall_time
            << std::defaultfloat << "\n";
    }
    write_text(args.output, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Euclidean projection onto rooted-tree supports of a d-ary coefficient tree"};
    app.require_subcommand(1);

    ProjectArgs project_args;
    CLI::App* project = app.add_subcommand("project", "Project a coefficient file exactly");
    project->add_option("--input", project_args.input, "coefficient file, one value per line")
        ->required();
    project->add_option("--d", project_args.d, "tree order (children per node)")->required();
    project->add_option("--k", project_args.k, "support cardinality")->required();
    project->add_option("--output", project_args.output, "result file (default: stdout)");

    ProjectArgs gta_args;
    CLI::App* gta = app.add_subcommand("gta", "Project with the greedy baseline");
    gta->add_option("--input", gta_args.input, "coefficient file, one value per line")
        ->required();
    gta->add_option("--d", gta_args.d, "tree order (children per node)")->required();
    gta->add_option("--k", gta_args.k, "support cardinality")->required();
    gta->add_option("--output", gta_args.output, "result file (default: stdout)");

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "Verify the fast projection against exhaustion");
    CLI::Option* check_input =
        check->add_option("--input", check_args.input, "coefficient file to check");
    CLI::Option* check_random =
        check->add_option("--random", check_args.seed, "seed for a generated Gaussian signal");
    check->add_option("--d", check_args.d, "tree order (children per node)")->required();
    check->add_option("--J", check_args.levels, "tree levels (required with --random)");
    CLI::Option* check_k = check->add_option("--k", check_args.k, "single cardinality");
    CLI::Option* check_k_list =
        check->add_option("--k-list", check_args.k_list,
                          "cardinalities: comma list of INT, A..B, sqrt, quarter, full");
    check->add_option("--max-enum", check_args.max_enum,
                      "refuse enumerations larger than this many supports");
    check_input->excludes(check_random);
    check_k->excludes(check_k_list);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Measure operation counts over seeded signals");
    bench->add_option("--d", bench_args.ds, "tree orders (repeatable)")->required();
    bench->add_option("--J", bench_args.Js, "tree levels (repeatable)")->required();
    CLI::Option* bench_k = bench->add_option("--k", bench_args.k, "single cardinality");
    CLI::Option* bench_k_list =
        bench->add_option("--k-list", bench_args.k_list,
                          "cardinalities: comma list of INT, A..B, sqrt, quarter, full");
    bench->add_option("--random", bench_args.seed, "base seed for signal generation");
    bench->add_option("--reps", bench_args.reps, "repetitions per (d, J) cell");
    bench->add_option("--output", bench_args.output, "CSV file (default: stdout)");
    bench_k->excludes(bench_k_list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*project) return run_project(project_args, false);
        if (*gta) return run_project(gta_args, true);
        if (*check) {
            check_args.random = check_random->count() > 0;
            if (check_args.input.empty() && !check_args.random) {
                throw std::invalid_argument("check needs --input or --random");
            }
            if (check_k->count() == 0 && check_k_list->count() == 0) {
                throw std::invalid_argument("check needs --k or --k-list");
            }
            return run_check(check_args);
        }
        if (*bench) {
            if (bench_k->count() == 0 && bench_k_list->count() == 0) {
                throw std::invalid_argument("bench needs --k or --k-list");
            }
            return run_bench(bench_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
