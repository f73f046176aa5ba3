#include "treeproj/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string_view>

namespace treeproj {

namespace {

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::vector<double> read_coefficients(std::istream& in) {
    std::vector<double> out;
    std::string line;
    for (std::int64_t line_no = 1; std::getline(in, line); ++line_no) {
        const std::string_view body = trimmed(line);
        if (body.empty() || body.front() == '#') continue;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
        if (ec != std::errc{} || ptr != body.data() + body.size()) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": cannot parse '" + std::string(body) +
                                     "' as a coefficient");
        }
        out.push_back(value);
    }
    return out;
}

std::vector<double> read_coefficients_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_coefficients(in);
}

std::int64_t infer_levels(std::int64_t d, std::int64_t count) {
    if (d < 2) throw std::invalid_argument("tree order d must be at least 2");
    std::int64_t levels = 1;
    std::int64_t p = d;
    while (p < count) {
        if (__builtin_mul_overflow(p, d, &p)) break;
        ++levels;
    }
    if (p != count || levels < 2) {
        throw std::runtime_error("length " + std::to_string(count) +
                                 " is not a power of " + std::to_string(d));
    }
    return levels;
}

nlohmann::ordered_json result_document(const TreeTopology& t, std::int64_t k,
                                       const ProjectionResult& result,
                                       std::int64_t bound) {
    nlohmann::ordered_json ops;
    ops["additions"] = result.ops.additions;
    ops["comparisons"] = result.ops.comparisons;
    ops["pass2_comparisons"] = result.ops.pass2_comparisons;
    ops["bound"] = bound;

    nlohmann::ordered_json doc;
    doc["d"] = t.d();
    doc["J"] = t.levels();
    doc["N"] = t.node_count();
    doc["k"] = k;
    doc["support"] = result.support.nodes;
    doc["energy"] = result.energy;
    doc["projection"] = result.projection;
    doc["ops"] = std::move(ops);
    return doc;
}

}  // namespace treeproj
