#include "qwalk/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "qwalk/errors.hpp"

namespace qwalk::csv {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw UsageError("unterminated quote in CSV line");
    return fields;
}

void write_comments(std::ostream& os, std::span<const std::string> comments) {
    for (const auto& c : comments) os << c << '\n';
}

void write_points(std::ostream& os, std::span<const EnsemblePoint> points, std::string_view dist_spec) {
    os << kPointsHeader << '\n';
    for (const auto& p : points) {
        os << p.iterations << ',' << format_real(p.mean_sigma) << ',' << format_real(p.std_error) << ',' << p.n << ','
           << p.master_seed << ',' << to_string(p.mode) << ',' << quote(dist_spec) << '\n';
    }
}

void write_fit(std::ostream& os, const ScalingFit& fit, std::string_view dist_spec, DisorderMode mode) {
    os << kFitHeader << '\n'
       << quote(dist_spec) << ',' << to_string(mode) << ',' << format_real(exponent(fit)) << ','
       << format_real(fit.intercept) << ',' << format_real(fit.r_squared) << ',' << fit.points.size() << '\n';
}

void write_loglog(std::ostream& os, const ScalingFit& fit) {
    os << kLogLogHeader << '\n';
    for (const auto& p : fit.points) os << format_real(p.log_t) << ',' << format_real(p.log_inv_sigma) << '\n';
}

namespace {

template <class T>
T parse_number(const std::string& text, const char* column) {
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string("bad value '") + text + "' in column " + column);
    return v;
}

}  // namespace

PointsTable read_points(std::istream& is) {
    PointsTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("T,mean_sigma", 0) != 0) throw UsageError("points CSV lacks the expected header");
            header_seen = true;
            continue;
        }
        const auto f = split_line(line);
        if (f.size() != 7) throw UsageError("points CSV row has " + std::to_string(f.size()) + " fields, expected 7");
        EnsemblePoint p;
        p.iterations = parse_number<int>(f[0], "T");
        p.mean_sigma = parse_number<double>(f[1], "mean_sigma");
        p.std_error = parse_number<double>(f[2], "stderr");
        p.n = parse_number<std::size_t>(f[3], "n");
        p.master_seed = parse_number<std::uint64_t>(f[4], "master_seed");
        p.mode = parse_disorder_mode(f[5]);
        if (table.points.empty()) table.dist_spec = f[6];
        table.points.push_back(p);
    }
    if (table.points.empty()) throw UsageError("points CSV holds no rows");
    return table;
}

}  // namespace qwalk::csv
