#include <charconv>
#include <string>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

namespace qwalk::cli {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError("grid '" + std::string(whole) + "': '" + std::string(text) + "' is not an integer");
    return v;
}

constexpr std::size_t kMaxGridPoints = 100000;

}  // namespace

std::vector<int> parse_grid(std::string_view text) {
    if (text.empty()) throw UsageError("grid is empty");
    std::vector<int> grid;

    const std::size_t c1 = text.find(':');
    if (c1 == std::string_view::npos) {
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = text.find(',', pos);
            grid.push_back(parse_int(text.substr(pos, comma == text.npos ? text.npos : comma - pos), text));
            if (comma == text.npos) break;
            pos = comma + 1;
        }
    } else {
        const std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || c2 + 2 > text.size())
            throw UsageError("grid '" + std::string(text) + "': expected start:stop:x<factor> or start:stop:+<step>");
        const int start = parse_int(text.substr(0, c1), text);
        const int stop = parse_int(text.substr(c1 + 1, c2 - c1 - 1), text);
        const char kind = text[c2 + 1];
        const int by = parse_int(text.substr(c2 + 2), text);
        if (start < 1 || stop < start) throw UsageError("grid '" + std::string(text) + "': need 1 <= start <= stop");
        if (kind == 'x') {
            if (by < 2) throw UsageError("grid '" + std::string(text) + "': factor must be >= 2");
            for (long t = start; t <= stop; t *= by) grid.push_back(static_cast<int>(t));
        } else if (kind == '+') {
            if (by < 1) throw UsageError("grid '" + std::string(text) + "': step must be >= 1");
            for (long t = start; t <= stop; t += by) {
                grid.push_back(static_cast<int>(t));
                if (grid.size() > kMaxGridPoints) throw UsageError("grid has too many points");
            }
        } else {
            throw UsageError("grid '" + std::string(text) + "': step must start with 'x' or '+'");
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1) throw UsageError("grid values must be >= 1");
        if (i > 0 && grid[i] <= grid[i - 1]) throw UsageError("grid must be strictly increasing");
    }
    return grid;
}

std::string grid_to_string(std::span<const int> grid) {
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(grid[i]);
    }
    return out;
}

}  // namespace qwalk::cli
