#include "l1cp/io.hpp"

#include "l1cp/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

namespace l1cp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<double> parse_row(std::string_view line, const std::string& source, std::size_t line_no) {
    std::vector<double> row;
    std::size_t col = 0;
    while (true) {
        const auto comma = line.find(',');
        const std::string_view cell = trim(line.substr(0, comma));
        ++col;
        double v = 0.0;
        // from_chars rejects a leading '+', which is otherwise valid CSV numeric text.
        const std::string_view body = cell.starts_with('+') ? cell.substr(1) : cell;
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (body.empty() || ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(v)) {
            throw ParseError(source, line_no,
                             "column " + std::to_string(col) + ": non-numeric cell '" + std::string(cell) + "'");
        }
        row.push_back(v);
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return row;
}

bool looks_like_grid(const std::vector<double>& row) {
    if (row.size() < 2 || row.front() != 0.0 || row.back() != 1.0) return false;
    for (std::size_t j = 1; j < row.size(); ++j) {
        if (!(row[j] > row[j - 1])) return false;
    }
    return true;
}

void write_double(std::ostream& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
}

}  // namespace

FunctionalSample read_curves(std::istream& in, const std::string& source, HeaderMode header) {
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> lines;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view text = trim(raw);
        if (line_no == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
        if (text.empty()) continue;
        rows.push_back(parse_row(text, source, line_no));
        lines.push_back(line_no);
        if (rows.back().size() != rows.front().size()) {
            throw ParseError(source, line_no,
                             "ragged row: " + std::to_string(rows.back().size()) + " columns, expected " +
                                 std::to_string(rows.front().size()));
        }
    }
    if (rows.empty()) throw ParseError(source, line_no, "empty file; need at least 2 curves");

    bool has_header = header == HeaderMode::Present;
    if (header == HeaderMode::Auto) has_header = rows.size() > 2 && looks_like_grid(rows.front());
    if (has_header && !looks_like_grid(rows.front())) {
        throw ParseError(source, lines.front(), "header is not a valid grid on [0,1]");
    }

    const std::size_t first = has_header ? 1 : 0;
    const std::size_t n = rows.size() - first;
    const std::size_t m = rows.front().size();
    if (n < 2) throw ParseError(source, lines.back(), "need at least 2 curves");
    if (m < 2) throw ParseError(source, lines.front(), "need at least 2 grid points per curve");

    Matrix values(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = rows[first + i];
        std::copy(r.begin(), r.end(), values.row(i).begin());
    }
    Grid grid = has_header ? Grid::from_points(rows.front()) : Grid::uniform(m);
    return FunctionalSample(std::move(values), std::move(grid));
}

FunctionalSample ingest_curves(const std::string& path, HeaderMode header) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return read_curves(in, path, header);
}

void write_curves(std::ostream& out, const FunctionalSample& sample, bool header) {
    auto write_row = [&](std::span<const double> row) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            write_double(out, row[j]);
        }
        out << '\n';
    };
    if (header) write_row(sample.grid().points());
    for (std::size_t i = 0; i < sample.n(); ++i) write_row(sample.curve(i));
}

}  // namespace l1cp
