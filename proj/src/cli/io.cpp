/*
 * Copyright 2026 The heapscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "heapscope/cli.hpp"
#include "heapscope/error.hpp"

namespace heapscope::cli::io {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x))
        return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::string provenance_line(const std::vector<std::string> &args) {
    std::string line = "# heapscope " HEAPSCOPE_VERSION ":";
    for (const auto &a : args) {
        line += ' ';
        line += a;
    }
    return line;
}

std::optional<std::size_t> CsvTable::find_column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
}

std::size_t CsvTable::column(std::string_view name) const {
    if (auto c = find_column(name))
        return *c;
    throw DataError("CSV input has no '" + std::string(name) + "' column");
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        auto field = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!field.empty() && field.front() == ' ')
            field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ')
            field.remove_suffix(1);
        fields.emplace_back(field);
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return fields;
}

} // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        auto fields = split_csv_line(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw DataError("CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header)
        throw DataError("CSV input has no header row");
    return table;
}

double parse_double(std::string_view field) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || p != field.data() + field.size())
        throw DataError("not a number: '" + std::string(field) + "'");
    return v;
}

long long parse_integer(std::string_view field) {
    long long v = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || p != field.data() + field.size())
        throw DataError("not an integer: '" + std::string(field) + "'");
    return v;
}

namespace {

std::pair<std::string_view, std::string_view> split_range(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("expected a range A:B, got '" + std::string(s) + "'");
    return {s.substr(0, colon), s.substr(colon + 1)};
}

} // namespace

std::pair<double, double> parse_real_range(std::string_view s) {
    auto [a, b] = split_range(s);
    try {
        auto lo = parse_double(a);
        auto hi = parse_double(b);
        if (!(hi > lo))
            throw std::invalid_argument("range '" + std::string(s) + "' is empty");
        return {lo, hi};
    } catch (const DataError &) {
        throw std::invalid_argument("bad range '" + std::string(s) + "'");
    }
}

std::pair<long long, long long> parse_integer_range(std::string_view s) {
    auto [a, b] = split_range(s);
    try {
        auto lo = parse_integer(a);
        auto hi = parse_integer(b);
        if (hi < lo)
            throw std::invalid_argument("range '" + std::string(s) + "' is empty");
        return {lo, hi};
    } catch (const DataError &) {
        throw std::invalid_argument("bad range '" + std::string(s) + "'");
    }
}

std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string> &inputs) {
    namespace fs = std::filesystem;
    std::vector<fs::path> paths;
    for (const auto &in : inputs) {
        fs::path p(in);
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<fs::path> found;
            for (const auto &entry : fs::directory_iterator(p, ec))
                if (entry.is_regular_file() && entry.path().extension() == ".tsv")
                    found.push_back(entry.path());
            if (ec)
                throw IoError("cannot list directory '" + in + "'");
            std::sort(found.begin(), found.end());
            paths.insert(paths.end(), found.begin(), found.end());
        } else if (fs::exists(p, ec)) {
            paths.push_back(p);
        } else {
            throw IoError("cannot open '" + in + "'");
        }
    }
    return paths;
}

void write_output(const std::optional<std::string> &path, std::string_view content,
                  std::ostream &fallback) {
    if (!path) {
        fallback << content;
        return;
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot create '" + *path + "'");
    f << content;
    if (!f.flush())
        throw IoError("error writing '" + *path + "'");
}

} // namespace heapscope::cli::io
