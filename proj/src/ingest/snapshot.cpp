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

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "heapscope/ingest.hpp"

namespace heapscope::ingest {

namespace {

template <typename T> bool parse_number(std::string_view field, T &out) {
    if (field.empty())
        return false;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc() && ptr == field.data() + field.size();
}

} // namespace

std::string write_snapshot(const FrequencyTable &table) {
    std::string out = "#year=" + std::to_string(table.year()) +
                      "\tL=" + std::to_string(table.total_tokens()) + "\n";
    for (const auto &[token, count] : table.sorted_entries()) {
        if (token.find_first_of("\t\n\r") != std::string::npos)
            throw std::invalid_argument("token contains a tab or line break");
        out += token;
        out += '\t';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

FrequencyTable read_snapshot(std::string_view bytes) {
    auto eol = bytes.find('\n');
    if (eol == std::string_view::npos)
        throw CorruptSnapshot("snapshot has no header line");
    std::string_view header = bytes.substr(0, eol);
    constexpr std::string_view year_tag = "#year=";
    constexpr std::string_view total_tag = "\tL=";
    auto tab = header.find(total_tag);
    Year year = 0;
    Count declared = 0;
    if (!header.starts_with(year_tag) || tab == std::string_view::npos ||
        !parse_number(header.substr(year_tag.size(), tab - year_tag.size()), year) ||
        !parse_number(header.substr(tab + total_tag.size()), declared))
        throw CorruptSnapshot("bad snapshot header '" + std::string(header) + "'");

    FrequencyTable::Counts counts;
    Count sum = 0;
    std::size_t row = 1;
    std::size_t pos = eol + 1;
    while (pos < bytes.size()) {
        ++row;
        auto end = bytes.find('\n', pos);
        if (end == std::string_view::npos)
            end = bytes.size();
        std::string_view line = bytes.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty())
            continue;
        auto sep = line.find('\t');
        Count count = 0;
        if (sep == 0 || sep == std::string_view::npos ||
            !parse_number(line.substr(sep + 1), count) || count == 0)
            throw CorruptSnapshot("bad snapshot row " + std::to_string(row));
        if (!counts.emplace(std::string(line.substr(0, sep)), count).second)
            throw CorruptSnapshot("duplicate token in snapshot row " + std::to_string(row));
        sum += count;
    }
    if (sum != declared)
        throw CorruptSnapshot("snapshot header L=" + std::to_string(declared) +
                              " but counts sum to " + std::to_string(sum));
    return FrequencyTable(year, std::move(counts), declared);
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("error reading '" + path.string() + "'");
    return std::move(ss).str();
}

FrequencyTable read_snapshot_file(const std::filesystem::path &path) {
    try {
        return read_snapshot(read_text_file(path));
    } catch (const CorruptSnapshot &e) {
        throw CorruptSnapshot(path.string() + ": " + e.what());
    }
}

void write_snapshot_file(const FrequencyTable &table, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot create '" + path.string() + "'");
    out << write_snapshot(table);
    if (!out.flush())
        throw IoError("error writing '" + path.string() + "'");
}

} // namespace heapscope::ingest
