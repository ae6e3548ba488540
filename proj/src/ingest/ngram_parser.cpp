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
#include <string>
#include <system_error>

#include "heapscope/ingest.hpp"

namespace heapscope::ingest {

namespace {

constexpr std::size_t kMaxMalformedExamples = 10;

template <typename T> bool parse_number(std::string_view field, T &out) {
    if (field.empty())
        return false;
    const char *first = field.data();
    const char *last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// Splits on `sep` into at most `max_fields + 1` views; the caller checks the count.
std::vector<std::string_view> split(std::string_view s, char sep, std::size_t max_fields) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (fields.size() <= max_fields) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(s.substr(start));
            break;
        }
        fields.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

template <typename NextLine>
void ingest_source(NextLine &&next_line, TableBuilder &builder, IngestStats &stats,
                   MalformedPolicy policy) {
    std::string line;
    std::size_t line_number = 0;
    while (next_line(line)) {
        ++line_number;
        ++stats.lines_read;
        std::optional<TokenRecord> record;
        try {
            record = parse_ngram_line(line, line_number);
        } catch (const MalformedLine &e) {
            if (policy == MalformedPolicy::Abort)
                throw;
            ++stats.malformed;
            if (stats.malformed_examples.size() < kMaxMalformedExamples)
                stats.malformed_examples.emplace_back(e.what());
            continue;
        }
        if (!record) {
            ++stats.blank;
            continue;
        }
        if (builder.add(*record))
            ++stats.accepted;
        else
            ++stats.rejected;
    }
}

} // namespace

std::optional<TokenRecord> parse_ngram_line(std::string_view line, std::size_t line_number) {
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    if (line.empty())
        return std::nullopt;

    auto fields = split(line, '\t', 4);
    if (fields.size() != 4)
        throw MalformedLine(line_number, "expected 4 tab-separated fields, got " +
                                             (fields.size() > 4 ? std::string("more")
                                                                : std::to_string(fields.size())));
    TokenRecord rec;
    rec.token = std::string(fields[0]);
    if (rec.token.empty())
        throw MalformedLine(line_number, "empty token");
    if (!parse_number(fields[1], rec.year))
        throw MalformedLine(line_number, "non-numeric year '" + std::string(fields[1]) + "'");
    if (!parse_number(fields[2], rec.match_count))
        throw MalformedLine(line_number, "non-numeric match_count '" + std::string(fields[2]) + "'");
    if (!parse_number(fields[3], rec.volume_count))
        throw MalformedLine(line_number, "non-numeric volume_count '" + std::string(fields[3]) + "'");
    if (rec.volume_count < 1 || rec.match_count < rec.volume_count)
        throw MalformedLine(line_number, "counts violate match_count >= volume_count >= 1");
    return rec;
}

TotalCounts load_totalcounts(std::string_view text) {
    TotalCounts totals;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i]))
            ++i;
        if (i == text.size())
            break;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j]))
            ++j;
        std::string_view item = text.substr(i, j - i);
        i = j;

        auto fields = split(item, ',', 4);
        Year year = 0;
        YearTotals t;
        if (fields.size() != 4 || !parse_number(fields[0], year) ||
            !parse_number(fields[1], t.match_count) || !parse_number(fields[2], t.page_count) ||
            !parse_number(fields[3], t.volume_count))
            throw MalformedRecord("bad totalcounts record '" + std::string(item) + "'");
        if (!totals.emplace(year, t).second)
            throw MalformedRecord("duplicate year " + std::to_string(year) + " in totalcounts");
    }
    return totals;
}

IngestStats &IngestStats::operator+=(const IngestStats &other) {
    lines_read += other.lines_read;
    blank += other.blank;
    accepted += other.accepted;
    rejected += other.rejected;
    malformed += other.malformed;
    for (const auto &m : other.malformed_examples) {
        if (malformed_examples.size() >= kMaxMalformedExamples)
            break;
        malformed_examples.push_back(m);
    }
    return *this;
}

TableBuilder::TableBuilder(FilterConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

bool TableBuilder::add(const TokenRecord &record) {
    auto token = normalize_token(record.token, cfg_);
    if (!token)
        return false;
    years_[record.year][std::move(*token)] += record.match_count;
    return true;
}

void TableBuilder::merge(TableBuilder &&other) {
    for (auto &[year, counts] : other.years_) {
        auto &mine = years_[year];
        if (mine.empty()) {
            mine = std::move(counts);
            continue;
        }
        for (auto &[token, count] : counts)
            mine[token] += count;
    }
    other.years_.clear();
}

std::map<Year, FrequencyTable> TableBuilder::finish() && {
    std::map<Year, FrequencyTable> tables;
    for (auto &[year, counts] : years_)
        tables.emplace(year, FrequencyTable(year, std::move(counts)));
    years_.clear();
    return tables;
}

void ingest_lines(std::istream &in, TableBuilder &builder, IngestStats &stats,
                  MalformedPolicy policy) {
    ingest_source([&in](std::string &line) { return static_cast<bool>(std::getline(in, line)); },
                  builder, stats, policy);
}

void ingest_file(const std::filesystem::path &path, TableBuilder &builder, IngestStats &stats,
                 MalformedPolicy policy) {
    LineReader reader(path);
    ingest_source([&reader](std::string &line) { return reader.next(line); }, builder, stats,
                  policy);
}

std::map<Year, FrequencyTable> build_year_tables(const std::vector<TokenRecord> &records,
                                                 const FilterConfig &cfg) {
    TableBuilder builder(cfg);
    for (const auto &r : records)
        builder.add(r);
    return std::move(builder).finish();
}

} // namespace heapscope::ingest
