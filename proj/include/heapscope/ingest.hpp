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

#ifndef HEAPSCOPE_INGEST_HPP
#define HEAPSCOPE_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "heapscope/error.hpp"

namespace heapscope::ingest {

using Count = std::uint64_t;
using Year = int;

// One line of a Google Books Ngram v2 1-gram file.
struct TokenRecord {
    std::string token;
    Year year = 0;
    Count match_count = 0;
    Count volume_count = 0;

    friend bool operator==(const TokenRecord &, const TokenRecord &) = default;
};

enum class Script { Latin, Cyrillic, Greek };

// Explicit set of accepted codepoints (after case folding).
using CodepointSet = std::set<char32_t>;

struct FilterConfig {
    bool case_fold = true;
    std::variant<Script, CodepointSet> alphabet = Script::Latin;
    // Only a-z (A-Z before folding). Requires the Latin script policy.
    bool ascii_strict = false;
    // Drop POS-tagged entries and sentinels, i.e. anything containing '_'.
    bool reject_tagged = true;

    // Throws std::invalid_argument when more than one alphabet policy is active.
    void validate() const;
};

std::optional<Script> parse_script(std::string_view name);

// Returns the normalized token, or std::nullopt when the token is rejected.
// Invalid UTF-8 is rejected.
std::optional<std::string> normalize_token(std::string_view token, const FilterConfig &cfg);

// Returns std::nullopt for blank lines. A trailing CR is stripped.
// Throws MalformedLine on wrong field count, non-numeric counts, an empty token,
// or counts violating match_count >= volume_count >= 1.
std::optional<TokenRecord> parse_ngram_line(std::string_view line, std::size_t line_number = 0);

class FrequencyTable {
  public:
    using Counts = std::unordered_map<std::string, Count>;

    FrequencyTable() = default;
    FrequencyTable(Year year, Counts counts);
    // Also checks that the declared total matches the sum of counts.
    FrequencyTable(Year year, Counts counts, Count declared_total);

    Year year() const noexcept { return year_; }
    const Counts &counts() const noexcept { return counts_; }
    Count total_tokens() const noexcept { return total_; }
    std::size_t distinct_tokens() const noexcept { return counts_.size(); }
    bool empty() const noexcept { return counts_.empty(); }

    Count count_of(std::string_view token) const;

    // (token, count) pairs in snapshot order: descending count, then ascending bytes.
    std::vector<std::pair<std::string, Count>> sorted_entries() const;

    friend bool operator==(const FrequencyTable &, const FrequencyTable &) = default;

  private:
    Year year_ = 0;
    Counts counts_;
    Count total_ = 0;
};

struct YearTotals {
    Count match_count = 0;
    Count page_count = 0;
    Count volume_count = 0;

    friend bool operator==(const YearTotals &, const YearTotals &) = default;
};

using TotalCounts = std::map<Year, YearTotals>;

// Whitespace-separated "year,match_count,page_count,volume_count" records.
// Throws MalformedRecord on bad syntax or a duplicate year.
TotalCounts load_totalcounts(std::string_view text);

enum class MalformedPolicy { SkipAndCount, Abort };

struct IngestStats {
    std::size_t lines_read = 0;
    std::size_t blank = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t malformed = 0;
    // First few malformed line descriptions, for the report.
    std::vector<std::string> malformed_examples;

    IngestStats &operator+=(const IngestStats &other);
};

// Accumulates per-year counts from a stream of records. Builders over disjoint
// shards can be merged; merging is commutative count addition.
class TableBuilder {
  public:
    explicit TableBuilder(FilterConfig cfg);

    // Returns false when the token was rejected by the filter.
    bool add(const TokenRecord &record);
    void merge(TableBuilder &&other);

    const FilterConfig &config() const noexcept { return cfg_; }
    std::map<Year, FrequencyTable> finish() &&;

  private:
    FilterConfig cfg_;
    std::map<Year, FrequencyTable::Counts> years_;
};

// Parses 1-gram lines from `in` into `builder`, updating `stats`. Under
// MalformedPolicy::Abort the first malformed line throws MalformedLine.
void ingest_lines(std::istream &in, TableBuilder &builder, IngestStats &stats,
                  MalformedPolicy policy);

std::map<Year, FrequencyTable> build_year_tables(const std::vector<TokenRecord> &records,
                                                 const FilterConfig &cfg);

// Line source over a plain or gzip-compressed file (detected by magic bytes).
class LineReader {
  public:
    explicit LineReader(const std::filesystem::path &path);
    ~LineReader();
    LineReader(const LineReader &) = delete;
    LineReader &operator=(const LineReader &) = delete;

    bool gzipped() const noexcept { return gzipped_; }
    // Reads the next line without its terminating LF. Returns false at EOF.
    bool next(std::string &line);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    bool gzipped_ = false;
};

void ingest_file(const std::filesystem::path &path, TableBuilder &builder, IngestStats &stats,
                 MalformedPolicy policy);

std::string write_snapshot(const FrequencyTable &table);
// Throws CorruptSnapshot on a bad header, bad rows, duplicates, or a total mismatch.
FrequencyTable read_snapshot(std::string_view bytes);

FrequencyTable read_snapshot_file(const std::filesystem::path &path);
void write_snapshot_file(const FrequencyTable &table, const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);

} // namespace heapscope::ingest

#endif // HEAPSCOPE_INGEST_HPP
