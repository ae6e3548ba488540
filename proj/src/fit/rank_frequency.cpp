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
#include <stdexcept>

#include "heapscope/fit.hpp"

namespace heapscope::fit {

RankFrequency::RankFrequency(std::vector<std::uint64_t> counts, std::vector<std::string> tokens)
    : counts_(std::move(counts)), tokens_(std::move(tokens)) {
    if (!tokens_.empty() && tokens_.size() != counts_.size())
        throw std::invalid_argument("rank-frequency tokens and counts differ in length");
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] == 0)
            throw std::invalid_argument("rank-frequency count at rank " + std::to_string(i + 1) +
                                        " is zero");
        if (i > 0 && counts_[i] > counts_[i - 1])
            throw std::invalid_argument("rank-frequency counts increase at rank " +
                                        std::to_string(i + 1));
        total_ += counts_[i];
    }
}

RankFrequency rank_table(const ingest::FrequencyTable &table) {
    if (table.empty())
        throw EmptyTable("cannot rank an empty frequency table");
    auto entries = table.sorted_entries();
    std::vector<std::uint64_t> counts;
    std::vector<std::string> tokens;
    counts.reserve(entries.size());
    tokens.reserve(entries.size());
    for (auto &[token, count] : entries) {
        tokens.push_back(std::move(token));
        counts.push_back(count);
    }
    return RankFrequency(std::move(counts), std::move(tokens));
}

RankFrequency parse_rank_tsv(std::string_view text) {
    std::vector<std::uint64_t> counts;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        auto tab = line.find('\t');
        std::size_t rank = 0;
        std::uint64_t count = 0;
        auto parse = [](std::string_view f, auto &out) {
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
            return !f.empty() && ec == std::errc() && p == f.data() + f.size();
        };
        if (tab == std::string_view::npos || !parse(line.substr(0, tab), rank) ||
            !parse(line.substr(tab + 1), count))
            throw MalformedRecord("rank table line " + std::to_string(line_no) +
                                  ": expected 'rank<TAB>count'");
        if (rank != counts.size() + 1)
            throw MalformedRecord("rank table line " + std::to_string(line_no) +
                                  ": ranks must be contiguous from 1");
        if (count == 0 || (!counts.empty() && count > counts.back()))
            throw MalformedRecord("rank table line " + std::to_string(line_no) +
                                  ": counts must be positive and non-increasing");
        counts.push_back(count);
    }
    return RankFrequency(std::move(counts));
}

} // namespace heapscope::fit
