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
#include <stdexcept>
#include <string>

#include "heapscope/ingest.hpp"

namespace heapscope::ingest {

FrequencyTable::FrequencyTable(Year year, Counts counts) : year_(year), counts_(std::move(counts)) {
    for (const auto &[token, count] : counts_) {
        if (token.empty())
            throw std::invalid_argument("frequency table contains an empty token");
        if (count == 0)
            throw std::invalid_argument("frequency table count for '" + token + "' is zero");
        total_ += count;
    }
}

FrequencyTable::FrequencyTable(Year year, Counts counts, Count declared_total)
    : FrequencyTable(year, std::move(counts)) {
    if (total_ != declared_total)
        throw std::invalid_argument("declared total " + std::to_string(declared_total) +
                                    " does not match sum of counts " + std::to_string(total_));
}

Count FrequencyTable::count_of(std::string_view token) const {
    auto it = counts_.find(std::string(token));
    return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, Count>> FrequencyTable::sorted_entries() const {
    std::vector<std::pair<std::string, Count>> entries(counts_.begin(), counts_.end());
    std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    return entries;
}

} // namespace heapscope::ingest
