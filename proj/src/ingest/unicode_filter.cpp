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

#include <cstdint>
#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "heapscope/ingest.hpp"

namespace heapscope::ingest {

namespace {

UScriptCode icu_script(Script s) {
    switch (s) {
    case Script::Latin:
        return USCRIPT_LATIN;
    case Script::Cyrillic:
        return USCRIPT_CYRILLIC;
    case Script::Greek:
        return USCRIPT_GREEK;
    }
    return USCRIPT_INVALID_CODE;
}

bool is_ascii_letter(UChar32 c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool script_letter(UChar32 c, Script s) {
    if (!u_isalpha(c))
        return false;
    UErrorCode err = U_ZERO_ERROR;
    UScriptCode code = uscript_getScript(c, &err);
    return U_SUCCESS(err) && code == icu_script(s);
}

} // namespace

void FilterConfig::validate() const {
    if (ascii_strict) {
        const auto *script = std::get_if<Script>(&alphabet);
        if (script == nullptr || *script != Script::Latin)
            throw std::invalid_argument("ascii_strict requires the Latin script alphabet policy");
    }
    if (const auto *set = std::get_if<CodepointSet>(&alphabet); set && set->empty())
        throw std::invalid_argument("explicit alphabet is empty");
}

std::optional<Script> parse_script(std::string_view name) {
    if (name == "latin" || name == "Latin")
        return Script::Latin;
    if (name == "cyrillic" || name == "Cyrillic")
        return Script::Cyrillic;
    if (name == "greek" || name == "Greek")
        return Script::Greek;
    return std::nullopt;
}

std::optional<std::string> normalize_token(std::string_view token, const FilterConfig &cfg) {
    if (token.empty())
        return std::nullopt;
    if (cfg.reject_tagged && token.find('_') != std::string_view::npos)
        return std::nullopt;

    std::string out;
    out.reserve(token.size());
    const auto *bytes = reinterpret_cast<const std::uint8_t *>(token.data());
    const auto length = static_cast<std::int32_t>(token.size());
    std::int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (c < 0)
            return std::nullopt;
        if (cfg.case_fold)
            c = u_foldCase(c, U_FOLD_CASE_DEFAULT);

        bool ok;
        if (cfg.ascii_strict)
            ok = is_ascii_letter(c);
        else if (const auto *script = std::get_if<Script>(&cfg.alphabet))
            ok = script_letter(c, *script);
        else
            ok = std::get<CodepointSet>(cfg.alphabet).contains(static_cast<char32_t>(c));
        if (!ok)
            return std::nullopt;

        char buf[U8_MAX_LENGTH];
        std::int32_t n = 0;
        U8_APPEND_UNSAFE(buf, n, c);
        out.append(buf, static_cast<std::size_t>(n));
    }
    return out;
}

} // namespace heapscope::ingest
