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

#include <array>
#include <cstdio>
#include <cstring>

#include <zlib.h>

#include "heapscope/ingest.hpp"

namespace heapscope::ingest {

struct LineReader::Impl {
    gzFile file = nullptr;
    std::string path;
    std::array<char, 1 << 16> buf{};
    std::size_t pos = 0;
    std::size_t len = 0;
    bool eof = false;

    bool fill() {
        int n = gzread(file, buf.data(), static_cast<unsigned>(buf.size()));
        if (n < 0) {
            int errnum = 0;
            const char *msg = gzerror(file, &errnum);
            throw IoError("error reading '" + path + "': " + (msg ? msg : "unknown"));
        }
        pos = 0;
        len = static_cast<std::size_t>(n);
        if (n == 0)
            eof = true;
        return n > 0;
    }
};

LineReader::LineReader(const std::filesystem::path &path) : impl_(std::make_unique<Impl>()) {
    impl_->path = path.string();
    // gzread passes non-gzip input through unchanged; the magic check only
    // records which case applied.
    if (FILE *f = std::fopen(impl_->path.c_str(), "rb")) {
        unsigned char magic[2] = {0, 0};
        gzipped_ = std::fread(magic, 1, 2, f) == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
        std::fclose(f);
    } else {
        throw IoError("cannot open '" + impl_->path + "'");
    }
    impl_->file = gzopen(impl_->path.c_str(), "rb");
    if (impl_->file == nullptr)
        throw IoError("cannot open '" + impl_->path + "'");
    gzbuffer(impl_->file, 1 << 17);
}

LineReader::~LineReader() {
    if (impl_ && impl_->file)
        gzclose(impl_->file);
}

bool LineReader::next(std::string &line) {
    line.clear();
    auto &s = *impl_;
    bool any = false;
    for (;;) {
        if (s.pos == s.len && (s.eof || !s.fill()))
            return any;
        any = true;
        const char *start = s.buf.data() + s.pos;
        const char *end = s.buf.data() + s.len;
        const char *nl = static_cast<const char *>(std::memchr(start, '\n', end - start));
        if (nl != nullptr) {
            line.append(start, nl);
            s.pos += static_cast<std::size_t>(nl - start) + 1;
            return true;
        }
        line.append(start, end);
        s.pos = s.len;
    }
}

} // namespace heapscope::ingest
