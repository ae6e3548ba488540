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

#ifndef HEAPSCOPE_CLI_HPP
#define HEAPSCOPE_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heapscope::cli {

// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kIoError = 3,
};

// Runs one subcommand. argv[0] is the program name. Normal output goes to
// `out` unless --output names a file; diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// Helpers shared by the subcommands; exposed for tests.
namespace io {

// 12 significant digits.
std::string format_number(double x);
// Value rounded to 12 significant digits, for JSON output.
double round12(double x);

std::string provenance_line(const std::vector<std::string> &args);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Throws DataError when the column is missing.
    std::size_t column(std::string_view name) const;
    std::optional<std::size_t> find_column(std::string_view name) const;
};

// Lines starting with '#' are comments; the first other line is the header.
CsvTable parse_csv(std::string_view text);

double parse_double(std::string_view field);
long long parse_integer(std::string_view field);

// "A:B" pairs, e.g. --years 1800:2000 or --lrange 1e3:1e10.
std::pair<double, double> parse_real_range(std::string_view s);
std::pair<long long, long long> parse_integer_range(std::string_view s);

// Expands directories into their *.tsv files (sorted); keeps plain files.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string> &inputs);

void write_output(const std::optional<std::string> &path, std::string_view content,
                  std::ostream &fallback);

} // namespace io

} // namespace heapscope::cli

#endif // HEAPSCOPE_CLI_HPP
