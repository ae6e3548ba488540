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

#ifndef HEAPSCOPE_ERROR_HPP
#define HEAPSCOPE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heapscope {

// Arguments outside a function's mathematical domain (p outside (0,1], L < 0,
// trials < 2, ...). The CLI maps these to its usage/validation exit code.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Base class for problems with the data being processed: malformed input,
// empty selections, fits that cannot be carried out.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class MalformedLine : public DataError {
  public:
    MalformedLine(std::size_t line_number, const std::string &what)
        : DataError("line " + std::to_string(line_number) + ": " + what), line_(line_number) {}

    std::size_t line_number() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class MalformedRecord : public DataError {
  public:
    using DataError::DataError;
};

class CorruptSnapshot : public DataError {
  public:
    using DataError::DataError;
};

class EmptyRange : public DataError {
  public:
    using DataError::DataError;
};

class EmptyTable : public DataError {
  public:
    using DataError::DataError;
};

class InsufficientData : public DataError {
  public:
    using DataError::DataError;
};

class InsufficientPoints : public DataError {
  public:
    using DataError::DataError;
};

class NonPositiveValue : public DataError {
  public:
    using DataError::DataError;
};

} // namespace heapscope

#endif // HEAPSCOPE_ERROR_HPP
