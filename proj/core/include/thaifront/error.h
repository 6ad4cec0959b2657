// Copyright (c) 2026 The thaifront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef THAIFRONT_ERROR_H_
#define THAIFRONT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thaifront {

// Base class for every error the library raises on bad input data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A text file or string does not follow its documented grammar. `line` is
// 1-based, or 0 when the input is not line oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A value violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Reading or writing a file failed at the OS level.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace thaifront

#endif  // THAIFRONT_ERROR_H_
