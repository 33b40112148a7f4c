// Copyright 2026 The topinf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPINF_ERROR_HPP
#define TOPINF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace topinf {

// Error categories surface as process exit codes / C API status codes.
enum class ErrorKind {
  Precondition = 2,  // bad input, violated precondition, config error
  Consistency = 3,   // a certificate failed independent replay
  Budget = 4,        // size budget exceeded
  Io = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::Precondition, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorKind::Consistency, what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what)
      : Error(ErrorKind::Budget, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace topinf

#endif  // TOPINF_ERROR_HPP
