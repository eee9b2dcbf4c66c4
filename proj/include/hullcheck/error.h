/*
 * Copyright (C) 2026 The hullcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HULLCHECK_ERROR_H_
#define HULLCHECK_ERROR_H_

#include <stdexcept>
#include <string>

namespace hullcheck {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  kOk = 0,
  kBoundsViolation = 1,
  kUsage = 2,
  kFormat = 3,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual ExitCode exit_code() const { return ExitCode::kUsage; }
};

// Caller broke a precondition (dimension mismatch, bad flag, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Requested dimension exceeds what the geometry kernel supports.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A raw data point cannot be mapped into region coordinates. Callers fall
// back to full checking.
class RegionInputError : public Error {
 public:
  using Error::Error;
};

// Malformed or incompatible file contents (KB, trace, ledger, inputs).
class FormatError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kFormat; }
};

// KB written by an incompatible format version.
class MigrationError : public FormatError {
 public:
  using FormatError::FormatError;
};

// CheckLang syntax or static-semantics error with a source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hullcheck

#endif  // HULLCHECK_ERROR_H_
