// Copyright 2026 The tangle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tangle {

/// Base class for every error raised by the library. Each subclass maps to a
/// fixed process exit code in the command line tool.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept {
        return 1;
    }
};

/// Malformed or inconsistent configuration (flags, config files).
class ConfigError : public Error {
   public:
    using Error::Error;
    int exit_code() const noexcept override {
        return 2;
    }
};

/// Violated precondition of a library operation (out-of-range ids, T < 1, ...).
class DomainError : public Error {
   public:
    using Error::Error;
    int exit_code() const noexcept override {
        return 3;
    }
};

/// A configured size cap was exceeded (enumeration cap, qubit cap).
class SizeError : public Error {
   public:
    using Error::Error;
    int exit_code() const noexcept override {
        return 4;
    }
};

/// External MAX-SAT solver missing, failed, or produced unusable output.
class ExternalSolverError : public Error {
   public:
    using Error::Error;
    int exit_code() const noexcept override {
        return 5;
    }
};

/// File could not be read or parsed. Carries the offending line when known.
class ParseError : public Error {
   public:
    ParseError(const std::string &message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {
    }
    int line() const noexcept {
        return line_;
    }

   private:
    int line_;
};

/// Self-check failure inside the compiler. Never expected; indicates a bug.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace tangle
