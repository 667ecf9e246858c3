// Copyright 2026 The hlav Authors
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

namespace hlav {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An index or query point lies outside the represented range.
class OutOfRangeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A requested shift set or tuple is malformed (odd, duplicate, unsorted).
class InvalidTupleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Requested feature is outside the supported range (e.g. k > 2 averages).
class UnsupportedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The operation would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure. The message always carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

// A persisted file is structurally invalid.
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

class CorruptMagicError : public FormatError {
 public:
  using FormatError::FormatError;
};

class VersionMismatchError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ChecksumMismatchError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncationError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace hlav
