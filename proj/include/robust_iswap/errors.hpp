// Copyright 2026 The robust-iswap Authors.
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

namespace robust_iswap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Hamiltonian that should be Hermitian is not.
class InvalidHamiltonian : public Error {
 public:
  using Error::Error;
};

/// Dimension, channel-count or factorization mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Pulse file does not follow the schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Pulse file version is not understood by this reader.
class VersionError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

/// A numeric field in a pulse file is NaN / null / infinite.
class NanFieldError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace robust_iswap
