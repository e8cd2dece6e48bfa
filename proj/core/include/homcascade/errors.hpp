// Copyright 2026 The homcascade Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace homcascade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied input (parameters, sectors, occupations).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidSectorError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidStateError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SectorMismatchError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Operators that lower excitation number have no action on the vacuum.
class EmptySectorError : public InvalidSectorError {
 public:
  using InvalidSectorError::InvalidSectorError;
};

/// Numerical failure: norm growth during no-jump propagation, click
/// probability per step above one, trace drift in the master equation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IntegratorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Collapse requested for a detector whose click rate is zero.
class ImpossibleJumpError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Summary requested over an ensemble with no completed trajectories.
class DegenerateSummaryError : public Error {
 public:
  using Error::Error;
};

}  // namespace homcascade
