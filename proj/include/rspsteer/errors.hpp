// Copyright 2026 The rspsteer Authors
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

namespace rspsteer {

// Root of every error the library throws. Callers that only care about
// "something in rspsteer failed" catch this; the subclasses name the
// precondition that was violated.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class ZeroTrace : public Error {
 public:
  using Error::Error;
};

class NotAState : public Error {
 public:
  using Error::Error;
};

class NotUnitVector : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class IncompleteSettings : public Error {
 public:
  using Error::Error;
};

class InconsistentSextet : public Error {
 public:
  using Error::Error;
};

class SameBasis : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A sweep's monotonicity post-check failed.
class PostCheckViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rspsteer
