// Copyright 2026 The qsynergy Authors
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

#ifndef QSYNERGY_ERRORS_H
#define QSYNERGY_ERRORS_H

#include <stdexcept>
#include <string>

namespace qsynergy {

/// Failure to read or write a file. Invalid arguments use std::invalid_argument.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation produced a non-finite or otherwise unusable number.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsynergy

#endif
