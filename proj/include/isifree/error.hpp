// Copyright 2026 The isifree Authors.
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

#ifndef ISIFREE_ERROR_HPP_
#define ISIFREE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace isifree {

// Error categories surfaced by the library. The numeric values are shared
// with the extern-C status codes in isifree.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kCapacityExhausted = 2,
  kNotConverged = 3,
  kMalformedCode = 4,
  kDesync = 5,
  kIo = 6,
  kParse = 7,
  kInternal = 8,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isifree

#endif  // ISIFREE_ERROR_HPP_
