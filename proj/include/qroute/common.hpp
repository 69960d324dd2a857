// Copyright 2026 The qroute Authors
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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qroute {

/// Smallest b with 2^b >= n. ceil_log2(1) == 0.
constexpr std::size_t ceil_log2(std::uint64_t n) {
    if (n <= 1) {
        return 0;
    }
    return static_cast<std::size_t>(std::bit_width(n - 1));
}

constexpr bool is_power_of_two(std::uint64_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

template <typename... Args>
std::string cat(Args &&...args) {
    std::ostringstream out;
    (out << ... << std::forward<Args>(args));
    return out.str();
}

template <typename... Args>
[[noreturn]] void fail(Args &&...args) {
    throw std::invalid_argument(cat(std::forward<Args>(args)...));
}

}  // namespace qroute
