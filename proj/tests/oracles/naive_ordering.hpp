// Copyright 2026 The ncmetro Authors
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

// Reference normal ordering by string rewriting. A word is a string over
// {'a', 'd'} (d = a†); every "ad" is replaced by "da" + "" until no
// annihilator precedes a creator. Integer coefficients, no shortcuts.

#include <map>
#include <string>
#include <utility>

namespace oracle {

using Counts = std::map<std::pair<int, int>, long long>;  // (creators, annihilators) -> coefficient

inline Counts normal_order(const std::string& word) {
  static std::map<std::string, Counts> memo;
  if (auto it = memo.find(word); it != memo.end()) return it->second;
  Counts out;
  const auto pos = word.find("ad");
  if (pos == std::string::npos) {
    int d = 0;
    int a = 0;
    for (char c : word) (c == 'd' ? d : a)++;
    out[{d, a}] = 1;
  } else {
    std::string swapped = word;
    swapped[pos] = 'd';
    swapped[pos + 1] = 'a';
    std::string contracted = word;
    contracted.erase(pos, 2);
    for (const auto& [k, v] : normal_order(swapped)) out[k] += v;
    for (const auto& [k, v] : normal_order(contracted)) out[k] += v;
  }
  memo[word] = out;
  return out;
}

/// Word for the normal-ordered monomial a†^m a^n.
inline std::string word(int m, int n) { return std::string(m, 'd') + std::string(n, 'a'); }

}  // namespace oracle
