// Copyright 2026 The simpkit Authors
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

#include "simpkit/common.hpp"

#include <cstdlib>

namespace simpkit {

std::vector<uint32_t> utf8_decode(const std::string& s) {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    uint32_t cp = c;
    std::size_t extra = 0;
    if (c >= 0xF0)
      extra = 3, cp = c & 0x07u;
    else if (c >= 0xE0)
      extra = 2, cp = c & 0x0Fu;
    else if (c >= 0xC0)
      extra = 1, cp = c & 0x1Fu;
    if (extra > 0 && i + extra < n + 1) {
      bool ok = true;
      for (std::size_t k = 1; k <= extra && ok; ++k) {
        if (i + k >= n ||
            (static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
          ok = false;
        }
      }
      if (ok) {
        for (std::size_t k = 1; k <= extra; ++k) {
          cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3Fu);
        }
        i += extra + 1;
        out.push_back(cp);
        continue;
      }
    }
    // Invalid or bare byte: decode as itself.
    out.push_back(c);
    ++i;
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n'))
    ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' ||
                   s[e - 1] == '\n'))
    --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

unsigned default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("SIMPKIT_DATA")) {
    if (*env) return env;
  }
#ifdef SIMPKIT_DATA_DIR
  return SIMPKIT_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace simpkit
