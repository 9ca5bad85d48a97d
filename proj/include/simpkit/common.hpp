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

#ifndef SIMPKIT_COMMON_HPP_
#define SIMPKIT_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace simpkit {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input: bracketed trees, pattern expressions.
// Messages carry a position (line or character offset).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Corrupt or inconsistent data files (corpora, lexicons, n-gram tables).
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Violated value-level preconditions (zero words, negative ratio, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// ASCII-only case folding; bytes outside ASCII pass through untouched so
// UTF-8 sequences stay intact.
inline char fold_char(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string fold(const std::string& s) {
  std::string out(s);
  for (char& c : out) c = fold_char(c);
  return out;
}

inline bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_alnum(char c) {
  return is_ascii_alpha(c) || is_ascii_digit(c);
}

// Bytes >= 0x80 are treated as word characters: without Unicode tables this
// keeps multibyte letters inside tokens instead of shredding them.
inline bool is_word_char(unsigned char c) {
  return c >= 0x80 || is_ascii_alnum(static_cast<char>(c));
}

// Number of UTF-8 code points (continuation bytes are not counted).
inline std::size_t utf8_length(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

// Decodes a UTF-8 string into code points. Invalid bytes decode as
// themselves, so the function is total.
std::vector<uint32_t> utf8_decode(const std::string& s);

std::string trim(const std::string& s);

std::vector<std::string> split(const std::string& s, char sep);

// Runs fn(i) for i in [0, n). jobs <= 1 runs inline. Caller indexes results
// by i, which keeps output order independent of scheduling. The first
// exception a worker throws is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (jobs > n) jobs = static_cast<unsigned>(n);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  std::mutex err_mutex;
  std::exception_ptr err;
  std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn, &err_mutex, &err]() {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (err) std::rethrow_exception(err);
}

unsigned default_jobs();

// Data directory holding the feature catalog, readability constants and the
// syntactic pattern library. The compiled-in default points at the source
// tree; override with --data-dir or SIMPKIT_DATA.
std::string default_data_dir();

}  // namespace simpkit

#endif  // SIMPKIT_COMMON_HPP_
