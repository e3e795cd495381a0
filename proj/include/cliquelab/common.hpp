// Copyright 2026 The cliquelab Authors
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

#ifndef CLIQUELAB_COMMON_HPP_
#define CLIQUELAB_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cliquelab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An exact computation would exceed the desk-scale enumeration budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A Monte-Carlo robustness verdict straddled its threshold where the
/// caller cannot proceed on a guess.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Parses "a/b", an integer, or a finite decimal ("0.35", "1e-3") into an
/// exact rational.
Rational parse_rational(const std::string& text);

/// base^exponent, exactly.
Rational power(const Rational& base, unsigned exponent);

/// Nearest double to an exact rational.
double to_double(const Rational& r);

/// Binomial coefficient C(n, k) as an exact integer; 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) as a double; lossy beyond 2^53 but never overflows for n <= 1000.
double binomial_double(std::uint64_t n, std::uint64_t k);

constexpr std::uint64_t choose2(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

}  // namespace cliquelab

#endif  // CLIQUELAB_COMMON_HPP_
