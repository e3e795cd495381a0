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

#include "cliquelab/common.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cliquelab/parallel.hpp"

namespace cliquelab {
namespace {

BigInt parse_digits(const std::string& digits, const std::string& original) {
  if (digits.empty()) throw ParameterError("malformed number '" + original + "'");
  BigInt value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParameterError("malformed number '" + original + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string text, const std::string& original) {
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    std::string exp_text = text.substr(e + 1);
    text.resize(e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      exp_negative = exp_text[0] == '-';
      exp_text.erase(0, 1);
    }
    BigInt magnitude = parse_digits(exp_text, original);
    if (magnitude > 400) throw ParameterError("exponent out of range in '" + original + "'");
    exponent = magnitude.convert_to<long>();
    if (exp_negative) exponent = -exponent;
  }
  std::string digits = text;
  if (auto dot = text.find('.'); dot != std::string::npos) {
    digits = text.substr(0, dot) + text.substr(dot + 1);
    exponent -= static_cast<long>(text.size() - dot - 1);
    if (digits.empty()) throw ParameterError("malformed number '" + original + "'");
  }
  Rational value(parse_digits(digits, original));
  if (exponent >= 0)
    value *= pow10(static_cast<unsigned>(exponent));
  else
    value /= pow10(static_cast<unsigned>(-exponent));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  if (text.empty()) throw ParameterError("empty number");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational num = parse_decimal(text.substr(0, slash), raw);
    Rational den = parse_decimal(text.substr(slash + 1), raw);
    if (den == 0) throw ParameterError("zero denominator in '" + raw + "'");
    return num / den;
  }
  return parse_decimal(text, raw);
}

Rational power(const Rational& base, unsigned exponent) {
  return Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base), exponent),
                  boost::multiprecision::pow(boost::multiprecision::denominator(base), exponent));
}

double to_double(const Rational& r) {
  return static_cast<double>(boost::multiprecision::cpp_bin_float_double(r));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double binomial_double(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  return std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                  std::lgamma(static_cast<double>(n - k) + 1));
}

namespace {
unsigned g_worker_override = 0;
}

unsigned worker_count() {
  if (g_worker_override != 0) return g_worker_override;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CLIQUELAB_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(cap, &end, 10);
    if (end != cap && value > 0) workers = std::min(workers, static_cast<unsigned>(value));
  }
  return workers;
}

void set_worker_count_override(unsigned workers) { g_worker_override = workers; }

}  // namespace cliquelab
