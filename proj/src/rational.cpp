// Copyright 2026 The lipfree authors.
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

#include "lipfree/rational.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "lipfree/errors.hpp"

namespace lipfree {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw LipfreeError(Err::ParseError, "empty rational literal");
  std::size_t slash = s.find('/');
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) {
    throw LipfreeError(Err::ParseError,
                       "expected \"p\" or \"p/q\" with integer p, q; got \"" + text + "\"");
  }
  Int n(num), d(den);
  if (d == 0) throw LipfreeError(Err::ParseError, "zero denominator in \"" + text + "\"");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rational_to_decimal(const Rat& value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value.get_d());
  return buf;
}

double rational_to_double(const Rat& value) { return value.get_d(); }

Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

int rat_sign(const Rat& value) { return sgn(value); }

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Rat cross_polytope_volume_product(int n) {
  Int four_pow = 1;
  for (int i = 0; i < n; ++i) four_pow *= 4;
  Rat r(four_pow, factorial(n));
  r.canonicalize();
  return r;
}

std::string format_vector(const std::vector<Rat>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << rational_to_string(v[i]);
  }
  os << "]";
  return os.str();
}

const char* err_name(Err e) {
  switch (e) {
    case Err::EmptyInput: return "EmptyInput";
    case Err::NotFullDimensional: return "NotFullDimensional";
    case Err::OriginNotInterior: return "OriginNotInterior";
    case Err::Unbounded: return "Unbounded";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::TooFewGenerators: return "TooFewGenerators";
    case Err::PointNotOnBoundary: return "PointNotOnBoundary";
    case Err::NotAMetric: return "NotAMetric";
    case Err::Disconnected: return "Disconnected";
    case Err::DimensionTooSmall: return "DimensionTooSmall";
    case Err::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Err::InvalidConfig: return "InvalidConfig";
    case Err::ParseError: return "ParseError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::NotSquare: os << "distance matrix is not square"; break;
    case Kind::Asymmetric: os << "d[" << i << "][" << j << "] != d[" << j << "][" << i << "]"; break;
    case Kind::NonzeroDiagonal: os << "d[" << i << "][" << i << "] != 0"; break;
    case Kind::NonPositive: os << "d[" << i << "][" << j << "] <= 0 for distinct points"; break;
    case Kind::Triangle:
      os << "triangle (" << i << "," << j << "," << k << "): d[" << i << "][" << j << "] > d["
         << i << "][" << k << "] + d[" << k << "][" << j << "]";
      break;
  }
  return os.str();
}

}  // namespace lipfree
