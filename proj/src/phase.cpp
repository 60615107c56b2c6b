// Copyright 2026 The gct Authors
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

#include "gct/phase.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "gct/errors.hpp"

namespace gct {

double wrap_angle(double radians) {
  double a = std::fmod(radians, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (kTwoPi - a <= kPhaseWrapTolerance) a = 0.0;
  if (a <= kPhaseWrapTolerance) a = 0.0;
  return a;
}

Phase Phase::angle(double radians) {
  Phase p;
  p.angle_ = wrap_angle(radians);
  return p;
}

Phase Phase::element(std::vector<int> moduli, std::vector<int> components) {
  if (moduli.size() != components.size() || moduli.empty()) {
    throw GctError("group phase needs one component per invariant factor");
  }
  Phase p;
  for (size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) throw GctError("invariant factor must be positive");
    int c = components[i] % moduli[i];
    if (c < 0) c += moduli[i];
    components[i] = c;
  }
  p.moduli_ = std::move(moduli);
  p.components_ = std::move(components);
  return p;
}

bool Phase::is_zero() const {
  if (is_angle()) return angle_ == 0.0;
  for (int c : components_) {
    if (c != 0) return false;
  }
  return true;
}

int Phase::element_index() const {
  if (is_angle()) {
    if (is_zero()) return 0;
    throw GctError("angle phase has no element index");
  }
  int idx = 0;
  for (size_t i = 0; i < moduli_.size(); ++i) {
    idx = idx * moduli_[i] + components_[i];
  }
  return idx;
}

Phase Phase::operator+(const Phase& other) const {
  if (is_angle() && other.is_angle()) return Phase::angle(angle_ + other.angle_);
  if (is_angle() && is_zero()) return other;
  if (other.is_angle() && other.is_zero()) return *this;
  if (moduli_ != other.moduli_) {
    throw GctError("cannot add phases from different groups: " + to_string() +
                   " + " + other.to_string());
  }
  std::vector<int> c(components_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = components_[i] + other.components_[i];
  }
  return Phase::element(moduli_, std::move(c));
}

Phase Phase::operator-() const {
  if (is_angle()) return Phase::angle(-angle_);
  std::vector<int> c(components_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -components_[i];
  return Phase::element(moduli_, std::move(c));
}

bool Phase::operator==(const Phase& other) const {
  if (is_zero() && other.is_zero()) return true;
  if (is_angle() != other.is_angle()) return false;
  if (is_angle()) {
    double d = std::fabs(angle_ - other.angle_);
    return d <= kPhaseWrapTolerance || kTwoPi - d <= kPhaseWrapTolerance;
  }
  return moduli_ == other.moduli_ && components_ == other.components_;
}

std::string Phase::to_string() const {
  if (is_angle()) {
    if (angle_ == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", angle_);
    return buf;
  }
  std::ostringstream os;
  for (size_t i = 0; i < moduli_.size(); ++i) {
    if (i) os << 'x';
    os << 'z' << moduli_[i];
  }
  os << ':';
  for (size_t i = 0; i < components_.size(); ++i) {
    if (i) os << ',';
    os << components_[i];
  }
  return os.str();
}

namespace {

bool parse_int(std::string_view s, int* out) {
  if (s.empty()) return false;
  std::string tmp(s);
  char* end = nullptr;
  long v = std::strtol(tmp.c_str(), &end, 10);
  if (end != tmp.c_str() + tmp.size()) return false;
  *out = static_cast<int>(v);
  return true;
}

bool parse_double(std::string_view s, double* out) {
  if (s.empty()) return false;
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size()) return false;
  *out = v;
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Phase Phase::parse(std::string_view text) {
  auto fail = [&]() -> Phase {
    throw GctError("malformed phase '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  size_t colon = text.find(':');
  if (colon != std::string_view::npos) {
    std::vector<int> moduli;
    for (auto f : split(text.substr(0, colon), 'x')) {
      int m = 0;
      if (f.size() < 2 || f[0] != 'z' || !parse_int(f.substr(1), &m)) {
        return fail();
      }
      moduli.push_back(m);
    }
    std::vector<int> comps;
    for (auto c : split(text.substr(colon + 1), ',')) {
      int v = 0;
      if (!parse_int(c, &v)) return fail();
      comps.push_back(v);
    }
    if (comps.size() != moduli.size()) return fail();
    return Phase::element(std::move(moduli), std::move(comps));
  }
  size_t pi = text.find("pi");
  if (pi == std::string_view::npos) {
    double v = 0;
    if (!parse_double(text, &v)) return fail();
    return Phase::angle(v);
  }
  // [sign][coef]pi[/den]
  double coef = 1.0;
  std::string_view head = text.substr(0, pi);
  if (head == "-") {
    coef = -1.0;
  } else if (!head.empty() && head != "+") {
    if (!parse_double(head, &coef)) return fail();
  }
  std::string_view tail = text.substr(pi + 2);
  double den = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/' || !parse_double(tail.substr(1), &den) || den == 0.0) {
      return fail();
    }
  }
  return Phase::angle(coef * kPi / den);
}

}  // namespace gct
