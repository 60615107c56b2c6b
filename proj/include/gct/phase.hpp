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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gct {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kPhaseWrapTolerance = 1e-12;

/**
 * A spider or gate decoration.
 *
 * Either an angle in [0, 2pi), or an element of a finite abelian group
 * Z_{n1} x ... x Z_{nk} given by its invariant factors. The zero angle
 * doubles as the identity of every finite group so that undecorated
 * spiders can be fused with decorated ones.
 */
class Phase {
 public:
  Phase() = default;

  static Phase angle(double radians);
  static Phase element(std::vector<int> moduli, std::vector<int> components);

  bool is_angle() const { return moduli_.empty(); }
  bool is_zero() const;
  double radians() const { return angle_; }
  const std::vector<int>& moduli() const { return moduli_; }
  const std::vector<int>& components() const { return components_; }

  /** Mixed-radix index of a group element (first factor most significant). */
  int element_index() const;

  Phase operator+(const Phase& other) const;
  Phase operator-() const;
  Phase operator-(const Phase& other) const { return *this + (-other); }
  bool operator==(const Phase& other) const;
  bool operator!=(const Phase& other) const { return !(*this == other); }

  /** Canonical text: "%.17g" radians, or "z4:1", "z2xz2:1,0". */
  std::string to_string() const;
  /** Also accepts "pi", "pi/2", "-pi/4", "3pi/2" for angles. */
  static Phase parse(std::string_view text);

 private:
  double angle_ = 0.0;
  std::vector<int> moduli_;
  std::vector<int> components_;
};

/** Maps a real angle into [0, 2pi), snapping values within tolerance of 2pi. */
double wrap_angle(double radians);

}  // namespace gct
