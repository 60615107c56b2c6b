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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gct/algebra.hpp"
#include "gct/cpm.hpp"
#include "gct/diagram.hpp"
#include "gct/phase.hpp"

namespace gct {

/** The n-output spider of one colour; n >= 2 or PreconditionError. */
Diagram ghz_state(const System& system, int n,
                  const std::string& colour = "white");

/**
 * How the gray classical points of a pair label measurement outcomes. Every
 * gray point must be proportional to a white phase state; those phases form
 * a group and each point gets its element as a label in Z_{moduli...}.
 */
struct OutcomeLabels {
  std::vector<Tensor> points;  // gray classical points, indexed by label
  std::vector<Phase> phases;   // the white phase each point is a multiple of
  std::vector<int> moduli;

  int size() const { return static_cast<int>(points.size()); }
};

/** Throws PreconditionError when some gray point is not a white phase. */
OutcomeLabels outcome_labels(const ObservablePair& pair,
                             double tol = default_tolerance());

/** Joint outcome statistics of gray measurements after white phases. */
struct GhzCorrelation {
  std::vector<Phase> angles;
  std::vector<int> outcome_moduli;
  // Indexed by outcome strings, first system most significant. For boolean
  // models the entries are 1 on possible outcomes and 0 elsewhere.
  BornVector joint;
  bool possibilistic = false;

  int systems() const { return static_cast<int>(angles.size()); }
  int outcomes_per_system() const;
  std::vector<int> outcome(int index) const;
  /** Indices with probability above tol. */
  std::vector<int> support(double tol = 1e-12) const;
  /** Pushforward along the group sum, clamped to 0/1 when possibilistic. */
  BornVector parity() const;
  /** The parity when it is certain; nullopt otherwise. */
  std::optional<int> definite_parity(double tol = 1e-9) const;
  std::string to_string() const;
};

/**
 * Measures the GHZ state of the pair's white observable with the phased
 * measurement m^{alpha_k} on system k. Each amplitude is obtained by fusing
 * the GHZ spider, the phases, and the outcome effects into one scalar
 * spider. Requires a strongly complementary pair; throws ShapeMismatchError
 * for fewer than two angles and DimensionLimitError past 4096 outcomes.
 */
GhzCorrelation ghz_correlations(const ObservablePair& pair,
                                const std::vector<Phase>& angles,
                                double tol = default_tolerance());

/**
 * The same distribution by the Born rule on explicit state vectors: complex
 * pairs with angle phases only.
 */
BornVector born_rule_correlations(const ObservablePair& pair,
                                  const std::vector<double>& angles);

/**
 * Pushforward of a joint distribution over G^systems along the group sum,
 * G = Z_{m1} x ... with mixed-radix outcome indices.
 */
BornVector parity(const BornVector& joint, const std::vector<int>& moduli,
                  int systems);

/** One definite outcome in Z_m for every (system, local setting). */
struct HiddenState {
  std::vector<std::string> local_settings;  // per system, sorted labels
  std::vector<std::vector<int>> outcomes;   // parallel to local_settings

  int outcome(int system, char setting) const;
  /** Group sum of the outcomes selected by a joint setting such as "XYY". */
  int parity(const std::string& setting, int modulus) const;
  /** "X:0 Y:1 | X:1 Y:1 | ..." */
  std::string to_string() const;
};

struct LhvReport {
  std::vector<std::string> settings;
  std::map<std::string, int> constraints;
  int modulus = 2;
  long long total = 0;
  long long satisfying = 0;
  std::vector<HiddenState> witnesses;

  bool feasible() const { return satisfying > 0; }
  std::string to_string() const;
};

/**
 * Enumerates every hidden state for the joint settings and keeps those whose
 * parities meet all constraints. All settings share one length (systems);
 * at most 3 systems and 3 local settings each, else DimensionLimitError.
 * Constraints on settings not listed throw PreconditionError.
 */
LhvReport lhv_search(const std::vector<std::string>& settings,
                     const std::map<std::string, int>& constraints,
                     int modulus = 2, int witness_limit = 4);

/** Per-setting distributions for one pair. */
struct CorrelationTable {
  std::vector<std::string> settings;
  std::vector<GhzCorrelation> rows;

  std::string to_string() const;
};

/** Settings are strings over the keys of `local`, one character per system. */
CorrelationTable correlation_table(const ObservablePair& pair,
                                   const std::vector<std::string>& settings,
                                   const std::map<char, Phase>& local,
                                   double tol = default_tolerance());

struct MerminReport {
  Phase x_phase;
  Phase y_phase;
  CorrelationTable table;
  std::vector<std::optional<int>> parities;  // parallel to table.settings
  LhvReport lhv;
  LawReport exponent;
  bool contradiction = false;
  std::vector<std::string> narrative;

  std::string to_string() const;
};

/**
 * Runs the three-party XXX/XYY/YXY/YYX experiment. X is the zero phase; Y is
 * pi/2 for angle phases, otherwise the first tabled white phase that is not
 * an outcome label. Settings with uncertain parity add no constraint.
 */
MerminReport mermin_report(const ObservablePair& pair,
                           double tol = default_tolerance());

}  // namespace gct
