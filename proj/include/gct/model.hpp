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

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gct/diagram.hpp"
#include "gct/observable.hpp"
#include "gct/tensor.hpp"

namespace gct {

using GeneratorFn = std::function<Tensor(const Phase&)>;

/** Assignment of dimensions, generator tensors and observables. */
struct ModelBinding {
  std::string name;
  Semiring semiring = Semiring::kComplex;
  std::map<std::string, int> dims;
  std::map<std::string, GeneratorFn> generators;
  // Spider colours; "colour@System" takes precedence over plain "colour".
  std::map<std::string, ObservableStructure> observables;
  // Largest admissible product of wire dimensions at any evaluation stage.
  long long dimension_cap = 1LL << 20;

  int dim(const System& s) const;
  std::vector<int> dims_of(const std::vector<System>& ts) const;
  const ObservableStructure& observable(const std::string& colour,
                                        const System& carrier) const;

  void set_generator(const std::string& label, GeneratorFn fn);
  void set_generator(const std::string& label, const Tensor& t);
  /** Registers label and, when distinct, its partner as phase -> f(-phase)^dagger. */
  void set_dagger_pair(const std::string& label, const std::string& dagger_label,
                       GeneratorFn fn);
};

/** The tensor of a single node. */
Tensor node_tensor(const Node& node, const ModelBinding& m);

/**
 * Evaluates d by sweeping a frontier of open wires across the nodes in
 * topological order. seed == 0 uses the canonical order; otherwise a random
 * topological order derived from the seed.
 */
Tensor interpret(const Diagram& d, const ModelBinding& m, uint64_t seed = 0);

/**
 * Evaluates d by random recursive partition into sequential and parallel
 * pieces, with the pieces evaluated independently and then composed.
 */
Tensor interpret_partitioned(const Diagram& d, const ModelBinding& m,
                             uint64_t seed);

/** Exact comparison for boolean models, tolerance otherwise. */
bool model_equal(const Diagram& a, const Diagram& b, const ModelBinding& m,
                 EqualityMode mode = EqualityMode::kTolerance,
                 double tol = default_tolerance());

struct RuleVerdict {
  std::string rule;
  bool sound = true;
  double max_deviation = 0.0;
  std::string witness;  // empty when sound
  int samples = 0;
};

struct SoundnessReport {
  std::string model;
  std::vector<RuleVerdict> verdicts;

  bool all_sound() const;
  std::string to_string() const;
};

/**
 * Compares both sides of each rule as tensors and on `samples` random
 * closures into scalars. Unsound rules are reported, never thrown.
 */
SoundnessReport check_soundness(const std::vector<RewriteRule>& rules,
                                const ModelBinding& m, int samples = 16,
                                uint64_t seed = 1);

struct ScalarMonoid {
  Semiring semiring;
  std::string carrier;
  // Multiplication table over {0,1} for the boolean model; empty otherwise.
  std::vector<std::vector<int>> table;

  std::string to_string() const;
};

ScalarMonoid scalar_monoid(const ModelBinding& m);

}  // namespace gct
