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
#include <vector>

#include "gct/diagram.hpp"
#include "gct/model.hpp"

namespace gct {

struct GeneratorDecl {
  std::string name;
  std::vector<System> inputs;
  std::vector<System> outputs;
  bool phased = false;
  std::string dagger_partner;  // empty: no dagger
};

struct Signature {
  std::string name;
  std::vector<System> systems;
  std::vector<GeneratorDecl> generators;
  std::vector<std::string> spider_colours;

  const System& system(const std::string& name) const;
  const GeneratorDecl& generator(const std::string& name) const;
  bool declares(const std::string& name) const;
  /** A one-node diagram for the named generator. */
  Diagram box(const std::string& name, const Phase& phase = Phase()) const;
  Node node(const std::string& name, const Phase& phase = Phase()) const;
  /** Throws UnassignedGeneratorError for labels the signature lacks. */
  void check(const Diagram& d) const;
};

struct TheoryFixture {
  Signature signature;
  std::vector<RewriteRule> rules;
  std::vector<ModelBinding> models;

  const ModelBinding& model(const std::string& name) const;
  const RewriteRule& rule(const std::string& name) const;
};

/** Permutations of D-dimensional wires; model "perm" for a given D. */
TheoryFixture symgrp_fixture(int dimension = 2);
/** Qubit gates with model "qubit" and observables white = Z, gray = X. */
TheoryFixture qucirc_signature();
/** Logic gates with rules "distributivity", "de-morgan"; models "B", "P". */
TheoryFixture boolcirc_fixture();
/** Six qubit points and Clifford generators; model "stab". */
TheoryFixture stab_fixture();
/** Four-element set, six subset points, 24 permutations; model "spek". */
TheoryFixture spek_fixture();
/** Stab for Z4, Spek for Z2 x Z2. */
TheoryFixture toy_fixture(const std::vector<int>& phase_group);

/** qucirc, boolcirc, stab, spek, symgrp, toy-z4, toy-z2xz2. */
TheoryFixture fixture_by_name(const std::string& name);
std::vector<std::string> fixture_names();

/** The qubit white (Z) and gray (X) observables with angle phases. */
ObservableStructure qubit_z();
ObservableStructure qubit_x();

/** The copy/XOR pair on the two-element set. */
ObservableStructure frel_white_bit();
ObservableStructure frel_gray_bit();

/** Spek's observables; phases are Z2 x Z2 elements. */
ObservableStructure spek_white();
ObservableStructure spek_gray();
/** z0, z1, x0, x1, y0, y1 as subsets of {0,1,2,3}. */
std::vector<std::pair<std::string, Tensor>> spek_points();
/** z0, z1, x0, x1, y0, y1 as normalized qubit states. */
std::vector<std::pair<std::string, Tensor>> stab_points();

/** Image of a permutation diagram on D-dimensional wires. */
Tensor permutation_matrix(const std::vector<int>& perm, int dimension);

}  // namespace gct
