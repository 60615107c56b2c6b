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
#include <optional>
#include <string>
#include <vector>

#include "gct/algebra.hpp"
#include "gct/diagram.hpp"
#include "gct/model.hpp"

namespace gct {

/**
 * An occurrence of a pattern in a host. Boundary ports of the pattern are
 * recorded by the host port just outside the image: the source feeding
 * each pattern input and the target fed by each pattern output. Pattern
 * inputs wired straight to pattern outputs have no host counterpart and
 * are left at kUnattached.
 */
struct Matching {
  static constexpr Port kUnattached{-2, -1};

  std::vector<int> node_map;         // pattern node -> host node
  std::vector<Wire> wire_map;        // host wire per pattern.wires() entry
  std::vector<Port> input_sources;   // per pattern input
  std::vector<Port> output_targets;  // per pattern output

  /** Host nodes of the image, ascending. */
  std::vector<int> image() const;
};

/**
 * All occurrences of `pattern` in `host`, ordered lexicographically on the
 * host node ids of node_map. With spider_aware, a pattern spider that has
 * a boundary leg may land on a host spider of larger arity.
 */
std::vector<Matching> find_matchings(const Diagram& pattern, const Diagram& host,
                                     bool spider_aware = false, size_t limit = 0);
std::vector<Matching> find_matchings(const RewriteRule& rule, const Diagram& host,
                                     size_t limit = 0);

/**
 * Replaces the occurrence `at` of rule.lhs by rule.rhs. Host spiders wider
 * than their pattern spider are first unfused so that the surplus legs
 * hang off a zero-phase spider outside the image. Throws StaleMatchingError
 * when `at` does not describe an occurrence in `host`.
 */
Diagram apply_rule(const RewriteRule& rule, const Diagram& host,
                   const Matching& at);

RewriteRule reversed(const RewriteRule& rule);

struct RewriteStep {
  std::string rule;
  bool reversed = false;
  std::vector<int> image;  // host nodes rewritten
};

struct RewriteResult {
  Diagram diagram;
  std::vector<RewriteStep> steps;
  bool budget_exhausted = false;
};

constexpr int kDefaultStepBudget = 10000;

/**
 * One leftmost-innermost step: the matching whose image sits earliest in
 * topological order, ties broken by rule order. Empty when nothing matches.
 */
std::optional<RewriteResult> rewrite_once(const std::vector<RewriteRule>& rules,
                                          const Diagram& host);

/** Leftmost-innermost rewriting until no rule applies or `budget` steps. */
RewriteResult normalize(const std::vector<RewriteRule>& rules,
                        const Diagram& host, int budget = kDefaultStepBudget);

struct EquivalenceResult {
  bool equivalent = false;
  std::vector<Diagram> path;  // a to b, when found
  int explored = 0;
};

/**
 * Searches the symmetric closure of `rules` from both ends at once, up to
 * `budget` expanded diagrams, for a rewrite path between a and b up to
 * iso_equal.
 */
EquivalenceResult equivalent_under(const std::vector<RewriteRule>& rules,
                                   const Diagram& a, const Diagram& b,
                                   int budget = kDefaultStepBudget);

/**
 * Merges same-coloured spiders on a common carrier joined by a wire, adding
 * their phases, until no such pair remains. A pair also linked through some
 * other node is left alone, since merging it would close a cycle.
 */
Diagram spider_fuse(const Diagram& d);

/** Forward path counts, rows = inputs, columns = outputs. */
struct CharacteristicMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<long long>> entries;

  long long at(int i, int j) const { return entries[i][j]; }
  bool operator==(const CharacteristicMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
  bool operator!=(const CharacteristicMatrix& o) const { return !(*this == o); }
  std::string to_string() const;
};

/**
 * The bialgebra fragment: zero-phase `gray` spiders with one output (mu and
 * eta and their n-ary forms), zero-phase `white` spiders with one input
 * (delta and epsilon), and bare wires. Anything else throws
 * UnsupportedFragmentError.
 */
CharacteristicMatrix characteristic_matrix(const Diagram& d,
                                           const std::string& white = "white",
                                           const std::string& gray = "gray");

/**
 * White copies on the inputs feeding gray merges on the outputs, with
 * chi(i, j) parallel wires from white i to gray j. Node ids and wire order
 * depend only on chi and the boundary types.
 */
Diagram bialg_normal_form(const Diagram& d, const std::string& white = "white",
                          const std::string& gray = "gray");
Diagram normal_form_of(const CharacteristicMatrix& chi, const System& carrier,
                       const std::string& white = "white",
                       const std::string& gray = "gray");

struct CollapseResult {
  Diagram diagram;
  Complex scalar;  // original = scalar * diagram under the pair
};

/**
 * Replaces a bipartite region of white copies (one input each) wired to
 * gray merges (one output each), every white feeding every gray once, by
 * one gray merge feeding one white copy. `region` lists host nodes; empty
 * means all. Throws PreconditionError when the region is disconnected,
 * not bipartite in that shape, or the pair fails the bialgebra law.
 */
CollapseResult collapse_bipartite(const Diagram& d, const ObservablePair& pair,
                                  std::vector<int> region = {});

/**
 * A model over one system in which the pair's observables are the spider
 * colours "white" and "gray" and the antipode interprets box "S".
 */
ModelBinding pair_model(const ObservablePair& pair, const System& system);

/**
 * Copy on the standard basis as white and XOR with unit |0> as gray, both
 * unnormalized, on a complex bit. The bialgebra and Hopf laws hold with
 * scalar 1, so fragment diagrams evaluate to their chi mod 2 as a linear
 * map on bit strings.
 */
ObservablePair z2_bialgebra_pair();

struct BuiltinRule {
  RewriteRule rule;
  Complex scalar;  // lhs = scalar * rhs under the pair it was built for
};

/**
 * "fuse", "bialg", "hopf", "yank" and "copy" over `system`, with each
 * scalar measured under the pair. Throws PreconditionError for other names
 * and when a law does not hold up to a scalar.
 */
BuiltinRule builtin_rule(const std::string& name, const ObservablePair& pair,
                         const System& system);
std::vector<std::string> builtin_rule_names();

}  // namespace gct
