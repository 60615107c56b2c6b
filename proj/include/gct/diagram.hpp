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

#include <optional>
#include <string>
#include <vector>

#include "gct/phase.hpp"

namespace gct {

enum class DualMode {
  kNone,    // no dual declared; transposition is an error
  kFormal,  // A* is a distinct system, A** = A
  kSelf,    // A* = A, e.g. via an observable-induced cup
};

struct System {
  std::string name;
  bool starred = false;
  DualMode dual_mode = DualMode::kFormal;

  System() = default;
  System(std::string n, DualMode mode = DualMode::kFormal)
      : name(std::move(n)), dual_mode(mode) {}

  /** Throws MissingDualError when no dual is declared. */
  System dual() const;
  std::string to_string() const;

  bool operator==(const System& o) const {
    return name == o.name && starred == o.starred;
  }
  bool operator!=(const System& o) const { return !(*this == o); }
  bool operator<(const System& o) const {
    return name != o.name ? name < o.name : starred < o.starred;
  }
};

enum class NodeKind { kBox, kSpider, kCup, kCap };

/**
 * A generator instance. Spiders carry a colour in `label`; boxes carry the
 * generator name and the name of their dagger partner (empty when the
 * generator has none). Cups on X have outputs (X*, X), caps on X have
 * inputs (X, X*).
 */
struct Node {
  NodeKind kind = NodeKind::kBox;
  std::string label;
  std::string dagger_label;
  bool has_phase = false;
  Phase phase;
  std::vector<System> inputs;
  std::vector<System> outputs;
  System carrier;  // spiders, cups and caps

  static Node box(std::string label, std::vector<System> inputs,
                  std::vector<System> outputs, std::string dagger_label = "");
  static Node phased_box(std::string label, Phase phase,
                         std::vector<System> inputs,
                         std::vector<System> outputs,
                         std::string dagger_label);
  static Node spider(std::string colour, const System& system, int n_in,
                     int n_out, Phase phase = Phase());
  static Node cup(const System& system);
  static Node cap(const System& system);

  int n_in() const { return static_cast<int>(inputs.size()); }
  int n_out() const { return static_cast<int>(outputs.size()); }
  /** Spiders, cups and caps have interchangeable legs on each side. */
  bool symmetric_legs() const { return kind != NodeKind::kBox; }
  bool operator==(const Node& o) const;
};

/**
 * One end of a wire. As a source, node == kBoundary means an input slot of
 * the diagram and otherwise an output slot of the node; as a target,
 * kBoundary means an output slot of the diagram and otherwise an input
 * slot of the node.
 */
struct Port {
  static constexpr int kBoundary = -1;
  int node = kBoundary;
  int slot = 0;

  static Port boundary(int index) { return Port{kBoundary, index}; }
  static Port at(int node, int slot) { return Port{node, slot}; }
  bool is_boundary() const { return node == kBoundary; }
  bool operator==(const Port& o) const {
    return node == o.node && slot == o.slot;
  }
  bool operator!=(const Port& o) const { return !(*this == o); }
  bool operator<(const Port& o) const {
    return node != o.node ? node < o.node : slot < o.slot;
  }
};

struct Wire {
  Port source;
  Port target;
};

/**
 * An open string diagram: a directed acyclic port graph with ordered input
 * and output boundaries. Swaps are not nodes, so any two diagrams that
 * differ only by how crossings are drawn share one representation.
 * Diagrams are immutable values.
 */
class Diagram {
 public:
  /** The empty diagram, i.e. id_I. */
  Diagram() = default;

  static Diagram identity(const std::vector<System>& types);
  /** A diagram consisting of one node whose legs are the boundary. */
  static Diagram generator(const Node& node);
  /** Pure wiring sending input i to output perm[i]. */
  static Diagram permutation(const std::vector<System>& types,
                             const std::vector<int>& perm);

  const std::vector<System>& inputs() const { return inputs_; }
  const std::vector<System>& outputs() const { return outputs_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_.at(id); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty() && inputs_.empty() && outputs_.empty(); }

  /** Source feeding a target port. */
  Port source_of(const Port& target) const;
  /** Target fed by a source port. */
  Port target_of(const Port& source) const;
  /** All wires, ordered by target (node inputs by id/slot, then outputs). */
  std::vector<Wire> wires() const;
  /** Node ids in a topological order, ties broken by id. */
  std::vector<int> topological_order() const;
  const System& source_type(const Port& source) const;
  const System& target_type(const Port& target) const;

 private:
  friend class DiagramBuilder;
  void index();

  std::vector<System> inputs_;
  std::vector<System> outputs_;
  std::vector<Node> nodes_;
  // Primary storage: the source of every target port.
  std::vector<std::vector<Port>> node_in_src_;
  std::vector<Port> output_src_;
  // Derived: the target of every source port.
  std::vector<std::vector<Port>> node_out_dst_;
  std::vector<Port> input_dst_;
};

/** Incremental construction with validation on build(). */
class DiagramBuilder {
 public:
  DiagramBuilder(std::vector<System> inputs, std::vector<System> outputs);
  int add(Node node);
  void wire(Port source, Port target);
  /** Validates typing, port coverage and acyclicity. */
  Diagram build() const;

 private:
  std::vector<System> inputs_;
  std::vector<System> outputs_;
  std::vector<Node> nodes_;
  std::vector<Wire> wires_;
};

/** A pair of diagrams of the same type. */
struct RewriteRule {
  std::string name;
  Diagram lhs;
  Diagram rhs;
  bool spider_aware = false;

  /** Throws TypeMismatchError unless lhs and rhs share boundary types. */
  static RewriteRule make(std::string name, Diagram lhs, Diagram rhs,
                          bool spider_aware = false);
};

/** d2 after d1. Throws TypeMismatchError naming the first bad index. */
Diagram compose(const Diagram& d1, const Diagram& d2);
Diagram tensor(const Diagram& d1, const Diagram& d2);
Diagram compose_all(const std::vector<Diagram>& ds);
Diagram tensor_all(const std::vector<Diagram>& ds);
Diagram dagger(const Diagram& d);
Diagram transpose_upper(const Diagram& d);
Diagram conjugate_lower(const Diagram& d);
Diagram trace(const Diagram& d);
/** Closes input wire_index against output wire_index. */
Diagram partial_trace(const Diagram& d, int wire_index);

/** Removes every cup/cap pair joined by exactly one wire. */
Diagram yank_normalize(const Diagram& d);

/** Label-, phase- and boundary-preserving isomorphism after yanking. */
bool iso_equal(const Diagram& d1, const Diagram& d2);

struct EmbeddingOptions {
  bool exact_boundary = false;  // isomorphism rather than occurrence
  bool spider_aware = false;    // spiders may match larger host spiders
  size_t limit = 0;             // 0 means unlimited
};

/**
 * Injective maps from pattern nodes to host nodes preserving labels,
 * phases and wire multiplicities, sorted lexicographically. In occurrence
 * mode pattern boundary legs must attach outside the image and the image
 * must be convex.
 */
std::vector<std::vector<int>> find_node_maps(const Diagram& pattern,
                                             const Diagram& host,
                                             const EmbeddingOptions& options);

/** Ids grouped into connected components of the underlying graph. */
std::vector<std::vector<int>> connected_components(const Diagram& d);
/** Whether the diagram, boundary points included, is one component. */
bool is_connected(const Diagram& d);

/** Replace node `id` by `node`, which must have the same leg types. */
Diagram with_node(const Diagram& d, int id, const Node& node);

}  // namespace gct
