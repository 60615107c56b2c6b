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

#include "gct/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "gct/errors.hpp"

namespace gct {

System System::dual() const {
  switch (dual_mode) {
    case DualMode::kNone:
      throw MissingDualError("system " + name + " has no declared dual");
    case DualMode::kSelf:
      return *this;
    case DualMode::kFormal:
      break;
  }
  System s = *this;
  s.starred = !starred;
  return s;
}

std::string System::to_string() const { return starred ? name + "*" : name; }

Node Node::box(std::string label, std::vector<System> inputs,
               std::vector<System> outputs, std::string dagger_label) {
  Node n;
  n.kind = NodeKind::kBox;
  n.label = std::move(label);
  n.dagger_label = std::move(dagger_label);
  n.inputs = std::move(inputs);
  n.outputs = std::move(outputs);
  return n;
}

Node Node::phased_box(std::string label, Phase phase,
                      std::vector<System> inputs, std::vector<System> outputs,
                      std::string dagger_label) {
  Node n = box(std::move(label), std::move(inputs), std::move(outputs),
               std::move(dagger_label));
  n.has_phase = true;
  n.phase = phase;
  return n;
}

Node Node::spider(std::string colour, const System& system, int n_in,
                  int n_out, Phase phase) {
  if (n_in < 0 || n_out < 0) throw GctError("spider arity must be >= 0");
  Node n;
  n.kind = NodeKind::kSpider;
  n.label = std::move(colour);
  n.has_phase = true;
  n.phase = phase;
  n.carrier = system;
  n.inputs.assign(n_in, system);
  n.outputs.assign(n_out, system);
  return n;
}

Node Node::cup(const System& system) {
  Node n;
  n.kind = NodeKind::kCup;
  n.label = "cup";
  n.carrier = system;
  n.outputs = {system.dual(), system};
  return n;
}

Node Node::cap(const System& system) {
  Node n;
  n.kind = NodeKind::kCap;
  n.label = "cap";
  n.carrier = system;
  n.inputs = {system, system.dual()};
  return n;
}

bool Node::operator==(const Node& o) const {
  return kind == o.kind && label == o.label && dagger_label == o.dagger_label &&
         has_phase == o.has_phase && (!has_phase || phase == o.phase) &&
         inputs == o.inputs && outputs == o.outputs &&
         (kind == NodeKind::kBox || carrier == o.carrier);
}

// ---------------------------------------------------------------------------

void Diagram::index() {
  node_out_dst_.assign(nodes_.size(), {});
  for (size_t n = 0; n < nodes_.size(); ++n) {
    node_out_dst_[n].assign(nodes_[n].outputs.size(), Port{});
  }
  input_dst_.assign(inputs_.size(), Port{});
  auto record = [&](const Port& src, const Port& dst) {
    if (src.is_boundary()) {
      input_dst_[src.slot] = dst;
    } else {
      node_out_dst_[src.node][src.slot] = dst;
    }
  };
  for (size_t n = 0; n < nodes_.size(); ++n) {
    for (size_t s = 0; s < node_in_src_[n].size(); ++s) {
      record(node_in_src_[n][s], Port::at(static_cast<int>(n), s));
    }
  }
  for (size_t j = 0; j < output_src_.size(); ++j) {
    record(output_src_[j], Port::boundary(static_cast<int>(j)));
  }
}

Diagram Diagram::identity(const std::vector<System>& types) {
  Diagram d;
  d.inputs_ = types;
  d.outputs_ = types;
  for (size_t i = 0; i < types.size(); ++i) {
    d.output_src_.push_back(Port::boundary(static_cast<int>(i)));
  }
  d.index();
  return d;
}

Diagram Diagram::generator(const Node& node) {
  Diagram d;
  d.inputs_ = node.inputs;
  d.outputs_ = node.outputs;
  d.nodes_ = {node};
  d.node_in_src_.resize(1);
  for (int i = 0; i < node.n_in(); ++i) {
    d.node_in_src_[0].push_back(Port::boundary(i));
  }
  for (int j = 0; j < node.n_out(); ++j) d.output_src_.push_back(Port::at(0, j));
  d.index();
  return d;
}

Diagram Diagram::permutation(const std::vector<System>& types,
                             const std::vector<int>& perm) {
  const int n = static_cast<int>(types.size());
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(check.size()) != n || check[i] != i) {
      throw GctError("not a permutation");
    }
  }
  Diagram d;
  d.inputs_ = types;
  d.outputs_.resize(n);
  d.output_src_.resize(n);
  for (int i = 0; i < n; ++i) {
    d.outputs_[perm[i]] = types[i];
    d.output_src_[perm[i]] = Port::boundary(i);
  }
  d.index();
  return d;
}

Port Diagram::source_of(const Port& target) const {
  if (target.is_boundary()) return output_src_.at(target.slot);
  return node_in_src_.at(target.node).at(target.slot);
}

Port Diagram::target_of(const Port& source) const {
  if (source.is_boundary()) return input_dst_.at(source.slot);
  return node_out_dst_.at(source.node).at(source.slot);
}

std::vector<Wire> Diagram::wires() const {
  std::vector<Wire> ws;
  for (size_t n = 0; n < nodes_.size(); ++n) {
    for (size_t s = 0; s < node_in_src_[n].size(); ++s) {
      ws.push_back({node_in_src_[n][s], Port::at(static_cast<int>(n), s)});
    }
  }
  for (size_t j = 0; j < output_src_.size(); ++j) {
    ws.push_back({output_src_[j], Port::boundary(static_cast<int>(j))});
  }
  return ws;
}

const System& Diagram::source_type(const Port& source) const {
  if (source.is_boundary()) return inputs_.at(source.slot);
  return nodes_.at(source.node).outputs.at(source.slot);
}

const System& Diagram::target_type(const Port& target) const {
  if (target.is_boundary()) return outputs_.at(target.slot);
  return nodes_.at(target.node).inputs.at(target.slot);
}

namespace {

// Kahn's algorithm with the smallest ready id first. Returns fewer than
// all nodes when there is a directed cycle.
std::vector<int> topo_sort(const std::vector<Node>& nodes,
                           const std::vector<std::vector<Port>>& in_src) {
  const int n = static_cast<int>(nodes.size());
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (int v = 0; v < n; ++v) {
    for (const Port& p : in_src[v]) {
      if (!p.is_boundary()) {
        ++indeg[v];
        succ[p.node].push_back(v);
      }
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  return order;
}

}  // namespace

std::vector<int> Diagram::topological_order() const {
  return topo_sort(nodes_, node_in_src_);
}

// ---------------------------------------------------------------------------

DiagramBuilder::DiagramBuilder(std::vector<System> inputs,
                               std::vector<System> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {}

int DiagramBuilder::add(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

void DiagramBuilder::wire(Port source, Port target) {
  wires_.push_back({source, target});
}

Diagram DiagramBuilder::build() const {
  Diagram d;
  d.inputs_ = inputs_;
  d.outputs_ = outputs_;
  d.nodes_ = nodes_;
  const int n = static_cast<int>(nodes_.size());
  const Port unset{-2, 0};
  d.node_in_src_.resize(n);
  for (int v = 0; v < n; ++v) d.node_in_src_[v].assign(nodes_[v].n_in(), unset);
  d.output_src_.assign(outputs_.size(), unset);

  std::set<Port> used_sources;
  for (const Wire& w : wires_) {
    const System* st = nullptr;
    if (w.source.is_boundary()) {
      if (w.source.slot < 0 || w.source.slot >= static_cast<int>(inputs_.size())) {
        throw IndexError("wire source input " + std::to_string(w.source.slot) +
                         " out of range");
      }
      st = &inputs_[w.source.slot];
    } else {
      if (w.source.node < 0 || w.source.node >= n || w.source.slot < 0 ||
          w.source.slot >= nodes_[w.source.node].n_out()) {
        throw IndexError("wire source " + std::to_string(w.source.node) + ".o" +
                         std::to_string(w.source.slot) + " out of range");
      }
      st = &nodes_[w.source.node].outputs[w.source.slot];
    }
    if (!used_sources.insert(w.source).second) {
      throw GctError("source port used by two wires");
    }
    Port* slot = nullptr;
    const System* tt = nullptr;
    if (w.target.is_boundary()) {
      if (w.target.slot < 0 ||
          w.target.slot >= static_cast<int>(outputs_.size())) {
        throw IndexError("wire target output " + std::to_string(w.target.slot) +
                         " out of range");
      }
      slot = &d.output_src_[w.target.slot];
      tt = &outputs_[w.target.slot];
    } else {
      if (w.target.node < 0 || w.target.node >= n || w.target.slot < 0 ||
          w.target.slot >= nodes_[w.target.node].n_in()) {
        throw IndexError("wire target " + std::to_string(w.target.node) + ".i" +
                         std::to_string(w.target.slot) + " out of range");
      }
      slot = &d.node_in_src_[w.target.node][w.target.slot];
      tt = &nodes_[w.target.node].inputs[w.target.slot];
    }
    if (*slot != unset) throw GctError("target port used by two wires");
    if (*st != *tt) {
      throw TypeMismatchError("wire joins " + st->to_string() + " to " +
                                  tt->to_string(),
                              w.target.slot);
    }
    *slot = w.source;
  }
  for (int v = 0; v < n; ++v) {
    for (const Port& p : d.node_in_src_[v]) {
      if (p == unset) {
        throw GctError("node " + std::to_string(v) + " has an unwired input");
      }
    }
  }
  for (const Port& p : d.output_src_) {
    if (p == unset) throw GctError("diagram has an unwired output");
  }
  size_t expected = inputs_.size();
  for (const Node& nd : nodes_) expected += nd.outputs.size();
  if (used_sources.size() != expected) {
    throw GctError("diagram has an unwired source port");
  }
  if (static_cast<int>(topo_sort(d.nodes_, d.node_in_src_).size()) != n) {
    throw GctError("diagram has a directed cycle");
  }
  d.index();
  return d;
}

// ---------------------------------------------------------------------------

namespace {

void check_types(const std::vector<System>& outs,
                 const std::vector<System>& ins) {
  const size_t n = std::min(outs.size(), ins.size());
  for (size_t i = 0; i < n; ++i) {
    if (outs[i] != ins[i]) {
      throw TypeMismatchError("cannot compose: output " + std::to_string(i) +
                                  " has type " + outs[i].to_string() +
                                  " but input expects " + ins[i].to_string(),
                              static_cast<int>(i));
    }
  }
  if (outs.size() != ins.size()) {
    throw TypeMismatchError(
        "cannot compose: " + std::to_string(outs.size()) + " outputs against " +
            std::to_string(ins.size()) + " inputs",
        static_cast<int>(n));
  }
}

Node flip(const Node& n) {
  Node f = n;
  std::swap(f.inputs, f.outputs);
  switch (n.kind) {
    case NodeKind::kBox:
      if (n.dagger_label.empty()) {
        throw UnsupportedDaggerError("generator " + n.label +
                                     " has no dagger partner");
      }
      std::swap(f.label, f.dagger_label);
      if (f.has_phase) f.phase = -n.phase;
      break;
    case NodeKind::kSpider:
      f.phase = -n.phase;
      break;
    case NodeKind::kCup:
      f.kind = NodeKind::kCap;
      f.label = "cap";
      f.carrier = n.carrier.dual();
      break;
    case NodeKind::kCap:
      f.kind = NodeKind::kCup;
      f.label = "cup";
      f.carrier = n.carrier.dual();
      break;
  }
  return f;
}

// Removes `drop` nodes and adds `extra` wires; remaining ids keep their order.
Diagram rebuild(const Diagram& d, const std::set<int>& drop,
                const std::vector<Wire>& extra) {
  std::vector<int> remap(d.node_count(), -1);
  DiagramBuilder b(d.inputs(), d.outputs());
  for (int v = 0; v < d.node_count(); ++v) {
    if (!drop.count(v)) remap[v] = b.add(d.node(v));
  }
  auto mapped = [&](Port p) {
    if (!p.is_boundary()) p.node = remap[p.node];
    return p;
  };
  for (const Wire& w : d.wires()) {
    if ((!w.source.is_boundary() && drop.count(w.source.node)) ||
        (!w.target.is_boundary() && drop.count(w.target.node))) {
      continue;
    }
    b.wire(mapped(w.source), mapped(w.target));
  }
  for (const Wire& w : extra) b.wire(mapped(w.source), mapped(w.target));
  return b.build();
}

}  // namespace

Diagram compose(const Diagram& d1, const Diagram& d2) {
  check_types(d1.outputs(), d2.inputs());
  const int off = d1.node_count();
  DiagramBuilder b(d1.inputs(), d2.outputs());
  for (const Node& n : d1.nodes()) b.add(n);
  for (const Node& n : d2.nodes()) b.add(n);
  for (const Wire& w : d1.wires()) {
    if (!w.target.is_boundary()) b.wire(w.source, w.target);
  }
  for (const Wire& w : d2.wires()) {
    Port src = w.source.is_boundary()
                   ? d1.source_of(Port::boundary(w.source.slot))
                   : Port::at(w.source.node + off, w.source.slot);
    Port dst = w.target.is_boundary()
                   ? w.target
                   : Port::at(w.target.node + off, w.target.slot);
    b.wire(src, dst);
  }
  return b.build();
}

Diagram tensor(const Diagram& d1, const Diagram& d2) {
  std::vector<System> ins = d1.inputs();
  ins.insert(ins.end(), d2.inputs().begin(), d2.inputs().end());
  std::vector<System> outs = d1.outputs();
  outs.insert(outs.end(), d2.outputs().begin(), d2.outputs().end());
  const int off = d1.node_count();
  const int in_off = static_cast<int>(d1.inputs().size());
  const int out_off = static_cast<int>(d1.outputs().size());
  DiagramBuilder b(ins, outs);
  for (const Node& n : d1.nodes()) b.add(n);
  for (const Node& n : d2.nodes()) b.add(n);
  for (const Wire& w : d1.wires()) b.wire(w.source, w.target);
  for (const Wire& w : d2.wires()) {
    Port src = w.source.is_boundary()
                   ? Port::boundary(w.source.slot + in_off)
                   : Port::at(w.source.node + off, w.source.slot);
    Port dst = w.target.is_boundary()
                   ? Port::boundary(w.target.slot + out_off)
                   : Port::at(w.target.node + off, w.target.slot);
    b.wire(src, dst);
  }
  return b.build();
}

Diagram compose_all(const std::vector<Diagram>& ds) {
  if (ds.empty()) return Diagram();
  Diagram r = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) r = compose(r, ds[i]);
  return r;
}

Diagram tensor_all(const std::vector<Diagram>& ds) {
  Diagram r;
  for (const Diagram& d : ds) r = tensor(r, d);
  return r;
}

Diagram dagger(const Diagram& d) {
  DiagramBuilder b(d.outputs(), d.inputs());
  for (const Node& n : d.nodes()) b.add(flip(n));
  // Reversing a wire swaps the roles of its ends; a Port value keeps its
  // meaning because node input slot k becomes output slot k and output
  // boundary j becomes input boundary j.
  for (const Wire& w : d.wires()) b.wire(w.target, w.source);
  return b.build();
}

Diagram transpose_upper(const Diagram& d) {
  std::vector<System> new_in;
  std::vector<System> new_out;
  for (const System& s : d.outputs()) new_in.push_back(s.dual());
  for (const System& s : d.inputs()) new_out.push_back(s.dual());
  DiagramBuilder b(new_in, new_out);
  for (const Node& n : d.nodes()) b.add(n);
  const int na = static_cast<int>(d.inputs().size());
  const int nb = static_cast<int>(d.outputs().size());
  std::vector<int> cups(na);
  std::vector<int> caps(nb);
  for (int i = 0; i < na; ++i) cups[i] = b.add(Node::cup(d.inputs()[i]));
  for (int j = 0; j < nb; ++j) caps[j] = b.add(Node::cap(d.outputs()[j]));
  auto src = [&](const Port& p) {
    return p.is_boundary() ? Port::at(cups[p.slot], 1) : p;
  };
  for (const Wire& w : d.wires()) {
    if (w.target.is_boundary()) {
      b.wire(src(w.source), Port::at(caps[w.target.slot], 0));
    } else {
      b.wire(src(w.source), w.target);
    }
  }
  for (int j = 0; j < nb; ++j) b.wire(Port::boundary(j), Port::at(caps[j], 1));
  for (int i = 0; i < na; ++i) b.wire(Port::at(cups[i], 0), Port::boundary(i));
  return yank_normalize(b.build());
}

Diagram conjugate_lower(const Diagram& d) { return transpose_upper(dagger(d)); }

Diagram partial_trace(const Diagram& d, int wire_index) {
  const int n_in = static_cast<int>(d.inputs().size());
  const int n_out = static_cast<int>(d.outputs().size());
  if (wire_index < 0 || wire_index >= n_in || wire_index >= n_out) {
    throw IndexError("trace index " + std::to_string(wire_index) +
                     " out of range");
  }
  const System x = d.inputs()[wire_index];
  if (d.outputs()[wire_index] != x) {
    throw TypeMismatchError("traced input and output types differ",
                            wire_index);
  }
  std::vector<System> ins = d.inputs();
  ins.erase(ins.begin() + wire_index);
  std::vector<System> outs = d.outputs();
  outs.erase(outs.begin() + wire_index);
  DiagramBuilder b(ins, outs);
  for (const Node& n : d.nodes()) b.add(n);
  const int cup = b.add(Node::cup(x));
  const int cap = b.add(Node::cap(x));
  auto src = [&](Port p) {
    if (!p.is_boundary()) return p;
    if (p.slot == wire_index) return Port::at(cup, 1);
    if (p.slot > wire_index) --p.slot;
    return p;
  };
  for (const Wire& w : d.wires()) {
    Port dst = w.target;
    if (dst.is_boundary()) {
      if (dst.slot == wire_index) {
        dst = Port::at(cap, 0);
      } else if (dst.slot > wire_index) {
        --dst.slot;
      }
    }
    b.wire(src(w.source), dst);
  }
  b.wire(Port::at(cup, 0), Port::at(cap, 1));
  return b.build();
}

Diagram trace(const Diagram& d) {
  if (d.inputs() != d.outputs()) {
    throw TypeMismatchError("trace needs matching input and output types", 0);
  }
  Diagram r = d;
  while (!r.inputs().empty()) {
    r = partial_trace(r, static_cast<int>(r.inputs().size()) - 1);
  }
  return r;
}

namespace {

bool reaches(const Diagram& d, int from, int to) {
  std::vector<bool> seen(d.node_count(), false);
  std::vector<int> stack = {from};
  seen[from] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int k = 0; k < d.node(v).n_out(); ++k) {
      Port t = d.target_of(Port::at(v, k));
      if (!t.is_boundary() && !seen[t.node]) {
        seen[t.node] = true;
        stack.push_back(t.node);
      }
    }
  }
  return false;
}

}  // namespace

Diagram yank_normalize(const Diagram& d) {
  Diagram cur = d;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < cur.node_count() && !changed; ++k) {
      if (cur.node(k).kind != NodeKind::kCap) continue;
      for (int b = 0; b < 2 && !changed; ++b) {
        Port s1 = cur.source_of(Port::at(k, b));
        if (s1.is_boundary() || cur.node(s1.node).kind != NodeKind::kCup) {
          continue;
        }
        const int c = s1.node;
        Port s2 = cur.source_of(Port::at(k, 1 - b));
        if (s2.node == c) continue;  // closed loop, a scalar
        Port t2 = cur.target_of(Port::at(c, 1 - s1.slot));
        // When t2 feeds back into s2 the pair bends a feedback loop, i.e. a
        // trace, and joining the legs would close a directed cycle.
        if (!s2.is_boundary() && !t2.is_boundary() &&
            reaches(cur, t2.node, s2.node)) {
          continue;
        }
        cur = rebuild(cur, {c, k}, {{s2, t2}});
        changed = true;
      }
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Embedding search shared by isomorphism and rule matching.

namespace {

struct EdgeKey {
  int u, ku, v, kv;
  bool operator<(const EdgeKey& o) const {
    return std::tie(u, ku, v, kv) < std::tie(o.u, o.ku, o.v, o.kv);
  }
};

struct GraphIndex {
  const Diagram* d;
  std::map<EdgeKey, int> keyed;           // u -> v counts by leg key
  std::map<std::pair<int, int>, int> total;  // u -> v counts
  std::vector<std::set<int>> nbrs;          // undirected neighbours
  // Boundary attachments: (boundary index, node, key).
  std::vector<std::pair<int, int>> input_att;   // per input: node, key
  std::vector<std::pair<int, int>> output_att;  // per output: node, key
  std::vector<int> boundary_legs;           // per node: legs on boundary

  explicit GraphIndex(const Diagram& dg) : d(&dg) {
    const int n = dg.node_count();
    nbrs.resize(n);
    boundary_legs.assign(n, 0);
    input_att.assign(dg.inputs().size(), {-1, -1});
    output_att.assign(dg.outputs().size(), {-1, -1});
    auto key = [&](int node, int slot) {
      return dg.node(node).symmetric_legs() ? -1 : slot;
    };
    for (const Wire& w : dg.wires()) {
      const bool sb = w.source.is_boundary();
      const bool tb = w.target.is_boundary();
      if (!sb && !tb) {
        ++keyed[{w.source.node, key(w.source.node, w.source.slot),
                 w.target.node, key(w.target.node, w.target.slot)}];
        ++total[{w.source.node, w.target.node}];
        nbrs[w.source.node].insert(w.target.node);
        nbrs[w.target.node].insert(w.source.node);
      } else if (sb && !tb) {
        input_att[w.source.slot] = {w.target.node,
                                    key(w.target.node, w.target.slot)};
        ++boundary_legs[w.target.node];
      } else if (!sb && tb) {
        output_att[w.target.slot] = {w.source.node,
                                     key(w.source.node, w.source.slot)};
        ++boundary_legs[w.source.node];
      } else {
        // pass-through wire: node stays -1, key records the output index
        input_att[w.source.slot] = {-1, w.target.slot};
        output_att[w.target.slot] = {-1, w.source.slot};
      }
    }
  }

  int count(const EdgeKey& k) const {
    auto it = keyed.find(k);
    return it == keyed.end() ? 0 : it->second;
  }
  int pair_total(int u, int v) const {
    auto it = total.find({u, v});
    return it == total.end() ? 0 : it->second;
  }
};

std::vector<System> sorted(std::vector<System> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class Matcher {
 public:
  Matcher(const Diagram& pattern, const Diagram& host,
          const EmbeddingOptions& opts)
      : p_(pattern), h_(host), opts_(opts) {
    const int np = pattern.node_count();
    map_.assign(np, -1);
    inv_.assign(host.node_count(), -1);
    // Breadth-first order over pattern connectivity.
    std::vector<bool> seen(np, false);
    for (int s = 0; s < np; ++s) {
      if (seen[s]) continue;
      std::queue<int> q;
      q.push(s);
      seen[s] = true;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        order_.push_back(v);
        for (int w : p_.nbrs[v]) {
          if (!seen[w]) {
            seen[w] = true;
            q.push(w);
          }
        }
      }
    }
  }

  std::vector<std::vector<int>> run() {
    if (opts_.exact_boundary) {
      if (p_.d->inputs() != h_.d->inputs() ||
          p_.d->outputs() != h_.d->outputs() ||
          p_.d->node_count() != h_.d->node_count()) {
        return {};
      }
      for (size_t i = 0; i < p_.input_att.size(); ++i) {
        const bool pp = p_.input_att[i].first == -1;
        const bool hp = h_.input_att[i].first == -1;
        if (pp != hp || (pp && p_.input_att[i].second != h_.input_att[i].second)) {
          return {};
        }
      }
    }
    search(0);
    std::sort(results_.begin(), results_.end());
    return results_;
  }

 private:
  bool done() const {
    return opts_.limit != 0 && results_.size() >= opts_.limit;
  }

  bool compatible(int pv, int hv) const {
    const Node& a = p_.d->node(pv);
    const Node& b = h_.d->node(hv);
    if (a.kind != b.kind || a.label != b.label) return false;
    if (a.has_phase != b.has_phase) return false;
    if (a.has_phase && !(a.phase == b.phase)) return false;
    switch (a.kind) {
      case NodeKind::kBox:
        return a.inputs == b.inputs && a.outputs == b.outputs;
      case NodeKind::kCup:
      case NodeKind::kCap:
        return sorted(a.inputs) == sorted(b.inputs) &&
               sorted(a.outputs) == sorted(b.outputs);
      case NodeKind::kSpider: {
        if (a.carrier != b.carrier) return false;
        if (a.n_in() == b.n_in() && a.n_out() == b.n_out()) return true;
        if (!opts_.spider_aware || opts_.exact_boundary) return false;
        if (b.n_in() < a.n_in() || b.n_out() < a.n_out()) return false;
        return p_.boundary_legs[pv] > 0;
      }
    }
    return false;
  }

  bool consistent(int pv, int hv) const {
    // Every wire between hv and an already mapped host node must mirror the
    // pattern, and vice versa.
    auto same = [&](int pq, int hq) {
      if (p_.pair_total(pv, pq) != h_.pair_total(hv, hq)) return false;
      if (p_.pair_total(pq, pv) != h_.pair_total(hq, hv)) return false;
      for (auto it = p_.keyed.lower_bound({pv, -2, -2, -2});
           it != p_.keyed.end() && it->first.u == pv; ++it) {
        if (it->first.v != pq) continue;
        if (h_.count({hv, it->first.ku, hq, it->first.kv}) != it->second) {
          return false;
        }
      }
      for (auto it = p_.keyed.lower_bound({pq, -2, -2, -2});
           it != p_.keyed.end() && it->first.u == pq; ++it) {
        if (it->first.v != pv) continue;
        if (h_.count({hq, it->first.ku, hv, it->first.kv}) != it->second) {
          return false;
        }
      }
      return true;
    };
    for (int pq : p_.nbrs[pv]) {
      if (map_[pq] >= 0 && !same(pq, map_[pq])) return false;
    }
    for (int hq : h_.nbrs[hv]) {
      if (inv_[hq] >= 0 && !same(inv_[hq], hq)) return false;
    }
    if (opts_.exact_boundary) {
      for (size_t i = 0; i < p_.input_att.size(); ++i) {
        const bool pa = p_.input_att[i].first == pv;
        const bool ha = h_.input_att[i].first == hv;
        if (pa != ha) return false;
        if (pa && p_.input_att[i].second != h_.input_att[i].second) return false;
      }
      for (size_t j = 0; j < p_.output_att.size(); ++j) {
        const bool pa = p_.output_att[j].first == pv;
        const bool ha = h_.output_att[j].first == hv;
        if (pa != ha) return false;
        if (pa && p_.output_att[j].second != h_.output_att[j].second) {
          return false;
        }
      }
    }
    return true;
  }

  bool convex() const {
    const Diagram& h = *h_.d;
    std::vector<bool> seen(h.node_count(), false);
    std::queue<int> q;
    auto push_succ = [&](int v) {
      for (int s = 0; s < h.node(v).n_out(); ++s) {
        Port t = h.target_of(Port::at(v, s));
        if (t.is_boundary()) continue;
        if (inv_[t.node] >= 0) {
          if (inv_[v] < 0) return false;
          continue;
        }
        if (!seen[t.node]) {
          seen[t.node] = true;
          q.push(t.node);
        }
      }
      return true;
    };
    for (int hv : map_) push_succ(hv);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (!push_succ(v)) return false;
    }
    return true;
  }

  void search(size_t idx) {
    if (done()) return;
    if (idx == order_.size()) {
      if (!opts_.exact_boundary && !convex()) return;
      results_.push_back(map_);
      return;
    }
    const int pv = order_[idx];
    for (int hv = 0; hv < h_.d->node_count(); ++hv) {
      if (inv_[hv] >= 0 || !compatible(pv, hv) || !consistent(pv, hv)) continue;
      map_[pv] = hv;
      inv_[hv] = pv;
      search(idx + 1);
      map_[pv] = -1;
      inv_[hv] = -1;
      if (done()) return;
    }
  }

  GraphIndex p_;
  GraphIndex h_;
  EmbeddingOptions opts_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> results_;
};

}  // namespace

std::vector<std::vector<int>> find_node_maps(const Diagram& pattern,
                                             const Diagram& host,
                                             const EmbeddingOptions& options) {
  Matcher m(pattern, host, options);
  return m.run();
}

bool iso_equal(const Diagram& d1, const Diagram& d2) {
  Diagram a = yank_normalize(d1);
  Diagram b = yank_normalize(d2);
  EmbeddingOptions opts;
  opts.exact_boundary = true;
  opts.limit = 1;
  return !find_node_maps(a, b, opts).empty();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<int>> connected_components(const Diagram& d) {
  const int n = d.node_count();
  UnionFind uf(n);
  for (const Wire& w : d.wires()) {
    if (!w.source.is_boundary() && !w.target.is_boundary()) {
      uf.unite(w.source.node, w.target.node);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Diagram& d) {
  const int n = d.node_count();
  const int ni = static_cast<int>(d.inputs().size());
  const int no = static_cast<int>(d.outputs().size());
  const int total = n + ni + no;
  if (total == 0) return true;
  UnionFind uf(total);
  auto vid = [&](const Port& p, bool is_source) {
    if (!p.is_boundary()) return p.node;
    return is_source ? n + p.slot : n + ni + p.slot;
  };
  for (const Wire& w : d.wires()) {
    uf.unite(vid(w.source, true), vid(w.target, false));
  }
  const int r = uf.find(0);
  for (int v = 1; v < total; ++v) {
    if (uf.find(v) != r) return false;
  }
  return true;
}

RewriteRule RewriteRule::make(std::string name, Diagram lhs, Diagram rhs,
                              bool spider_aware) {
  if (lhs.inputs() != rhs.inputs() || lhs.outputs() != rhs.outputs()) {
    throw TypeMismatchError("rule " + name + " has sides of different types",
                            0);
  }
  return RewriteRule{std::move(name), std::move(lhs), std::move(rhs),
                     spider_aware};
}

Diagram with_node(const Diagram& d, int id, const Node& node) {
  const Node& old = d.node(id);
  if (old.inputs != node.inputs || old.outputs != node.outputs) {
    throw TypeMismatchError("replacement node has different leg types", id);
  }
  DiagramBuilder b(d.inputs(), d.outputs());
  for (int v = 0; v < d.node_count(); ++v) b.add(v == id ? node : d.node(v));
  for (const Wire& w : d.wires()) b.wire(w.source, w.target);
  return b.build();
}

}  // namespace gct
