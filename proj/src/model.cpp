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

#include "gct/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "gct/errors.hpp"

namespace gct {

int ModelBinding::dim(const System& s) const {
  auto it = dims.find(s.name);
  if (it == dims.end()) {
    throw UnassignedGeneratorError("model '" + name + "' has no dimension for " +
                                   s.to_string());
  }
  return it->second;
}

std::vector<int> ModelBinding::dims_of(const std::vector<System>& ts) const {
  std::vector<int> out;
  out.reserve(ts.size());
  for (const System& s : ts) out.push_back(dim(s));
  return out;
}

const ObservableStructure& ModelBinding::observable(
    const std::string& colour, const System& carrier) const {
  auto it = observables.find(colour + "@" + carrier.name);
  if (it != observables.end()) return it->second;
  it = observables.find(colour);
  if (it == observables.end()) {
    throw UnassignedGeneratorError("model '" + name +
                                   "' has no observable for colour '" + colour +
                                   "'");
  }
  return it->second;
}

void ModelBinding::set_generator(const std::string& label, GeneratorFn fn) {
  generators[label] = std::move(fn);
}

void ModelBinding::set_generator(const std::string& label, const Tensor& t) {
  generators[label] = [t](const Phase&) { return t; };
}

void ModelBinding::set_dagger_pair(const std::string& label,
                                   const std::string& dagger_label,
                                   GeneratorFn fn) {
  generators[label] = fn;
  if (!dagger_label.empty() && dagger_label != label) {
    generators[dagger_label] = [fn](const Phase& p) { return adjoint(fn(-p)); };
  }
}

namespace {

Tensor bent_wire(Semiring s, int d, bool cup) {
  Tensor t = cup ? Tensor(s, {d, d}, {}) : Tensor(s, {}, {d, d});
  for (int i = 0; i < d; ++i) {
    if (cup) {
      t.at(i * d + i, 0) = 1.0;
    } else {
      t.at(0, i * d + i) = 1.0;
    }
  }
  return t;
}

// Guards the number of entries of an intermediate tensor: the product of
// the open wire dimensions times `cols`.
void check_cap(const ModelBinding& m, const std::vector<int>& dims,
               long long cols = 1) {
  long long p = cols;
  for (int d : dims) {
    p *= d;
    if (p > m.dimension_cap) {
      throw DimensionLimitError("intermediate dimension exceeds cap of " +
                                std::to_string(m.dimension_cap));
    }
  }
}

std::vector<int> random_topological_order(const Diagram& d, uint64_t seed) {
  const int n = d.node_count();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (const Wire& w : d.wires()) {
    if (!w.source.is_boundary() && !w.target.is_boundary()) {
      succ[w.source.node].push_back(w.target.node);
      ++indeg[w.target.node];
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    std::uniform_int_distribution<size_t> pick(0, ready.size() - 1);
    size_t i = pick(rng);
    int v = ready[i];
    ready.erase(ready.begin() + static_cast<long>(i));
    order.push_back(v);
    for (int s : succ[v]) {
      if (--indeg[s] == 0) ready.push_back(s);
    }
  }
  return order;
}

Tensor sweep(const Diagram& d, const ModelBinding& m,
             const std::vector<int>& order) {
  const Semiring s = m.semiring;
  std::vector<int> in_dims = m.dims_of(d.inputs());
  check_cap(m, in_dims);
  Tensor t = Tensor::identity(s, in_dims);
  std::vector<Port> frontier;
  for (size_t i = 0; i < d.inputs().size(); ++i) {
    frontier.push_back(Port::boundary(static_cast<int>(i)));
  }
  std::vector<int> fdims = in_dims;
  const long long cols = t.cols();

  for (int v : order) {
    const Node& node = d.node(v);
    Tensor nt = node_tensor(node, m);
    // Move the node's input wires to the least significant positions.
    std::vector<int> pos(node.n_in());
    std::vector<bool> used(frontier.size(), false);
    for (int k = 0; k < node.n_in(); ++k) {
      Port src = d.source_of(Port::at(v, k));
      auto it = std::find(frontier.begin(), frontier.end(), src);
      pos[k] = static_cast<int>(it - frontier.begin());
      used[pos[k]] = true;
    }
    std::vector<int> perm;
    for (size_t i = 0; i < frontier.size(); ++i) {
      if (!used[i]) perm.push_back(static_cast<int>(i));
    }
    const size_t rest_count = perm.size();
    perm.insert(perm.end(), pos.begin(), pos.end());
    t = permute_outputs(t, perm);

    std::vector<Port> new_frontier;
    std::vector<int> new_dims;
    for (size_t i = 0; i < rest_count; ++i) {
      new_frontier.push_back(frontier[perm[i]]);
      new_dims.push_back(fdims[perm[i]]);
    }
    const long long rest = product(new_dims);
    for (int k = 0; k < node.n_out(); ++k) {
      new_frontier.push_back(Port::at(v, k));
      new_dims.push_back(nt.out_dims()[k]);
    }
    check_cap(m, new_dims, cols);

    const long long k_in = nt.cols();
    const long long k_out = nt.rows();
    Eigen::MatrixXcd src = t.matrix();
    Eigen::Map<const Eigen::MatrixXcd> view(src.data(), k_in, rest * cols);
    Eigen::MatrixXcd res = nt.matrix() * view;
    Eigen::Map<const Eigen::MatrixXcd> back(res.data(), rest * k_out, cols);
    t = Tensor(s, new_dims, in_dims, Eigen::MatrixXcd(back));
    frontier = std::move(new_frontier);
    fdims = std::move(new_dims);
  }

  std::vector<int> perm;
  for (size_t j = 0; j < d.outputs().size(); ++j) {
    Port src = d.source_of(Port::boundary(static_cast<int>(j)));
    perm.push_back(static_cast<int>(
        std::find(frontier.begin(), frontier.end(), src) - frontier.begin()));
  }
  return permute_outputs(t, perm);
}

// The sub-diagram on `nodes` whose inputs are the d-sources `entries` and
// whose outputs are the d-sources `exits`.
Diagram extract(const Diagram& d, const std::vector<int>& nodes,
                const std::vector<Port>& entries,
                const std::vector<Port>& exits) {
  std::vector<int> new_id(d.node_count(), -1);
  for (size_t i = 0; i < nodes.size(); ++i) new_id[nodes[i]] = static_cast<int>(i);
  auto remap = [&](const Port& src) {
    auto it = std::find(entries.begin(), entries.end(), src);
    if (it != entries.end()) {
      return Port::boundary(static_cast<int>(it - entries.begin()));
    }
    return Port::at(new_id.at(src.node), src.slot);
  };
  std::vector<System> ins, outs;
  for (const Port& p : entries) ins.push_back(d.source_type(p));
  for (const Port& p : exits) outs.push_back(d.source_type(p));
  DiagramBuilder b(ins, outs);
  for (int v : nodes) b.add(d.node(v));
  for (int v : nodes) {
    for (int k = 0; k < d.node(v).n_in(); ++k) {
      b.wire(remap(d.source_of(Port::at(v, k))), Port::at(new_id[v], k));
    }
  }
  for (size_t j = 0; j < exits.size(); ++j) {
    b.wire(remap(exits[j]), Port::boundary(static_cast<int>(j)));
  }
  return b.build();
}

Tensor partition_eval(const Diagram& d, const ModelBinding& m,
                      std::mt19937_64& rng) {
  const int n = d.node_count();
  if (n <= 1) return sweep(d, m, d.topological_order());
  std::vector<std::vector<int>> comps = connected_components(d);
  std::bernoulli_distribution coin(0.5);
  if (comps.size() >= 2 && coin(rng)) {
    std::vector<bool> left(n, false);
    std::vector<int> g1, g2;
    std::shuffle(comps.begin(), comps.end(), rng);
    std::uniform_int_distribution<size_t> cut(1, comps.size() - 1);
    const size_t c = cut(rng);
    for (size_t i = 0; i < comps.size(); ++i) {
      for (int v : comps[i]) {
        if (i < c) left[v] = true;
      }
    }
    for (int v = 0; v < n; ++v) (left[v] ? g1 : g2).push_back(v);
    std::vector<Port> e1, e2, x1, x2;
    std::vector<int> in_pos, out_pos;  // positions in the concatenation
    std::vector<int> in_side, out_side;
    for (size_t i = 0; i < d.inputs().size(); ++i) {
      Port p = Port::boundary(static_cast<int>(i));
      Port tgt = d.target_of(p);
      bool l = !tgt.is_boundary() && left[tgt.node];
      (l ? e1 : e2).push_back(p);
      in_side.push_back(l ? 0 : 1);
      in_pos.push_back(static_cast<int>((l ? e1 : e2).size()) - 1);
    }
    for (size_t j = 0; j < d.outputs().size(); ++j) {
      Port src = d.source_of(Port::boundary(static_cast<int>(j)));
      bool l = !src.is_boundary() && left[src.node];
      (l ? x1 : x2).push_back(src);
      out_side.push_back(l ? 0 : 1);
      out_pos.push_back(static_cast<int>((l ? x1 : x2).size()) - 1);
    }
    Tensor t1 = partition_eval(extract(d, g1, e1, x1), m, rng);
    Tensor t2 = partition_eval(extract(d, g2, e2, x2), m, rng);
    Tensor k = kron(t1, t2);
    std::vector<int> ip, op;
    for (size_t i = 0; i < in_pos.size(); ++i) {
      ip.push_back(in_side[i] == 0 ? in_pos[i]
                                   : static_cast<int>(e1.size()) + in_pos[i]);
    }
    for (size_t j = 0; j < out_pos.size(); ++j) {
      op.push_back(out_side[j] == 0 ? out_pos[j]
                                    : static_cast<int>(x1.size()) + out_pos[j]);
    }
    return permute_outputs(permute_inputs(k, ip), op);
  }

  std::vector<Port> inputs;
  for (size_t i = 0; i < d.inputs().size(); ++i) {
    inputs.push_back(Port::boundary(static_cast<int>(i)));
  }
  // Among a few random cuts keep the one with the narrowest crossing.
  std::vector<int> s1, s2;
  std::vector<Port> crossing;
  long long best = -1;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<int> order = random_topological_order(d, rng());
    std::uniform_int_distribution<int> cut(1, n - 1);
    const int c = cut(rng);
    std::vector<bool> first(n, false);
    std::vector<int> a(order.begin(), order.begin() + c);
    std::vector<int> b(order.begin() + c, order.end());
    for (int v : a) first[v] = true;
    auto leaves = [&](const Port& src) {
      Port tgt = d.target_of(src);
      return tgt.is_boundary() || !first[tgt.node];
    };
    std::vector<Port> cross;
    long long width = 1;
    for (const Port& p : inputs) {
      if (leaves(p)) cross.push_back(p);
    }
    for (int v : a) {
      for (int k = 0; k < d.node(v).n_out(); ++k) {
        if (leaves(Port::at(v, k))) cross.push_back(Port::at(v, k));
      }
    }
    for (const Port& p : cross) width *= m.dim(d.source_type(p));
    if (best < 0 || width < best) {
      best = width;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      s1 = std::move(a);
      s2 = std::move(b);
      crossing = std::move(cross);
    }
  }
  std::vector<Port> outputs;
  for (size_t j = 0; j < d.outputs().size(); ++j) {
    outputs.push_back(d.source_of(Port::boundary(static_cast<int>(j))));
  }
  Tensor t1 = partition_eval(extract(d, s1, inputs, crossing), m, rng);
  Tensor t2 = partition_eval(extract(d, s2, crossing, outputs), m, rng);
  return compose(t1, t2);
}

std::string index_tuple(long long index, const std::vector<int>& dims) {
  std::vector<long long> digits(dims.size());
  for (size_t i = dims.size(); i-- > 0;) {
    digits[i] = index % dims[i];
    index /= dims[i];
  }
  std::string s = "(";
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(digits[i]);
  }
  return s + ")";
}

Tensor random_state(Semiring s, const std::vector<int>& dims,
                    std::mt19937_64& rng) {
  Tensor t(s, dims, {});
  std::normal_distribution<double> g;
  std::bernoulli_distribution b(0.5);
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    t.at(r, 0) = s == Semiring::kBoolean ? Complex(b(rng) ? 1.0 : 0.0)
                                         : Complex(g(rng), g(rng));
  }
  return t;
}

}  // namespace

Tensor node_tensor(const Node& node, const ModelBinding& m) {
  const Semiring s = m.semiring;
  switch (node.kind) {
    case NodeKind::kCup:
      return bent_wire(s, m.dim(node.carrier), true);
    case NodeKind::kCap:
      return bent_wire(s, m.dim(node.carrier), false);
    case NodeKind::kSpider: {
      const ObservableStructure& obs = m.observable(node.label, node.carrier);
      Tensor t = spider(obs, node.n_in(), node.n_out(), node.phase);
      return Tensor(s, m.dims_of(node.outputs), m.dims_of(node.inputs), t.matrix());
    }
    case NodeKind::kBox:
      break;
  }
  auto it = m.generators.find(node.label);
  if (it == m.generators.end()) {
    throw UnassignedGeneratorError("model '" + m.name +
                                   "' does not assign generator '" + node.label +
                                   "'");
  }
  Tensor t = it->second(node.has_phase ? node.phase : Phase());
  std::vector<int> out = m.dims_of(node.outputs);
  std::vector<int> in = m.dims_of(node.inputs);
  if (t.rows() != product(out) || t.cols() != product(in)) {
    throw ShapeMismatchError("generator '" + node.label +
                             "' has the wrong shape in model '" + m.name + "'");
  }
  return Tensor(s, out, in, t.matrix());
}

Tensor interpret(const Diagram& d, const ModelBinding& m, uint64_t seed) {
  return sweep(d, m, seed == 0 ? d.topological_order()
                               : random_topological_order(d, seed));
}

Tensor interpret_partitioned(const Diagram& d, const ModelBinding& m,
                             uint64_t seed) {
  std::mt19937_64 rng(seed);
  return partition_eval(d, m, rng);
}

bool model_equal(const Diagram& a, const Diagram& b, const ModelBinding& m,
                 EqualityMode mode, double tol) {
  if (m.semiring == Semiring::kBoolean && mode == EqualityMode::kTolerance) {
    mode = EqualityMode::kExact;
  }
  return equal_tensors(interpret(a, m), interpret(b, m), mode, tol);
}

bool SoundnessReport::all_sound() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const RuleVerdict& v) { return v.sound; });
}

std::string SoundnessReport::to_string() const {
  std::ostringstream os;
  for (const RuleVerdict& v : verdicts) {
    os << v.rule << ' ' << (v.sound ? "SOUND" : "UNSOUND")
       << " max_deviation=" << format_real(v.max_deviation, 12)
       << " samples=" << v.samples;
    if (!v.sound) os << " witness: " << v.witness;
    os << "\n";
  }
  return os.str();
}

SoundnessReport check_soundness(const std::vector<RewriteRule>& rules,
                                const ModelBinding& m, int samples,
                                uint64_t seed) {
  SoundnessReport report;
  report.model = m.name;
  const bool boolean = m.semiring == Semiring::kBoolean;
  const double tol = default_tolerance();
  std::mt19937_64 rng(seed);
  for (const RewriteRule& rule : rules) {
    RuleVerdict v;
    v.rule = rule.name;
    Tensor l = interpret(rule.lhs, m);
    Tensor r = interpret(rule.rhs, m);
    v.max_deviation = max_deviation(l, r);
    std::vector<int> in_dims = m.dims_of(rule.lhs.inputs());
    for (Eigen::Index c = 0; c < l.cols() && v.sound; ++c) {
      for (Eigen::Index row = 0; row < l.rows(); ++row) {
        if (std::abs(l(row, c) - r(row, c)) > (boolean ? 0.0 : tol)) {
          v.sound = false;
          v.witness = "input " + index_tuple(c, in_dims) + ": lhs " +
                      format_complex(l(row, c), 12) + ", rhs " +
                      format_complex(r(row, c), 12) + " at output " +
                      index_tuple(row, m.dims_of(rule.lhs.outputs()));
          break;
        }
      }
    }
    std::vector<int> out_dims = m.dims_of(rule.lhs.outputs());
    for (int k = 0; k < samples; ++k) {
      Tensor state = random_state(m.semiring, in_dims, rng);
      Tensor effect = adjoint(random_state(m.semiring, out_dims, rng));
      Complex a = compose(compose(state, l), effect)(0, 0);
      Complex b = compose(compose(state, r), effect)(0, 0);
      ++v.samples;
      if (std::abs(a - b) > (boolean ? 0.0 : tol * (1.0 + std::abs(a)))) {
        if (v.sound) {
          v.sound = false;
          v.witness = "closure sample " + std::to_string(k) + ": lhs " +
                      format_complex(a, 12) + ", rhs " + format_complex(b, 12);
        }
      }
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

std::string ScalarMonoid::to_string() const {
  if (semiring == Semiring::kComplex) return "scalars: " + carrier;
  std::ostringstream os;
  os << "scalars: " << carrier << "\n";
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      os << a << " * " << b << " = " << table[a][b] << "\n";
    }
  }
  return os.str();
}

ScalarMonoid scalar_monoid(const ModelBinding& m) {
  ScalarMonoid s;
  s.semiring = m.semiring;
  if (m.semiring == Semiring::kBoolean) {
    s.carrier = "Z2 = {0,1} under multiplication";
    for (int a = 0; a < 2; ++a) {
      std::vector<int> row;
      for (int b = 0; b < 2; ++b) {
        Tensor p = kron(Tensor::scalar(Semiring::kBoolean, a),
                        Tensor::scalar(Semiring::kBoolean, b));
        row.push_back(static_cast<int>(p(0, 0).real()));
      }
      s.table.push_back(row);
    }
  } else {
    s.carrier = "complex numbers under multiplication";
  }
  return s;
}

}  // namespace gct
