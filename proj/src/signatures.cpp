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

#include "gct/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gct/errors.hpp"

namespace gct {

const System& Signature::system(const std::string& n) const {
  for (const System& s : systems) {
    if (s.name == n) return s;
  }
  throw UnassignedGeneratorError("signature '" + name + "' has no system '" +
                                 n + "'");
}

bool Signature::declares(const std::string& n) const {
  return std::any_of(generators.begin(), generators.end(),
                     [&](const GeneratorDecl& g) { return g.name == n; });
}

const GeneratorDecl& Signature::generator(const std::string& n) const {
  for (const GeneratorDecl& g : generators) {
    if (g.name == n) return g;
  }
  throw UnassignedGeneratorError("signature '" + name +
                                 "' has no generator '" + n + "'");
}

Node Signature::node(const std::string& n, const Phase& phase) const {
  const GeneratorDecl& g = generator(n);
  if (g.phased) {
    return Node::phased_box(g.name, phase, g.inputs, g.outputs, g.dagger_partner);
  }
  return Node::box(g.name, g.inputs, g.outputs, g.dagger_partner);
}

Diagram Signature::box(const std::string& n, const Phase& phase) const {
  return Diagram::generator(node(n, phase));
}

void Signature::check(const Diagram& d) const {
  for (const Node& n : d.nodes()) {
    if (n.kind == NodeKind::kBox && !declares(n.label)) {
      throw UnassignedGeneratorError("generator '" + n.label +
                                     "' is not in signature '" + name + "'");
    }
    if (n.kind == NodeKind::kSpider &&
        std::find(spider_colours.begin(), spider_colours.end(), n.label) ==
            spider_colours.end()) {
      throw UnassignedGeneratorError("spider colour '" + n.label +
                                     "' is not in signature '" + name + "'");
    }
  }
}

const ModelBinding& TheoryFixture::model(const std::string& n) const {
  for (const ModelBinding& m : models) {
    if (m.name == n) return m;
  }
  throw UnassignedGeneratorError("fixture '" + signature.name +
                                 "' has no model '" + n + "'");
}

const RewriteRule& TheoryFixture::rule(const std::string& n) const {
  for (const RewriteRule& r : rules) {
    if (r.name == n) return r;
  }
  throw UnassignedGeneratorError("fixture '" + signature.name +
                                 "' has no rule '" + n + "'");
}

namespace {

constexpr Semiring kC = Semiring::kComplex;
constexpr Semiring kB = Semiring::kBoolean;

Tensor matrix(int out_dim, int in_dim, std::initializer_list<Complex> rows) {
  Eigen::MatrixXcd m(out_dim, in_dim);
  auto it = rows.begin();
  for (int r = 0; r < out_dim; ++r) {
    for (int c = 0; c < in_dim; ++c) m(r, c) = *it++;
  }
  return Tensor(kC, {out_dim}, {in_dim}, m);
}

// The graph of f : {0,1}^arity -> {0,1}^outs as a relation.
Tensor boolean_function(int arity, int outs,
                        const std::function<int(int)>& f) {
  std::vector<int> in(arity, 2), out(outs, 2);
  Tensor t(kB, out, in);
  for (int c = 0; c < (1 << arity); ++c) t.at(f(c), c) = 1.0;
  return t;
}

// Bits of a column index, first leg most significant.
int bit(int index, int leg, int arity) { return (index >> (arity - 1 - leg)) & 1; }

std::string perm_name(const std::vector<int>& p) {
  std::string s = "p";
  for (int x : p) s += static_cast<char>('0' + x);
  return s;
}

// Relation sending x to p[x].
Tensor set_permutation(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  Tensor t(kB, {n}, {n});
  for (int x = 0; x < n; ++x) t.at(p[x], x) = 1.0;
  return t;
}

void add_points(Signature* sig, ModelBinding* m, const System& sys,
                const std::vector<std::pair<std::string, Tensor>>& points) {
  for (const auto& [name, t] : points) {
    sig->generators.push_back({name, {}, {sys}, false, name + "_dag"});
    sig->generators.push_back({name + "_dag", {sys}, {}, false, name});
    m->set_dagger_pair(name, name + "_dag", [t](const Phase&) { return t; });
  }
}

}  // namespace

ObservableStructure qubit_z() { return standard_copy("white", kC, 2); }

ObservableStructure qubit_x() {
  const double r = 1.0 / std::sqrt(2.0);
  return copy_observable("gray", {Tensor::point(kC, {r, r}),
                                  Tensor::point(kC, {r, -r})});
}

ObservableStructure frel_white_bit() { return standard_copy("white", kB, 2); }

ObservableStructure frel_gray_bit() {
  Tensor mu = boolean_function(2, 1, [](int c) { return bit(c, 0, 2) ^ bit(c, 1, 2); });
  return ObservableStructure::from_algebra("gray", mu, Tensor::subset(2, {0}));
}

std::vector<std::pair<std::string, Tensor>> spek_points() {
  return {{"z0", Tensor::subset(4, {0, 1})}, {"z1", Tensor::subset(4, {2, 3})},
          {"x0", Tensor::subset(4, {0, 2})}, {"x1", Tensor::subset(4, {1, 3})},
          {"y0", Tensor::subset(4, {0, 3})}, {"y1", Tensor::subset(4, {1, 2})}};
}

std::vector<std::pair<std::string, Tensor>> stab_points() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  return {{"z0", Tensor::point(kC, {1.0, 0.0})},
          {"z1", Tensor::point(kC, {0.0, 1.0})},
          {"x0", Tensor::point(kC, {r, r})},
          {"x1", Tensor::point(kC, {r, -r})},
          {"y0", Tensor::point(kC, {r, r * i})},
          {"y1", Tensor::point(kC, {r, -r * i})}};
}

ObservableStructure spek_white() {
  Tensor mu(kB, {4}, {4, 4});
  const int pairs[8][3] = {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1},
                           {2, 2, 2}, {3, 3, 2}, {2, 3, 3}, {3, 2, 3}};
  for (const auto& p : pairs) mu.at(p[2], p[0] * 4 + p[1]) = 1.0;
  ObservableStructure o =
      ObservableStructure::from_algebra("white", mu, Tensor::subset(4, {0, 2}));
  o.phase_moduli = {2, 2};
  o.phase_table = {Tensor::subset(4, {0, 2}), Tensor::subset(4, {0, 3}),
                   Tensor::subset(4, {1, 2}), Tensor::subset(4, {1, 3})};
  return o;
}

ObservableStructure spek_gray() {
  return conjugated(spek_white(), set_permutation({0, 2, 1, 3}), "gray");
}

Tensor permutation_matrix(const std::vector<int>& perm, int dimension) {
  return Tensor::wiring(kC, std::vector<int>(perm.size(), dimension), perm);
}

TheoryFixture symgrp_fixture(int dimension) {
  TheoryFixture f;
  f.signature.name = "symgrp";
  f.signature.systems = {System("u", DualMode::kSelf)};
  ModelBinding m;
  m.name = "perm";
  m.dims["u"] = dimension;
  f.models.push_back(m);
  return f;
}

TheoryFixture qucirc_signature() {
  TheoryFixture f;
  Signature& s = f.signature;
  s.name = "qucirc";
  const System q("Q", DualMode::kSelf);
  s.systems = {q};
  s.spider_colours = {"white", "gray"};
  s.generators = {{"ket0", {}, {q}, false, "bra0"}, {"ket1", {}, {q}, false, "bra1"},
                  {"bra0", {q}, {}, false, "ket0"}, {"bra1", {q}, {}, false, "ket1"},
                  {"Z", {q}, {q}, true, "Z"},      {"X", {q}, {q}, true, "X"},
                  {"CX", {q, q}, {q, q}, false, "CX"}};

  ModelBinding m;
  m.name = "qubit";
  m.dims["Q"] = 2;
  m.set_dagger_pair("ket0", "bra0",
                    [](const Phase&) { return Tensor::point(kC, {1.0, 0.0}); });
  m.set_dagger_pair("ket1", "bra1",
                    [](const Phase&) { return Tensor::point(kC, {0.0, 1.0}); });
  m.set_generator("Z", [](const Phase& p) {
    return matrix(2, 2, {1.0, 0.0, 0.0, std::polar(1.0, p.radians())});
  });
  m.set_generator("X", [](const Phase& p) {
    // Half angles make X 4pi-periodic; the representative in (-pi, pi]
    // keeps X(-a) = X(a)^dagger for phases stored mod 2pi.
    const double a = p.radians() > kPi ? p.radians() - kTwoPi : p.radians();
    const double c = std::cos(a / 2), sn = std::sin(a / 2);
    const Complex mi(0.0, -sn);
    return matrix(2, 2, {c, mi, mi, c});
  });
  Tensor cx(kC, {2, 2}, {2, 2});
  for (int c = 0; c < 4; ++c) {
    const int ctl = c >> 1, tgt = c & 1;
    cx.at(ctl * 2 + (tgt ^ ctl), c) = 1.0;
  }
  m.set_generator("CX", cx);
  m.observables.emplace("white", qubit_z());
  m.observables.emplace("gray", qubit_x());
  f.models.push_back(m);

  DiagramBuilder lhs({q, q}, {q, q});
  int a = lhs.add(Node::spider("white", q, 2, 1));
  int b = lhs.add(Node::spider("white", q, 1, 2));
  lhs.wire(Port::boundary(0), Port::at(a, 0));
  lhs.wire(Port::boundary(1), Port::at(a, 1));
  lhs.wire(Port::at(a, 0), Port::at(b, 0));
  lhs.wire(Port::at(b, 0), Port::boundary(0));
  lhs.wire(Port::at(b, 1), Port::boundary(1));
  f.rules.push_back(RewriteRule::make(
      "white-fusion", lhs.build(),
      Diagram::generator(Node::spider("white", q, 2, 2)), true));
  return f;
}

TheoryFixture boolcirc_fixture() {
  TheoryFixture f;
  Signature& s = f.signature;
  s.name = "boolcirc";
  const System b("b", DualMode::kNone);
  s.systems = {b};
  s.generators = {{"AND", {b, b}, {b}, false, ""},
                  {"OR", {b, b}, {b}, false, ""},
                  {"NOT", {b}, {b}, false, ""},
                  {"FAN", {b}, {b, b}, false, ""}};

  {
    // AND(x, OR(y, z)) -> OR(AND(x, y), AND(x, z))
    DiagramBuilder l({b, b, b}, {b});
    int o = l.add(s.node("OR"));
    int a = l.add(s.node("AND"));
    l.wire(Port::boundary(1), Port::at(o, 0));
    l.wire(Port::boundary(2), Port::at(o, 1));
    l.wire(Port::boundary(0), Port::at(a, 0));
    l.wire(Port::at(o, 0), Port::at(a, 1));
    l.wire(Port::at(a, 0), Port::boundary(0));
    DiagramBuilder r({b, b, b}, {b});
    int fan = r.add(s.node("FAN"));
    int a1 = r.add(s.node("AND"));
    int a2 = r.add(s.node("AND"));
    int o2 = r.add(s.node("OR"));
    r.wire(Port::boundary(0), Port::at(fan, 0));
    r.wire(Port::at(fan, 0), Port::at(a1, 0));
    r.wire(Port::boundary(1), Port::at(a1, 1));
    r.wire(Port::at(fan, 1), Port::at(a2, 0));
    r.wire(Port::boundary(2), Port::at(a2, 1));
    r.wire(Port::at(a1, 0), Port::at(o2, 0));
    r.wire(Port::at(a2, 0), Port::at(o2, 1));
    r.wire(Port::at(o2, 0), Port::boundary(0));
    f.rules.push_back(RewriteRule::make("distributivity", l.build(), r.build()));
  }
  {
    // NOT(AND(a, b)) -> OR(NOT a, NOT b)
    DiagramBuilder l({b, b}, {b});
    int a = l.add(s.node("AND"));
    int n = l.add(s.node("NOT"));
    l.wire(Port::boundary(0), Port::at(a, 0));
    l.wire(Port::boundary(1), Port::at(a, 1));
    l.wire(Port::at(a, 0), Port::at(n, 0));
    l.wire(Port::at(n, 0), Port::boundary(0));
    DiagramBuilder r({b, b}, {b});
    int n1 = r.add(s.node("NOT"));
    int n2 = r.add(s.node("NOT"));
    int o = r.add(s.node("OR"));
    r.wire(Port::boundary(0), Port::at(n1, 0));
    r.wire(Port::boundary(1), Port::at(n2, 0));
    r.wire(Port::at(n1, 0), Port::at(o, 0));
    r.wire(Port::at(n2, 0), Port::at(o, 1));
    r.wire(Port::at(o, 0), Port::boundary(0));
    f.rules.push_back(RewriteRule::make("de-morgan", l.build(), r.build()));
  }

  auto bits = [](int c, int leg) { return bit(c, leg, 2); };
  ModelBinding mb;
  mb.name = "B";
  mb.semiring = kB;
  mb.dims["b"] = 2;
  mb.set_generator("AND", boolean_function(2, 1, [&](int c) { return bits(c, 0) & bits(c, 1); }));
  mb.set_generator("OR", boolean_function(2, 1, [&](int c) { return bits(c, 0) | bits(c, 1); }));
  mb.set_generator("NOT", boolean_function(1, 1, [](int c) { return 1 - c; }));
  mb.set_generator("FAN", boolean_function(1, 2, [](int c) { return c * 3; }));
  ModelBinding mp = mb;
  mp.name = "P";
  mp.set_generator("OR", boolean_function(2, 1, [&](int c) { return bits(c, 0) ^ bits(c, 1); }));
  mp.set_generator("NOT", boolean_function(1, 1, [](int c) { return c; }));
  f.models = {mb, mp};
  return f;
}

TheoryFixture stab_fixture() {
  TheoryFixture f;
  Signature& s = f.signature;
  s.name = "stab";
  const System q("Q", DualMode::kSelf);
  s.systems = {q};
  s.spider_colours = {"white", "gray"};
  ModelBinding m;
  m.name = "stab";
  m.dims["Q"] = 2;
  add_points(&s, &m, q, stab_points());
  const Complex i(0.0, 1.0);
  s.generators.push_back({"Zq", {q}, {q}, false, "Zq_dag"});
  s.generators.push_back({"Zq_dag", {q}, {q}, false, "Zq"});
  s.generators.push_back({"Xq", {q}, {q}, false, "Xq_dag"});
  s.generators.push_back({"Xq_dag", {q}, {q}, false, "Xq"});
  Tensor zq = matrix(2, 2, {1.0, 0.0, 0.0, i});
  const Complex k = 1.0 / std::sqrt(Complex(0.0, -2.0));
  Tensor xq = matrix(2, 2, {k, -i * k, -i * k, k});
  m.set_dagger_pair("Zq", "Zq_dag", [zq](const Phase&) { return zq; });
  m.set_dagger_pair("Xq", "Xq_dag", [xq](const Phase&) { return xq; });

  ObservableStructure white = qubit_z();
  ObservableStructure gray = qubit_x();
  white.phase_moduli = gray.phase_moduli = {4};
  Complex ik = 1.0;
  for (int e = 0; e < 4; ++e, ik *= i) {
    white.phase_table.push_back(Tensor::point(kC, {1.0, ik}));
    gray.phase_table.push_back(Tensor(
        kC, {2}, {}, gray.angle_basis[0].matrix() + ik * gray.angle_basis[1].matrix()));
  }
  m.observables.emplace("white", white);
  m.observables.emplace("gray", gray);
  f.models.push_back(m);
  return f;
}

TheoryFixture spek_fixture() {
  TheoryFixture f;
  Signature& s = f.signature;
  s.name = "spek";
  const System x("S", DualMode::kSelf);
  s.systems = {x};
  s.spider_colours = {"white", "gray"};
  ModelBinding m;
  m.name = "spek";
  m.semiring = kB;
  m.dims["S"] = 4;
  add_points(&s, &m, x, spek_points());
  std::vector<int> p = {0, 1, 2, 3};
  do {
    std::vector<int> inv(4);
    for (int k = 0; k < 4; ++k) inv[p[k]] = k;
    s.generators.push_back({perm_name(p), {x}, {x}, false, perm_name(inv)});
    m.set_generator(perm_name(p), set_permutation(p));
  } while (std::next_permutation(p.begin(), p.end()));
  m.observables.emplace("white", spek_white());
  m.observables.emplace("gray", spek_gray());
  f.models.push_back(m);
  return f;
}

TheoryFixture toy_fixture(const std::vector<int>& phase_group) {
  TheoryFixture f;
  if (phase_group == std::vector<int>{4}) {
    f = stab_fixture();
    f.signature.name = "toy-z4";
  } else if (phase_group == std::vector<int>{2, 2}) {
    f = spek_fixture();
    f.signature.name = "toy-z2xz2";
  } else {
    throw PreconditionError("toy model needs a phase group of order 4");
  }
  return f;
}

std::vector<std::string> fixture_names() {
  return {"qucirc", "boolcirc", "stab", "spek", "symgrp", "toy-z4", "toy-z2xz2"};
}

TheoryFixture fixture_by_name(const std::string& name) {
  if (name == "qucirc") return qucirc_signature();
  if (name == "boolcirc") return boolcirc_fixture();
  if (name == "stab") return stab_fixture();
  if (name == "spek") return spek_fixture();
  if (name == "symgrp") return symgrp_fixture();
  if (name == "toy-z4") return toy_fixture({4});
  if (name == "toy-z2xz2") return toy_fixture({2, 2});
  throw PreconditionError("unknown theory '" + name + "'");
}

}  // namespace gct
