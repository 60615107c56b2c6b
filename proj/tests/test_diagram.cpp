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

#include <cmath>

#include "doctest.h"
#include "gct/diagram.hpp"
#include "gct/errors.hpp"
#include "gct/model.hpp"
#include "gct/signatures.hpp"
#include "gct/text_format.hpp"
#include "support/random_diagrams.hpp"

using namespace gct;
using gct::testing::NodeGen;
using gct::testing::Rng;

namespace {

const System kA("A", DualMode::kFormal);
const System kQ("Q", DualMode::kSelf);

Node f_box() { return Node::box("f", {kA}, {kA}, "f_dag"); }
Node g_box() { return Node::box("g", {kA}, {kA}, "g_dag"); }

// A small signature over formal-dual A with non-self-adjoint boxes.
std::vector<NodeGen> formal_palette() {
  return {
      [](Rng&) { return f_box(); },
      [](Rng&) { return g_box(); },
      [](Rng&) { return Node::box("m", {kA, kA}, {kA}, "m_dag"); },
      [](Rng&) { return Node::box("c", {kA}, {kA, kA}, "c_dag"); },
      [](Rng&) { return Node::box("s", {}, {kA}, "s_dag"); },
      [](Rng&) { return Node::box("e", {kA}, {}, "e_dag"); },
      [](Rng& r) { return Node::spider("white", kA, 1, 2, testing::random_angle(r)); },
  };
}

std::vector<NodeGen> qubit_palette() {
  return {
      [](Rng& r) { return Node::phased_box("Z", testing::random_angle(r), {kQ}, {kQ}, "Z"); },
      [](Rng& r) { return Node::phased_box("X", testing::random_angle(r), {kQ}, {kQ}, "X"); },
      [](Rng&) { return Node::box("CX", {kQ, kQ}, {kQ, kQ}, "CX"); },
      [](Rng&) { return Node::box("ket0", {}, {kQ}, "bra0"); },
      [](Rng&) { return Node::box("bra1", {kQ}, {}, "ket1"); },
      [](Rng&) { return Node::cup(kQ); },
      [](Rng&) { return Node::cap(kQ); },
      [](Rng& r) { return Node::spider("white", kQ, 1, 2, testing::random_angle(r)); },
      [](Rng& r) { return Node::spider("gray", kQ, 2, 1, testing::random_angle(r)); },
  };
}

// Random tensors for the formal palette at dimension 3.
ModelBinding formal_model(Rng& rng) {
  ModelBinding m;
  m.name = "random3";
  m.dims["A"] = 3;
  auto reg = [&](const std::string& l, const std::string& dl, int o, int i) {
    Tensor t = testing::random_complex(static_cast<int>(std::pow(3, o)),
                                       static_cast<int>(std::pow(3, i)), rng);
    m.set_dagger_pair(l, dl, [t](const Phase&) { return t; });
  };
  reg("f", "f_dag", 1, 1);
  reg("g", "g_dag", 1, 1);
  reg("m", "m_dag", 1, 2);
  reg("c", "c_dag", 2, 1);
  reg("s", "s_dag", 1, 0);
  reg("e", "e_dag", 0, 1);
  m.observables.emplace("white", standard_copy("white", Semiring::kComplex, 3));
  return m;
}

Diagram zigzag(const System& a) {
  DiagramBuilder b({a}, {a});
  int cup = b.add(Node::cup(a));
  int cap = b.add(Node::cap(a));
  b.wire(Port::boundary(0), Port::at(cap, 0));
  b.wire(Port::at(cup, 0), Port::at(cap, 1));
  b.wire(Port::at(cup, 1), Port::boundary(0));
  return b.build();
}

}  // namespace

TEST_CASE("compose with identity is syntactically the same diagram") {
  Diagram f = Diagram::generator(f_box());
  CHECK(iso_equal(compose(Diagram::identity({kA}), f), f));
  CHECK(iso_equal(compose(f, Diagram::identity({kA})), f));
}

TEST_CASE("interchange law holds syntactically") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Diagram f = testing::random_diagram(rng, {kA}, formal_palette(), 3, false);
    Diagram g = testing::random_diagram(rng, {kA, kA}, formal_palette(), 3, false);
    Diagram h = testing::random_diagram(rng, f.outputs(), formal_palette(), 2, false);
    Diagram k = testing::random_diagram(rng, g.outputs(), formal_palette(), 2, false);
    CHECK(iso_equal(compose(tensor(f, g), tensor(h, k)),
                    tensor(compose(f, h), compose(g, k))));
  }
}

TEST_CASE("composition type mismatch names the offending index") {
  Diagram f = Diagram::identity({kA, kA});
  Diagram g = Diagram::identity({kA, kA.dual()});
  try {
    compose(f, g);
    FAIL("expected TypeMismatchError");
  } catch (const TypeMismatchError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(compose(f, Diagram::identity({kA})), TypeMismatchError);
}

TEST_CASE("tensor unit and scalar commutativity") {
  Diagram f = Diagram::generator(f_box());
  CHECK(iso_equal(tensor(f, Diagram()), f));
  CHECK(iso_equal(tensor(Diagram(), f), f));
  CHECK(iso_equal(tensor(Diagram::identity({kA}), Diagram::identity({kA})),
                  Diagram::identity({kA, kA})));
  Diagram s = compose(Diagram::generator(Node::box("s", {}, {kA}, "s_dag")),
                      Diagram::generator(Node::box("e", {kA}, {}, "e_dag")));
  Diagram s2 = compose(Diagram::generator(Node::box("s", {}, {kA}, "s_dag")),
                       Diagram::generator(f_box()));
  s2 = compose(s2, Diagram::generator(Node::box("e", {kA}, {}, "e_dag")));
  CHECK(iso_equal(tensor(s, s2), tensor(s2, s)));
  CHECK_FALSE(iso_equal(s, s2));
}

TEST_CASE("zig-zag yanks to the identity") {
  CHECK(iso_equal(zigzag(kA), Diagram::identity({kA})));
  CHECK(iso_equal(zigzag(kQ), Diagram::identity({kQ})));
  Diagram y = yank_normalize(zigzag(kA));
  CHECK(y.node_count() == 0);
}

TEST_CASE("crossed and uncrossed layouts of one circuit are iso-equal") {
  // (f (x) g) followed by a swap, versus swap followed by (g (x) f).
  Diagram fg = tensor(Diagram::generator(f_box()), Diagram::generator(g_box()));
  Diagram sw = Diagram::permutation({kA, kA}, {1, 0});
  Diagram gf = tensor(Diagram::generator(g_box()), Diagram::generator(f_box()));
  CHECK(iso_equal(compose(fg, sw), compose(sw, gf)));
  CHECK_FALSE(iso_equal(compose(fg, sw), fg));
  CHECK(iso_equal(compose(sw, sw), Diagram::identity({kA, kA})));
}

TEST_CASE("dagger laws") {
  Diagram f = Diagram::generator(f_box());
  CHECK_FALSE(iso_equal(f, dagger(f)));
  CHECK(iso_equal(dagger(dagger(f)), f));
  CHECK(iso_equal(dagger(Diagram::identity({kA})), Diagram::identity({kA})));
  Diagram sw = Diagram::permutation({kA, kQ}, {1, 0});
  CHECK(iso_equal(dagger(sw), Diagram::permutation({kQ, kA}, {1, 0})));
  CHECK_THROWS_AS(dagger(Diagram::generator(Node::box("h", {kA}, {kA}))),
                  UnsupportedDaggerError);

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Diagram a = testing::random_diagram(rng, {kA, kA}, formal_palette(), 4);
    Diagram b = testing::random_diagram(rng, a.outputs(), formal_palette(), 4);
    CHECK(iso_equal(dagger(dagger(a)), a));
    CHECK(iso_equal(dagger(compose(a, b)), compose(dagger(b), dagger(a))));
    CHECK(iso_equal(dagger(tensor(a, b)), tensor(dagger(a), dagger(b))));
  }
}

TEST_CASE("spider phases negate under dagger") {
  Phase p = Phase::angle(0.5);
  Diagram s = Diagram::generator(Node::spider("white", kQ, 1, 2, p));
  Diagram d = dagger(s);
  CHECK(d.node(0).phase == -p);
  CHECK(d.node(0).n_in() == 2);
}

TEST_CASE("upper and lower star") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Diagram a = testing::random_diagram(rng, {kA}, formal_palette(), 4);
    CHECK(iso_equal(transpose_upper(transpose_upper(a)), a));
    CHECK(iso_equal(conjugate_lower(a), dagger(transpose_upper(a))));
  }
  CHECK(iso_equal(transpose_upper(Diagram::identity({kA})),
                  Diagram::identity({kA.dual()})));
  System none("b", DualMode::kNone);
  CHECK_THROWS_AS(transpose_upper(Diagram::identity({none})), MissingDualError);
}

TEST_CASE("transpose of a classical point is its effect") {
  TheoryFixture qc = qucirc_signature();
  const ModelBinding& m = qc.model("qubit");
  for (const char* k : {"ket0", "ket1"}) {
    Tensor t = interpret(transpose_upper(qc.signature.box(k)), m);
    Tensor v = interpret(qc.signature.box(k), m);
    CHECK(equal_tensors(t, transpose(v), EqualityMode::kTolerance, 1e-12));
  }
}

TEST_CASE("traces") {
  TheoryFixture qc = qucirc_signature();
  const ModelBinding& qm = qc.model("qubit");
  Tensor tr = interpret(trace(Diagram::identity({kQ})), qm);
  CHECK(std::abs(tr(0, 0) - Complex(2.0)) < 1e-12);

  Rng rng(5);
  ModelBinding m = formal_model(rng);
  Diagram f = Diagram::generator(f_box());
  Diagram g = Diagram::generator(g_box());
  Tensor ft = interpret(f, m);
  Complex diag_sum = ft.matrix().trace();
  CHECK(std::abs(interpret(trace(f), m)(0, 0) - diag_sum) < 1e-12);
  Complex fg = interpret(trace(compose(f, g)), m)(0, 0);
  Complex gf = interpret(trace(compose(g, f)), m)(0, 0);
  Complex oracle = (interpret(g, m).matrix() * ft.matrix()).trace();
  CHECK(std::abs(fg - gf) < 1e-9);
  CHECK(std::abs(fg - oracle) < 1e-9);

  // Partial trace over the second wire of f (x) g is tr(g) f.
  Diagram pt = partial_trace(tensor(f, g), 1);
  CHECK(pt.inputs().size() == 1);
  Tensor expect = ft.scaled(interpret(g, m).matrix().trace());
  CHECK(equal_tensors(interpret(pt, m), expect, EqualityMode::kTolerance, 1e-9));
  CHECK_THROWS_AS(partial_trace(f, 3), IndexError);
  Diagram mixed = Diagram::generator(Node::box("k", {kA}, {kQ}, "k_dag"));
  CHECK_THROWS_AS(partial_trace(mixed, 0), TypeMismatchError);
}

TEST_CASE("yank normalization preserves evaluation") {
  TheoryFixture qc = qucirc_signature();
  const ModelBinding& m = qc.model("qubit");
  Rng rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    Diagram d = testing::random_diagram(rng, {kQ, kQ}, qubit_palette(), 7);
    CHECK(equal_tensors(interpret(d, m), interpret(yank_normalize(d), m),
                        EqualityMode::kTolerance, 1e-9));
  }
}

TEST_CASE("scalar mobility") {
  TheoryFixture qc = qucirc_signature();
  const ModelBinding& m = qc.model("qubit");
  Diagram scalar = compose(qc.signature.box("ket0"),
                           compose(qc.signature.box("X", Phase::angle(1.0)),
                                   qc.signature.box("bra1")));
  Diagram f = qc.signature.box("Z", Phase::angle(0.3));
  Diagram g = qc.signature.box("X", Phase::angle(0.7));
  Diagram left = compose(tensor(scalar, f), g);
  Diagram right = compose(f, tensor(g, scalar));
  CHECK(iso_equal(left, right));
  CHECK(equal_tensors(interpret(left, m), interpret(right, m),
                      EqualityMode::kTolerance, 1e-12));
}

TEST_CASE("text format round trip") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Diagram d = trial % 2 ? testing::random_diagram(rng, {kQ}, qubit_palette(), 6)
                          : testing::random_diagram(rng, {kA}, formal_palette(), 6);
    std::string text = print_diagram(d, "test");
    ParsedDiagram p = parse_diagram(text);
    CHECK(p.signature == "test");
    CHECK(print_diagram(p.diagram, "test") == text);
    CHECK(iso_equal(p.diagram, d));
  }
}

TEST_CASE("text format reports errors with positions") {
  const char* bad_kind =
      "gct-diagram 1\nsignature x\nsystem Q self\ninputs Q\noutputs Q\n"
      "node 0 blob f in=Q out=Q\nwire in:0 0.i0\nwire 0.o0 out:0\nend\n";
  try {
    parse_diagram(bad_kind);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.column() == 8);
  }
  const char* bad_system =
      "gct-diagram 1\nsignature x\ninputs Q\noutputs Q\nend\n";
  CHECK_THROWS_AS(parse_diagram(bad_system), ParseError);
  const char* truncated = "gct-diagram 1\nsignature x\n";
  CHECK_THROWS_AS(parse_diagram(truncated), ParseError);
  const char* dangling =
      "gct-diagram 1\nsignature x\nsystem Q self\ninputs Q\noutputs Q\nend\n";
  CHECK_THROWS_AS(parse_diagram(dangling), ParseError);
}

TEST_CASE("rule files round trip") {
  TheoryFixture bc = boolcirc_fixture();
  for (const RewriteRule& r : bc.rules) {
    std::string text = print_rule(r, "boolcirc");
    RewriteRule back = parse_rule(text);
    CHECK(back.name == r.name);
    CHECK(iso_equal(back.lhs, r.lhs));
    CHECK(iso_equal(back.rhs, r.rhs));
    CHECK(print_rule(back, "boolcirc") == text);
  }
}

TEST_CASE("rule sides must share a type") {
  CHECK_THROWS_AS(RewriteRule::make("bad", Diagram::identity({kA}),
                                    Diagram::identity({kA, kA})),
                  TypeMismatchError);
}
