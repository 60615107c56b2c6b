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
#include <set>

#include "doctest.h"
#include "gct/algebra.hpp"
#include "gct/errors.hpp"
#include "gct/model.hpp"
#include "gct/signatures.hpp"

using namespace gct;

namespace {

const System kS("S", DualMode::kSelf);

}  // namespace

TEST_CASE("fixture rules type-check against their signatures") {
  for (const std::string& name : fixture_names()) {
    const TheoryFixture f = fixture_by_name(name);
    CHECK(f.signature.name == name);
    CHECK_FALSE(f.models.empty());
    for (const RewriteRule& r : f.rules) {
      INFO(name << " " << r.name);
      CHECK_NOTHROW(f.signature.check(r.lhs));
      CHECK_NOTHROW(f.signature.check(r.rhs));
      CHECK(r.lhs.inputs() == r.rhs.inputs());
      CHECK(r.lhs.outputs() == r.rhs.outputs());
    }
  }
  CHECK_THROWS_AS(fixture_by_name("nope"), PreconditionError);
}

TEST_CASE("QuCirc dagger pairing") {
  const TheoryFixture qc = qucirc_signature();
  const ModelBinding& m = qc.model("qubit");
  const Diagram cx = qc.signature.box("CX");
  CHECK(dagger(cx).node(0).label == "CX");
  CHECK(max_deviation(interpret(dagger(cx), m), interpret(cx, m)) < 1e-15);
  const Diagram ket0 = qc.signature.box("ket0");
  CHECK(dagger(ket0).node(0).label == "bra0");
  CHECK(max_deviation(interpret(dagger(ket0), m),
                      interpret(qc.signature.box("bra0"), m)) < 1e-15);
  for (double a : {0.3, 2.0, -1.2}) {
    const Diagram x = qc.signature.box("X", Phase::angle(a));
    CHECK(max_deviation(interpret(dagger(x), m),
                        interpret(qc.signature.box("X", Phase::angle(-a)), m)) < 1e-12);
    CHECK(max_deviation(interpret(dagger(x), m), adjoint(interpret(x, m))) < 1e-12);
  }
  CHECK_THROWS_AS(qc.signature.generator("Y"), UnassignedGeneratorError);
}

TEST_CASE("Stab fixture") {
  const TheoryFixture st = stab_fixture();
  const ModelBinding& m = st.model("stab");
  CHECK(stab_points().size() == 6);
  for (const auto& [name, p] : stab_points()) {
    CHECK(std::abs(p.matrix().norm() - 1.0) < 1e-15);
    const Tensor t = interpret(st.signature.box(name), m);
    CHECK(max_deviation(t, p) < 1e-15);
    const Tensor d = interpret(st.signature.box(name + "_dag"), m);
    CHECK(max_deviation(d, adjoint(p)) < 1e-15);
  }
  const Tensor zq = interpret(st.signature.box("Zq"), m);
  CHECK(std::abs(zq(1, 1) - Complex(0, 1)) < 1e-15);
  const Tensor xq = interpret(st.signature.box("Xq"), m);
  CHECK(max_deviation(compose(xq, adjoint(xq)),
                      Tensor::identity(Semiring::kComplex, {2})) < 1e-12);
  // Xq permutes the six points up to phase, as a Clifford must.
  for (const auto& [name, p] : stab_points()) {
    bool found = false;
    for (const auto& [other, q] : stab_points()) {
      found |= equal_tensors(compose(p, xq), q, EqualityMode::kUpToGlobalScalar);
    }
    CHECK(found);
  }
  const ObservableStructure& w = m.observable("white", st.signature.system("Q"));
  CHECK(classical_point_indices(w, {stab_points()[0].second, stab_points()[1].second,
                                    stab_points()[2].second}) == std::vector<int>{0, 1});
}

TEST_CASE("Spek fixture") {
  const TheoryFixture sp = spek_fixture();
  const ModelBinding& m = sp.model("spek");
  int perms = 0;
  std::set<std::vector<double>> images;
  for (const GeneratorDecl& g : sp.signature.generators) {
    if (g.name[0] != 'p') continue;
    ++perms;
    const Tensor t = interpret(sp.signature.box(g.name), m);
    const Tensor inv = interpret(sp.signature.box(g.dagger_partner), m);
    CHECK(compose(t, inv).matrix() == Tensor::identity(Semiring::kBoolean, {4}).matrix());
    std::vector<double> flat;
    for (int i = 0; i < 16; ++i) flat.push_back(t.matrix()(i / 4, i % 4).real());
    images.insert(flat);
  }
  CHECK(perms == 24);
  CHECK(images.size() == 24);

  CHECK(spek_points().size() == 6);
  for (const auto& [name, p] : spek_points()) {
    CHECK(p.matrix().real().sum() == 2.0);
  }
  const ObservableStructure w = spek_white();
  CHECK(w.eta.matrix() == Tensor::subset(4, {0, 2}).matrix());
  // {00, 11} ~ 0 in the multiplication table.
  CHECK(w.mu(0, 0) == Complex(1.0));
  CHECK(w.mu(0, 5) == Complex(1.0));
  CHECK(check_frobenius(w).all_pass());
  CHECK(check_frobenius(spek_gray()).all_pass());

  // Both observable-induced cups coincide with the model's diagonal cup.
  const Tensor cup = interpret(Diagram::generator(Node::cup(kS)), m);
  CHECK(compose(w.eta, w.delta).matrix() == cup.matrix());
  CHECK(compose(spek_gray().eta, spek_gray().delta).matrix() == cup.matrix());
}

TEST_CASE("Toy fixtures") {
  CHECK(toy_fixture({4}).signature.name == "toy-z4");
  CHECK(toy_fixture({2, 2}).signature.name == "toy-z2xz2");
  CHECK_THROWS_AS(toy_fixture({3}), PreconditionError);
  const TheoryFixture t4 = toy_fixture({4});
  const ModelBinding& m = t4.models[0];
  const ObservableStructure& w = m.observable("white", t4.signature.system("Q"));
  CHECK(w.phase_moduli == std::vector<int>{4});
}
