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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gct/errors.hpp"
#include "gct/nonlocality.hpp"
#include "gct/rewrite.hpp"
#include "support/random_diagrams.hpp"

using namespace gct;
using gct::testing::Rng;

namespace {

const System kA("A");

std::vector<Phase> angles(std::initializer_list<double> a) {
  std::vector<Phase> out;
  for (double x : a) out.push_back(Phase::angle(x));
  return out;
}

int bit_parity(int index, int n) {
  int p = 0;
  for (int s = 0; s < n; ++s) p ^= (index >> s) & 1;
  return p;
}

// Joint outcome index after moving system s to position perm[s].
int permute_index(int index, const std::vector<int>& perm, int base) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> d(n), out(n);
  for (int s = n - 1; s >= 0; --s) {
    d[s] = index % base;
    index /= base;
  }
  for (int s = 0; s < n; ++s) out[perm[s]] = d[s];
  int r = 0;
  for (int x : out) r = r * base + x;
  return r;
}

}  // namespace

TEST_CASE("GHZ states") {
  const ObservablePair z2 = pair_by_name("z2");
  const ModelBinding m = pair_model(z2, kA);
  const Tensor bell = interpret(ghz_state(kA, 2), m);
  CHECK(bell.matrix().col(0).isApprox(Eigen::Vector4cd(1, 0, 0, 1)));
  const Tensor ghz3 = interpret(ghz_state(kA, 3), m);
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(8);
  expected(0) = expected(7) = 1;
  CHECK(ghz3.matrix().col(0).isApprox(expected));
  const Diagram norm = compose(ghz_state(kA, 3), dagger(ghz_state(kA, 3)));
  CHECK(std::abs(interpret(norm, m)(0, 0) - Complex(2.0)) < 1e-12);
  CHECK(spider_fuse(norm).node_count() <= 2);
  CHECK_THROWS_AS(ghz_state(kA, 1), PreconditionError);
}

TEST_CASE("outcome labels") {
  const OutcomeLabels z2 = outcome_labels(pair_by_name("z2"));
  CHECK(z2.moduli == std::vector<int>{2});
  CHECK(z2.phases[0] == Phase());
  CHECK(z2.phases[1] == Phase::angle(kPi));
  const OutcomeLabels spek = outcome_labels(pair_by_name("spek"));
  CHECK(spek.moduli == std::vector<int>{2});
  CHECK(spek.phases[1] == Phase::element({2, 2}, {1, 1}));
  CHECK(outcome_labels(pair_by_name("z3")).moduli == std::vector<int>{3});
  CHECK_THROWS_AS(outcome_labels(pair_by_name("zz")), PreconditionError);
}

TEST_CASE("fixed settings") {
  const ObservablePair z2 = pair_by_name("z2");
  const GhzCorrelation xxx = ghz_correlations(z2, angles({0, 0, 0}));
  const GhzCorrelation xyy = ghz_correlations(z2, angles({0, kPi / 2, kPi / 2}));
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(xxx.joint.probabilities[i] - (bit_parity(i, 3) == 0 ? 0.25 : 0.0)) < 1e-12);
    CHECK(std::abs(xyy.joint.probabilities[i] - (bit_parity(i, 3) == 1 ? 0.25 : 0.0)) < 1e-12);
  }
  CHECK(xxx.definite_parity() == 0);
  CHECK(xyy.definite_parity() == 1);
  CHECK(xxx.outcome(5) == std::vector<int>{1, 0, 1});
  CHECK(xxx.to_string() ==
        "angles: 0 0 0\n"
        "joint: 000:0.25 001:0 010:0 011:0.25 100:0 101:0.25 110:0.25 111:0\n"
        "parity: 0:1 1:0");
  CHECK_THROWS_AS(ghz_correlations(z2, angles({0})), ShapeMismatchError);
  CHECK_THROWS_AS(ghz_correlations(z2, {Phase(), Phase::element({4}, {1})}), PreconditionError);
}

TEST_CASE("diagrammatic and Born-rule arms agree") {
  const ObservablePair z2 = pair_by_name("z2");
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a;
    for (int s = 0; s < 3; ++s) a.push_back(testing::uniform_angle(rng));
    const GhzCorrelation d = ghz_correlations(z2, angles({a[0], a[1], a[2]}));
    const BornVector b = born_rule_correlations(z2, a);
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(d.joint.probabilities[i] - b.probabilities[i]) < 1e-9);
    }
    CHECK(std::abs(d.joint.total - 1.0) < 1e-9);
  }
}

TEST_CASE("boolean pipeline against direct evaluation") {
  // The unfused diagram, evaluated entry by entry, is the oracle.
  const ObservablePair spek = pair_by_name("spek");
  const ModelBinding m = pair_model(spek, kA);
  const OutcomeLabels labels = outcome_labels(spek);
  const std::vector<Phase> elems = {Phase(), Phase::element({2, 2}, {0, 1}),
                                    Phase::element({2, 2}, {1, 0}),
                                    Phase::element({2, 2}, {1, 1})};
  for (const Phase& a : elems) {
    for (const Phase& b : elems) {
      const GhzCorrelation c = ghz_correlations(spek, {a, b, Phase()});
      CHECK(c.possibilistic);
      const Tensor state = interpret(ghz_state(kA, 3), m);
      const Tensor ra = phase_action(spek.white, spek.white.phase_point(-a));
      const Tensor rb = phase_action(spek.white, spek.white.phase_point(-b));
      const Tensor rotated =
          compose(state, kron(kron(ra, rb), Tensor::identity(Semiring::kBoolean, {4})));
      for (int i = 0; i < 8; ++i) {
        const std::vector<int> o = c.outcome(i);
        const Tensor effect = adjoint(kron(kron(labels.points[o[0]], labels.points[o[1]]),
                                           labels.points[o[2]]));
        const bool possible = std::abs(compose(rotated, effect)(0, 0)) > 0.5;
        CHECK(c.joint.probabilities[i] == (possible ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("parity dichotomy on the X/Y grid") {
  const ObservablePair z2 = pair_by_name("z2");
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<double> a;
    for (int s = 0; s < 3; ++s) a.push_back(((mask >> s) & 1) ? kPi / 2 : 0.0);
    const GhzCorrelation c = ghz_correlations(z2, angles({a[0], a[1], a[2]}));
    const int quarter_turns = __builtin_popcount(mask);
    if (quarter_turns % 2 == 0) {
      // Sum is 0 or pi: a gray classical point.
      const int cls = (quarter_turns / 2) % 2;
      for (int i = 0; i < 8; ++i) {
        const bool in_class = bit_parity(i, 3) == cls;
        CHECK(std::abs(c.joint.probabilities[i] - (in_class ? 0.25 : 0.0)) < 1e-12);
      }
      CHECK(c.definite_parity() == cls);
    } else {
      // Product of its marginals.
      std::vector<std::array<double, 2>> marg(3, {0.0, 0.0});
      for (int i = 0; i < 8; ++i) {
        const std::vector<int> o = c.outcome(i);
        for (int s = 0; s < 3; ++s) marg[s][o[s]] += c.joint.probabilities[i];
      }
      for (int i = 0; i < 8; ++i) {
        const std::vector<int> o = c.outcome(i);
        CHECK(std::abs(c.joint.probabilities[i] - marg[0][o[0]] * marg[1][o[1]] * marg[2][o[2]]) <
              1e-12);
      }
      CHECK_FALSE(c.definite_parity().has_value());
    }
  }
}

TEST_CASE("permuting systems permutes outcomes") {
  const ObservablePair z2 = pair_by_name("z2");
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a = {testing::uniform_angle(rng), testing::uniform_angle(rng),
                             testing::uniform_angle(rng)};
    const GhzCorrelation base = ghz_correlations(z2, angles({a[0], a[1], a[2]}));
    std::vector<int> perm = {0, 1, 2};
    do {
      std::vector<double> b(3);
      for (int s = 0; s < 3; ++s) b[perm[s]] = a[s];
      const GhzCorrelation moved = ghz_correlations(z2, angles({b[0], b[1], b[2]}));
      for (int i = 0; i < 8; ++i) {
        CHECK(std::abs(moved.joint.probabilities[permute_index(i, perm, 2)] -
                       base.joint.probabilities[i]) < 1e-12);
      }
      CHECK(std::abs(moved.parity().probabilities[0] - base.parity().probabilities[0]) < 1e-12);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // Equal angles: the distribution itself is symmetric.
  const GhzCorrelation eq = ghz_correlations(z2, angles({0.7, 0.7, 0.7}));
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(eq.joint.probabilities[i] -
                   eq.joint.probabilities[permute_index(i, {2, 0, 1}, 2)]) < 1e-12);
  }
}

TEST_CASE("parity pushforward") {
  BornVector uniform{"gray", std::vector<double>(8, 0.125)};
  const BornVector p = parity(uniform, {2}, 3);
  CHECK(p.probabilities == std::vector<double>{0.5, 0.5});
  BornVector z3{"gray", std::vector<double>(9, 0.0)};
  z3.probabilities[1 * 3 + 2] = 1.0;
  CHECK(parity(z3, {3}, 2).probabilities == std::vector<double>{1.0, 0.0, 0.0});
  BornVector klein{"gray", std::vector<double>(16, 0.0)};
  klein.probabilities[1 * 4 + 3] = 1.0;  // (0,1) + (1,1) = (1,0)
  CHECK(parity(klein, {2, 2}, 2).probabilities[2] == 1.0);
  CHECK_THROWS_AS(parity(uniform, {2}, 2), ShapeMismatchError);
}

TEST_CASE("hidden-state search") {
  const std::vector<std::string> mermin = {"XXX", "XYY", "YXY", "YYX"};
  SUBCASE("Mermin constraints") {
    const LhvReport r = lhv_search(mermin, {{"XXX", 0}, {"XYY", 1}, {"YXY", 1}, {"YYX", 1}});
    CHECK(r.total == 64);
    CHECK(r.satisfying == 0);
    CHECK_FALSE(r.feasible());
    CHECK(r.witnesses.empty());
  }
  SUBCASE("a single constraint") {
    const LhvReport r = lhv_search(mermin, {{"XXX", 0}});
    CHECK(r.feasible());
    CHECK(r.satisfying == 32);
    for (const HiddenState& w : r.witnesses) CHECK(w.parity("XXX", 2) == 0);
    CHECK(r.witnesses.front().to_string() == "X:0 Y:0 | X:0 Y:0 | X:0 Y:0");
  }
  SUBCASE("no constraints") {
    CHECK(lhv_search(mermin, {}).satisfying == 64);
  }
  SUBCASE("order independence and witness validity") {
    Rng rng(4);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 50; ++trial) {
      std::map<std::string, int> constraints;
      for (const std::string& s : mermin) {
        if (coin(rng)) constraints[s] = coin(rng) ? 1 : 0;
      }
      std::vector<std::string> shuffled = mermin;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const LhvReport a = lhv_search(mermin, constraints);
      const LhvReport b = lhv_search(shuffled, constraints);
      CHECK(a.satisfying == b.satisfying);
      // Each constraint is one affine equation over Z_2 in 6 unknowns, and
      // the four Mermin settings are independent except for their sum.
      for (const HiddenState& w : a.witnesses) {
        for (const auto& [s, v] : constraints) CHECK(w.parity(s, 2) == v);
      }
      const bool all_four = constraints.size() == 4;
      const int sum = std::accumulate(constraints.begin(), constraints.end(), 0,
                                      [](int acc, const auto& kv) { return acc + kv.second; });
      if (all_four && sum % 2 == 1) {
        CHECK(a.satisfying == 0);
      } else if (all_four) {
        CHECK(a.satisfying == 8);
      } else {
        CHECK(a.satisfying == (64 >> constraints.size()));
      }
    }
  }
  SUBCASE("modulus three") {
    const LhvReport r = lhv_search({"XX", "YY"}, {{"XX", 1}, {"YY", 2}}, 3);
    CHECK(r.total == 81);
    CHECK(r.satisfying == 9);
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(lhv_search({"XXXX"}, {}), DimensionLimitError);
    CHECK_THROWS_AS(lhv_search({"XX", "YY", "ZZ", "WW"}, {}), DimensionLimitError);
    CHECK_THROWS_AS(lhv_search({"XX", "XYY"}, {}), ShapeMismatchError);
    CHECK_THROWS_AS(lhv_search({"XX"}, {{"YY", 0}}), PreconditionError);
  }
}

TEST_CASE("two parties are never contradictory") {
  const ObservablePair z2 = pair_by_name("z2");
  const std::vector<std::string> settings = {"XX", "XY", "YX", "YY"};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const CorrelationTable t = correlation_table(
          z2, settings, {{'X', Phase::angle(kPi * i / 4)}, {'Y', Phase::angle(kPi * j / 4)}});
      std::map<std::string, int> constraints;
      for (size_t k = 0; k < settings.size(); ++k) {
        if (const auto p = t.rows[k].definite_parity()) constraints[settings[k]] = *p;
      }
      const LhvReport r = lhv_search(settings, constraints);
      CHECK(r.total == 16);
      CHECK(r.feasible());
    }
  }
}

TEST_CASE("Mermin reports") {
  SUBCASE("qubit pair") {
    const MerminReport r = mermin_report(pair_by_name("z2"));
    CHECK(r.parities == std::vector<std::optional<int>>{0, 1, 1, 1});
    CHECK(r.lhv.satisfying == 0);
    CHECK(r.exponent.all_pass());
    CHECK(r.contradiction);
  }
  SUBCASE("stabilizer pair") {
    const MerminReport r = mermin_report(pair_by_name("stab"));
    CHECK(r.y_phase == Phase::element({4}, {1}));
    CHECK(r.contradiction);
  }
  SUBCASE("Spek phases") {
    const MerminReport r = mermin_report(pair_by_name("spek"));
    CHECK(r.y_phase == Phase::element({2, 2}, {0, 1}));
    CHECK(r.parities == std::vector<std::optional<int>>{0, 0, 0, 0});
    CHECK(r.lhv.feasible());
    CHECK_FALSE(r.contradiction);
  }
  CHECK_THROWS_AS(mermin_report(pair_by_name("z3")), PreconditionError);
}
