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

#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "gct/algebra.hpp"
#include "gct/errors.hpp"
#include "gct/signatures.hpp"
#include "support/frobenius_composites.hpp"
#include "support/random_diagrams.hpp"

using namespace gct;
using gct::testing::Rng;

namespace {

const double kRt2 = std::sqrt(2.0);

Tensor ket(const std::vector<Complex>& v) {
  return Tensor::point(Semiring::kComplex, v);
}

std::vector<Tensor> values(const std::vector<std::pair<std::string, Tensor>>& named) {
  std::vector<Tensor> out;
  for (const auto& [name, t] : named) out.push_back(t);
  return out;
}

ObservableStructure stab_observable(const std::string& colour) {
  const TheoryFixture f = stab_fixture();
  return f.model("stab").observable(colour, f.signature.system("Q"));
}

std::vector<ObservableStructure> fixture_observables() {
  return {qubit_z(),        qubit_x(),        frel_white_bit(),
          frel_gray_bit(),  spek_white(),     spek_gray(),
          stab_observable("white"), stab_observable("gray"),
          group_algebra_pair({3}).white, group_algebra_pair({2, 2}).white,
          product_observable(qubit_z(), qubit_x())};
}

// A complex Hadamard matrix of order 4 that is a character table only at
// a = 0 (Z2 x Z2) and a = pi/2 (Z4).
std::vector<Tensor> hadamard_family(double a) {
  const Complex e = std::polar(1.0, a);
  const std::vector<std::vector<Complex>> rows = {
      {1, 1, 1, 1}, {1, e, -1.0, -e}, {1, -1.0, 1, -1.0}, {1, -e, -1.0, e}};
  std::vector<Tensor> out;
  for (const auto& r : rows) {
    std::vector<Complex> v;
    for (Complex x : r) v.push_back(x / 2.0);
    out.push_back(ket(v));
  }
  return out;
}

std::vector<Tensor> standard_basis(int n) {
  std::vector<Tensor> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Complex> v(n, 0.0);
    v[i] = 1.0;
    out.push_back(ket(v));
  }
  return out;
}

// Independent oracle: orders of all elements of Z_{m1} x ... x Z_{mk}.
std::multiset<int> product_orders(const std::vector<int>& moduli) {
  int n = 1;
  for (int m : moduli) n *= m;
  std::multiset<int> out;
  for (int idx = 0; idx < n; ++idx) {
    int rest = idx;
    std::vector<int> g;
    for (int m : moduli) {
      g.push_back(rest % m);
      rest /= m;
    }
    int k = 1;
    while (true) {
      bool zero = true;
      for (size_t i = 0; i < g.size(); ++i) zero &= (k * g[i]) % moduli[i] == 0;
      if (zero) break;
      ++k;
    }
    out.insert(k);
  }
  return out;
}

}  // namespace

TEST_CASE("fixture observables satisfy every Frobenius law") {
  for (const ObservableStructure& o : fixture_observables()) {
    const LawReport r = check_frobenius(o);
    INFO(o.colour << "\n" << r.to_string());
    CHECK(r.all_pass());
    CHECK(r.laws.size() == 9);
  }
}

TEST_CASE("the all-ones comultiplication is not a Frobenius algebra") {
  const Tensor delta = Tensor(Semiring::kBoolean, {2, 2}, {2},
                              Eigen::MatrixXcd::Ones(4, 2));
  const Tensor eta = Tensor::subset(2, {0, 1});
  const ObservableStructure o =
      ObservableStructure::from_algebra("ones", adjoint(delta), eta);
  const LawReport r = check_frobenius(o);
  CHECK_FALSE(r.all_pass());
  CHECK_FALSE(r.passes("special"));
  CHECK_FALSE(r.passes("counit"));
  CHECK_FALSE(r.passes("unit"));
  // Both sides of the Frobenius equation are the full relation.
  CHECK(r.passes("frobenius"));
  CHECK(r.passes("associativity"));
}

TEST_CASE("malformed structure maps are rejected") {
  ObservableStructure o = qubit_z();
  o.mu = Tensor::identity(Semiring::kComplex, {2});
  CHECK_THROWS_AS(check_frobenius(o), ShapeMismatchError);
}

TEST_CASE("classical points") {
  const std::vector<Tensor> stab = values(stab_points());
  CHECK(classical_point_indices(qubit_z(), stab) == std::vector<int>{0, 1});
  CHECK(classical_point_indices(qubit_x(), stab) == std::vector<int>{2, 3});
  const std::vector<Tensor> spek = values(spek_points());
  CHECK(classical_point_indices(spek_white(), spek) == std::vector<int>{0, 1});
  CHECK(classical_point_indices(spek_gray(), spek) == std::vector<int>{2, 3});

  // Product observable: among all 36 products exactly the four kets
  // z_i (x) z_j are copied and deleted.
  std::vector<Tensor> products;
  std::vector<std::pair<int, int>> labels;
  for (size_t i = 0; i < stab.size(); ++i) {
    for (size_t j = 0; j < stab.size(); ++j) {
      products.push_back(kron(stab[i], stab[j]));
      labels.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  const std::vector<int> found =
      classical_point_indices(product_observable(qubit_z(), qubit_z()), products);
  REQUIRE(found.size() == 4);
  for (int k : found) {
    CHECK(labels[k].first < 2);
    CHECK(labels[k].second < 2);
  }

  // Relational copy/XOR pair: gray copies only the full set.
  const std::vector<Tensor> gray = known_classical_points(frel_gray_bit());
  REQUIRE(gray.size() == 1);
  CHECK(gray[0].matrix() == Tensor::subset(2, {0, 1}).matrix());
  CHECK(known_classical_points(frel_white_bit()).size() == 2);
}

TEST_CASE("spiders") {
  const ObservableStructure z = qubit_z();
  CHECK(max_deviation(spider(z, 1, 1), Tensor::identity(Semiring::kComplex, {2})) < 1e-15);
  const double a = 0.7;
  const Tensor s = spider(z, 0, 1, Phase::angle(a));
  CHECK(std::abs(s(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s(1, 0) - std::polar(1.0, a)) < 1e-15);

  // Spider-sum identities over the classical points.
  Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(4, 2);
  Eigen::MatrixXcd eps = Eigen::MatrixXcd::Zero(1, 2);
  for (const Tensor& v : known_classical_points(qubit_x())) {
    delta += kron(v, v).matrix() * v.matrix().adjoint();
    eps += v.matrix().adjoint();
  }
  CHECK((delta - qubit_x().delta.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((eps - qubit_x().epsilon.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("phased spiders sharing a wire add their phases") {
  Rng rng(11);
  const ObservableStructure z = qubit_z();
  std::uniform_int_distribution<int> legs(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int m1 = legs(rng), n1 = legs(rng) + 1, n2 = legs(rng);
    const Phase a = testing::random_angle(rng);
    const Phase b = testing::random_angle(rng);
    // First spider's outputs: n1, one of which feeds the second spider.
    const Tensor first = spider(z, m1, n1, a);
    const Tensor second = spider(z, 1, n2, b);
    Tensor joined = compose(
        first, kron(Tensor::identity(Semiring::kComplex,
                                     std::vector<int>(n1 - 1, 2)),
                    second));
    const Tensor fused = spider(z, m1, n1 - 1 + n2, a + b);
    CHECK(max_deviation(joined, fused) < 1e-12);
  }
}

TEST_CASE("random Frobenius composites equal the spider") {
  Rng rng(5);
  for (const ObservableStructure& o : fixture_observables()) {
    for (int trial = 0; trial < 50; ++trial) {
      const testing::Composite c = testing::random_composite(o, rng, 8);
      const Tensor expected = spider(o, c.inputs, c.outputs);
      INFO(o.colour << " (" << c.inputs << "," << c.outputs << ")");
      REQUIRE(c.map.rows() == expected.rows());
      REQUIRE(c.map.cols() == expected.cols());
      CHECK((c.map.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("phase action") {
  const ObservableStructure z = qubit_z();
  const double a = 1.1;
  const Tensor l = phase_action(z, z.phase_point(Phase::angle(a)));
  CHECK(std::abs(l(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(l(1, 1) - std::polar(1.0, a)) < 1e-15);
  CHECK(std::abs(l(0, 1)) + std::abs(l(1, 0)) < 1e-15);
  CHECK(max_deviation(phase_action(z, z.eta),
                      Tensor::identity(Semiring::kComplex, {2})) < 1e-15);

  // y0 in Stab rotates by a quarter turn; the normalized point gives it up
  // to 1/sqrt(2).
  const Tensor y0 = stab_points()[4].second;
  Tensor zq(Semiring::kComplex, {2}, {2});
  zq.at(0, 0) = 1.0;
  zq.at(1, 1) = Complex(0, 1);
  Complex lambda;
  CHECK(find_scalar_ratio(phase_action(z, y0), zq, &lambda));
  CHECK(std::abs(lambda - 1.0 / kRt2) < 1e-12);
  const ObservableStructure w = stab_observable("white");
  CHECK(max_deviation(phase_action(w, w.phase_point(Phase::element({4}, {1}))), zq) < 1e-12);
}

TEST_CASE("phase maps are unitary homomorphisms with classical eigenvectors") {
  Rng rng(3);
  for (const ObservableStructure& o : {qubit_z(), qubit_x()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Phase a = testing::random_angle(rng);
      const Phase b = testing::random_angle(rng);
      const Tensor la = phase_action(o, o.phase_point(a));
      const Tensor lb = phase_action(o, o.phase_point(b));
      const Tensor lab = phase_action(o, o.phase_point(a + b));
      CHECK(max_deviation(compose(lb, la), lab) < 1e-12);
      CHECK(max_deviation(compose(la, lb), lab) < 1e-12);
      CHECK(max_deviation(compose(la, adjoint(la)),
                          Tensor::identity(Semiring::kComplex, {2})) < 1e-12);
      for (const Tensor& k : known_classical_points(o)) {
        CHECK(equal_tensors(compose(k, la), k, EqualityMode::kUpToGlobalScalar));
      }
    }
  }
}

TEST_CASE("phase groups of Stab and Spek") {
  const auto start = std::chrono::steady_clock::now();
  const PhaseGroup stab = phase_group(qubit_z(), values(stab_points()));
  CHECK(stab.iso_class() == "Z4");
  CHECK(std::multiset<int>(stab.orders.begin(), stab.orders.end()) ==
        std::multiset<int>{1, 2, 4, 4});
  // x0, x1, y0, y1 survive the inverse filter; x0 is the identity.
  CHECK(stab.source_index == std::vector<int>{2, 3, 4, 5});
  CHECK(stab.source_index[stab.identity] == 2);

  const PhaseGroup spek =
      phase_group(spek_white(), values(spek_points()), EqualityMode::kExact);
  CHECK(spek.iso_class() == "Z2xZ2");
  CHECK(std::multiset<int>(spek.orders.begin(), spek.orders.end()) ==
        std::multiset<int>{1, 2, 2, 2});
  CHECK(spek.source_index == std::vector<int>{2, 3, 4, 5});
  CHECK(spek.associative);
  CHECK(spek.commutative);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 5.0);

  const PhaseGroup toy = phase_group(stab_observable("white"), values(stab_points()));
  CHECK(toy.iso_class() == "Z4");
}

TEST_CASE("circle group of qubit phases") {
  Rng rng(8);
  const ObservableStructure z = qubit_z();
  for (int trial = 0; trial < 50; ++trial) {
    const Phase a = testing::random_angle(rng);
    const Phase b = testing::random_angle(rng);
    CHECK(max_deviation(add_points(z, z.phase_point(a), z.phase_point(b)),
                        z.phase_point(a + b)) < 1e-12);
  }
}

TEST_CASE("incomplete candidate sets are reported") {
  std::vector<Tensor> c = values(stab_points());
  c.pop_back();  // drop y1; y0 + x1 = y1 now leaves the set
  CHECK_THROWS_AS(phase_group(qubit_z(), c), PreconditionError);
  std::vector<Tensor> no_unit = {stab_points()[3].second};
  CHECK_THROWS_AS(phase_group(qubit_z(), no_unit), PreconditionError);
}

TEST_CASE("abelian groups are classified by element orders") {
  const std::vector<std::vector<int>> groups = {
      {2}, {3}, {4}, {2, 2}, {6}, {8}, {2, 4}, {2, 2, 2}, {3, 3}, {9},
      {2, 2, 4}, {4, 4}, {2, 8}, {16}, {2, 6}, {12}};
  for (const auto& g : groups) {
    const std::multiset<int> orders = product_orders(g);
    INFO(group_name(g));
    CHECK(classify_abelian({orders.begin(), orders.end()}) == g);
  }
  CHECK(classify_abelian({1}).empty());
  CHECK(group_name({}) == "trivial");
  CHECK_THROWS_AS(classify_abelian({1, 1}), PreconditionError);
}

TEST_CASE("complementarity") {
  const LawReport zx = check_complementarity(pair_by_name("z2"));
  INFO(zx.to_string());
  CHECK(zx.all_pass());
  CHECK(std::abs(*zx.find("hopf")->scalar - 0.5) < 1e-12);
  CHECK(zx.find("unbiased")->max_deviation < 1e-12);

  const LawReport zz = check_complementarity(pair_by_name("zz"));
  CHECK_FALSE(zz.passes("hopf"));
  CHECK_FALSE(zz.passes("unbiased"));

  const LawReport frel = check_complementarity(pair_by_name("frel"));
  CHECK(frel.all_pass());
  CHECK(frel.find("hopf")->max_deviation == 0.0);
  CHECK(check_complementarity(pair_by_name("spek")).all_pass());
}

TEST_CASE("Hopf law implies unbiased classical points") {
  std::vector<ObservablePair> pairs = {pair_by_name("z2"), pair_by_name("stab"),
                                       coherify(standard_basis(4), hadamard_family(0.3))};
  for (const auto& m : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {5}}) {
    pairs.push_back(group_algebra_pair(m));
  }
  for (const ObservablePair& p : pairs) {
    const LawReport r = check_complementarity(p);
    INFO(r.to_string());
    if (!r.passes("hopf")) continue;
    CHECK(r.passes("unbiased"));
    CHECK(r.find("unbiased")->max_deviation <= 1e-9);
  }
}

TEST_CASE("coherence") {
  const ObservablePair zx = pair_by_name("z2");
  const LawReport r = check_coherence(zx);
  CHECK(r.all_pass());
  CHECK(std::abs(*r.find("unit-scalar")->scalar - kRt2) < 1e-12);

  // X basis with one vector rephased and no realignment.
  const std::vector<Tensor> rotated = {ket({std::polar(1 / kRt2, 0.9), std::polar(1 / kRt2, 0.9)}),
                                       ket({1 / kRt2, -1 / kRt2})};
  const LawReport bad = check_coherence(
      ObservablePair::make(qubit_z(), copy_observable("gray", rotated)));
  CHECK(bad.passes("white-unit-gray-classical"));
  CHECK_FALSE(bad.passes("gray-unit-white-classical"));
  CHECK(bad.find("gray-unit-white-classical")->detail.find("unit of gray") !=
        std::string::npos);

  CHECK(check_coherence(pair_by_name("spek")).all_pass());
  CHECK(check_coherence(pair_by_name("frel")).all_pass());
}

TEST_CASE("coherify") {
  const std::vector<Tensor> z = standard_basis(2);
  const std::vector<Tensor> x = {ket({1 / kRt2, 1 / kRt2}), ket({1 / kRt2, -1 / kRt2})};
  const ObservablePair zx = coherify(z, x);
  for (int i = 0; i < 2; ++i) {
    CHECK(max_deviation(zx.white.angle_basis[i], z[i]) < 1e-12);
    CHECK(max_deviation(zx.gray.angle_basis[i], x[i]) < 1e-12);
  }
  const std::vector<Tensor> y = {ket({1 / kRt2, Complex(0, 1 / kRt2)}),
                                 ket({1 / kRt2, Complex(0, -1 / kRt2)})};
  CHECK_FALSE(check_coherence(ObservablePair::make(copy_observable("white", z),
                                                   copy_observable("gray", y)))
                  .all_pass());
  const ObservablePair zy = coherify(z, y);
  CHECK(check_coherence(zy).all_pass());

  // Idempotent on the result.
  const ObservablePair again = coherify(zy.white.angle_basis, zy.gray.angle_basis);
  for (int i = 0; i < 2; ++i) {
    CHECK(max_deviation(again.white.angle_basis[i], zy.white.angle_basis[i]) < 1e-12);
    CHECK(max_deviation(again.gray.angle_basis[i], zy.gray.angle_basis[i]) < 1e-12);
  }
  CHECK_THROWS_AS(coherify(z, z), PreconditionError);
  CHECK_THROWS_AS(coherify(z, {x[0]}), PreconditionError);
}

TEST_CASE("coherify on random unitary images of mutually unbiased bases") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd raw = testing::random_complex(4, 4, rng).matrix();
    const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(raw).householderQ();
    std::vector<Tensor> a, b;
    const std::vector<Tensor> h = hadamard_family(testing::uniform_angle(rng));
    for (int i = 0; i < 4; ++i) {
      const Complex pa = std::polar(1.0, testing::uniform_angle(rng));
      const Complex pb = std::polar(1.0, testing::uniform_angle(rng));
      a.push_back(Tensor(Semiring::kComplex, {4}, {}, pa * u.col(i)));
      b.push_back(Tensor(Semiring::kComplex, {4}, {}, pb * (u * h[i].matrix())));
    }
    const ObservablePair p = coherify(a, b);
    CHECK(check_coherence(p).all_pass());
    CHECK(check_frobenius(p.white).all_pass());
    CHECK(check_frobenius(p.gray).all_pass());
  }
}

TEST_CASE("strong complementarity") {
  const LawReport zx = check_strong_complementarity(pair_by_name("z2"));
  INFO(zx.to_string());
  CHECK(zx.all_pass());
  CHECK(zx.passes("sc-implies-c"));
  CHECK(zx.passes("antipode-self-adjoint"));
  CHECK(zx.passes("antipode-monoid-hom"));
  CHECK(zx.passes("antipode-comonoid-hom"));

  for (const auto& m : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {6}}) {
    const LawReport r = check_strong_complementarity(group_algebra_pair(m));
    INFO(group_name(m) << "\n" << r.to_string());
    CHECK(r.all_pass());
  }
  CHECK(check_strong_complementarity(pair_by_name("frel")).all_pass());
  CHECK(check_strong_complementarity(pair_by_name("spek")).all_pass());

  // Coherent and complementary, but the Hadamard matrix is no character
  // table away from a = 0 and a = pi/2.
  const ObservablePair h = coherify(standard_basis(4), hadamard_family(0.3));
  CHECK(check_complementarity(h).all_pass());
  const LawReport hr = check_strong_complementarity(h);
  CHECK(hr.passes("white-unit-gray-classical"));
  CHECK_FALSE(hr.passes("bialgebra"));
  CHECK(hr.find("sc-implies-c") == nullptr);
}

TEST_CASE("antipode of the qubit pair is the identity") {
  CHECK(max_deviation(pair_by_name("z2").antipode,
                      Tensor::identity(Semiring::kComplex, {2})) < 1e-12);
  // For a group algebra it is inversion.
  const ObservablePair z3 = group_algebra_pair({3});
  for (int g = 0; g < 3; ++g) {
    CHECK(std::abs(z3.antipode((3 - g) % 3, g) - 1.0) < 1e-12);
  }
}

TEST_CASE("group algebra pairs reproduce the group on gray points") {
  for (const auto& m : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {2, 3}}) {
    const ObservablePair p = group_algebra_pair(m);
    const PhaseGroup k = k_gray(p);
    INFO(group_name(m));
    int n = 1;
    for (int x : m) n *= x;
    REQUIRE(k.size() == n);
    CHECK(k.identity == 0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        // Mixed radix, first factor most significant.
        int ra = a, rb = b, sum = 0, scale = 1;
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) {
          sum += ((ra % m[i] + rb % m[i]) % m[i]) * scale;
          scale *= m[i];
          ra /= m[i];
          rb /= m[i];
        }
        CHECK(k.table[a][b] == sum);
      }
    }
  }
  CHECK(k_gray(group_algebra_pair({4})).iso_class() == "Z4");
  CHECK(k_gray(group_algebra_pair({2, 2})).iso_class() == "Z2xZ2");
  CHECK(k_gray(pair_by_name("z2")).iso_class() == "Z2");
}

TEST_CASE("exponent law") {
  const LawReport zx = check_exponent_law(pair_by_name("z2"));
  CHECK(zx.all_pass());
  CHECK(zx.laws[0].detail == "k=2");
  const ObservablePair z3 = group_algebra_pair({3});
  CHECK(check_exponent_law(z3, 3).all_pass());
  CHECK_FALSE(check_exponent_law(z3, 2).all_pass());
  CHECK(check_exponent_law(z3).laws[0].detail == "k=3");
  for (const auto& m : std::vector<std::vector<int>>{{2}, {4}, {2, 2}, {2, 4}, {6}}) {
    int n = 1;
    for (int x : m) n *= x;
    CHECK(check_exponent_law(group_algebra_pair(m), n).all_pass());
  }
  CHECK(check_exponent_law(group_algebra_pair({2, 2}), 2).all_pass());
  CHECK_FALSE(check_exponent_law(group_algebra_pair({4}), 2).all_pass());
}

TEST_CASE("at most two pairwise strongly complementary qubit observables") {
  const std::vector<Tensor> y = {ket({1 / kRt2, Complex(0, 1 / kRt2)}),
                                 ket({1 / kRt2, Complex(0, -1 / kRt2)})};
  const ObservableStructure yo = copy_observable("black", y);
  const MaxTwoReport three = max_two_sc_check(2, {qubit_z(), qubit_x(), yo});
  INFO(three.to_string());
  CHECK(three.contradiction);
  CHECK(three.witness.find("rank 1 < 2") != std::string::npos);

  const MaxTwoReport two = max_two_sc_check(2, {qubit_z(), qubit_x()});
  CHECK_FALSE(two.contradiction);
  CHECK(two.steps[0].find("SC") != std::string::npos);

  const ObservableStructure one = standard_copy("white", Semiring::kComplex, 1);
  CHECK_FALSE(max_two_sc_check(1, {one, one, one}).contradiction);
}

TEST_CASE("enough classical points") {
  CHECK(check_enough_classical_points(qubit_z()));
  CHECK(check_enough_classical_points(frel_white_bit()));
  CHECK_FALSE(check_enough_classical_points(qubit_z(), {ket({1, 0})}));
  // Spek white: z0 = {0,1} cannot tell the relation 0 -> {0} from 1 -> {0}.
  Tensor f(Semiring::kBoolean, {2}, {4});
  f.at(0, 0) = 1.0;
  Tensor g(Semiring::kBoolean, {2}, {4});
  g.at(0, 1) = 1.0;
  for (const Tensor& p : known_classical_points(spek_white())) {
    CHECK(compose(p, f).matrix() == compose(p, g).matrix());
  }
  CHECK_FALSE(check_enough_classical_points(spek_white()));
  CHECK_FALSE(check_enough_classical_points(frel_gray_bit()));
}

TEST_CASE("sharpness implies strong complementarity") {
  const LawReport zx = check_sharpness_implies_sc(pair_by_name("z2"));
  INFO(zx.to_string());
  CHECK(zx.passes("sharpness"));
  CHECK(zx.passes("bialgebra"));
  CHECK(zx.all_pass());
  CHECK(check_sharpness_implies_sc(group_algebra_pair({3})).all_pass());

  const LawReport zz = check_sharpness_implies_sc(pair_by_name("zz"));
  CHECK_FALSE(zz.passes("coherence"));
  CHECK(zz.find("sharpness") == nullptr);

  const LawReport h = check_sharpness_implies_sc(
      coherify(standard_basis(4), hadamard_family(0.3)));
  CHECK_FALSE(h.passes("sharpness"));
  CHECK_FALSE(h.passes("bialgebra"));
  CHECK(h.passes("sharpness-implies-sc"));
  CHECK_THROWS_AS(check_sharpness_implies_sc(pair_by_name("frel")), PreconditionError);
}

TEST_CASE("law report serialization") {
  const LawReport r = check_coherence(pair_by_name("z2"));
  const std::string s = r.to_string();
  CHECK(s.find("white-unit-gray-classical PASS max_deviation=") == 0);
  CHECK(s.find("unit-scalar PASS max_deviation=0 lambda=(1.41421356237, 0)\n") !=
        std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}

TEST_CASE("named pairs") {
  for (const std::string& n : pair_names()) {
    CHECK_NOTHROW(pair_by_name(n));
  }
  CHECK(pair_by_name("z2xz3").dim() == 6);
  CHECK_THROWS_AS(pair_by_name("q7"), PreconditionError);
  CHECK_THROWS_AS(pair_by_name("z"), PreconditionError);
}
