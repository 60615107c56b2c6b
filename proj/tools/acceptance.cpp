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

// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gct/algebra.hpp"
#include "gct/cpm.hpp"
#include "gct/diagram.hpp"
#include "gct/model.hpp"
#include "gct/nonlocality.hpp"
#include "gct/rewrite.hpp"
#include "gct/signatures.hpp"
#include "gct/text_format.hpp"
#include "support/bialg_fragments.hpp"
#include "support/frobenius_composites.hpp"
#include "support/random_diagrams.hpp"

using namespace gct;
using gct::testing::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x) { return format_real(x, 3); }

const System kQ("Q", DualMode::kSelf);

// 1. The amplitude <1| X(pi/2) |0>.
Outcome amplitude() {
  Outcome o;
  const auto start = Clock::now();
  const TheoryFixture qc = qucirc_signature();
  const Diagram d = compose_all({qc.signature.box("ket0"),
                                 qc.signature.box("X", Phase::angle(kPi / 2)),
                                 qc.signature.box("bra1")});
  const Tensor t = interpret(d, qc.model("qubit"));
  const double err = std::abs(t(0, 0) - Complex(0.0, -1.0 / std::sqrt(2.0)));
  const double secs = seconds_since(start);
  o.require(t.rows() == 1 && t.cols() == 1, "not a scalar");
  o.require(err < 1e-12, "error " + num(err));
  o.require(secs < 1.0, "took " + num(secs) + " s");
  o.detail = "value " + format_complex(t(0, 0), 12) + " error " + num(err) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 2. Teleportation yanks to the identity.
Outcome teleportation() {
  Outcome o;
  const TheoryFixture qc = qucirc_signature();
  const System q = qc.signature.system("Q");
  DiagramBuilder b({q}, {q});
  const int cup = b.add(Node::cup(q));
  const int cap = b.add(Node::cap(q));
  b.wire(Port::boundary(0), Port::at(cap, 0));
  b.wire(Port::at(cup, 0), Port::at(cap, 1));
  b.wire(Port::at(cup, 1), Port::boundary(0));
  const Diagram tele = b.build();
  const Diagram yanked = yank_normalize(tele);
  const ModelBinding& m = qc.model("qubit");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const double before = (interpret(tele, m).matrix() - id).cwiseAbs().maxCoeff();
  const double after = (interpret(yanked, m).matrix() - id).cwiseAbs().maxCoeff();
  o.require(before <= 1e-12, "before yank off by " + num(before));
  o.require(after <= 1e-12, "after yank off by " + num(after));
  o.require(iso_equal(yanked, Diagram::identity({q})), "yanked form is not id");
  if (o.pass) o.detail = "identity before and after; yanked form iso-equal to id";
  return o;
}

// 3. Spider theorem on random composites, and spider fusion.
Outcome spider_theorem() {
  Outcome o;
  const TheoryFixture stab = stab_fixture();
  const System sq = stab.signature.system("Q");
  const std::vector<ObservableStructure> observables = {
      qubit_z(), qubit_x(), frel_white_bit(), frel_gray_bit(), spek_white(), spek_gray(),
      stab.model("stab").observable("white", sq), stab.model("stab").observable("gray", sq)};
  Rng rng(31);
  double worst = 0.0;
  int composites = 0;
  for (const ObservableStructure& obs : observables) {
    for (int trial = 0; trial < 50; ++trial) {
      const testing::Composite c = testing::random_composite(obs, rng, 8);
      const Tensor expected = spider(obs, c.inputs, c.outputs);
      if (!c.map.same_shape(expected)) {
        o.require(false, obs.colour + " composite has the wrong shape");
        continue;
      }
      worst = std::max(worst, max_deviation(c.map, expected));
      ++composites;
    }
  }
  o.require(worst < 1e-9, "composite deviation " + num(worst));

  const ModelBinding m = pair_model(pair_by_name("z2"), kQ);
  std::vector<testing::NodeGen> palette;
  for (const std::string colour : {"white", "gray"}) {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
      palette.push_back([colour, a, b](Rng& r) {
        const Phase ph = std::bernoulli_distribution(0.5)(r) ? Phase() : testing::random_angle(r);
        return Node::spider(colour, kQ, a, b, ph);
      });
    }
  }
  double fuse_worst = 0.0;
  int merged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Diagram d = testing::random_diagram(rng, {kQ, kQ}, palette, 6);
    const Diagram f = spider_fuse(d);
    merged += d.node_count() - f.node_count();
    fuse_worst = std::max(fuse_worst, max_deviation(interpret(f, m), interpret(d, m)));
  }
  o.require(merged > 0, "no spiders were fused");
  o.require(fuse_worst < 1e-9, "spider_fuse deviation " + num(fuse_worst));
  if (o.pass) {
    o.detail = std::to_string(composites) + " composites max dev " + num(worst) +
               "; 100 fused diagrams (" + std::to_string(merged) +
               " merges) max dev " + num(fuse_worst);
  }
  return o;
}

// 4. The law suite.
Outcome law_suite() {
  Outcome o;
  const ObservablePair zx = pair_by_name("z2");
  const LawReport coh = check_coherence(zx);
  o.require(coh.all_pass(), "coherence fails");
  const LawResult* unit = coh.find("unit-scalar");
  o.require(unit != nullptr && unit->scalar &&
                std::abs(*unit->scalar - Complex(std::sqrt(2.0))) <= 1e-9,
            "coherence scalar is not sqrt 2");
  o.require(check_complementarity(zx).all_pass(), "Hopf fails for (Z, X)");
  const LawReport sc = check_strong_complementarity(zx);
  o.require(sc.all_pass(), "strong complementarity fails");
  o.require(sc.passes("sc-implies-c"), "SC does not give C");
  o.require(check_exponent_law(zx, 2).all_pass(), "exponent law k=2 fails");
  const LawReport zz = check_complementarity(pair_by_name("zz"));
  o.require(!zz.passes("hopf"), "(Z, Z) passes Hopf");
  const LawReport frel = check_complementarity(pair_by_name("frel"), 0.0);
  o.require(frel.all_pass(), "FRel pair is not complementary");
  for (const LawResult& l : frel.laws) {
    o.require(l.max_deviation == 0.0, "FRel " + l.name + " not exact");
  }
  if (o.pass) {
    o.detail = "(Z,X) coherent with scalar " + format_complex(*unit->scalar, 12) +
               ", Hopf, SC, exponent k=2, SC=>C; (Z,Z) fails Hopf; FRel exact";
  }
  return o;
}

// 5. Phase groups of Stab and Spek.
Outcome phase_groups() {
  Outcome o;
  const auto start = Clock::now();
  auto values = [](const std::vector<std::pair<std::string, Tensor>>& named) {
    std::vector<Tensor> out;
    for (const auto& [name, t] : named) out.push_back(t);
    return out;
  };
  const TheoryFixture stab = stab_fixture();
  const TheoryFixture spek = spek_fixture();
  const PhaseGroup gs = phase_group(
      stab.model("stab").observable("white", stab.signature.system("Q")), values(stab_points()));
  const PhaseGroup gk =
      phase_group(spek.model("spek").observable("white", spek.signature.system("S")),
                  values(spek_points()), EqualityMode::kExact);
  const double secs = seconds_since(start);
  const std::multiset<int> os(gs.orders.begin(), gs.orders.end());
  const std::multiset<int> ok(gk.orders.begin(), gk.orders.end());
  o.require(gs.size() == 4 && os == std::multiset<int>{1, 2, 4, 4}, "Stab is not Z4");
  o.require(gk.size() == 4 && ok == std::multiset<int>{1, 2, 2, 2}, "Spek is not Z2xZ2");
  o.require(secs < 5.0, "took " + num(secs) + " s");
  o.detail = "Stab " + gs.iso_class() + " orders {1,2,4,4}, Spek " + gk.iso_class() +
             " orders {1,2,2,2}, " + num(secs) + " s" + (o.pass ? "" : "; " + o.detail);
  return o;
}

// 6. Group algebra pairs.
Outcome classification() {
  Outcome o;
  for (const auto& moduli : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) {
    const std::string name = group_name(moduli);
    const ObservablePair p = group_algebra_pair(moduli);
    o.require(check_strong_complementarity(p).all_pass(), name + " is not SC");
    const PhaseGroup k = k_gray(p);
    int n = 1;
    for (int m : moduli) n *= m;
    if (k.size() != n) {
      o.require(false, name + " has " + std::to_string(k.size()) + " gray points");
      continue;
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int ra = a, rb = b, sum = 0, scale = 1;
        for (int i = static_cast<int>(moduli.size()) - 1; i >= 0; --i) {
          sum += ((ra % moduli[i] + rb % moduli[i]) % moduli[i]) * scale;
          scale *= moduli[i];
          ra /= moduli[i];
          rb /= moduli[i];
        }
        if (k.table[a][b] != sum) {
          o.require(false, name + " table differs at " + std::to_string(a) + "+" +
                               std::to_string(b));
          a = b = n;
        }
      }
    }
  }
  if (o.pass) o.detail = "Z2, Z3, Z4, Z2xZ2 strongly complementary with exact gray tables";
  return o;
}

// 7. Characteristic matrices and normal forms.
Outcome bialgebra_normal_form() {
  Outcome o;
  const System x = kQ;
  const ModelBinding z2 = pair_model(z2_bialgebra_pair(), x);
  Rng rng(41);
  std::vector<Diagram> ds;
  while (ds.size() < 20) {
    const Diagram d = testing::random_fragment(x, 2, 2, rng, 6);
    bool small = true;
    for (const auto& row : characteristic_matrix(d).entries) {
      for (long long e : row) small &= e <= 1;
    }
    if (small) ds.push_back(d);
  }
  int agree = 0, equal_pairs = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    for (size_t j = i + 1; j < ds.size(); ++j) {
      const bool chi = characteristic_matrix(ds[i]) == characteristic_matrix(ds[j]);
      const bool nf = print_diagram(bialg_normal_form(ds[i])) == print_diagram(bialg_normal_form(ds[j]));
      const bool ev = max_deviation(interpret(ds[i], z2), interpret(ds[j], z2)) < 1e-9;
      if (chi == nf && chi == ev) ++agree;
      equal_pairs += chi;
    }
  }
  o.require(agree == 190, std::to_string(190 - agree) + " pairs disagree");

  auto white = [&](int a, int b) { return Node::spider("white", x, a, b); };
  auto gray = [&](int a, int b) { return Node::spider("gray", x, a, b); };
  DiagramBuilder a({x, x}, {x, x});
  const int ep = a.add(white(1, 0));
  const int et = a.add(gray(0, 1));
  a.wire(Port::boundary(0), Port::boundary(1));
  a.wire(Port::boundary(1), Port::at(ep, 0));
  a.wire(Port::at(et, 0), Port::boundary(0));
  const CharacteristicMatrix first = characteristic_matrix(a.build());
  o.require(first.to_string() == "[[0,1],[0,0]]", "first example gives " + first.to_string());

  DiagramBuilder k({x, x, x}, {x, x});
  for (int i = 0; i < 3; ++i) k.add(white(1, 2));
  for (int j = 0; j < 2; ++j) k.add(gray(3, 1));
  for (int i = 0; i < 3; ++i) {
    k.wire(Port::boundary(i), Port::at(i, 0));
    for (int j = 0; j < 2; ++j) k.wire(Port::at(i, j), Port::at(3 + j, i));
  }
  for (int j = 0; j < 2; ++j) k.wire(Port::at(3 + j, 0), Port::boundary(j));
  const CharacteristicMatrix second = characteristic_matrix(k.build());
  o.require(second.to_string() == "[[1,1],[1,1],[1,1]]", "second example gives " + second.to_string());
  if (o.pass) {
    o.detail = "190/190 pairs agree (" + std::to_string(equal_pairs) + " equal); examples " +
               first.to_string() + " and " + second.to_string();
  }
  return o;
}

// 8. Born vectors of random densities.
Outcome born_vectors() {
  Outcome o;
  Rng rng(51);
  const ObservableStructure z = qubit_z();
  double min_entry = 1.0, worst_sum = 0.0, worst_trip = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXcd rho = testing::random_density(2, rng);
    const BornVector b = measure(z, name_of(rho));
    double sum = 0.0;
    for (double p : b.probabilities) {
      min_entry = std::min(min_entry, p);
      sum += p;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    const BornVector back = measure(z, prepare(z, b));
    for (int i = 0; i < b.size(); ++i) {
      worst_trip = std::max(worst_trip, std::abs(back.probabilities[i] - b.probabilities[i]));
    }
  }
  o.require(min_entry >= -1e-12, "negative entry " + num(min_entry));
  o.require(worst_sum <= 1e-9, "sum off by " + num(worst_sum));
  o.require(worst_trip <= 1e-9, "round trip off by " + num(worst_trip));
  o.detail = "min entry " + num(min_entry) + ", sum error " + num(worst_sum) +
             ", round trip error " + num(worst_trip) + (o.pass ? "" : "; " + o.detail);
  return o;
}

// 9. The Mermin contradiction.
Outcome mermin() {
  Outcome o;
  const auto start = Clock::now();
  const ObservablePair zx = pair_by_name("z2");
  const std::vector<std::string> settings = {"XXX", "XYY", "YXY", "YYX"};
  const std::vector<int> expected = {0, 1, 1, 1};
  std::map<std::string, int> constraints;
  double worst = 0.0;
  for (size_t s = 0; s < settings.size(); ++s) {
    std::vector<double> a;
    for (char c : settings[s]) a.push_back(c == 'X' ? 0.0 : kPi / 2);
    std::vector<Phase> phases;
    for (double x : a) phases.push_back(Phase::angle(x));
    const GhzCorrelation diag = ghz_correlations(zx, phases);
    const BornVector born = born_rule_correlations(zx, a);
    for (int i = 0; i < born.size(); ++i) {
      worst = std::max(worst, std::abs(diag.joint.probabilities[i] - born.probabilities[i]));
    }
    const std::optional<int> pd = diag.definite_parity();
    const BornVector pb = parity(born, {2}, 3);
    const int born_parity = pb.probabilities[1] > 1.0 - 1e-9 ? 1 : pb.probabilities[0] > 1.0 - 1e-9 ? 0 : -1;
    o.require(pd && *pd == expected[s], settings[s] + " diagrammatic parity wrong");
    o.require(born_parity == expected[s], settings[s] + " Born-rule parity wrong");
    if (pd) constraints[settings[s]] = *pd;
  }
  const LhvReport lhv = lhv_search(settings, constraints);
  const double secs = seconds_since(start);
  o.require(worst <= 1e-9, "arms differ by " + num(worst));
  o.require(lhv.total == 64 && lhv.satisfying == 0,
            std::to_string(lhv.satisfying) + " of " + std::to_string(lhv.total) + " hidden states fit");
  o.require(secs < 5.0, "took " + num(secs) + " s");
  o.detail = "parities (0,1,1,1) by both arms, max diff " + num(worst) + "; " +
             std::to_string(lhv.satisfying) + " of " + std::to_string(lhv.total) +
             " hidden states; " + num(secs) + " s" + (o.pass ? "" : "; " + o.detail);
  return o;
}

// 10. Soundness of the logic rules.
Outcome soundness() {
  Outcome o;
  const TheoryFixture bc = boolcirc_fixture();
  int max_vars = 0;
  for (const RewriteRule& r : bc.rules) {
    max_vars = std::max(max_vars, static_cast<int>(r.lhs.inputs().size()));
  }
  o.require(max_vars <= 3, "rules have more than 3 variables");
  const SoundnessReport b = check_soundness(bc.rules, bc.model("B"));
  o.require(b.verdicts.size() == 2 && b.all_sound(), "B is unsound");
  const SoundnessReport p = check_soundness(bc.rules, bc.model("P"));
  std::string witness;
  for (const RuleVerdict& v : p.verdicts) {
    if (v.rule == "de-morgan" && !v.sound) witness = v.witness;
  }
  o.require(!witness.empty(), "P does not violate de-morgan");
  if (o.pass) o.detail = "B sound for both rules; P breaks de-morgan at " + witness;
  return o;
}

// 11. Three pairwise strongly complementary qubit observables.
Outcome max_two() {
  Outcome o;
  const double r = 1.0 / std::sqrt(2.0);
  const ObservableStructure y = copy_observable(
      "black", {Tensor::point(Semiring::kComplex, {r, Complex(0, r)}),
                Tensor::point(Semiring::kComplex, {r, Complex(0, -r)})});
  const MaxTwoReport rep = max_two_sc_check(2, {qubit_z(), qubit_x(), y});
  o.require(rep.contradiction, "no contradiction");
  o.require(rep.witness.find("rank 1") != std::string::npos, "witness lacks rank 1");
  if (o.pass) o.detail = rep.witness;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"amplitude", amplitude},
      {"teleportation yank", teleportation},
      {"spider theorem", spider_theorem},
      {"law suite", law_suite},
      {"phase groups", phase_groups},
      {"classification", classification},
      {"bialgebra normal form", bialgebra_normal_form},
      {"Born vectors", born_vectors},
      {"Mermin contradiction", mermin},
      {"soundness", soundness},
      {"max-two", max_two},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
