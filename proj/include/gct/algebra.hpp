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

#include "gct/observable.hpp"
#include "gct/tensor.hpp"

namespace gct {

struct LawResult {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  std::optional<Complex> scalar;
  std::string detail;

  std::string to_string() const;
};

struct LawReport {
  std::string subject;
  std::vector<LawResult> laws;

  bool all_pass() const;
  /** nullptr when the law was not evaluated. */
  const LawResult* find(const std::string& name) const;
  bool passes(const std::string& name) const;
  /** One line per law: name, PASS/FAIL, max deviation, lambda if any. */
  std::string to_string() const;
};

/** Two observables on one carrier with the antipode and unit scalar. */
struct ObservablePair {
  ObservableStructure white;
  ObservableStructure gray;
  Tensor antipode;     // (eps_w mu_w (x) 1)(1 (x) delta_g eta_g)
  Complex unit_scalar;  // <eta_gray | eta_white> = eps_g o eta_w

  static ObservablePair make(ObservableStructure white,
                             ObservableStructure gray);
  int dim() const { return white.dim(); }
};

LawReport check_frobenius(const ObservableStructure& obs,
                          double tol = default_tolerance());

/** The candidates copied by delta and deleted by epsilon. */
std::vector<Tensor> classical_points(const ObservableStructure& obs,
                                     const std::vector<Tensor>& candidates,
                                     double tol = default_tolerance());
std::vector<int> classical_point_indices(const ObservableStructure& obs,
                                         const std::vector<Tensor>& candidates,
                                         double tol = default_tolerance());
/**
 * Classical points found without supplied candidates: every nonempty subset
 * for relations, the angle basis for complex observables.
 */
std::vector<Tensor> known_classical_points(const ObservableStructure& obs,
                                           double tol = default_tolerance());

/** A finite abelian group of points under +_obs. */
struct PhaseGroup {
  std::vector<Tensor> elements;
  std::vector<int> source_index;  // position in the candidate list
  std::vector<std::vector<int>> table;
  int identity = -1;
  std::vector<int> orders;
  std::vector<int> invariant_factors;  // empty for the trivial group
  bool associative = true;
  bool commutative = true;

  int size() const { return static_cast<int>(elements.size()); }
  /** "Z4", "Z2xZ2", "trivial". */
  std::string iso_class() const;
  int exponent() const;
  std::string to_string() const;
};

/**
 * Builds the table of `points` under +_obs, matching sums against the points
 * in `mode`. Throws PreconditionError when a sum leaves the set.
 */
PhaseGroup point_group(const ObservableStructure& obs,
                       const std::vector<Tensor>& points,
                       EqualityMode mode = EqualityMode::kUpToGlobalScalar,
                       double tol = default_tolerance());

/** Keeps the candidates with psi + psi_* = eta, then builds the group. */
PhaseGroup phase_group(const ObservableStructure& obs,
                       const std::vector<Tensor>& candidates,
                       EqualityMode mode = EqualityMode::kUpToGlobalScalar,
                       double tol = default_tolerance());

/**
 * The invariant factors of the abelian group whose multiset of element
 * orders is `orders`; throws PreconditionError when none matches.
 */
std::vector<int> classify_abelian(const std::vector<int>& orders);
std::string group_name(const std::vector<int>& invariant_factors);

LawReport check_complementarity(const ObservablePair& pair,
                                double tol = default_tolerance());
LawReport check_coherence(const ObservablePair& pair,
                          double tol = default_tolerance());

/**
 * Rephases two mutually unbiased orthonormal bases into a coherent pair of
 * copy observables. Throws PreconditionError otherwise.
 */
ObservablePair coherify(const std::vector<Tensor>& white_basis,
                        const std::vector<Tensor>& gray_basis,
                        double tol = default_tolerance());

LawReport check_strong_complementarity(const ObservablePair& pair,
                                       double tol = default_tolerance());

/**
 * Gray copies the group-element basis; white is |g>|h> -> |g+h>/sqrt(D)
 * with unit sqrt(D)|0>. The group is Z_{m1} x ... with the first factor most
 * significant in the basis index.
 */
ObservablePair group_algebra_pair(const std::vector<int>& moduli);

/** Gray classical points under +_white. */
PhaseGroup k_gray(const ObservablePair& pair, double tol = default_tolerance());

/** mu_white^(k) o delta_gray^(k) against eta_white o eps_gray. */
LawReport check_exponent_law(const ObservablePair& pair, int k,
                             double tol = default_tolerance());
/** Uses k = exp(K_gray). */
LawReport check_exponent_law(const ObservablePair& pair,
                             double tol = default_tolerance());

struct MaxTwoReport {
  int dim = 0;
  int observables = 0;
  bool contradiction = false;
  std::vector<std::string> steps;
  std::string witness;

  std::string to_string() const;
};

/**
 * Treats every listed observable as strongly complementary to every other
 * and derives the rank-1 identity contradiction for any three of them.
 */
MaxTwoReport max_two_sc_check(int dim,
                              const std::vector<ObservableStructure>& observables,
                              double tol = default_tolerance());

/**
 * Whether maps out of the carrier are determined by their values on the
 * classical points. Relations are enumerated exhaustively into a 2-element
 * set; complex observables use the rank of the classical points.
 */
bool check_enough_classical_points(const ObservableStructure& obs,
                                   double tol = default_tolerance());
bool check_enough_classical_points(const ObservableStructure& obs,
                                   const std::vector<Tensor>& points,
                                   double tol = default_tolerance());

/**
 * Measures two legs of the tripartite white GHZ state in gray and checks
 * the third is left invariant by gray decoherence; when that holds, also
 * evaluates the bialgebra law. Complex pairs only.
 */
LawReport check_sharpness_implies_sc(const ObservablePair& pair,
                                     double tol = default_tolerance());

/**
 * Named pairs: "z2" (qubit Z/X), "zz" (Z with itself), "frel" (copy/XOR
 * on a bit), "spek", "stab", and "zN" or "zNxzM..." for group algebras.
 */
ObservablePair pair_by_name(const std::string& name);
std::vector<std::string> pair_names();

}  // namespace gct
