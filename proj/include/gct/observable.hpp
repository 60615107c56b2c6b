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

#include <string>
#include <vector>

#include "gct/phase.hpp"
#include "gct/tensor.hpp"

namespace gct {

/**
 * A dagger-special commutative Frobenius algebra given by concrete tensors.
 * delta and epsilon are the adjoints of mu and eta.
 *
 * Phases are resolved to points in one of two ways: angles use `angle_basis`
 * (the point v_0 + e^{ia} sum_{k>0} v_k), and finite group elements index
 * into `phase_table`, whose group is Z_{m1} x ... given by `phase_moduli`.
 */
struct ObservableStructure {
  std::string colour;
  Tensor mu;       // X (x) X -> X
  Tensor eta;      // I -> X
  Tensor delta;    // X -> X (x) X
  Tensor epsilon;  // X -> I
  std::vector<Tensor> angle_basis;
  std::vector<int> phase_moduli;
  std::vector<Tensor> phase_table;

  /** Builds delta and epsilon as adjoints. */
  static ObservableStructure from_algebra(std::string colour, Tensor mu,
                                          Tensor eta);

  Semiring semiring() const { return mu.semiring(); }
  int dim() const { return static_cast<int>(eta.rows()); }

  /** The point I -> X for a phase. Throws PreconditionError if unsupported. */
  Tensor phase_point(const Phase& phase) const;
  bool supports(const Phase& phase) const;
};

/**
 * The copy algebra of an orthonormal basis (complex) or of singletons
 * (boolean): delta v_k = v_k (x) v_k and epsilon v_k = 1. The basis also
 * becomes the angle basis.
 */
ObservableStructure copy_observable(std::string colour,
                                    const std::vector<Tensor>& basis);
/** Copy algebra on the standard basis of dimension n. */
ObservableStructure standard_copy(std::string colour, Semiring semiring, int n);

/** Transports every structure map along an invertible u: X -> X. */
ObservableStructure conjugated(const ObservableStructure& obs, const Tensor& u,
                               std::string colour);

/** The observable on X (x) Y built from one on each factor. */
ObservableStructure product_observable(const ObservableStructure& a,
                                       const ObservableStructure& b);

/** mu_n : X^n -> X, with mu_0 = eta and mu_1 = id. */
Tensor multiply_n(const ObservableStructure& obs, int n);
/** delta_n : X -> X^n, with delta_0 = epsilon and delta_1 = id. */
Tensor comultiply_n(const ObservableStructure& obs, int n);

/** Lambda(psi) = mu o (psi (x) 1). */
Tensor phase_action(const ObservableStructure& obs, const Tensor& point);

/** delta_{n_out} o Lambda(phase) o mu_{n_in}; the zero phase skips Lambda. */
Tensor spider(const ObservableStructure& obs, int n_in, int n_out,
              const Phase& phase = Phase());
Tensor spider_with_point(const ObservableStructure& obs, int n_in, int n_out,
                         const Tensor& point);

/** psi_* : the conjugate point, the phase-group inverse candidate. */
Tensor lower_star_point(const ObservableStructure& obs, const Tensor& point);

/** psi +_obs phi = mu o (psi (x) phi). */
Tensor add_points(const ObservableStructure& obs, const Tensor& a,
                  const Tensor& b);

}  // namespace gct
