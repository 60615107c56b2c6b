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

#include "gct/algebra.hpp"
#include "gct/diagram.hpp"
#include "gct/model.hpp"
#include "gct/observable.hpp"
#include "gct/phase.hpp"
#include "gct/tensor.hpp"

namespace gct {

// Mixed states are handled as names: rho on A becomes the point
// (rho (x) 1) o cup on A (x) A, with the diagonal cup. With the first leg most
// significant, the name of rho has entry rho(a, b) at index a * dim + b.

/** The name of a square matrix. */
Tensor name_of(const Eigen::MatrixXcd& rho);
/** Inverse of name_of; throws ShapeMismatchError unless size is dim^2. */
Eigen::MatrixXcd density_of(const Tensor& name);

/**
 * A completely positive map given by one linear map B: A -> A' (x) C whose
 * last leg C is the ancilla. It acts on names by rho -> tr_C(B rho B^dagger).
 * Pure maps have a one-dimensional ancilla; states have no input legs and
 * effects no output legs.
 */
class CpmMap {
 public:
  CpmMap() = default;
  /** base must be a complex tensor whose last output leg is the ancilla. */
  CpmMap(Tensor base, std::vector<int> in_dims, std::vector<int> out_dims,
         int ancilla_dim);

  const Tensor& base() const { return base_; }
  const std::vector<int>& in_dims() const { return in_dims_; }
  const std::vector<int>& out_dims() const { return out_dims_; }
  int ancilla_dim() const { return ancilla_dim_; }
  int in_size() const;
  int out_size() const;

  bool is_pure() const { return ancilla_dim_ == 1; }
  bool is_state() const { return in_dims_.empty(); }
  bool is_effect() const { return out_dims_.empty(); }

  /** The map on names: sum over c of B_c (x) conj(B_c). */
  Tensor superoperator() const;
  Tensor apply(const Tensor& name) const;
  Eigen::MatrixXcd apply_density(const Eigen::MatrixXcd& rho) const;

  /** The Kraus maps B_c = (1 (x) <c|) B. */
  std::vector<Eigen::MatrixXcd> kraus_maps() const;

 private:
  Tensor base_;
  std::vector<int> in_dims_;
  std::vector<int> out_dims_;
  int ancilla_dim_ = 1;
};

/** Doubling of a pure map or of a pure diagram under a complex model. */
CpmMap doubled(const Tensor& pure);
CpmMap doubled(const Diagram& d, const ModelBinding& m);

/** g after f. */
CpmMap then(const CpmMap& f, const CpmMap& g);
CpmMap tensor(const CpmMap& f, const CpmMap& g);

/**
 * The map rho -> sum_i B_i rho B_i^dagger, encoded as B' = sum_i B_i (x) |i>.
 * Throws ShapeMismatchError unless all maps share their shape.
 */
CpmMap kraus_cpm(const std::vector<Tensor>& maps);

/** A probability distribution over an observable's classical points. */
struct BornVector {
  std::string observable;
  std::vector<double> probabilities;
  double total = 1.0;  // sum before any rescaling

  int size() const { return static_cast<int>(probabilities.size()); }
  bool valid(double tol = default_tolerance()) const;
  /** sum_i p_i x_i for the observable's basis x_i. */
  Tensor point(const ObservableStructure& obs) const;
  /** "white: 0:0.5 1:0.5" at 12 significant digits. */
  std::string to_string() const;
};

/**
 * The classical data mu_obs applied to the name after realigning its second
 * leg to the observable's cup; entry i equals <x_i|rho|x_i>. A name with
 * trace away from 1 is reported in `total` and rescaled only when asked.
 */
BornVector measure(const ObservableStructure& obs, const Tensor& name,
                   bool rescale = false, double tol = default_tolerance());
BornVector measure(const ObservableStructure& obs, const CpmMap& state,
                   bool rescale = false, double tol = default_tolerance());

/** The name of sum_i p_i |x_i><x_i|; throws PreconditionError when invalid. */
Tensor prepare(const ObservableStructure& obs, const BornVector& b,
               double tol = default_tolerance());

/**
 * A pure state whose measurement in obs gives p: sum_i sqrt(p_i) x_i, as a
 * name.
 */
Tensor born_witness(const ObservableStructure& obs,
                    const std::vector<double>& p);

/**
 * Measures gray after the doubled Lambda_white(-alpha). For the qubit Z/X
 * pair alpha = 0 is the X and alpha = pi/2 the Y measurement. Throws
 * PreconditionError unless the pair is coherent.
 */
BornVector phased_measurement(const ObservablePair& pair, const Phase& alpha,
                              const Tensor& name,
                              double tol = default_tolerance());

/** Kraus maps |x_i><x_i|; equals prepare after measure. */
CpmMap decoherence(const ObservableStructure& obs);

}  // namespace gct
