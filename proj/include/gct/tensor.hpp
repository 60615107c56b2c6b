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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace gct {

using Complex = std::complex<double>;

enum class Semiring { kComplex, kBoolean };

/**
 * Dense matrix over a semiring with named leg dimensions.
 *
 * Rows index the output legs and columns the input legs; multi-leg indices
 * are row-major with the first leg most significant, so tensor products are
 * Kronecker products. Boolean tensors store 0/1 in the real part and every
 * operation saturates back to {0,1}.
 */
class Tensor {
 public:
  Tensor() : Tensor(Semiring::kComplex, {}, {}) {}
  Tensor(Semiring semiring, std::vector<int> out_dims, std::vector<int> in_dims);
  Tensor(Semiring semiring, std::vector<int> out_dims, std::vector<int> in_dims,
         Eigen::MatrixXcd data);

  static Tensor identity(Semiring semiring, const std::vector<int>& dims);
  static Tensor scalar(Semiring semiring, Complex value);
  /** A point I -> A given by its coordinates. */
  static Tensor point(Semiring semiring, const std::vector<Complex>& entries);
  static Tensor point(Semiring semiring, int dim,
                      const std::vector<Complex>& entries);
  /** A relation/point on a set given by the members of a subset. */
  static Tensor subset(int dim, const std::vector<int>& members);
  /** The permutation sending input leg i to output leg perm[i]. */
  static Tensor wiring(Semiring semiring, const std::vector<int>& in_dims,
                       const std::vector<int>& perm);

  Semiring semiring() const { return semiring_; }
  bool is_boolean() const { return semiring_ == Semiring::kBoolean; }
  const std::vector<int>& out_dims() const { return out_dims_; }
  const std::vector<int>& in_dims() const { return in_dims_; }
  Eigen::Index rows() const { return data_.rows(); }
  Eigen::Index cols() const { return data_.cols(); }
  const Eigen::MatrixXcd& matrix() const { return data_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const {
    return data_(r, c);
  }
  Complex& at(Eigen::Index r, Eigen::Index c) { return data_(r, c); }

  /** Column vector of a point (cols() == 1). */
  std::vector<Complex> entries() const;

  /** Clamp boolean entries back to {0,1}; no-op for complex tensors. */
  void saturate();
  Tensor scaled(Complex lambda) const;

  bool same_shape(const Tensor& other) const;

 private:
  Semiring semiring_;
  std::vector<int> out_dims_;
  std::vector<int> in_dims_;
  Eigen::MatrixXcd data_;
};

long long product(const std::vector<int>& dims);

/** g after f. */
Tensor compose(const Tensor& f, const Tensor& g);
Tensor kron(const Tensor& a, const Tensor& b);
/** Conjugate transpose, or converse for relations. */
Tensor adjoint(const Tensor& t);
Tensor transpose(const Tensor& t);
Tensor conjugate(const Tensor& t);
Tensor add(const Tensor& a, const Tensor& b);
/** Reorders output legs: output leg i of the result is output leg perm[i]. */
Tensor permute_outputs(const Tensor& t, const std::vector<int>& perm);
/** Reorders input legs: input leg i of the result is input leg perm[i]. */
Tensor permute_inputs(const Tensor& t, const std::vector<int>& perm);
/** The swap A (x) B -> B (x) A. */
Tensor swap(Semiring semiring, const std::vector<int>& a,
            const std::vector<int>& b);

enum class EqualityMode { kExact, kTolerance, kUpToGlobalScalar };

double default_tolerance();
double max_deviation(const Tensor& a, const Tensor& b);

/** Throws ShapeMismatchError when semiring or shape disagree. */
bool equal_tensors(const Tensor& a, const Tensor& b, EqualityMode mode,
                   double tol = default_tolerance());

/**
 * Finds lambda with ||a - lambda b||_inf minimal; returns false when b is
 * zero but a is not, or when the best lambda misses by more than tol.
 */
bool find_scalar_ratio(const Tensor& a, const Tensor& b, Complex* lambda,
                       double tol = default_tolerance());

/** Row-major (re, im) pairs at the given precision, or a 0/1 grid. */
std::string serialize_tensor(const Tensor& t, int precision = 17);
std::string format_real(double x, int precision);
std::string format_complex(Complex z, int precision);

}  // namespace gct
