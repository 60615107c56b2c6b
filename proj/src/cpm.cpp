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

#include "gct/cpm.hpp"

#include <cmath>
#include <sstream>

#include "gct/errors.hpp"

namespace gct {

namespace {

int dim_of(const Tensor& name) {
  const int n = static_cast<int>(name.rows());
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (d * d != n || name.cols() != 1) {
    throw ShapeMismatchError("a name must be a point of square dimension, got " +
                             std::to_string(name.rows()) + "x" +
                             std::to_string(name.cols()));
  }
  return d;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Columns are the observable's basis vectors.
Eigen::MatrixXcd basis_matrix(const ObservableStructure& obs) {
  if (obs.semiring() != Semiring::kComplex) {
    throw PreconditionError("measurement needs a complex observable");
  }
  const int d = obs.dim();
  if (static_cast<int>(obs.angle_basis.size()) != d) {
    throw PreconditionError("observable " + obs.colour +
                            " has no orthonormal basis recorded");
  }
  Eigen::MatrixXcd x(d, d);
  for (int i = 0; i < d; ++i) x.col(i) = obs.angle_basis[i].matrix().col(0);
  return x;
}

Eigen::MatrixXcd kron_mat(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

Tensor name_of(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw ShapeMismatchError("density must be square");
  const int d = static_cast<int>(rho.rows());
  Eigen::MatrixXcd v(d * d, 1);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) v(a * d + b, 0) = rho(a, b);
  }
  return Tensor(Semiring::kComplex, {d, d}, {}, v);
}

Eigen::MatrixXcd density_of(const Tensor& name) {
  const int d = dim_of(name);
  Eigen::MatrixXcd rho(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) rho(a, b) = name(a * d + b, 0);
  }
  return rho;
}

CpmMap::CpmMap(Tensor base, std::vector<int> in_dims, std::vector<int> out_dims,
               int ancilla_dim)
    : base_(std::move(base)),
      in_dims_(std::move(in_dims)),
      out_dims_(std::move(out_dims)),
      ancilla_dim_(ancilla_dim) {
  if (base_.semiring() != Semiring::kComplex) {
    throw PreconditionError("completely positive maps need complex tensors");
  }
  if (base_.cols() != product(in_dims_) ||
      base_.rows() != product(out_dims_) * ancilla_dim_) {
    throw ShapeMismatchError("base map does not match the declared legs");
  }
}

int CpmMap::in_size() const { return static_cast<int>(product(in_dims_)); }
int CpmMap::out_size() const { return static_cast<int>(product(out_dims_)); }

std::vector<Eigen::MatrixXcd> CpmMap::kraus_maps() const {
  const int c = ancilla_dim_;
  std::vector<Eigen::MatrixXcd> out;
  for (int k = 0; k < c; ++k) {
    Eigen::MatrixXcd b(out_size(), in_size());
    for (int o = 0; o < out_size(); ++o) b.row(o) = base_.matrix().row(o * c + k);
    out.push_back(b);
  }
  return out;
}

Tensor CpmMap::superoperator() const {
  const int n_out = out_size();
  const int n_in = in_size();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n_out * n_out, n_in * n_in);
  for (const Eigen::MatrixXcd& b : kraus_maps()) {
    const Eigen::MatrixXcd bc = b.conjugate();
    for (int o1 = 0; o1 < n_out; ++o1) {
      for (int i1 = 0; i1 < n_in; ++i1) {
        if (b(o1, i1) == Complex(0.0)) continue;
        s.block(o1 * n_out, i1 * n_in, n_out, n_in) += b(o1, i1) * bc;
      }
    }
  }
  return Tensor(Semiring::kComplex, concat(out_dims_, out_dims_),
                concat(in_dims_, in_dims_), s);
}

Tensor CpmMap::apply(const Tensor& name) const {
  if (name.rows() != static_cast<Eigen::Index>(in_size()) * in_size() ||
      name.cols() != 1) {
    throw ShapeMismatchError("name does not fit the map's input");
  }
  const Eigen::MatrixXcd v = superoperator().matrix() * name.matrix();
  const int n = out_size();
  return Tensor(Semiring::kComplex, {n, n}, {}, v);
}

Eigen::MatrixXcd CpmMap::apply_density(const Eigen::MatrixXcd& rho) const {
  return density_of(apply(name_of(rho)));
}

CpmMap doubled(const Tensor& pure) {
  if (pure.semiring() != Semiring::kComplex) {
    throw PreconditionError("doubling needs a complex map");
  }
  Tensor base(Semiring::kComplex, concat(pure.out_dims(), {1}), pure.in_dims(),
              pure.matrix());
  return CpmMap(base, pure.in_dims(), pure.out_dims(), 1);
}

CpmMap doubled(const Diagram& d, const ModelBinding& m) {
  return doubled(interpret(d, m));
}

CpmMap then(const CpmMap& f, const CpmMap& g) {
  if (f.out_dims() != g.in_dims()) {
    throw ShapeMismatchError("cannot compose completely positive maps of "
                             "mismatched shape");
  }
  const int cf = f.ancilla_dim();
  const Eigen::MatrixXcd lifted =
      kron_mat(g.base().matrix(), Eigen::MatrixXcd::Identity(cf, cf));
  const Eigen::MatrixXcd b = lifted * f.base().matrix();
  const int c = g.ancilla_dim() * cf;
  return CpmMap(Tensor(Semiring::kComplex, concat(g.out_dims(), {c}), f.in_dims(), b),
                f.in_dims(), g.out_dims(), c);
}

CpmMap tensor(const CpmMap& f, const CpmMap& g) {
  // kron(B_f, B_g) has outputs (out_f, C_f, out_g, C_g); move C_f last-but-one.
  const Tensor k = kron(f.base(), g.base());
  const int nf = static_cast<int>(f.out_dims().size());
  const int ng = static_cast<int>(g.out_dims().size());
  std::vector<int> perm;
  for (int i = 0; i < nf; ++i) perm.push_back(i);
  for (int i = 0; i < ng; ++i) perm.push_back(nf + 1 + i);
  perm.push_back(nf);
  perm.push_back(nf + ng + 1);
  const Tensor p = permute_outputs(k, perm);
  const int c = f.ancilla_dim() * g.ancilla_dim();
  const std::vector<int> outs = concat(f.out_dims(), g.out_dims());
  const std::vector<int> ins = concat(f.in_dims(), g.in_dims());
  return CpmMap(Tensor(Semiring::kComplex, concat(outs, {c}), ins, p.matrix()), ins,
                outs, c);
}

CpmMap kraus_cpm(const std::vector<Tensor>& maps) {
  if (maps.empty()) throw ShapeMismatchError("no Kraus maps given");
  const Tensor& first = maps[0];
  const int k = static_cast<int>(maps.size());
  Eigen::MatrixXcd b(first.rows() * k, first.cols());
  for (int i = 0; i < k; ++i) {
    const Tensor& m = maps[i];
    if (m.out_dims() != first.out_dims() || m.in_dims() != first.in_dims() ||
        m.semiring() != Semiring::kComplex) {
      throw ShapeMismatchError("Kraus map " + std::to_string(i) +
                               " differs in shape from the first");
    }
    for (Eigen::Index o = 0; o < m.rows(); ++o) b.row(o * k + i) = m.matrix().row(o);
  }
  return CpmMap(Tensor(Semiring::kComplex, concat(first.out_dims(), {k}),
                       first.in_dims(), b),
                first.in_dims(), first.out_dims(), k);
}

bool BornVector::valid(double tol) const {
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < -tol) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

Tensor BornVector::point(const ObservableStructure& obs) const {
  const Eigen::MatrixXcd x = basis_matrix(obs);
  if (x.cols() != size()) throw ShapeMismatchError("Born vector size mismatch");
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(x.rows(), 1);
  for (int i = 0; i < size(); ++i) v.col(0) += probabilities[i] * x.col(i);
  return Tensor(Semiring::kComplex, {static_cast<int>(x.rows())}, {}, v);
}

std::string BornVector::to_string() const {
  std::ostringstream os;
  os << observable << ':';
  for (int i = 0; i < size(); ++i) {
    os << ' ' << i << ':' << format_real(probabilities[i], 12);
  }
  return os.str();
}

BornVector measure(const ObservableStructure& obs, const Tensor& name,
                   bool rescale, double tol) {
  const int d = dim_of(name);
  if (d != obs.dim()) throw ShapeMismatchError("state and observable differ in dimension");
  const Eigen::MatrixXcd x = basis_matrix(obs);
  // Realign the second leg from the diagonal cup to the observable's cup,
  // then let the observable's multiplication read off the diagonal.
  const Eigen::MatrixXcd k = x * x.transpose();
  const Eigen::MatrixXcd lifted =
      kron_mat(Eigen::MatrixXcd::Identity(d, d), k);
  const Eigen::MatrixXcd classical = obs.mu.matrix() * (lifted * name.matrix());
  BornVector b;
  b.observable = obs.colour;
  b.total = 0.0;
  for (int i = 0; i < d; ++i) {
    const Complex p = (x.col(i).adjoint() * classical)(0, 0);
    if (std::abs(p.imag()) > std::max(tol, 1e-9 * std::abs(p))) {
      throw PreconditionError("name is not Hermitian: imaginary Born weight");
    }
    b.probabilities.push_back(p.real());
    b.total += p.real();
  }
  if (rescale && b.total != 0.0) {
    for (double& p : b.probabilities) p /= b.total;
  }
  return b;
}

BornVector measure(const ObservableStructure& obs, const CpmMap& state,
                   bool rescale, double tol) {
  if (!state.is_state()) throw PreconditionError("measure expects a state");
  Tensor one(Semiring::kComplex, {1, 1}, {}, Eigen::MatrixXcd::Ones(1, 1));
  return measure(obs, state.apply(one), rescale, tol);
}

Tensor prepare(const ObservableStructure& obs, const BornVector& b, double tol) {
  if (!b.valid(tol)) {
    throw PreconditionError("not a Born vector: " + b.to_string());
  }
  const Eigen::MatrixXcd x = basis_matrix(obs);
  const int d = obs.dim();
  if (b.size() != d) throw ShapeMismatchError("Born vector size mismatch");
  // delta_obs of the classical point, realigned back to the diagonal cup.
  const Eigen::MatrixXcd copied = obs.delta.matrix() * b.point(obs).matrix();
  const Eigen::MatrixXcd k_inv = (x * x.transpose()).adjoint();
  const Eigen::MatrixXcd v =
      kron_mat(Eigen::MatrixXcd::Identity(d, d), k_inv) * copied;
  return Tensor(Semiring::kComplex, {d, d}, {}, v);
}

Tensor born_witness(const ObservableStructure& obs, const std::vector<double>& p) {
  const Eigen::MatrixXcd x = basis_matrix(obs);
  if (static_cast<int>(p.size()) != x.cols()) {
    throw ShapeMismatchError("probability vector size mismatch");
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(x.rows());
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0) throw PreconditionError("negative probability");
    psi += std::sqrt(p[i]) * x.col(static_cast<Eigen::Index>(i));
  }
  return name_of(psi * psi.adjoint());
}

BornVector phased_measurement(const ObservablePair& pair, const Phase& alpha,
                              const Tensor& name, double tol) {
  if (!check_coherence(pair, tol).all_pass()) {
    throw PreconditionError("phased measurement needs a coherent pair");
  }
  const Tensor lambda = phase_action(pair.white, pair.white.phase_point(-alpha));
  return measure(pair.gray, doubled(lambda).apply(name), false, tol);
}

CpmMap decoherence(const ObservableStructure& obs) {
  const Eigen::MatrixXcd x = basis_matrix(obs);
  std::vector<Tensor> maps;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    maps.push_back(Tensor(Semiring::kComplex, {obs.dim()}, {obs.dim()},
                          x.col(i) * x.col(i).adjoint()));
  }
  return kraus_cpm(maps);
}

}  // namespace gct
