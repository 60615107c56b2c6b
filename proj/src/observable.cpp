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

#include "gct/observable.hpp"

#include <cmath>

#include "gct/errors.hpp"

namespace gct {

ObservableStructure ObservableStructure::from_algebra(std::string colour,
                                                      Tensor mu, Tensor eta) {
  ObservableStructure o;
  o.colour = std::move(colour);
  o.delta = adjoint(mu);
  o.epsilon = adjoint(eta);
  o.mu = std::move(mu);
  o.eta = std::move(eta);
  return o;
}

bool ObservableStructure::supports(const Phase& phase) const {
  if (phase.is_zero()) return true;
  if (phase.is_angle()) return !angle_basis.empty() && !mu.is_boolean();
  return phase.moduli() == phase_moduli &&
         static_cast<size_t>(phase.element_index()) < phase_table.size();
}

Tensor ObservableStructure::phase_point(const Phase& phase) const {
  if (phase.is_zero()) return eta;
  if (!supports(phase)) {
    throw PreconditionError("observable '" + colour +
                            "' cannot interpret phase " + phase.to_string());
  }
  if (!phase.is_angle()) return phase_table[phase.element_index()];
  const Complex rot = std::polar(1.0, phase.radians());
  Eigen::MatrixXcd v = angle_basis[0].matrix();
  for (size_t k = 1; k < angle_basis.size(); ++k) {
    v += rot * angle_basis[k].matrix();
  }
  return Tensor(semiring(), {dim()}, {}, v);
}

ObservableStructure copy_observable(std::string colour,
                                    const std::vector<Tensor>& basis) {
  if (basis.empty()) throw PreconditionError("copy observable needs a basis");
  const Semiring s = basis[0].semiring();
  const int n = static_cast<int>(basis[0].rows());
  Tensor delta(s, {n, n}, {n});
  Tensor epsilon(s, {}, {n});
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n * n, n);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(1, n);
  for (const Tensor& v : basis) {
    Eigen::VectorXcd col = v.matrix().col(0);
    Eigen::VectorXcd vv(n * n);
    for (int i = 0; i < n; ++i) vv.segment(i * n, n) = col(i) * col;
    d += vv * col.adjoint();
    e += col.adjoint();
  }
  ObservableStructure o = ObservableStructure::from_algebra(
      std::move(colour), adjoint(Tensor(s, {n, n}, {n}, d)),
      adjoint(Tensor(s, {}, {n}, e)));
  o.angle_basis = basis;
  return o;
}

ObservableStructure standard_copy(std::string colour, Semiring semiring,
                                  int n) {
  std::vector<Tensor> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<Complex> e(n, 0.0);
    e[i] = 1.0;
    basis.push_back(Tensor::point(semiring, e));
  }
  return copy_observable(std::move(colour), basis);
}

ObservableStructure conjugated(const ObservableStructure& obs, const Tensor& u,
                               std::string colour) {
  Tensor u_inv = obs.mu.is_boolean()
                     ? adjoint(u)
                     : Tensor(u.semiring(), u.out_dims(), u.in_dims(),
                              u.matrix().inverse());
  ObservableStructure o = ObservableStructure::from_algebra(
      std::move(colour), compose(kron(u_inv, u_inv), compose(obs.mu, u)),
      compose(obs.eta, u));
  for (const Tensor& v : obs.angle_basis) o.angle_basis.push_back(compose(v, u));
  o.phase_moduli = obs.phase_moduli;
  for (const Tensor& v : obs.phase_table) o.phase_table.push_back(compose(v, u));
  return o;
}

ObservableStructure product_observable(const ObservableStructure& a,
                                       const ObservableStructure& b) {
  const Semiring s = a.semiring();
  const int da = a.dim();
  const int db = b.dim();
  // (X Y)(X Y) -> (X X)(Y Y) then multiply factorwise.
  Tensor shuffle = Tensor::wiring(s, {da, db, da, db}, {0, 2, 1, 3});
  Tensor mu = compose(shuffle, kron(a.mu, b.mu));
  mu = Tensor(s, {da * db}, {da * db, da * db}, mu.matrix());
  Tensor eta = kron(a.eta, b.eta);
  eta = Tensor(s, {da * db}, {}, eta.matrix());
  ObservableStructure o = ObservableStructure::from_algebra(
      a.colour + "x" + b.colour, mu, eta);
  for (const Tensor& x : a.angle_basis) {
    for (const Tensor& y : b.angle_basis) {
      o.angle_basis.push_back(
          Tensor(s, {da * db}, {}, kron(x, y).matrix()));
    }
  }
  return o;
}

Tensor multiply_n(const ObservableStructure& obs, int n) {
  if (n < 0) throw PreconditionError("negative arity");
  if (n == 0) return obs.eta;
  const int d = obs.dim();
  Tensor acc = Tensor::identity(obs.semiring(), {d});
  for (int k = 2; k <= n; ++k) {
    // mu_k = mu o (mu_{k-1} (x) 1)
    acc = compose(kron(acc, Tensor::identity(obs.semiring(), {d})), obs.mu);
  }
  return acc;
}

Tensor comultiply_n(const ObservableStructure& obs, int n) {
  if (n < 0) throw PreconditionError("negative arity");
  if (n == 0) return obs.epsilon;
  const int d = obs.dim();
  Tensor acc = Tensor::identity(obs.semiring(), {d});
  for (int k = 2; k <= n; ++k) {
    acc = compose(obs.delta, kron(acc, Tensor::identity(obs.semiring(), {d})));
  }
  return acc;
}

Tensor phase_action(const ObservableStructure& obs, const Tensor& point) {
  const int d = obs.dim();
  return compose(kron(point, Tensor::identity(obs.semiring(), {d})), obs.mu);
}

Tensor spider_with_point(const ObservableStructure& obs, int n_in, int n_out,
                         const Tensor& point) {
  return compose(compose(multiply_n(obs, n_in), phase_action(obs, point)),
                 comultiply_n(obs, n_out));
}

Tensor spider(const ObservableStructure& obs, int n_in, int n_out,
              const Phase& phase) {
  if (phase.is_zero()) {
    return compose(multiply_n(obs, n_in), comultiply_n(obs, n_out));
  }
  return spider_with_point(obs, n_in, n_out, obs.phase_point(phase));
}

Tensor lower_star_point(const ObservableStructure& obs, const Tensor& point) {
  // The observable-induced cup delta o eta and cap epsilon o mu bend the
  // point: psi_* = (psi^dagger (x) 1) o delta o eta.
  const int d = obs.dim();
  Tensor cup = compose(obs.eta, obs.delta);
  return compose(cup, kron(adjoint(point), Tensor::identity(obs.semiring(), {d})));
}

Tensor add_points(const ObservableStructure& obs, const Tensor& a,
                  const Tensor& b) {
  return compose(kron(a, b), obs.mu);
}

}  // namespace gct
