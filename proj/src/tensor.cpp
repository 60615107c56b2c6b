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

#include "gct/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "gct/errors.hpp"

namespace gct {

long long product(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) p *= d;
  return p;
}

Tensor::Tensor(Semiring semiring, std::vector<int> out_dims,
               std::vector<int> in_dims)
    : semiring_(semiring),
      out_dims_(std::move(out_dims)),
      in_dims_(std::move(in_dims)) {
  data_ = Eigen::MatrixXcd::Zero(product(out_dims_), product(in_dims_));
}

Tensor::Tensor(Semiring semiring, std::vector<int> out_dims,
               std::vector<int> in_dims, Eigen::MatrixXcd data)
    : semiring_(semiring),
      out_dims_(std::move(out_dims)),
      in_dims_(std::move(in_dims)),
      data_(std::move(data)) {
  if (data_.rows() != product(out_dims_) || data_.cols() != product(in_dims_)) {
    throw ShapeMismatchError("tensor data does not match leg dimensions");
  }
  saturate();
}

Tensor Tensor::identity(Semiring semiring, const std::vector<int>& dims) {
  long long n = product(dims);
  return Tensor(semiring, dims, dims, Eigen::MatrixXcd::Identity(n, n));
}

Tensor Tensor::scalar(Semiring semiring, Complex value) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = value;
  return Tensor(semiring, {}, {}, m);
}

Tensor Tensor::point(Semiring semiring, const std::vector<Complex>& entries) {
  return point(semiring, static_cast<int>(entries.size()), entries);
}

Tensor Tensor::point(Semiring semiring, int dim,
                     const std::vector<Complex>& entries) {
  if (static_cast<int>(entries.size()) != dim) {
    throw ShapeMismatchError("point has wrong number of entries");
  }
  Eigen::MatrixXcd m(dim, 1);
  for (int i = 0; i < dim; ++i) m(i, 0) = entries[i];
  return Tensor(semiring, {dim}, {}, m);
}

Tensor Tensor::subset(int dim, const std::vector<int>& members) {
  Tensor t(Semiring::kBoolean, {dim}, {});
  for (int m : members) {
    if (m < 0 || m >= dim) throw IndexError("subset member out of range");
    t.data_(m, 0) = 1.0;
  }
  return t;
}

Tensor Tensor::wiring(Semiring semiring, const std::vector<int>& in_dims,
                      const std::vector<int>& perm) {
  const int n = static_cast<int>(in_dims.size());
  if (static_cast<int>(perm.size()) != n) {
    throw ShapeMismatchError("wiring permutation has wrong length");
  }
  std::vector<int> out_dims(n);
  for (int i = 0; i < n; ++i) out_dims[perm[i]] = in_dims[i];
  Tensor t(semiring, out_dims, in_dims);
  const long long total = product(in_dims);
  std::vector<int> idx(n, 0);
  for (long long c = 0; c < total; ++c) {
    long long rem = c;
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(rem % in_dims[i]);
      rem /= in_dims[i];
    }
    long long r = 0;
    for (int j = 0; j < n; ++j) {
      int src = 0;
      for (int i = 0; i < n; ++i) {
        if (perm[i] == j) src = i;
      }
      r = r * out_dims[j] + idx[src];
    }
    t.data_(r, c) = 1.0;
  }
  return t;
}

std::vector<Complex> Tensor::entries() const {
  std::vector<Complex> v;
  v.reserve(data_.size());
  for (Eigen::Index r = 0; r < data_.rows(); ++r) {
    for (Eigen::Index c = 0; c < data_.cols(); ++c) v.push_back(data_(r, c));
  }
  return v;
}

void Tensor::saturate() {
  if (semiring_ != Semiring::kBoolean) return;
  for (Eigen::Index r = 0; r < data_.rows(); ++r) {
    for (Eigen::Index c = 0; c < data_.cols(); ++c) {
      data_(r, c) = std::abs(data_(r, c)) > 0.5 ? 1.0 : 0.0;
    }
  }
}

Tensor Tensor::scaled(Complex lambda) const {
  return Tensor(semiring_, out_dims_, in_dims_, data_ * lambda);
}

bool Tensor::same_shape(const Tensor& other) const {
  return semiring_ == other.semiring_ && rows() == other.rows() &&
         cols() == other.cols();
}

Tensor compose(const Tensor& f, const Tensor& g) {
  if (f.semiring() != g.semiring() || f.rows() != g.cols()) {
    throw ShapeMismatchError("cannot compose tensors of shapes " +
                             std::to_string(f.rows()) + "x" +
                             std::to_string(f.cols()) + " then " +
                             std::to_string(g.rows()) + "x" +
                             std::to_string(g.cols()));
  }
  return Tensor(f.semiring(), g.out_dims(), f.in_dims(),
                g.matrix() * f.matrix());
}

Tensor kron(const Tensor& a, const Tensor& b) {
  if (a.semiring() != b.semiring()) {
    throw ShapeMismatchError("kron of tensors over different semirings");
  }
  Eigen::MatrixXcd m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.matrix();
    }
  }
  std::vector<int> out = a.out_dims();
  out.insert(out.end(), b.out_dims().begin(), b.out_dims().end());
  std::vector<int> in = a.in_dims();
  in.insert(in.end(), b.in_dims().begin(), b.in_dims().end());
  return Tensor(a.semiring(), out, in, m);
}

Tensor adjoint(const Tensor& t) {
  return Tensor(t.semiring(), t.in_dims(), t.out_dims(), t.matrix().adjoint());
}

Tensor transpose(const Tensor& t) {
  return Tensor(t.semiring(), t.in_dims(), t.out_dims(),
                t.matrix().transpose());
}

Tensor conjugate(const Tensor& t) {
  return Tensor(t.semiring(), t.out_dims(), t.in_dims(), t.matrix().conjugate());
}

Tensor add(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw ShapeMismatchError("cannot add tensors");
  return Tensor(a.semiring(), a.out_dims(), a.in_dims(), a.matrix() + b.matrix());
}

namespace {

// For each index of the reordered space, the index of the source space it
// reads from. Leg i of the result is leg perm[i] of the source.
std::vector<long long> leg_gather(const std::vector<int>& dims,
                                  const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = dims[perm[i]];
  const long long total = product(dims);
  std::vector<long long> gather(total);
  std::vector<int> idx(n);
  for (long long s = 0; s < total; ++s) {
    long long rem = s;
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(rem % dims[i]);
      rem /= dims[i];
    }
    long long r = 0;
    for (int i = 0; i < n; ++i) r = r * new_dims[i] + idx[perm[i]];
    gather[r] = s;
  }
  return gather;
}

void check_perm(const std::vector<int>& perm, size_t n) {
  if (perm.size() != n) throw ShapeMismatchError("permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<size_t>(p) >= n || seen[p]) {
      throw ShapeMismatchError("not a permutation");
    }
    seen[p] = true;
  }
}

}  // namespace

Tensor permute_outputs(const Tensor& t, const std::vector<int>& perm) {
  check_perm(perm, t.out_dims().size());
  std::vector<int> dims(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) dims[i] = t.out_dims()[perm[i]];
  std::vector<long long> g = leg_gather(t.out_dims(), perm);
  Eigen::MatrixXcd m(t.rows(), t.cols());
  for (Eigen::Index r = 0; r < t.rows(); ++r) m.row(r) = t.matrix().row(g[r]);
  return Tensor(t.semiring(), dims, t.in_dims(), std::move(m));
}

Tensor permute_inputs(const Tensor& t, const std::vector<int>& perm) {
  check_perm(perm, t.in_dims().size());
  std::vector<int> dims(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) dims[i] = t.in_dims()[perm[i]];
  std::vector<long long> g = leg_gather(t.in_dims(), perm);
  Eigen::MatrixXcd m(t.rows(), t.cols());
  for (Eigen::Index c = 0; c < t.cols(); ++c) m.col(c) = t.matrix().col(g[c]);
  return Tensor(t.semiring(), t.out_dims(), dims, std::move(m));
}

Tensor swap(Semiring semiring, const std::vector<int>& a,
            const std::vector<int>& b) {
  std::vector<int> dims = a;
  dims.insert(dims.end(), b.begin(), b.end());
  std::vector<int> perm;
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  for (int i = 0; i < na; ++i) perm.push_back(nb + i);
  for (int i = 0; i < nb; ++i) perm.push_back(i);
  return Tensor::wiring(semiring, dims, perm);
}

double default_tolerance() {
  static const double tol = [] {
    const char* env = std::getenv("GCT_TOLERANCE");
    if (env != nullptr) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

double max_deviation(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) {
    throw ShapeMismatchError("cannot compare tensors of different shapes");
  }
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool find_scalar_ratio(const Tensor& a, const Tensor& b, Complex* lambda,
                       double tol) {
  if (!a.same_shape(b)) {
    throw ShapeMismatchError("cannot compare tensors of different shapes");
  }
  const double nb = b.matrix().squaredNorm();
  const double na = a.matrix().squaredNorm();
  if (nb == 0.0) {
    if (lambda) *lambda = 1.0;
    return na == 0.0;
  }
  Complex l = (b.matrix().adjoint() * a.matrix()).trace() / nb;
  if (lambda) *lambda = l;
  if (std::abs(l) <= tol) return false;
  if (a.is_boolean()) return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0;
  return (a.matrix() - l * b.matrix()).cwiseAbs().maxCoeff() <= tol;
}

bool equal_tensors(const Tensor& a, const Tensor& b, EqualityMode mode,
                   double tol) {
  if (!a.same_shape(b)) {
    throw ShapeMismatchError("cannot compare tensors of different shapes");
  }
  switch (mode) {
    case EqualityMode::kExact:
      return a.matrix() == b.matrix();
    case EqualityMode::kTolerance:
      if (a.is_boolean()) return a.matrix() == b.matrix();
      return max_deviation(a, b) <= tol;
    case EqualityMode::kUpToGlobalScalar:
      return find_scalar_ratio(a, b, nullptr, tol);
  }
  return false;
}

std::string format_real(double x, int precision) {
  if (precision < 17 && std::fabs(x) < 1e-14) x = 0.0;
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  return buf;
}

std::string format_complex(Complex z, int precision) {
  return "(" + format_real(z.real(), precision) + ", " +
         format_real(z.imag(), precision) + ")";
}

std::string serialize_tensor(const Tensor& t, int precision) {
  std::ostringstream os;
  os << "tensor " << (t.is_boolean() ? "boolean" : "complex") << ' '
     << t.rows() << 'x' << t.cols() << '\n';
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
      if (c) os << ' ';
      if (t.is_boolean()) {
        os << (t(r, c) == Complex(0.0) ? '0' : '1');
      } else {
        os << format_complex(t(r, c), precision);
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gct
