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

#include "gct/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "gct/errors.hpp"
#include "gct/signatures.hpp"

namespace gct {
namespace {

Tensor id(Semiring s, int d) { return Tensor::identity(s, {d}); }

double deviation(const Tensor& a, const Tensor& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

LawResult compare(std::string name, const Tensor& lhs, const Tensor& rhs,
                  bool up_to_scalar, double tol) {
  if (!lhs.same_shape(rhs)) {
    throw ShapeMismatchError("law '" + name + "' compares different shapes");
  }
  LawResult r;
  r.name = std::move(name);
  if (lhs.is_boolean()) {
    r.max_deviation = deviation(lhs, rhs);
    r.pass = r.max_deviation == 0.0;
    if (up_to_scalar) r.scalar = Complex(1.0);
    return r;
  }
  if (up_to_scalar) {
    Complex lambda;
    r.pass = find_scalar_ratio(lhs, rhs, &lambda, tol);
    r.scalar = lambda;
    r.max_deviation = deviation(lhs, rhs.scaled(lambda));
    return r;
  }
  r.max_deviation = deviation(lhs, rhs);
  r.pass = r.max_deviation <= tol;
  return r;
}

LawResult both(std::string name, const LawResult& a, const LawResult& b) {
  LawResult r;
  r.name = std::move(name);
  r.pass = a.pass && b.pass;
  r.max_deviation = std::max(a.max_deviation, b.max_deviation);
  r.scalar = a.scalar;
  return r;
}

bool nonzero(Complex z, bool boolean, double tol) {
  return boolean ? z != Complex(0.0) : std::abs(z) > tol;
}

Tensor as_point(const Tensor& t, int d) {
  if (t.rows() != d || t.cols() != 1) {
    throw ShapeMismatchError("candidate is not a point of the carrier");
  }
  return Tensor(t.semiring(), {d}, {}, t.matrix());
}

void check_shapes(const ObservableStructure& obs) {
  const int d = obs.dim();
  const long long d2 = static_cast<long long>(d) * d;
  if (obs.mu.rows() != d || obs.mu.cols() != d2 || obs.eta.cols() != 1 ||
      obs.delta.rows() != d2 || obs.delta.cols() != d ||
      obs.epsilon.rows() != 1 || obs.epsilon.cols() != d) {
    throw ShapeMismatchError("observable '" + obs.colour +
                             "' has malformed structure maps");
  }
}

void check_same_carrier(const ObservableStructure& a,
                        const ObservableStructure& b) {
  check_shapes(a);
  check_shapes(b);
  if (a.dim() != b.dim() || a.semiring() != b.semiring()) {
    throw ShapeMismatchError("observables live on different carriers");
  }
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// The law (1 (x) sigma (x) 1) wiring on four legs of dimension d.
Tensor middle_swap(Semiring s, int d) {
  return Tensor::wiring(s, {d, d, d, d}, {0, 2, 1, 3});
}

LawResult bialgebra_law(const ObservablePair& p, double tol) {
  const Semiring s = p.white.semiring();
  const int d = p.dim();
  Tensor lhs = compose(p.gray.mu, p.white.delta);
  Tensor rhs = compose(compose(kron(p.white.delta, p.white.delta),
                               middle_swap(s, d)),
                       kron(p.gray.mu, p.gray.mu));
  return compare("bialgebra", lhs, rhs, true, tol);
}

std::vector<int> prime_factors(int n, std::vector<int>* exponents) {
  std::vector<int> primes;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    primes.push_back(p);
    exponents->push_back(e);
  }
  if (n > 1) {
    primes.push_back(n);
    exponents->push_back(1);
  }
  return primes;
}

void partitions(int n, int max_part, std::vector<int>* cur,
                std::vector<std::vector<int>>* out) {
  if (n == 0) {
    out->push_back(*cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur->push_back(k);
    partitions(n - k, k, cur, out);
    cur->pop_back();
  }
}

std::vector<int> orders_of_product(const std::vector<int>& cyclic) {
  long long n = 1;
  for (int m : cyclic) n *= m;
  std::vector<int> orders;
  orders.reserve(n);
  for (long long idx = 0; idx < n; ++idx) {
    long long rest = idx;
    long long order = 1;
    for (int m : cyclic) {
      const long long x = rest % m;
      rest /= m;
      order = std::lcm(order, m / std::gcd<long long>(x, m));
    }
    orders.push_back(static_cast<int>(order));
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace

std::string LawResult::to_string() const {
  std::string s = name + (pass ? " PASS" : " FAIL") +
                  " max_deviation=" + format_double(max_deviation);
  if (scalar) s += " lambda=" + format_complex(*scalar, 12);
  if (!detail.empty()) s += " " + detail;
  return s;
}

bool LawReport::all_pass() const {
  return std::all_of(laws.begin(), laws.end(),
                     [](const LawResult& l) { return l.pass; });
}

const LawResult* LawReport::find(const std::string& name) const {
  for (const LawResult& l : laws) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

bool LawReport::passes(const std::string& name) const {
  const LawResult* l = find(name);
  return l != nullptr && l->pass;
}

std::string LawReport::to_string() const {
  std::string s;
  for (const LawResult& l : laws) s += l.to_string() + "\n";
  return s;
}

ObservablePair ObservablePair::make(ObservableStructure white,
                                    ObservableStructure gray) {
  check_same_carrier(white, gray);
  ObservablePair p;
  const Semiring s = white.semiring();
  const int d = white.dim();
  Tensor cup = compose(gray.eta, gray.delta);
  Tensor cap = compose(white.mu, white.epsilon);
  p.antipode = compose(kron(id(s, d), cup), kron(cap, id(s, d)));
  p.unit_scalar = compose(white.eta, gray.epsilon)(0, 0);
  p.white = std::move(white);
  p.gray = std::move(gray);
  return p;
}

LawReport check_frobenius(const ObservableStructure& obs, double tol) {
  check_shapes(obs);
  const Semiring s = obs.semiring();
  const int d = obs.dim();
  const Tensor i = id(s, d);
  const Tensor sigma = swap(s, {d}, {d});
  LawReport r;
  r.subject = obs.colour;
  r.laws.push_back(compare("associativity", compose(kron(obs.mu, i), obs.mu),
                           compose(kron(i, obs.mu), obs.mu), false, tol));
  r.laws.push_back(
      both("unit", compare("", compose(kron(obs.eta, i), obs.mu), i, false, tol),
           compare("", compose(kron(i, obs.eta), obs.mu), i, false, tol)));
  r.laws.push_back(
      compare("commutativity", compose(sigma, obs.mu), obs.mu, false, tol));
  r.laws.push_back(compare("coassociativity",
                           compose(obs.delta, kron(obs.delta, i)),
                           compose(obs.delta, kron(i, obs.delta)), false, tol));
  r.laws.push_back(both(
      "counit", compare("", compose(obs.delta, kron(obs.epsilon, i)), i, false, tol),
      compare("", compose(obs.delta, kron(i, obs.epsilon)), i, false, tol)));
  r.laws.push_back(compare("cocommutativity", compose(obs.delta, sigma),
                           obs.delta, false, tol));
  const Tensor middle = compose(obs.mu, obs.delta);
  r.laws.push_back(both(
      "frobenius",
      compare("", compose(kron(obs.delta, i), kron(i, obs.mu)), middle, false, tol),
      compare("", compose(kron(i, obs.delta), kron(obs.mu, i)), middle, false,
              tol)));
  r.laws.push_back(compare("special", compose(obs.delta, obs.mu), i, false, tol));
  r.laws.push_back(both(
      "dagger-pairing", compare("", obs.delta, adjoint(obs.mu), false, tol),
      compare("", obs.epsilon, adjoint(obs.eta), false, tol)));
  return r;
}

std::vector<int> classical_point_indices(const ObservableStructure& obs,
                                         const std::vector<Tensor>& candidates,
                                         double tol) {
  check_shapes(obs);
  const int d = obs.dim();
  std::vector<int> out;
  for (size_t k = 0; k < candidates.size(); ++k) {
    const Tensor p = as_point(candidates[k], d);
    if (p.semiring() != obs.semiring()) {
      throw ShapeMismatchError("candidate semiring differs from observable");
    }
    const Tensor copied = compose(p, obs.delta);
    const Tensor pp(obs.semiring(), {d, d}, {}, kron(p, p).matrix());
    const Complex deleted = compose(p, obs.epsilon)(0, 0);
    bool ok;
    if (obs.mu.is_boolean()) {
      ok = copied.matrix() == pp.matrix() && deleted == Complex(1.0);
    } else {
      ok = deviation(copied, pp) <= tol && std::abs(deleted - 1.0) <= tol;
    }
    if (ok) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::vector<Tensor> classical_points(const ObservableStructure& obs,
                                     const std::vector<Tensor>& candidates,
                                     double tol) {
  std::vector<Tensor> out;
  for (int k : classical_point_indices(obs, candidates, tol)) {
    out.push_back(as_point(candidates[k], obs.dim()));
  }
  return out;
}

std::vector<Tensor> known_classical_points(const ObservableStructure& obs,
                                           double tol) {
  const int d = obs.dim();
  if (!obs.mu.is_boolean()) return classical_points(obs, obs.angle_basis, tol);
  if (d > 16) throw DimensionLimitError("too many subsets to enumerate");
  std::vector<Tensor> subsets;
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < d; ++i) {
      if (mask & (1 << i)) members.push_back(i);
    }
    subsets.push_back(Tensor::subset(d, members));
  }
  return classical_points(obs, subsets, tol);
}

std::vector<int> classify_abelian(const std::vector<int>& orders) {
  const int n = static_cast<int>(orders.size());
  if (n == 0) throw PreconditionError("empty group");
  if (n == 1) return {};
  if (n > 4096) throw DimensionLimitError("group too large to classify");
  std::vector<int> sorted = orders;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> exps;
  const std::vector<int> primes = prime_factors(n, &exps);
  // One partition of the exponent per prime; try every combination.
  std::vector<std::vector<std::vector<int>>> options(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    std::vector<int> cur;
    partitions(exps[i], exps[i], &cur, &options[i]);
  }
  std::vector<size_t> pick(primes.size(), 0);
  while (true) {
    std::vector<int> cyclic;
    size_t width = 0;
    for (size_t i = 0; i < primes.size(); ++i) {
      for (int e : options[i][pick[i]]) {
        int q = 1;
        for (int k = 0; k < e; ++k) q *= primes[i];
        cyclic.push_back(q);
      }
      width = std::max(width, options[i][pick[i]].size());
    }
    if (orders_of_product(cyclic) == sorted) {
      // Invariant factors: the j-th largest prime powers multiply together.
      std::vector<int> factors(width, 1);
      for (size_t i = 0; i < primes.size(); ++i) {
        const std::vector<int>& part = options[i][pick[i]];
        for (size_t j = 0; j < part.size(); ++j) {
          int q = 1;
          for (int k = 0; k < part[j]; ++k) q *= primes[i];
          factors[width - 1 - j] *= q;
        }
      }
      return factors;
    }
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  throw PreconditionError("element orders match no abelian group");
}

std::string group_name(const std::vector<int>& invariant_factors) {
  if (invariant_factors.empty()) return "trivial";
  std::string s;
  for (size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) s += "x";
    s += "Z" + std::to_string(invariant_factors[i]);
  }
  return s;
}

std::string PhaseGroup::iso_class() const { return group_name(invariant_factors); }

int PhaseGroup::exponent() const {
  int e = 1;
  for (int o : orders) e = std::lcm(e, o);
  return e;
}

std::string PhaseGroup::to_string() const {
  std::ostringstream os;
  os << "group " << iso_class() << " order " << size() << " identity "
     << identity << "\norders";
  for (int o : orders) os << " " << o;
  os << "\ntable\n";
  for (const auto& row : table) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
  return os.str();
}

PhaseGroup point_group(const ObservableStructure& obs,
                       const std::vector<Tensor>& points, EqualityMode mode,
                       double tol) {
  check_shapes(obs);
  const int d = obs.dim();
  PhaseGroup g;
  for (size_t k = 0; k < points.size(); ++k) {
    g.elements.push_back(as_point(points[k], d));
    g.source_index.push_back(static_cast<int>(k));
  }
  const int n = g.size();
  if (n == 0) throw PreconditionError("no points to form a group");
  auto locate = [&](const Tensor& v) {
    for (int k = 0; k < n; ++k) {
      if (equal_tensors(v, g.elements[k], mode, tol)) return k;
    }
    return -1;
  };
  g.table.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int c = locate(add_points(obs, g.elements[a], g.elements[b]));
      if (c < 0) {
        throw PreconditionError(
            "incomplete candidate set: the sum of points " + std::to_string(a) +
            " and " + std::to_string(b) + " is not among them");
      }
      g.table[a][b] = c;
    }
  }
  g.identity = locate(obs.eta);
  if (g.identity < 0) {
    throw PreconditionError("incomplete candidate set: no point matches the unit");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.table[a][b] != g.table[b][a]) g.commutative = false;
      for (int c = 0; c < n; ++c) {
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]]) {
          g.associative = false;
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    int x = a;
    int order = 1;
    while (x != g.identity) {
      x = g.table[x][a];
      if (++order > n) {
        throw PreconditionError("point " + std::to_string(a) +
                                " has no finite order");
      }
    }
    g.orders.push_back(order);
  }
  g.invariant_factors = classify_abelian(g.orders);
  return g;
}

PhaseGroup phase_group(const ObservableStructure& obs,
                       const std::vector<Tensor>& candidates, EqualityMode mode,
                       double tol) {
  check_shapes(obs);
  const int d = obs.dim();
  std::vector<Tensor> kept;
  std::vector<int> index;
  for (size_t k = 0; k < candidates.size(); ++k) {
    const Tensor p = as_point(candidates[k], d);
    const Tensor sum = add_points(obs, p, lower_star_point(obs, p));
    if (equal_tensors(sum, obs.eta, mode, tol)) {
      kept.push_back(p);
      index.push_back(static_cast<int>(k));
    }
  }
  PhaseGroup g = point_group(obs, kept, mode, tol);
  g.source_index = index;
  return g;
}

LawReport check_complementarity(const ObservablePair& pair, double tol) {
  const ObservableStructure& w = pair.white;
  const ObservableStructure& g = pair.gray;
  const Semiring s = w.semiring();
  const int d = pair.dim();
  LawReport r;
  r.subject = w.colour + "/" + g.colour;
  Tensor lhs = compose(compose(w.delta, kron(id(s, d), pair.antipode)), g.mu);
  Tensor rhs = compose(w.epsilon, g.eta);
  r.laws.push_back(compare("hopf", lhs, rhs, true, tol));

  LawResult mub;
  mub.name = "unbiased";
  const std::vector<Tensor> wp = known_classical_points(w, tol);
  const std::vector<Tensor> gp = known_classical_points(g, tol);
  mub.pass = !wp.empty() && !gp.empty();
  for (const Tensor& v : wp) {
    for (const Tensor& u : gp) {
      const Complex ip = (v.matrix().adjoint() * u.matrix())(0, 0);
      if (s == Semiring::kBoolean) {
        if (ip == Complex(0.0)) {
          mub.pass = false;
          mub.max_deviation = 1.0;
        }
        continue;
      }
      const double overlap = std::norm(ip) / (v.matrix().squaredNorm() *
                                              u.matrix().squaredNorm());
      const double dev = std::abs(overlap - 1.0 / d);
      mub.max_deviation = std::max(mub.max_deviation, dev);
      if (dev > tol) mub.pass = false;
    }
  }
  mub.detail = std::to_string(wp.size()) + "x" + std::to_string(gp.size()) +
               " classical points";
  r.laws.push_back(mub);
  return r;
}

LawReport check_coherence(const ObservablePair& pair, double tol) {
  const ObservableStructure& w = pair.white;
  const ObservableStructure& g = pair.gray;
  const bool boolean = w.mu.is_boolean();
  LawReport r;
  r.subject = w.colour + "/" + g.colour;
  LawResult a = compare("white-unit-gray-classical", compose(w.eta, g.delta),
                        kron(w.eta, w.eta), true, tol);
  a.pass = a.pass && nonzero(pair.unit_scalar, boolean, tol);
  if (!a.pass) a.detail = "unit of " + w.colour + " is not copied by " + g.colour;
  LawResult b = compare("gray-unit-white-classical", compose(g.eta, w.delta),
                        kron(g.eta, g.eta), true, tol);
  b.pass = b.pass && nonzero(pair.unit_scalar, boolean, tol);
  if (!b.pass) b.detail = "unit of " + g.colour + " is not copied by " + w.colour;
  LawResult c;
  c.name = "unit-scalar";
  c.scalar = pair.unit_scalar;
  c.pass = nonzero(pair.unit_scalar, boolean, tol);
  if (!c.pass) c.detail = "scalar is not cancellable";
  r.laws = {a, b, c};
  return r;
}

ObservablePair coherify(const std::vector<Tensor>& white_basis,
                        const std::vector<Tensor>& gray_basis, double tol) {
  const size_t n = white_basis.size();
  if (n == 0 || gray_basis.size() != n) {
    throw PreconditionError("bases must have the same nonzero size");
  }
  auto vec = [&](const Tensor& t) -> Eigen::VectorXcd {
    if (t.is_boolean() || t.cols() != 1 || t.rows() != static_cast<long>(n)) {
      throw PreconditionError("basis vectors must be complex points of C^n");
    }
    return t.matrix().col(0);
  };
  std::vector<Eigen::VectorXcd> a, b;
  for (size_t i = 0; i < n; ++i) {
    a.push_back(vec(white_basis[i]));
    b.push_back(vec(gray_basis[i]));
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const double kd = i == j ? 1.0 : 0.0;
      if (std::abs(a[i].dot(a[j]) - kd) > tol ||
          std::abs(b[i].dot(b[j]) - kd) > tol) {
        throw PreconditionError("bases are not orthonormal");
      }
      if (std::abs(std::norm(a[i].dot(b[j])) - 1.0 / n) > tol) {
        throw PreconditionError("bases are not mutually unbiased");
      }
    }
  }
  auto best = [&](const std::vector<Eigen::VectorXcd>& target,
                  const std::vector<Eigen::VectorXcd>& from) {
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(n);
    for (const auto& v : from) sum += v;
    size_t k = 0;
    for (size_t j = 1; j < n; ++j) {
      if (std::abs(target[j].dot(sum)) > std::abs(target[k].dot(sum)) + tol) k = j;
    }
    return k;
  };
  // Rephase a so that sum a' lies along b[j]; then b so that sum b' lies
  // along a'[k]. Both ratios are 1 for a pair that is already coherent.
  const size_t j = best(b, a);
  const Complex a0 = a[0].dot(b[j]);
  for (size_t i = 0; i < n; ++i) a[i] *= a[i].dot(b[j]) / a0;
  const size_t k = best(a, b);
  const Complex b0 = b[0].dot(a[k]);
  for (size_t i = 0; i < n; ++i) b[i] *= b[i].dot(a[k]) / b0;
  std::vector<Tensor> wa, gb;
  for (size_t i = 0; i < n; ++i) {
    wa.emplace_back(Semiring::kComplex, std::vector<int>{static_cast<int>(n)},
                    std::vector<int>{}, a[i]);
    gb.emplace_back(Semiring::kComplex, std::vector<int>{static_cast<int>(n)},
                    std::vector<int>{}, b[i]);
  }
  return ObservablePair::make(copy_observable("white", wa),
                              copy_observable("gray", gb));
}

LawReport check_strong_complementarity(const ObservablePair& pair, double tol) {
  const ObservableStructure& w = pair.white;
  const ObservableStructure& g = pair.gray;
  LawReport r = check_coherence(pair, tol);
  r.laws.push_back(bialgebra_law(pair, tol));
  r.laws.push_back(compare("bialgebra-unit", compose(g.eta, w.delta),
                           kron(g.eta, g.eta), true, tol));
  r.laws.push_back(compare("bialgebra-counit", compose(g.mu, w.epsilon),
                           kron(w.epsilon, w.epsilon), true, tol));
  if (!r.all_pass()) return r;

  LawReport c = check_complementarity(pair, tol);
  LawResult implied;
  implied.name = "sc-implies-c";
  implied.pass = c.all_pass();
  implied.max_deviation = c.laws[0].max_deviation;
  implied.scalar = c.laws[0].scalar;
  for (const LawResult& l : c.laws) {
    if (!l.pass) implied.detail += l.name + " fails;";
  }
  r.laws.push_back(implied);

  const Tensor& sa = pair.antipode;
  const Tensor ss = kron(sa, sa);
  r.laws.push_back(compare("antipode-self-adjoint", sa, adjoint(sa), false, tol));
  r.laws.push_back(both(
      "antipode-monoid-hom",
      compare("", compose(g.mu, sa), compose(ss, g.mu), false, tol),
      compare("", compose(w.mu, sa), compose(ss, w.mu), false, tol)));
  r.laws.push_back(both(
      "antipode-comonoid-hom",
      compare("", compose(sa, w.delta), compose(w.delta, ss), false, tol),
      compare("", compose(sa, g.delta), compose(g.delta, ss), false, tol)));
  return r;
}

ObservablePair group_algebra_pair(const std::vector<int>& moduli) {
  int dd = 1;
  for (int m : moduli) {
    if (m < 2) throw PreconditionError("group factors must have order >= 2");
    dd *= m;
    if (dd > 4096) throw DimensionLimitError("group too large");
  }
  const int n = dd;
  const int k = static_cast<int>(moduli.size());
  auto digits = [&](int idx) {
    std::vector<int> v(k);
    for (int i = k - 1; i >= 0; --i) {
      v[i] = idx % moduli[i];
      idx /= moduli[i];
    }
    return v;
  };
  auto index = [&](const std::vector<int>& v) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * moduli[i] + v[i];
    return idx;
  };
  const double rt = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd mu = Eigen::MatrixXcd::Zero(n, static_cast<long>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      std::vector<int> a = digits(x), b = digits(y);
      for (int i = 0; i < k; ++i) a[i] = (a[i] + b[i]) % moduli[i];
      mu(index(a), static_cast<long>(x) * n + y) = 1.0 / rt;
    }
  }
  Tensor eta(Semiring::kComplex, {n}, {});
  eta.at(0, 0) = rt;
  ObservableStructure white = ObservableStructure::from_algebra(
      "white", Tensor(Semiring::kComplex, {n}, {n, n}, mu), eta);
  ObservableStructure gray = standard_copy("gray", Semiring::kComplex, n);
  // White's classical points are the normalized characters; gray's basis
  // points scaled by sqrt(D) are white phases, and the characters scaled by
  // sqrt(D) are gray phases.
  std::vector<Tensor> characters;
  for (int c = 0; c < n; ++c) {
    const std::vector<int> kc = digits(c);
    Tensor chi(Semiring::kComplex, {n}, {});
    for (int x = 0; x < n; ++x) {
      const std::vector<int> gx = digits(x);
      double angle = 0.0;
      for (int i = 0; i < k; ++i) {
        angle += 2.0 * kPi * (kc[i] * gx[i] % moduli[i]) / moduli[i];
      }
      chi.at(x, 0) = std::polar(1.0 / rt, angle);
    }
    characters.push_back(chi);
  }
  white.angle_basis = characters;
  white.phase_moduli = moduli;
  gray.phase_moduli = moduli;
  for (int x = 0; x < n; ++x) {
    white.phase_table.push_back(gray.angle_basis[x].scaled(rt));
    gray.phase_table.push_back(characters[x].scaled(rt));
  }
  return ObservablePair::make(std::move(white), std::move(gray));
}

PhaseGroup k_gray(const ObservablePair& pair, double tol) {
  return point_group(pair.white, known_classical_points(pair.gray, tol),
                     EqualityMode::kUpToGlobalScalar, tol);
}

LawReport check_exponent_law(const ObservablePair& pair, int k, double tol) {
  if (k < 1) throw PreconditionError("exponent must be positive");
  LawReport r;
  r.subject = pair.white.colour + "/" + pair.gray.colour;
  // mu^(k) o delta^(k) = mu o (L_{k-1} (x) 1) o delta, without X^k.
  const Tensor one = id(pair.white.semiring(), pair.dim());
  Tensor lhs = one;
  for (int j = 2; j <= k; ++j) {
    lhs = compose(compose(pair.gray.delta, kron(lhs, one)), pair.white.mu);
  }
  Tensor rhs = compose(pair.gray.epsilon, pair.white.eta);
  LawResult l = compare("exponent-law", lhs, rhs, true, tol);
  l.detail = "k=" + std::to_string(k);
  r.laws.push_back(l);
  return r;
}

LawReport check_exponent_law(const ObservablePair& pair, double tol) {
  return check_exponent_law(pair, k_gray(pair, tol).exponent(), tol);
}

std::string MaxTwoReport::to_string() const {
  std::string s = "dimension " + std::to_string(dim) + ", " +
                  std::to_string(observables) + " observables\n";
  for (const std::string& step : steps) s += "  " + step + "\n";
  s += contradiction ? "CONTRADICTION " + witness + "\n" : "CONSISTENT\n";
  return s;
}

MaxTwoReport max_two_sc_check(int dim,
                              const std::vector<ObservableStructure>& observables,
                              double tol) {
  MaxTwoReport r;
  r.dim = dim;
  r.observables = static_cast<int>(observables.size());
  for (const ObservableStructure& o : observables) {
    check_shapes(o);
    if (o.dim() != dim) throw ShapeMismatchError("observable not on the carrier");
  }
  if (dim < 2) {
    r.steps.push_back("carrier dimension below 2: the bound holds vacuously");
    return r;
  }
  const int n = r.observables;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool sc = check_strong_complementarity(
                          ObservablePair::make(observables[i], observables[j]), tol)
                          .all_pass();
      r.steps.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") checks as " + (sc ? "SC" : "not SC"));
    }
  }
  if (n < 3) {
    r.steps.push_back("fewer than three observables: nothing to refute");
    return r;
  }
  const bool boolean = observables[0].mu.is_boolean();
  // Observable a takes the white role; b and c are both claimed SC with it
  // and with each other.
  const ObservableStructure& a = observables[0];
  const ObservableStructure& b = observables[1];
  const ObservableStructure& c = observables[2];
  const std::vector<Tensor> points = known_classical_points(a, tol);
  auto which = [&](const Tensor& unit) {
    for (size_t k = 0; k < points.size(); ++k) {
      if (equal_tensors(unit, points[k], EqualityMode::kUpToGlobalScalar, tol)) {
        return static_cast<int>(k);
      }
    }
    return -1;
  };
  const int kb = which(b.eta);
  const int kc = which(c.eta);
  const Complex ip = compose(c.eta, b.epsilon)(0, 0);
  r.steps.push_back("unit of 1 ~ classical point " + std::to_string(kb) +
                    " of 0; unit of 2 ~ classical point " + std::to_string(kc) +
                    " of 0; <unit 1|unit 2> = " + format_complex(ip, 12));
  r.contradiction = true;
  if (kb < 0 || kc < 0) {
    r.witness = "a unit of 1 or 2 is not a classical point of 0, so the pair "
                "with 0 is not coherent";
    return r;
  }
  if (!nonzero(ip, boolean, tol)) {
    r.witness = "the units of 1 and 2 are orthogonal, so the pair (1,2) is "
                "not coherent";
    return r;
  }
  if (kb != kc) {
    r.witness = "the units of 1 and 2 overlap but are distinct classical "
                "points of 0";
    return r;
  }
  const Tensor rank_one = compose(b.epsilon, c.eta);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(rank_one.matrix());
  lu.setThreshold(tol);
  r.witness = "the units of 1 and 2 are the same classical point " +
              std::to_string(kb) + " of 0, so the identity on the carrier is "
              "proportional to eta_2 o eps_1 of rank " +
              std::to_string(lu.rank()) + " < " + std::to_string(dim);
  return r;
}

bool check_enough_classical_points(const ObservableStructure& obs,
                                   const std::vector<Tensor>& points,
                                   double tol) {
  const int d = obs.dim();
  if (points.empty()) return false;
  if (obs.mu.is_boolean()) {
    if (d > 4) throw DimensionLimitError("exhaustive check limited to 4 points");
    // Relations X -> {0,1}: bit (2x + y) says x relates to y.
    std::set<std::vector<int>> seen;
    const int relations = 1 << (2 * d);
    for (int f = 0; f < relations; ++f) {
      std::vector<int> image;
      for (const Tensor& p : points) {
        int bits = 0;
        for (int x = 0; x < d; ++x) {
          if (p(x, 0) == Complex(0.0)) continue;
          bits |= (f >> (2 * x)) & 3;
        }
        image.push_back(bits);
      }
      if (!seen.insert(image).second) return false;
    }
    return true;
  }
  Eigen::MatrixXcd span(d, points.size());
  for (size_t k = 0; k < points.size(); ++k) {
    span.col(k) = as_point(points[k], d).matrix().col(0);
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(span);
  lu.setThreshold(tol);
  return lu.rank() == d;
}

bool check_enough_classical_points(const ObservableStructure& obs, double tol) {
  return check_enough_classical_points(obs, known_classical_points(obs, tol), tol);
}

LawReport check_sharpness_implies_sc(const ObservablePair& pair, double tol) {
  if (pair.white.mu.is_boolean()) {
    throw PreconditionError("sharpness is evaluated for complex pairs only");
  }
  LawReport r;
  r.subject = pair.white.colour + "/" + pair.gray.colour;
  LawReport coh = check_coherence(pair, tol);
  LawResult pre;
  pre.name = "coherence";
  pre.pass = coh.all_pass();
  for (const LawResult& l : coh.laws) {
    if (!l.pass) pre.detail += l.name + " fails;";
  }
  r.laws.push_back(pre);
  if (!pre.pass) return r;

  const int d = pair.dim();
  std::vector<Tensor> gp = known_classical_points(pair.gray, tol);
  if (static_cast<int>(gp.size()) != d) {
    throw PreconditionError("gray observable lacks a basis of classical points");
  }
  Eigen::VectorXcd psi =
      compose(pair.white.eta, comultiply_n(pair.white, 3)).matrix().col(0);
  psi /= psi.norm();
  const Eigen::MatrixXcd rho = psi * psi.adjoint();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  auto kron3 = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y,
                  const Eigen::MatrixXcd& z) {
    Tensor a(Semiring::kComplex, {static_cast<int>(x.rows())},
             {static_cast<int>(x.cols())}, x);
    Tensor b(Semiring::kComplex, {static_cast<int>(y.rows())},
             {static_cast<int>(y.cols())}, y);
    Tensor c(Semiring::kComplex, {static_cast<int>(z.rows())},
             {static_cast<int>(z.cols())}, z);
    return kron(kron(a, b), c).matrix();
  };
  auto decohere = [&](const Eigen::MatrixXcd& m, int leg) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    for (const Tensor& p : gp) {
      Eigen::VectorXcd v = p.matrix().col(0);
      const Eigen::MatrixXcd proj = v * v.adjoint() / v.squaredNorm();
      const Eigen::MatrixXcd full = kron3(leg == 0 ? proj : eye,
                                          leg == 1 ? proj : eye,
                                          leg == 2 ? proj : eye);
      out += full * m * full;
    }
    return out;
  };
  LawResult sharp;
  sharp.name = "sharpness";
  for (int leg = 0; leg < 3; ++leg) {
    Eigen::MatrixXcd m = rho;
    for (int other = 0; other < 3; ++other) {
      if (other != leg) m = decohere(m, other);
    }
    sharp.max_deviation = std::max(
        sharp.max_deviation, (decohere(m, leg) - m).cwiseAbs().maxCoeff());
  }
  sharp.pass = sharp.max_deviation <= tol;
  r.laws.push_back(sharp);

  LawResult bialg = bialgebra_law(pair, tol);
  r.laws.push_back(bialg);
  LawResult implied;
  implied.name = "sharpness-implies-sc";
  implied.pass = !sharp.pass || bialg.pass;
  implied.detail = sharp.pass ? "premise holds" : "premise fails";
  r.laws.push_back(implied);
  return r;
}

ObservablePair pair_by_name(const std::string& name) {
  if (name == "z2") return ObservablePair::make(qubit_z(), qubit_x());
  if (name == "zz") return ObservablePair::make(qubit_z(), qubit_z());
  if (name == "frel") {
    return ObservablePair::make(frel_white_bit(), frel_gray_bit());
  }
  if (name == "spek") return ObservablePair::make(spek_white(), spek_gray());
  if (name == "stab") {
    const ModelBinding m = stab_fixture().model("stab");
    const System q = stab_fixture().signature.system("Q");
    return ObservablePair::make(m.observable("white", q),
                                m.observable("gray", q));
  }
  std::vector<int> moduli;
  size_t pos = 0;
  while (pos < name.size()) {
    if (name[pos] != 'z') break;
    size_t end = pos + 1;
    while (end < name.size() && std::isdigit(static_cast<unsigned char>(name[end]))) {
      ++end;
    }
    if (end == pos + 1) break;
    moduli.push_back(std::stoi(name.substr(pos + 1, end - pos - 1)));
    pos = end;
    if (pos == name.size()) return group_algebra_pair(moduli);
    if (name[pos] != 'x') break;
    ++pos;
  }
  throw PreconditionError("unknown observable pair '" + name + "'");
}

std::vector<std::string> pair_names() {
  return {"z2", "zz", "frel", "spek", "stab", "z3", "z4", "z2xz2"};
}

}  // namespace gct
