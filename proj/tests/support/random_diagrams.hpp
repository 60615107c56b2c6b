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

// Hand-rolled generators for property tests.

#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "gct/diagram.hpp"
#include "gct/tensor.hpp"

namespace gct::testing {

using Rng = std::mt19937_64;
using NodeGen = std::function<Node(Rng&)>;

inline double uniform_angle(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
}

inline Phase random_angle(Rng& rng) { return Phase::angle(uniform_angle(rng)); }

/**
 * Grows a diagram from `inputs` by attaching `steps` random nodes drawn
 * from the palette to distinct open wires of matching type. The remaining
 * open wires become the outputs in shuffled order.
 */
inline Diagram random_diagram(Rng& rng, const std::vector<System>& inputs,
                              const std::vector<NodeGen>& palette, int steps,
                              bool shuffle_outputs = true) {
  DiagramBuilder b(inputs, {});
  std::vector<std::pair<Port, System>> open;
  for (size_t i = 0; i < inputs.size(); ++i) {
    open.push_back({Port::boundary(static_cast<int>(i)), inputs[i]});
  }
  std::vector<Node> nodes;
  std::vector<Wire> wires;
  std::uniform_int_distribution<size_t> pick(0, palette.size() - 1);
  for (int s = 0, tries = 0; s < steps && tries < 50 * steps + 50; ++tries) {
    Node n = palette[pick(rng)](rng);
    std::vector<int> chosen;
    bool ok = true;
    for (const System& want : n.inputs) {
      std::vector<int> cand;
      for (size_t i = 0; i < open.size(); ++i) {
        if (open[i].second == want &&
            std::find(chosen.begin(), chosen.end(), static_cast<int>(i)) ==
                chosen.end()) {
          cand.push_back(static_cast<int>(i));
        }
      }
      if (cand.empty()) {
        ok = false;
        break;
      }
      chosen.push_back(cand[std::uniform_int_distribution<size_t>(
          0, cand.size() - 1)(rng)]);
    }
    if (!ok) continue;
    const int id = static_cast<int>(nodes.size());
    for (size_t k = 0; k < chosen.size(); ++k) {
      wires.push_back({open[chosen[k]].first, Port::at(id, static_cast<int>(k))});
    }
    std::sort(chosen.rbegin(), chosen.rend());
    for (int c : chosen) open.erase(open.begin() + c);
    for (int k = 0; k < n.n_out(); ++k) open.push_back({Port::at(id, k), n.outputs[k]});
    nodes.push_back(n);
    ++s;
  }
  if (shuffle_outputs) std::shuffle(open.begin(), open.end(), rng);
  std::vector<System> outs;
  for (const auto& o : open) outs.push_back(o.second);
  DiagramBuilder fin(inputs, outs);
  for (const Node& n : nodes) fin.add(n);
  for (const Wire& w : wires) fin.wire(w.source, w.target);
  for (size_t j = 0; j < open.size(); ++j) {
    fin.wire(open[j].first, Port::boundary(static_cast<int>(j)));
  }
  return fin.build();
}

inline Tensor random_complex(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  return Tensor(Semiring::kComplex, {rows}, {cols}, m);
}

/** A random density matrix rho = A A^dagger / tr(A A^dagger). */
inline Eigen::MatrixXcd random_density(int dim, Rng& rng) {
  Eigen::MatrixXcd a = random_complex(dim, dim, rng).matrix();
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace gct::testing
