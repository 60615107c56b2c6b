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

// Random connected composites of an observable's structure maps.

#pragma once

#include <random>

#include "gct/observable.hpp"
#include "gct/tensor.hpp"

namespace gct::testing {

struct Composite {
  Tensor map;
  int inputs = 1;
  int outputs = 1;
};

/** I^pos (x) op (x) I^(width - pos - op legs), matching op's domain side. */
inline Tensor embed(const Tensor& op, int pos, int width_in, int d) {
  const Semiring s = op.semiring();
  const int op_in = static_cast<int>(op.in_dims().size());
  Tensor left = Tensor::identity(s, std::vector<int>(pos, d));
  Tensor right = Tensor::identity(s, std::vector<int>(width_in - pos - op_in, d));
  return kron(kron(left, op), right);
}

/**
 * Starts from the identity and applies `steps` random moves, each plugging
 * mu, delta, eta, epsilon or a swap onto the current inputs or outputs. Every
 * move keeps the composite connected; legs stay within [0, max_legs].
 */
template <class Rng>
Composite random_composite(const ObservableStructure& obs, Rng& rng, int steps,
                           int max_legs = 4) {
  const Semiring s = obs.semiring();
  const int d = obs.dim();
  const Tensor sigma = swap(s, {d}, {d});
  Composite c{Tensor::identity(s, {d}), 1, 1};
  std::uniform_int_distribution<int> move(0, 7);
  auto pos = [&](int width, int arity) {
    return std::uniform_int_distribution<int>(0, width - arity)(rng);
  };
  for (int done = 0, tries = 0; done < steps && tries < 40 * steps; ++tries) {
    const int n = c.outputs;
    const int m = c.inputs;
    switch (move(rng)) {
      case 0:  // merge two outputs
        if (n < 2) continue;
        c.map = compose(c.map, embed(obs.mu, pos(n, 2), n, d));
        --c.outputs;
        break;
      case 1:  // split an output
        if (n < 1 || n >= max_legs) continue;
        c.map = compose(c.map, embed(obs.delta, pos(n, 1), n, d));
        ++c.outputs;
        break;
      case 2:  // delete an output
        if (n < 1) continue;
        c.map = compose(c.map, embed(obs.epsilon, pos(n, 1), n, d));
        --c.outputs;
        break;
      case 3:  // split an input backwards
        if (m < 1 || m >= max_legs) continue;
        c.map = compose(embed(obs.mu, pos(m + 1, 2), m + 1, d), c.map);
        ++c.inputs;
        break;
      case 4:  // merge two inputs backwards
        if (m < 2) continue;
        c.map = compose(embed(obs.delta, pos(m - 1, 1), m - 1, d), c.map);
        --c.inputs;
        break;
      case 5:  // feed the unit into an input
        if (m < 1) continue;
        c.map = compose(embed(obs.eta, pos(m - 1, 0), m - 1, d), c.map);
        --c.inputs;
        break;
      case 6:
        if (n < 2) continue;
        c.map = compose(c.map, embed(sigma, pos(n, 2), n, d));
        break;
      case 7:
        if (m < 2) continue;
        c.map = compose(embed(sigma, pos(m, 2), m, d), c.map);
        break;
    }
    ++done;
  }
  return c;
}

}  // namespace gct::testing
