// Copyright (c) 2026 The thaifront Authors
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

#include "prosody_oracles.h"

#include <algorithm>
#include <cmath>

namespace thaifront::testing {

namespace {

std::vector<int> RandomIds(std::size_t vocab_size, std::size_t max_len, std::mt19937_64& rng) {
  std::vector<int> ids(1 + rng() % max_len);
  for (int& id : ids) id = static_cast<int>(rng() % vocab_size);
  return ids;
}

std::vector<double> RandomStyle(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> s(dim);
  for (double& v : s) v = g(rng);
  return s;
}

}  // namespace

std::vector<ProsodyExample> PlantedDataset(const ProsodyPredictor& generator,
                                           std::size_t n_examples, std::size_t max_len,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ProsodyExample> data;
  for (std::size_t i = 0; i < n_examples; ++i) {
    ProsodyExample ex;
    ex.ids = RandomIds(generator.vocab_size(), max_len, rng);
    ex.style = RandomStyle(generator.style_dim(), rng);
    const auto rep =
        BuildContextualRepresentation(ex.ids, generator.vocab_size(), generator.window());
    const ProsodyPrediction p = PredictProsody(rep, ex.style, generator);
    ex.targets = {p.durations, p.pitch, p.energy};
    data.push_back(std::move(ex));
  }
  return data;
}

std::vector<ProsodyExample> RandomDataset(std::size_t vocab_size, std::size_t style_dim,
                                          std::size_t n_examples, std::size_t max_len,
                                          std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ProsodyExample> data;
  for (std::size_t i = 0; i < n_examples; ++i) {
    ProsodyExample ex;
    ex.ids = RandomIds(vocab_size, max_len, rng);
    ex.style = RandomStyle(style_dim, rng);
    for (std::size_t k = 0; k < ex.ids.size(); ++k) {
      ex.targets.durations.push_back(std::fabs(g(rng)) * 3);
      ex.targets.pitch.push_back(g(rng));
      ex.targets.energy.push_back(g(rng));
    }
    data.push_back(std::move(ex));
  }
  return data;
}

GradientCheck CheckGradient(const ProsodyPredictor& model,
                            const std::vector<ProsodyExample>& data, double rel_tol,
                            double abs_tol, double step) {
  const ProsodyPredictor grad = PredictorGradient(model, data);
  GradientCheck out;
  out.worst_excess = -1e300;
  auto check = [&](double analytic, auto&& perturb) {
    ProsodyPredictor plus = model;
    ProsodyPredictor minus = model;
    perturb(plus, step);
    perturb(minus, -step);
    const double numeric = (EvaluatePredictorLoss(plus, data).Total() -
                            EvaluatePredictorLoss(minus, data).Total()) /
                           (2 * step);
    const double excess = std::fabs(analytic - numeric) -
                          (rel_tol * std::max(std::fabs(analytic), std::fabs(numeric)) + abs_tol);
    out.worst_excess = std::max(out.worst_excess, excess);
    ++out.params;
    if (excess > 0) ++out.failures;
  };
  Regressor ProsodyPredictor::*blocks[] = {&ProsodyPredictor::duration, &ProsodyPredictor::pitch,
                                           &ProsodyPredictor::energy};
  for (auto block : blocks) {
    const Regressor& g = grad.*block;
    for (std::size_t k = 0; k < g.weights.size(); ++k) {
      check(g.weights[k], [&](ProsodyPredictor& m, double h) { (m.*block).weights[k] += h; });
    }
    check(g.bias, [&](ProsodyPredictor& m, double h) { (m.*block).bias += h; });
  }
  return out;
}

}  // namespace thaifront::testing
