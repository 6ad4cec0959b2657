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

#include "thaifront/prosody_model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "thaifront/error.h"

namespace thaifront {

namespace {

using SparseRow = std::vector<std::pair<std::size_t, double>>;

void CheckIds(const std::vector<int>& ids, std::size_t vocab_size) {
  if (ids.empty()) throw ValidationError("token sequence is empty");
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) {
      throw ValidationError("token id " + std::to_string(id) + " outside a vocab of " +
                            std::to_string(vocab_size));
    }
  }
}

// Non-zero entries of the context features of every token, without style.
std::vector<SparseRow> ContextRows(const std::vector<int>& ids, std::size_t vocab_size,
                                   int window) {
  if (window < 0) throw ValidationError("context window must be non-negative");
  CheckIds(ids, vocab_size);
  const auto n = static_cast<std::ptrdiff_t>(ids.size());
  std::vector<SparseRow> rows(ids.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::map<std::size_t, double> cells;
    cells[static_cast<std::size_t>(ids[i])] = 1.0;
    if (window > 0) {
      const double share = 1.0 / (2.0 * window);
      for (std::ptrdiff_t o = -window; o <= window; ++o) {
        if (o == 0) continue;
        const std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(i + o, 0, n - 1);
        cells[vocab_size + static_cast<std::size_t>(ids[j])] += share;
      }
    }
    rows[i].assign(cells.begin(), cells.end());
  }
  return rows;
}

double Affine(const Regressor& r, const SparseRow& row, const std::vector<double>& style,
              std::size_t style_offset) {
  double z = r.bias;
  for (const auto& [c, v] : row) z += r.weights[c] * v;
  for (std::size_t k = 0; k < style.size(); ++k) z += r.weights[style_offset + k] * style[k];
  return z;
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void CheckLossInput(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError(std::string(name) + " must be finite and non-negative");
  }
}

void PutU32(std::string* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutF64(std::string* out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t Uint(int width) {
    if (pos_ + width > bytes_.size()) throw ParseError("truncated prosody model");
    std::uint64_t v = 0;
    for (int i = width - 1; i >= 0; --i) {
      v = (v << 8) | static_cast<unsigned char>(bytes_[pos_ + i]);
    }
    pos_ += width;
    return v;
  }
  double F64() { return std::bit_cast<double>(Uint(8)); }
  std::string_view Take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw ParseError("truncated prosody model");
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

constexpr std::string_view kModelMagic{"THFPROS\0", 8};

}  // namespace

ContextualRepresentation BuildContextualRepresentation(const std::vector<int>& ids,
                                                       std::size_t vocab_size, int window) {
  const auto rows = ContextRows(ids, vocab_size, window);
  ContextualRepresentation rep;
  rep.rows = ids.size();
  rep.cols = 2 * vocab_size;
  rep.values.assign(rep.rows * rep.cols, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [c, v] : rows[i]) rep.values[i * rep.cols + c] = v;
  }
  return rep;
}

ProsodyPredictor::ProsodyPredictor(std::size_t vocab_size, int window, std::size_t style_dim)
    : vocab_size_(vocab_size), window_(window), style_dim_(style_dim) {
  if (vocab_size == 0) throw ValidationError("vocab size must be positive");
  if (window < 0) throw ValidationError("context window must be non-negative");
  for (Regressor* r : {&duration, &pitch, &energy}) r->weights.assign(input_dim(), 0.0);
}

ProsodyPredictor ProsodyPredictor::Random(std::size_t vocab_size, int window,
                                          std::size_t style_dim, std::uint64_t seed,
                                          double scale) {
  ProsodyPredictor m(vocab_size, window, style_dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Regressor* r : {&m.duration, &m.pitch, &m.energy}) {
    for (double& w : r->weights) w = scale * normal(rng);
  }
  return m;
}

std::string ProsodyPredictor::Serialize() const {
  std::string out(kModelMagic);
  PutU32(&out, kProsodyModelVersion);
  PutU32(&out, static_cast<std::uint32_t>(vocab_size_));
  PutU32(&out, static_cast<std::uint32_t>(window_));
  PutU32(&out, static_cast<std::uint32_t>(style_dim_));
  for (const Regressor* r : {&duration, &pitch, &energy}) {
    PutU32(&out, static_cast<std::uint32_t>(r->weights.size()));
    for (double w : r->weights) PutF64(&out, w);
    PutF64(&out, r->bias);
  }
  return out;
}

ProsodyPredictor ProsodyPredictor::Deserialize(std::string_view bytes) {
  Reader in(bytes);
  if (in.Take(kModelMagic.size()) != kModelMagic) throw ParseError("not a prosody model");
  if (in.Uint(4) != kProsodyModelVersion) throw ParseError("unsupported prosody model version");
  const auto vocab = static_cast<std::size_t>(in.Uint(4));
  const auto window = static_cast<std::int32_t>(in.Uint(4));
  const auto style = static_cast<std::size_t>(in.Uint(4));
  if (vocab == 0 || window < 0) throw ParseError("bad prosody model dimensions");
  ProsodyPredictor m(vocab, window, style);
  for (Regressor* r : {&m.duration, &m.pitch, &m.energy}) {
    if (in.Uint(4) != m.input_dim()) throw ParseError("weight count does not match dimensions");
    for (double& w : r->weights) w = in.F64();
    r->bias = in.F64();
  }
  if (!in.done()) throw ParseError("trailing bytes after prosody model");
  return m;
}

ProsodyPredictor ProsodyPredictor::Load(const std::string& path) {
  return Deserialize(ReadFile(path));
}

void ProsodyPredictor::Save(const std::string& path) const { WriteFile(path, Serialize()); }

double Softplus(double z) {
  // log(1 + e^z) without overflow.
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

ProsodyPrediction PredictProsody(const ContextualRepresentation& rep,
                                 const std::vector<double>& style,
                                 const ProsodyPredictor& model) {
  if (rep.cols + style.size() != model.input_dim()) {
    throw ValidationError("input dim " + std::to_string(rep.cols + style.size()) +
                          " does not match model input dim " + std::to_string(model.input_dim()));
  }
  ProsodyPrediction out;
  for (std::size_t i = 0; i < rep.rows; ++i) {
    double zd = model.duration.bias;
    double zp = model.pitch.bias;
    double ze = model.energy.bias;
    for (std::size_t c = 0; c < rep.cols; ++c) {
      const double x = rep.at(i, c);
      if (x == 0.0) continue;
      zd += model.duration.weights[c] * x;
      zp += model.pitch.weights[c] * x;
      ze += model.energy.weights[c] * x;
    }
    for (std::size_t k = 0; k < style.size(); ++k) {
      zd += model.duration.weights[rep.cols + k] * style[k];
      zp += model.pitch.weights[rep.cols + k] * style[k];
      ze += model.energy.weights[rep.cols + k] * style[k];
    }
    out.durations.push_back(Softplus(zd));
    out.pitch.push_back(zp);
    out.energy.push_back(ze);
  }
  return out;
}

double LossTime(const Waveform& w, const Waveform& w_hat) {
  if (w.sample_rate != w_hat.sample_rate) throw ValidationError("sample rates differ");
  if (w.samples.size() != w_hat.samples.size()) throw ValidationError("waveform lengths differ");
  if (w.samples.empty()) throw ValidationError("waveforms are empty");
  double acc = 0.0;
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    acc += std::fabs(static_cast<double>(w.samples[i]) - static_cast<double>(w_hat.samples[i]));
  }
  return acc / static_cast<double>(w.samples.size());
}

double LossFreq(const MelFrames& m, const MelFrames& m_hat) {
  if (!(m.config == m_hat.config)) throw ValidationError("mel configs differ");
  if (m.n_frames != m_hat.n_frames || m.n_mels != m_hat.n_mels ||
      m.values.size() != m_hat.values.size()) {
    throw ValidationError("mel shapes differ");
  }
  if (m.values.empty()) throw ValidationError("mel spectrograms are empty");
  double acc = 0.0;
  for (std::size_t i = 0; i < m.values.size(); ++i) acc += std::fabs(m.values[i] - m_hat.values[i]);
  return acc / static_cast<double>(m.values.size());
}

double ZeroPerceptualLoss(const Waveform&, const Waveform&) { return 0.0; }

double ReconLoss(double lt, double lf, double lp, const LossWeights& weights) {
  CheckLossInput(lt, "time loss");
  CheckLossInput(lf, "frequency loss");
  CheckLossInput(lp, "perceptual loss");
  CheckLossInput(weights.time, "time weight");
  CheckLossInput(weights.freq, "frequency weight");
  CheckLossInput(weights.perceptual, "perceptual weight");
  return weights.time * lt + weights.freq * lf + weights.perceptual * lp;
}

double ReconLoss(const Waveform& w, const Waveform& w_hat, const MelConfig& mel_cfg,
                 const LossWeights& weights, const PerceptualLossHook& perceptual) {
  const double lt = LossTime(w, w_hat);
  const double lf = LossFreq(MelSpectrogram(w, mel_cfg), MelSpectrogram(w_hat, mel_cfg));
  const double lp = perceptual ? perceptual(w, w_hat) : 0.0;
  return ReconLoss(lt, lf, lp, weights);
}

double JointLoss(double l_duration, double l_pitch, double l_energy, double l_decoder) {
  CheckLossInput(l_duration, "duration loss");
  CheckLossInput(l_pitch, "pitch loss");
  CheckLossInput(l_energy, "energy loss");
  CheckLossInput(l_decoder, "decoder loss");
  return l_duration + l_pitch + l_energy + l_decoder;
}

ProsodyTargets TokenTargets(const std::vector<int>& durations,
                            const std::vector<double>& frame_pitch,
                            const std::vector<double>& frame_energy) {
  if (frame_pitch.size() != frame_energy.size()) {
    throw ValidationError("pitch and energy frame counts differ");
  }
  std::size_t total = 0;
  for (int d : durations) {
    if (d < 0) throw ValidationError("negative duration");
    total += static_cast<std::size_t>(d);
  }
  if (total != frame_pitch.size()) {
    throw ValidationError("durations cover " + std::to_string(total) + " frames, features have " +
                          std::to_string(frame_pitch.size()));
  }
  ProsodyTargets t;
  std::size_t start = 0;
  for (int d : durations) {
    double p = 0.0;
    double e = 0.0;
    for (std::size_t f = start; f < start + static_cast<std::size_t>(d); ++f) {
      p += frame_pitch[f];
      e += frame_energy[f];
    }
    t.durations.push_back(d);
    t.pitch.push_back(d > 0 ? p / d : 0.0);
    t.energy.push_back(d > 0 ? e / d : 0.0);
    start += static_cast<std::size_t>(d);
  }
  return t;
}

namespace {

struct PreparedExample {
  std::vector<SparseRow> rows;
  const ProsodyExample* source;
};

std::vector<PreparedExample> Prepare(const ProsodyPredictor& model,
                                     const std::vector<ProsodyExample>& dataset) {
  if (dataset.empty()) throw ValidationError("prosody dataset is empty");
  std::vector<PreparedExample> out;
  for (const auto& ex : dataset) {
    if (ex.style.size() != model.style_dim()) {
      throw ValidationError("style dim " + std::to_string(ex.style.size()) + " differs from " +
                            std::to_string(model.style_dim()));
    }
    const auto& t = ex.targets;
    if (t.durations.size() != ex.ids.size() || t.pitch.size() != ex.ids.size() ||
        t.energy.size() != ex.ids.size()) {
      throw ValidationError("targets do not match the token count");
    }
    for (const auto* v : {&t.durations, &t.pitch, &t.energy, &ex.style}) {
      for (double x : *v) {
        if (!std::isfinite(x)) throw ValidationError("non-finite training value");
      }
    }
    out.push_back({ContextRows(ex.ids, model.vocab_size(), model.window()), &ex});
  }
  return out;
}

// Loss and, when `grad` is set, its gradient.
PredictorLoss LossAndGradient(const ProsodyPredictor& model,
                              const std::vector<PreparedExample>& data, ProsodyPredictor* grad) {
  std::size_t n = 0;
  for (const auto& ex : data) n += ex.rows.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t style_offset = 2 * model.vocab_size();
  PredictorLoss loss;
  auto accumulate = [&](Regressor* g, double dz, const SparseRow& row,
                        const std::vector<double>& style) {
    for (const auto& [c, v] : row) g->weights[c] += dz * v;
    for (std::size_t k = 0; k < style.size(); ++k) g->weights[style_offset + k] += dz * style[k];
    g->bias += dz;
  };
  for (const auto& ex : data) {
    const auto& t = ex.source->targets;
    const auto& style = ex.source->style;
    for (std::size_t i = 0; i < ex.rows.size(); ++i) {
      const auto& row = ex.rows[i];
      const double zd = Affine(model.duration, row, style, style_offset);
      const double rd = Softplus(zd) - t.durations[i];
      const double rp = Affine(model.pitch, row, style, style_offset) - t.pitch[i];
      const double re = Affine(model.energy, row, style, style_offset) - t.energy[i];
      loss.duration += rd * rd * inv_n;
      loss.pitch += rp * rp * inv_n;
      loss.energy += re * re * inv_n;
      if (grad) {
        accumulate(&grad->duration, 2.0 * rd * Sigmoid(zd) * inv_n, row, style);
        accumulate(&grad->pitch, 2.0 * rp * inv_n, row, style);
        accumulate(&grad->energy, 2.0 * re * inv_n, row, style);
      }
    }
  }
  return loss;
}

}  // namespace

PredictorLoss EvaluatePredictorLoss(const ProsodyPredictor& model,
                                    const std::vector<ProsodyExample>& dataset) {
  return LossAndGradient(model, Prepare(model, dataset), nullptr);
}

ProsodyPredictor PredictorGradient(const ProsodyPredictor& model,
                                   const std::vector<ProsodyExample>& dataset,
                                   PredictorLoss* loss) {
  ProsodyPredictor grad(model.vocab_size(), model.window(), model.style_dim());
  const PredictorLoss l = LossAndGradient(model, Prepare(model, dataset), &grad);
  if (loss) *loss = l;
  return grad;
}

PhonemeEmbedding::PhonemeEmbedding(std::size_t vocab_size, std::size_t dim, std::uint64_t seed)
    : vocab_size_(vocab_size), dim_(dim), table_(vocab_size * dim) {
  if (vocab_size == 0 || dim == 0) throw ValidationError("embedding shape must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (double& v : table_) v = normal(rng);
}

const double* PhonemeEmbedding::row(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= vocab_size_) {
    throw ValidationError("token id " + std::to_string(id) + " has no embedding");
  }
  return table_.data() + static_cast<std::size_t>(id) * dim_;
}

LinearMelDecoder::LinearMelDecoder(std::size_t vocab_size, std::size_t embed_dim,
                                   std::size_t n_mels, std::uint64_t seed)
    : embedding_(vocab_size, embed_dim, seed), n_mels_(n_mels), readout_(embed_dim * n_mels) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(embed_dim)));
  for (double& v : readout_) v = normal(rng);
}

MelFrames LinearMelDecoder::Decode(const std::vector<int>& ids, const std::vector<int>& durations,
                                   const MelConfig& cfg) const {
  if (ids.size() != durations.size()) throw ValidationError("one duration per token expected");
  if (static_cast<std::size_t>(cfg.n_mels) != n_mels_) {
    throw ValidationError("decoder band count differs from the mel config");
  }
  MelFrames out;
  out.n_mels = n_mels_;
  out.config = cfg;
  const std::size_t dim = embedding_.dim();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double* e = embedding_.row(ids[i]);
    std::vector<double> frame(n_mels_, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t m = 0; m < n_mels_; ++m) frame[m] += e[k] * readout_[k * n_mels_ + m];
    }
    for (int f = 0; f < durations[i]; ++f) {
      out.values.insert(out.values.end(), frame.begin(), frame.end());
      ++out.n_frames;
    }
  }
  return out;
}

DecoderLossHook LinearMelDecoderLoss(std::size_t vocab_size, std::size_t embed_dim,
                                     std::uint64_t seed) {
  return [=](const ProsodyExample& ex) -> double {
    if (!ex.mel) return 0.0;
    const LinearMelDecoder decoder(vocab_size, embed_dim, ex.mel->n_mels, seed);
    std::vector<int> durations;
    for (double d : ex.targets.durations) durations.push_back(static_cast<int>(std::lround(d)));
    return LossFreq(*ex.mel, decoder.Decode(ex.ids, durations, ex.mel->config));
  };
}

TrainResult TrainPredictorsFrom(const ProsodyPredictor& init,
                                const std::vector<ProsodyExample>& dataset,
                                const TrainConfig& cfg, const DecoderLossHook& decoder_loss) {
  if (cfg.steps < 0) throw ValidationError("step count must be non-negative");
  if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw ValidationError("learning rate must be finite and non-negative");
  }
  const auto data = Prepare(init, dataset);
  TrainResult result;
  result.model = init;
  result.initial_loss = LossAndGradient(init, data, nullptr);
  ProsodyPredictor grad(init.vocab_size(), init.window(), init.style_dim());
  for (int step = 0; step < cfg.steps; ++step) {
    for (Regressor* g : {&grad.duration, &grad.pitch, &grad.energy}) {
      std::fill(g->weights.begin(), g->weights.end(), 0.0);
      g->bias = 0.0;
    }
    const PredictorLoss loss = LossAndGradient(result.model, data, &grad);
    if (!std::isfinite(loss.Total())) {
      throw ValidationError("training diverged at step " + std::to_string(step) +
                            "; lower the learning rate");
    }
    Regressor* params[] = {&result.model.duration, &result.model.pitch, &result.model.energy};
    const Regressor* grads[] = {&grad.duration, &grad.pitch, &grad.energy};
    for (int r = 0; r < 3; ++r) {
      for (std::size_t k = 0; k < params[r]->weights.size(); ++k) {
        params[r]->weights[k] -= cfg.learning_rate * grads[r]->weights[k];
      }
      params[r]->bias -= cfg.learning_rate * grads[r]->bias;
    }
  }
  result.final_loss = LossAndGradient(result.model, data, nullptr);
  if (decoder_loss) {
    for (const auto& ex : dataset) result.decoder_loss += decoder_loss(ex);
    result.decoder_loss /= static_cast<double>(dataset.size());
  }
  result.joint_loss = JointLoss(result.final_loss.duration, result.final_loss.pitch,
                                result.final_loss.energy, result.decoder_loss);
  return result;
}

TrainResult TrainPredictors(const std::vector<ProsodyExample>& dataset, std::size_t vocab_size,
                            const TrainConfig& cfg, const DecoderLossHook& decoder_loss) {
  if (dataset.empty()) throw ValidationError("prosody dataset is empty");
  const ProsodyPredictor init = ProsodyPredictor::Random(
      vocab_size, cfg.window, dataset.front().style.size(), cfg.seed, cfg.init_scale);
  return TrainPredictorsFrom(init, dataset, cfg, decoder_loss);
}

}  // namespace thaifront
