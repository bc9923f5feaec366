#include "rrlab/saturated.hpp"

#include <algorithm>

#include "rrlab/error.hpp"

namespace rrlab {

Rat sat_sigmoid(const Rat& z) {
  const int s = sgn(z);
  if (s > 0) return 1;
  if (s < 0) return 0;
  return Rat(1, 2);
}

Rat sat_tanh(const Rat& z) { return sgn(z); }

Rat relu(const Rat& z) { return sgn(z) > 0 ? z : Rat(0); }

Rat activate(Activation a, const Rat& z) {
  switch (a) {
    case Activation::SatSigmoid:
      return sat_sigmoid(z);
    case Activation::SatTanh:
      return sat_tanh(z);
    case Activation::Relu:
      return relu(z);
    case Activation::Identity:
      return z;
  }
  return z;
}

RatVec activate(Activation a, std::span<const Rat> z) {
  RatVec out;
  out.reserve(z.size());
  for (const auto& v : z) out.push_back(activate(a, v));
  return out;
}

Embedding::Embedding(Alphabet alphabet, std::vector<RatVec> vectors)
    : alphabet_(std::move(alphabet)), index_(alphabet_), vectors_(std::move(vectors)) {
  if (vectors_.size() != alphabet_.size()) {
    fail("ShapeMismatch", "embedding needs one vector per symbol");
  }
  dim_ = vectors_.empty() ? 0 : vectors_.front().size();
  for (const auto& v : vectors_) {
    if (v.size() != dim_) fail("ShapeMismatch", "embedding vectors differ in length");
  }
}

Embedding Embedding::one_hot(const Alphabet& alphabet) {
  std::vector<RatVec> vectors;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    RatVec v(alphabet.size());
    v[i] = 1;
    vectors.push_back(std::move(v));
  }
  return Embedding(alphabet, std::move(vectors));
}

RatVec Affine::apply(std::span<const Rat> x, std::span<const Rat> h) const {
  RatVec out = b;
  for (std::size_t r = 0; r < b.size(); ++r) {
    out[r] += dot(w.row(r), x);
    if (u.cols() != 0) out[r] += dot(u.row(r), h);
  }
  return out;
}

void check_affine(const Affine& a, std::size_t in, std::size_t rec, const char* what) {
  const std::size_t out = a.b.size();
  if (a.w.rows() != out || a.w.cols() != in) {
    fail("ShapeMismatch", std::string(what) + ": W must be " + std::to_string(out) + "x" +
                              std::to_string(in));
  }
  const bool empty_u = a.u.rows() == 0 && a.u.cols() == 0;
  if (!(rec == 0 && empty_u) && (a.u.rows() != out || a.u.cols() != rec)) {
    fail("ShapeMismatch", std::string(what) + ": U must be " + std::to_string(out) + "x" +
                              std::to_string(rec));
  }
}

namespace {

RatVec hadamard(std::span<const Rat> a, std::span<const Rat> b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace

// ---- s-RNN -------------------------------------------------------------

SRnn::SRnn(Embedding emb, Affine h, std::string name)
    : emb_(std::move(emb)), h_(std::move(h)), k_(h_.out_dim()), name_(std::move(name)) {
  check_affine(h_, emb_.dim(), k_, "srnn");
}

StateVec SRnn::step(const StateVec& state, char x) const {
  return activate(Activation::SatTanh, h_.apply(emb_(x), state));
}

// ---- s-GRU -------------------------------------------------------------

SGru::SGru(Embedding emb, Affine z, Affine r, Affine u, std::string name)
    : emb_(std::move(emb)),
      z_(std::move(z)),
      r_(std::move(r)),
      u_(std::move(u)),
      k_(z_.out_dim()),
      name_(std::move(name)) {
  check_affine(z_, emb_.dim(), k_, "sgru z");
  check_affine(r_, emb_.dim(), k_, "sgru r");
  check_affine(u_, emb_.dim(), k_, "sgru u");
}

StateVec SGru::step(const StateVec& h, char x) const {
  const RatVec& e = emb_(x);
  RatVec z = activate(Activation::SatSigmoid, z_.apply(e, h));
  RatVec r = activate(Activation::SatSigmoid, r_.apply(e, h));
  RatVec u = activate(Activation::SatTanh, u_.apply(e, hadamard(r, h)));
  StateVec out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = z[i] * h[i] + (1 - z[i]) * u[i];
  return out;
}

// ---- s-LSTM ------------------------------------------------------------

SLstm::SLstm(Embedding emb, Affine f, Affine i, Affine o, Affine c, std::string name)
    : emb_(std::move(emb)),
      f_(std::move(f)),
      i_(std::move(i)),
      o_(std::move(o)),
      c_(std::move(c)),
      k_(c_.out_dim()),
      name_(std::move(name)) {
  check_affine(f_, emb_.dim(), k_, "slstm f");
  check_affine(i_, emb_.dim(), k_, "slstm i");
  check_affine(o_, emb_.dim(), k_, "slstm o");
  check_affine(c_, emb_.dim(), k_, "slstm c");
}

StateVec SLstm::step(const StateVec& state, char x) const {
  const RatVec& e = emb_(x);
  std::span<const Rat> h(state.data(), k_);
  std::span<const Rat> c(state.data() + k_, k_);
  RatVec f = activate(Activation::SatSigmoid, f_.apply(e, h));
  RatVec i = activate(Activation::SatSigmoid, i_.apply(e, h));
  RatVec o = activate(Activation::SatSigmoid, o_.apply(e, h));
  RatVec ct = activate(Activation::SatTanh, c_.apply(e, h));
  StateVec out(2 * k_);
  for (std::size_t j = 0; j < k_; ++j) {
    out[k_ + j] = f[j] * c[j] + i[j] * ct[j];
    out[j] = o[j] * sat_tanh(out[k_ + j]);
  }
  return out;
}

RatVec SLstm::readout(const StateVec& state) const {
  return RatVec(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(k_));
}

RatVec SLstm::memory(const StateVec& state) const {
  return RatVec(state.begin() + static_cast<std::ptrdiff_t>(k_), state.end());
}

// ---- s-QRNN ------------------------------------------------------------

namespace {

void check_conv(const Conv& g, std::size_t window, std::size_t in, std::size_t k,
                const char* what) {
  if (g.taps.size() != window) {
    fail("ShapeMismatch", std::string(what) + ": need one tap per window position");
  }
  if (g.bias.size() != k) fail("ShapeMismatch", std::string(what) + ": bias size mismatch");
  for (const auto& t : g.taps) {
    if (t.rows() != k || t.cols() != in) {
      fail("ShapeMismatch", std::string(what) + ": tap must be hidden x input");
    }
  }
}

// history[0] = x_t, history[j] = x_{t-j}.
RatVec conv_apply(const Conv& g, const std::vector<std::span<const Rat>>& history) {
  RatVec out = g.bias;
  for (std::size_t j = 0; j < g.taps.size(); ++j) {
    RatVec part = mat_vec(g.taps[j], history[j]);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] += part[r];
  }
  return out;
}

}  // namespace

SQrnn::SQrnn(Embedding emb, std::vector<QrnnLayer> layers, std::string name)
    : emb_(std::move(emb)), layers_(std::move(layers)), name_(std::move(name)) {
  if (layers_.empty()) fail("InvalidArgument", "sqrnn needs at least one layer");
  std::size_t in = emb_.dim();
  std::size_t off = 0;
  for (const auto& l : layers_) {
    if (l.window == 0) fail("InvalidArgument", "sqrnn window must be >= 1");
    if (l.input_dim != in) fail("ShapeMismatch", "sqrnn layer input size mismatch");
    const std::size_t k = l.hidden();
    check_conv(l.z, l.window, in, k, "sqrnn z");
    check_conv(l.f, l.window, in, k, "sqrnn f");
    check_conv(l.i, l.window, in, k, "sqrnn i");
    check_conv(l.o, l.window, in, k, "sqrnn o");
    Offsets o;
    o.buffer = off;
    o.c = o.buffer + (l.window - 1) * in;
    o.h = o.c + k;
    o.end = o.h + k;
    offsets_.push_back(o);
    off = o.end;
    in = k;
  }
  state_size_ = off;
}

StateVec SQrnn::step(const StateVec& state, char x) const {
  StateVec out(state.size());
  RatVec input = emb_(x);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const QrnnLayer& layer = layers_[l];
    const Offsets& o = offsets_[l];
    const std::size_t d = layer.input_dim;
    const std::size_t k = layer.hidden();

    std::vector<std::span<const Rat>> history;
    history.emplace_back(input);
    for (std::size_t j = 1; j < layer.window; ++j) {
      history.emplace_back(state.data() + o.buffer + (j - 1) * d, d);
    }
    RatVec z = activate(Activation::SatTanh, conv_apply(layer.z, history));
    RatVec f = activate(Activation::SatSigmoid, conv_apply(layer.f, history));
    RatVec i = activate(Activation::SatSigmoid, conv_apply(layer.i, history));
    RatVec og = activate(Activation::SatSigmoid, conv_apply(layer.o, history));

    // Shift the buffer: x_t becomes the newest entry.
    if (layer.window > 1) {
      for (std::size_t j = layer.window - 1; j-- > 1;) {
        for (std::size_t r = 0; r < d; ++r) {
          out[o.buffer + j * d + r] = state[o.buffer + (j - 1) * d + r];
        }
      }
      for (std::size_t r = 0; r < d; ++r) out[o.buffer + r] = input[r];
    }
    RatVec h(k);
    for (std::size_t j = 0; j < k; ++j) {
      out[o.c + j] = f[j] * state[o.c + j] + i[j] * z[j];
      h[j] = og[j] * out[o.c + j];
      out[o.h + j] = h[j];
    }
    input = std::move(h);
  }
  return out;
}

RatVec SQrnn::memory(const StateVec& state, std::size_t layer) const {
  const Offsets& o = offsets_.at(layer);
  return RatVec(state.begin() + static_cast<std::ptrdiff_t>(o.c),
                state.begin() + static_cast<std::ptrdiff_t>(o.h));
}

RatVec SQrnn::hidden(const StateVec& state, std::size_t layer) const {
  const Offsets& o = offsets_.at(layer);
  return RatVec(state.begin() + static_cast<std::ptrdiff_t>(o.h),
                state.begin() + static_cast<std::ptrdiff_t>(o.end));
}

RatVec SQrnn::readout(const StateVec& state) const {
  return hidden(state, layers_.size() - 1);
}

// ---- stack RNN ---------------------------------------------------------

StackRnn::StackRnn(Alphabet alphabet, std::size_t k, Controller controller, std::string name)
    : alphabet_(std::move(alphabet)),
      index_(alphabet_),
      k_(k),
      controller_(std::move(controller)),
      name_(std::move(name)) {
  if (k_ == 0) fail("InvalidArgument", "stack entries need at least one component");
}

StateVec StackRnn::step(const StateVec& state, char x) const {
  index_.at(x);
  const StackAction act = controller_(x, readout(state));
  StateVec out;
  switch (act.op) {
    case StackOp::Push:
      if (act.value.size() != k_) fail("ShapeMismatch", "pushed entry has wrong size");
      out = act.value;
      out.insert(out.end(), state.begin(), state.end());
      break;
    case StackOp::Noop:
      out = state;
      break;
    case StackOp::Pop:
      if (!state.empty()) out.assign(state.begin() + static_cast<std::ptrdiff_t>(k_), state.end());
      break;
  }
  // Drop null entries at the bottom; they equal the infinite zero padding.
  while (!out.empty() &&
         std::all_of(out.end() - static_cast<std::ptrdiff_t>(k_), out.end(),
                     [](const Rat& v) { return sgn(v) == 0; })) {
    out.resize(out.size() - k_);
  }
  return out;
}

RatVec StackRnn::readout(const StateVec& state) const {
  RatVec c(k_);
  Rat weight = 1;
  for (std::size_t e = 0; e < state.size() / k_; ++e) {
    for (std::size_t j = 0; j < k_; ++j) c[j] += weight * state[e * k_ + j];
    weight /= 2;
  }
  return c;
}

// ---- saturated attention -----------------------------------------------

RatVec layer_norm(std::span<const Rat> x) {
  RatVec out(x.size());
  if (x.empty()) return out;
  Rat mean = 0;
  for (const auto& v : x) mean += v;
  mean /= static_cast<long>(x.size());
  Rat var = 0;
  for (const auto& v : x) var += (v - mean) * (v - mean);
  var /= static_cast<long>(x.size());
  if (sgn(var) == 0) return out;
  Rat sd;
  if (!exact_sqrt(var, sd)) fail("IrrationalNorm", "layer norm of this vector is irrational");
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / sd;
  return out;
}

SAttention::SAttention(Embedding emb, RatMatrix wq, RatMatrix wk, RatMatrix wv, RatMatrix wh,
                       RatMatrix wc, std::string name)
    : emb_(std::move(emb)),
      wq_(std::move(wq)),
      wk_(std::move(wk)),
      wv_(std::move(wv)),
      wh_(std::move(wh)),
      wc_(std::move(wc)),
      name_(std::move(name)) {
  const std::size_t d = emb_.dim();
  if (wq_.cols() != d || wk_.cols() != d || wv_.cols() != d) {
    fail("ShapeMismatch", "attention q/k/v maps must read the embedding");
  }
  if (wq_.rows() != wk_.rows()) fail("ShapeMismatch", "query and key sizes differ");
  if (wh_.cols() != wv_.rows()) fail("ShapeMismatch", "W^h must read the value vector");
  if (wc_.cols() != wh_.rows()) fail("ShapeMismatch", "W^c must read W^h's output");
  for (const auto& e : emb_.vectors()) {
    Pair p{mat_vec(wk_, e), mat_vec(wv_, e)};
    auto it = std::find_if(pairs_.begin(), pairs_.end(), [&](const Pair& q) {
      return q.key == p.key && q.value == p.value;
    });
    pair_of_.push_back(static_cast<std::size_t>(it - pairs_.begin()));
    if (it == pairs_.end()) pairs_.push_back(std::move(p));
  }
}

StateVec SAttention::initial() const { return StateVec(1 + pairs_.size()); }

StateVec SAttention::step(const StateVec& state, char x) const {
  const std::size_t s = emb_.position(x);
  StateVec out = state;
  out[0] = static_cast<long>(s + 1);
  out[1 + pair_of_[s]] += 1;
  return out;
}

RatVec SAttention::head(const StateVec& state) const {
  RatVec h(wv_.rows());
  if (sgn(state[0]) == 0) return h;
  const std::size_t s = state[0].get_num().get_ui() - 1;
  const RatVec q = mat_vec(wq_, emb_.vectors()[s]);
  bool any = false;
  Rat best;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    if (sgn(state[1 + p]) == 0) continue;
    Rat score = dot(q, pairs_[p].key);
    if (!any || score > best) best = score;
    any = true;
  }
  Rat total = 0;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    if (sgn(state[1 + p]) == 0 || dot(q, pairs_[p].key) != best) continue;
    total += state[1 + p];
    for (std::size_t j = 0; j < h.size(); ++j) h[j] += state[1 + p] * pairs_[p].value[j];
  }
  for (auto& v : h) v /= total;
  return h;
}

RatVec SAttention::readout(const StateVec& state) const {
  RatVec hp = activate(Activation::Relu, mat_vec(wh_, layer_norm(head(state))));
  return layer_norm(mat_vec(wc_, hp));
}

StateVec SAttention::configuration(const StateVec& state) const {
  return StateVec(state.begin() + 1, state.end());
}

}  // namespace rrlab
