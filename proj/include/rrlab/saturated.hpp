#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrlab/encoder.hpp"
#include "rrlab/matrix.hpp"
#include "rrlab/rational.hpp"

namespace rrlab {

// Limit activations. Zero pre-activations give the true limit values.
Rat sat_sigmoid(const Rat& z);  // 0, 1/2, 1
Rat sat_tanh(const Rat& z);     // -1, 0, 1
Rat relu(const Rat& z);

enum class Activation { SatSigmoid, SatTanh, Relu, Identity };
Rat activate(Activation a, const Rat& z);
RatVec activate(Activation a, std::span<const Rat> z);

/// Symbol -> input vector. One-hot in alphabet order unless given explicitly.
class Embedding {
 public:
  Embedding() = default;
  Embedding(Alphabet alphabet, std::vector<RatVec> vectors);
  static Embedding one_hot(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dim() const { return dim_; }
  const RatVec& operator()(char c) const { return vectors_[index_.at(c)]; }
  std::size_t position(char c) const { return index_.at(c); }
  const std::vector<RatVec>& vectors() const { return vectors_; }

 private:
  Alphabet alphabet_;
  SymbolIndex index_;
  std::vector<RatVec> vectors_;
  std::size_t dim_ = 0;
};

/// W·x + U·h + b. U may be 0×0 for layers without recurrence.
struct Affine {
  RatMatrix w;
  RatMatrix u;
  RatVec b;

  std::size_t out_dim() const { return b.size(); }
  RatVec apply(std::span<const Rat> x, std::span<const Rat> h) const;
};

/// Checks W is out×in and U is out×rec (or empty when rec == 0).
void check_affine(const Affine& a, std::size_t in, std::size_t rec, const char* what);

/// h_t = tanh(W x_t + U h_{t-1} + b), saturated.
class SRnn final : public Encoder {
 public:
  SRnn(Embedding emb, Affine h, std::string name = "srnn");

  const Alphabet& alphabet() const override { return emb_.alphabet(); }
  StateVec initial() const override { return StateVec(k_); }
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override { return state; }
  std::size_t readout_dim() const override { return k_; }
  std::string name() const override { return name_; }

  const Embedding& embedding() const { return emb_; }
  const Affine& layer() const { return h_; }

 private:
  Embedding emb_;
  Affine h_;
  std::size_t k_;
  std::string name_;
};

/// Saturated GRU: z, r gates; u = tanh(W x + U (r ⊙ h) + b);
/// h_t = z ⊙ h_{t-1} + (1 - z) ⊙ u.
class SGru final : public Encoder {
 public:
  SGru(Embedding emb, Affine z, Affine r, Affine u, std::string name = "sgru");

  const Alphabet& alphabet() const override { return emb_.alphabet(); }
  StateVec initial() const override { return StateVec(k_); }
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override { return state; }
  std::size_t readout_dim() const override { return k_; }
  std::string name() const override { return name_; }

  const Embedding& embedding() const { return emb_; }
  const Affine& z() const { return z_; }
  const Affine& r() const { return r_; }
  const Affine& u() const { return u_; }

 private:
  Embedding emb_;
  Affine z_, r_, u_;
  std::size_t k_;
  std::string name_;
};

/// Saturated LSTM. State is [h_1..h_k, c_1..c_k]; the decoder reads h.
class SLstm final : public Encoder {
 public:
  SLstm(Embedding emb, Affine f, Affine i, Affine o, Affine c, std::string name = "slstm");

  const Alphabet& alphabet() const override { return emb_.alphabet(); }
  StateVec initial() const override { return StateVec(2 * k_); }
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override;
  std::size_t readout_dim() const override { return k_; }
  std::string name() const override { return name_; }

  std::size_t cells() const { return k_; }
  RatVec memory(const StateVec& state) const;
  const Embedding& embedding() const { return emb_; }
  const Affine& f() const { return f_; }
  const Affine& i() const { return i_; }
  const Affine& o() const { return o_; }
  const Affine& c() const { return c_; }

 private:
  Embedding emb_;
  Affine f_, i_, o_, c_;
  std::size_t k_;
  std::string name_;
};

/// Convolution over the last `taps.size()` inputs: taps[j] multiplies x_{t-j}.
/// Inputs before the start of the string are zero vectors.
struct Conv {
  std::vector<RatMatrix> taps;
  RatVec bias;
};

/// One ifo-QRNN layer: z = tanh(W^z * X), f/i/o = σ(W^{f,i,o} * X),
/// c_t = f ⊙ c_{t-1} + i ⊙ z, h_t = o ⊙ c_t.
struct QrnnLayer {
  std::size_t input_dim = 0;
  std::size_t window = 1;
  Conv z, f, i, o;

  std::size_t hidden() const { return z.bias.size(); }
};

/// Stack of QRNN layers; layer l reads the hidden sequence of layer l-1.
/// Per-layer state: [x_{t-1} .. x_{t-w+1} buffer, c, h]. The decoder reads
/// the top layer's h.
class SQrnn final : public Encoder {
 public:
  SQrnn(Embedding emb, std::vector<QrnnLayer> layers, std::string name = "sqrnn");

  const Alphabet& alphabet() const override { return emb_.alphabet(); }
  StateVec initial() const override { return StateVec(state_size_); }
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override;
  std::size_t readout_dim() const override { return layers_.back().hidden(); }
  std::string name() const override { return name_; }

  const Embedding& embedding() const { return emb_; }
  const std::vector<QrnnLayer>& layers() const { return layers_; }
  /// Memory c of layer l.
  RatVec memory(const StateVec& state, std::size_t layer) const;
  /// Hidden h of layer l.
  RatVec hidden(const StateVec& state, std::size_t layer) const;

 private:
  struct Offsets {
    std::size_t buffer, c, h, end;
  };
  Embedding emb_;
  std::vector<QrnnLayer> layers_;
  std::vector<Offsets> offsets_;
  std::size_t state_size_ = 0;
  std::string name_;
};

enum class StackOp { Push, Noop, Pop };

struct StackAction {
  StackOp op = StackOp::Noop;
  RatVec value;  // pushed entry, used only for Push
};

/// Saturated geometric stack RNN. The controller sees x_t and c_{t-1} and
/// picks one operation. Null entries are zero vectors, so the stack is kept
/// with trailing (bottom) nulls trimmed. State is the flattened stack, top
/// entry first; readout is c_t = Σ_i (1/2)^{i-1} S_i.
class StackRnn final : public Encoder {
 public:
  using Controller = std::function<StackAction(char x, const RatVec& c_prev)>;

  StackRnn(Alphabet alphabet, std::size_t k, Controller controller, std::string name);

  const Alphabet& alphabet() const override { return alphabet_; }
  StateVec initial() const override { return {}; }
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override;
  std::size_t readout_dim() const override { return k_; }
  std::string name() const override { return name_; }

  std::size_t depth(const StateVec& state) const { return state.size() / k_; }

 private:
  Alphabet alphabet_;
  SymbolIndex index_;
  std::size_t k_;
  Controller controller_;
  std::string name_;
};

/// Exact layer normalization (x - mean) / std. Throws Error("IrrationalNorm")
/// when the standard deviation is irrational; zero variance gives 0.
RatVec layer_norm(std::span<const Rat> x);

/// Single-head masked saturated self attention without positions:
///   h_t  = mean of v_i over the i <= t maximizing q_t·k_i  (0 when t = 0)
///   h'_t = relu(W^h ‖h_t‖_L),  c_t = ‖W^c h'_t‖_L
/// State is [last symbol position + 1 (0 before any input), count of each
/// distinct (k, v) pair]; the readout is c_t for the current prefix.
class SAttention final : public Encoder {
 public:
  SAttention(Embedding emb, RatMatrix wq, RatMatrix wk, RatMatrix wv, RatMatrix wh,
             RatMatrix wc, std::string name = "attention");

  const Alphabet& alphabet() const override { return emb_.alphabet(); }
  StateVec initial() const override;
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override;
  std::size_t readout_dim() const override { return wc_.rows(); }
  std::string name() const override { return name_; }
  /// The (k, v) multiplicities only.
  StateVec configuration(const StateVec& state) const override;

  /// |K × V| over the alphabet.
  std::size_t pair_count() const { return pairs_.size(); }
  /// h_t for the current state.
  RatVec head(const StateVec& state) const;

  const Embedding& embedding() const { return emb_; }
  const RatMatrix& wq() const { return wq_; }
  const RatMatrix& wk() const { return wk_; }
  const RatMatrix& wv() const { return wv_; }
  const RatMatrix& wh() const { return wh_; }
  const RatMatrix& wc() const { return wc_; }

 private:
  struct Pair {
    RatVec key, value;
  };
  Embedding emb_;
  RatMatrix wq_, wk_, wv_, wh_, wc_;
  std::vector<Pair> pairs_;         // distinct (k, v) pairs
  std::vector<std::size_t> pair_of_;  // symbol position -> pair id
  std::string name_;
};

// Net JSON: {"type": "srnn|sgru|slstm|sqrnn|attention|stack", "alphabet": [...],
//            "embedding": [[...] per symbol] (optional, one-hot default), ...}
// Matrices are {"rows": r, "cols": c, "data": [row-major "p/q"]}; affine maps
// are {"w": matrix, "u": matrix, "b": [...]}. Stack nets only name a built-in
// controller: {"type": "stack", "controller": "binary|geometric"}.
nlohmann::json net_to_json(const Encoder& net);
EncoderPtr net_from_json(const nlohmann::json& j);

}  // namespace rrlab
