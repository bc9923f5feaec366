#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rrlab/hankel.hpp"
#include "rrlab/recognition.hpp"
#include "rrlab/rng.hpp"
#include "rrlab/saturated.hpp"

namespace rrlab {

// All constructions read {a, b} through the one-hot embedding a -> (1, 0),
// b -> (0, 1), and realize "<= 0" checks on integer states as 𝟙>0(1/2 - v).

/// One cell: f = o = 1, i = σ(10·h - 2·[x=b] + 1), c~ = tanh([x=a] - [x=b]).
/// Its memory on a^i b^j is max(i - j, 0).
std::shared_ptr<const SLstm> build_slstm_f0();

/// a^n b^n with a D¹ decoder. Cells:
///   c1 = relu(#a - #b) as in build_slstm_f0
///   c2 = relu(#b - #a): i = σ(2·[x=b] - 4·h1 - 1), c~ = 1
///   c3 counts a's read after some b, so h3 = 1 iff "ba" occurred:
///      i = σ(2·[x=a] + 2·h4 - 3), c~ = 1
///   c4 = 1 once a b has been read: f = σ(1 - 2·[x=b]), i = σ(2·[x=b] - 1), c~ = 1
/// The gates only see h_{t-1}, not x_{t-1}, so the "ba" latch needs c4.
/// Decoder: 𝟙>0(1/2 - h1 - h2 - h3).
Pipeline build_slstm_anbn();

/// a^n b^n Σ* (n > 0). Adds an accumulator c5 with
///   i = σ(2·h4 - 2·h1 - 2·h2 - 2·h3 - 1), c~ = 1,
/// which grows from the step after any nonempty prefix in a^n b^n.
/// Decoder: 𝟙>0(4·h5 + h4 - h1 - h2 - h3 - 1/2); the h4 term rejects ε.
Pipeline build_slstm_anbn_sigma();

/// Window-2 s-QRNN with c1 = #a - #b and c2 = #ba (o = 1, so h = c),
/// decoded by D²: 𝟙>0(𝟙[c1 >= 0] + 𝟙[c1 <= 0] + 𝟙[c2 <= 0] - 5/2).
Pipeline build_sqrnn_anbn_counters();

/// a^n b^n Σ* ∪ {ε}. Layer 1 (window 2) computes d = #ba, e = #$b (the
/// first symbol was b) and s = ±1 for the current symbol. Layer 2 (window 1):
/// f = 1, i = σ(1 - 2d), z = tanh(s + 2e + 1/2), o = 1. Decoder 𝟙>0(1/2 - c).
Pipeline build_sqrnn_two_layer_anbn_sigma();

/// L_≤: a window-1 s-QRNN computing #a - #b, decoder 𝟙>0(1/2 - c).
Pipeline build_l_leq_pipeline();

/// Σ* a^n b^n candidate: #a - #b, set to 1 whenever the window reads "ba",
/// decoder 𝟙>0(1/2 - c). Not a correct recognizer; sweeps report where it
/// disagrees with the language.
Pipeline build_sigma_anbn_demonstrator();

/// Exact reconstruction of f_anbn from the {a,b}^{<=2} Hankel block with the
/// identity decoder 𝟙>0(f(x)).
Pipeline build_spectral_anbn_pipeline();

/// Keys and queries constant 1, values one-hot, W^h = [[1,-1],[-1,1]],
/// W^c = [[1,1],[0,0]]. The first readout component is 0 when #a = #b and 1
/// otherwise.
std::shared_ptr<const SAttention> build_attention_equal_counts();

/// Over {0, 1}: always pushes the digit, so "101" -> 1 + 0/2 + 1/4.
std::shared_ptr<const StackRnn> build_stack_binary();
/// Over {a, b}: pushes 1 on a, pops on b.
std::shared_ptr<const StackRnn> build_stack_geometric();
/// The function computed by build_stack_geometric (2 - 2^{1-n} on a^n).
SeriesOracle stack_geometric_oracle();

// Random nets over {a, b} with integer weights in [-2, 2] and biases in
// {-3/2, -1/2, 1/2, 3/2}. Every pre-activation is then an integer plus a
// half-integer, hence never zero.
std::shared_ptr<const SRnn> random_generic_srnn(Rng& rng, std::size_t k);
std::shared_ptr<const SGru> random_generic_sgru(Rng& rng, std::size_t k);
std::shared_ptr<const SLstm> random_generic_slstm(Rng& rng, std::size_t k);
std::shared_ptr<const SQrnn> random_generic_sqrnn(Rng& rng, std::size_t window, std::size_t k);
/// Single-layer s-QRNN with every weight and bias zero.
std::shared_ptr<const SQrnn> zero_sqrnn(std::size_t window, std::size_t k);

struct SuffixAttackResult {
  std::string w1, w2;
  StateVec s1, s2;
  bool equal = false;
};

/// Runs net on the suffix_attack_pair(window) strings and compares the full
/// final states (memory, hidden and window buffer). Throws
/// Error("InvalidArgument") if a layer's window exceeds `window`.
SuffixAttackResult suffix_attack(const SQrnn& net, std::size_t window);
bool suffix_attack_check(const SQrnn& net, std::size_t window);

/// Named encoders and pipelines shared by the CLI and tests.
const std::vector<std::string>& encoder_names();
EncoderPtr named_encoder(std::string_view name);
const std::vector<std::string>& pipeline_names();
Pipeline named_pipeline(std::string_view name);

}  // namespace rrlab
