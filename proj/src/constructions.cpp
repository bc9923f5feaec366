#include "rrlab/constructions.hpp"

#include <functional>
#include <map>

#include "rrlab/counter_machine.hpp"
#include "rrlab/error.hpp"
#include "rrlab/languages.hpp"

namespace rrlab {
namespace {

const Alphabet kAb = {'a', 'b'};
constexpr std::size_t A = 0;  // one-hot column of a
constexpr std::size_t B = 1;  // one-hot column of b

Rat half() { return Rat(1, 2); }

Affine zero_affine(std::size_t in, std::size_t k) {
  return {RatMatrix(k, in), RatMatrix(k, k), RatVec(k)};
}

Affine constant_affine(std::size_t in, std::size_t k, const Rat& bias) {
  Affine a = zero_affine(in, k);
  for (auto& v : a.b) v = bias;
  return a;
}

Conv zero_conv(std::size_t window, std::size_t in, std::size_t k) {
  return {std::vector<RatMatrix>(window, RatMatrix(k, in)), RatVec(k)};
}

Conv constant_conv(std::size_t window, std::size_t in, std::size_t k, const Rat& bias) {
  Conv c = zero_conv(window, in, k);
  for (auto& v : c.bias) v = bias;
  return c;
}

QrnnLayer blank_layer(std::size_t window, std::size_t in, std::size_t k) {
  QrnnLayer l;
  l.input_dim = in;
  l.window = window;
  l.z = zero_conv(window, in, k);
  l.f = constant_conv(window, in, k, half());
  l.i = constant_conv(window, in, k, half());
  l.o = constant_conv(window, in, k, half());
  return l;
}

LinearThresholdDecoder linear(RatVec w, Rat b) { return {std::move(w), std::move(b)}; }

// Gates for cells 1..4 of the a^n b^n s-LSTM, sized for k >= 4 cells.
struct LstmGates {
  Affine f, i, o, c;
};

LstmGates anbn_gates(std::size_t k) {
  LstmGates g{constant_affine(2, k, half()), zero_affine(2, k), constant_affine(2, k, half()),
              zero_affine(2, k)};
  // c1 = relu(#a - #b)
  g.i.w(0, B) = -2;
  g.i.u(0, 0) = 10;
  g.i.b[0] = 1;
  g.c.w(0, A) = 1;
  g.c.w(0, B) = -1;
  // c2 = relu(#b - #a)
  g.i.w(1, B) = 2;
  g.i.u(1, 0) = -4;
  g.i.b[1] = -1;
  g.c.b[1] = half();
  // c3: a read after a b
  g.i.w(2, A) = 2;
  g.i.u(2, 3) = 2;
  g.i.b[2] = -3;
  g.c.b[2] = half();
  // c4: b seen
  g.f.w(3, B) = -2;
  g.f.b[3] = 1;
  g.i.w(3, B) = 2;
  g.i.b[3] = -1;
  g.c.b[3] = half();
  return g;
}

}  // namespace

std::shared_ptr<const SLstm> build_slstm_f0() {
  Affine f = constant_affine(2, 1, half());
  Affine o = constant_affine(2, 1, half());
  Affine i = zero_affine(2, 1);
  i.u(0, 0) = 10;
  i.w(0, B) = -2;
  i.b[0] = 1;
  Affine c = zero_affine(2, 1);
  c.w(0, A) = 1;
  c.w(0, B) = -1;
  return std::make_shared<SLstm>(Embedding::one_hot(kAb), std::move(f), std::move(i),
                                 std::move(o), std::move(c), "slstm_f0");
}

Pipeline build_slstm_anbn() {
  LstmGates g = anbn_gates(4);
  auto net = std::make_shared<SLstm>(Embedding::one_hot(kAb), std::move(g.f), std::move(g.i),
                                     std::move(g.o), std::move(g.c), "slstm_anbn");
  return {net, linear({-1, -1, -1, 0}, half()), "slstm_anbn"};
}

Pipeline build_slstm_anbn_sigma() {
  LstmGates g = anbn_gates(5);
  // c5 accumulates while the previous prefix was a nonempty a^n b^n or later.
  g.i.u(4, 0) = -2;
  g.i.u(4, 1) = -2;
  g.i.u(4, 2) = -2;
  g.i.u(4, 3) = 2;
  g.i.b[4] = -1;
  g.c.b[4] = half();
  auto net = std::make_shared<SLstm>(Embedding::one_hot(kAb), std::move(g.f), std::move(g.i),
                                     std::move(g.o), std::move(g.c), "slstm_anbn_sigma");
  return {net, linear({-1, -1, -1, 1, 4}, -half()), "slstm_anbn_sigma"};
}

Pipeline build_sqrnn_anbn_counters() {
  QrnnLayer l = blank_layer(2, 2, 2);
  // c1 = #a - #b
  l.z.taps[0](0, A) = 1;
  l.z.taps[0](0, B) = -1;
  // c2 = #ba: i fires on x_{t-1} = b, x_t = a
  l.z.bias[1] = half();
  l.i.taps[0](1, A) = 2;
  l.i.taps[1](1, B) = 2;
  l.i.bias[1] = -3;
  auto net = std::make_shared<SQrnn>(Embedding::one_hot(kAb), std::vector<QrnnLayer>{l},
                                     "sqrnn_anbn_counters");
  TwoLayerDecoder d{RatMatrix{{1, 0}, {-1, 0}, {0, -1}}, RatVec{half(), half(), half()},
                    linear({1, 1, 1}, Rat(-5, 2))};
  return {net, d, "sqrnn_anbn_counters"};
}

Pipeline build_sqrnn_two_layer_anbn_sigma() {
  QrnnLayer l1 = blank_layer(2, 2, 3);
  // d = #ba
  l1.z.bias[0] = half();
  l1.i.taps[0](0, A) = 2;
  l1.i.taps[1](0, B) = 2;
  l1.i.bias[0] = -3;
  // e = #$b: only the first step sees an all-zero previous input
  l1.z.bias[1] = half();
  l1.i.taps[0](1, B) = 2;
  l1.i.taps[1](1, A) = -2;
  l1.i.taps[1](1, B) = -2;
  l1.i.bias[1] = -1;
  // s = current symbol as ±1
  l1.f.bias[2] = -half();
  l1.z.taps[0](2, A) = 1;
  l1.z.taps[0](2, B) = -1;

  QrnnLayer l2 = blank_layer(1, 3, 1);
  l2.i.taps[0](0, 0) = -2;
  l2.i.bias[0] = 1;
  l2.z.taps[0](0, 1) = 2;
  l2.z.taps[0](0, 2) = 1;
  l2.z.bias[0] = half();

  auto net = std::make_shared<SQrnn>(Embedding::one_hot(kAb), std::vector<QrnnLayer>{l1, l2},
                                     "sqrnn2_anbn_sigma");
  return {net, linear({-1}, half()), "sqrnn2_anbn_sigma"};
}

Pipeline build_l_leq_pipeline() {
  QrnnLayer l = blank_layer(1, 2, 1);
  l.z.taps[0](0, A) = 1;
  l.z.taps[0](0, B) = -1;
  auto net = std::make_shared<SQrnn>(Embedding::one_hot(kAb), std::vector<QrnnLayer>{l},
                                     "sqrnn_count");
  return {net, linear({-1}, half()), "l_leq"};
}

Pipeline build_sigma_anbn_demonstrator() {
  QrnnLayer l = blank_layer(2, 2, 1);
  l.z.taps[0](0, A) = 1;
  l.z.taps[0](0, B) = -1;
  // f = 0 exactly on the window "ba"; z is then +1 since x_t = a.
  l.f.taps[0](0, A) = -2;
  l.f.taps[1](0, B) = -2;
  l.f.bias[0] = 3;
  auto net = std::make_shared<SQrnn>(Embedding::one_hot(kAb), std::vector<QrnnLayer>{l},
                                     "sqrnn_sigma_anbn");
  return {net, linear({-1}, half()), "sigma_anbn_demo"};
}

Pipeline build_spectral_anbn_pipeline() {
  auto block = strings_up_to(kAb, 2);
  Wfa a = spectral_reconstruct(anbn_oracle(), block, block);
  auto enc = std::make_shared<WfaEncoder>(std::vector<Wfa>{std::move(a)}, "spectral_anbn");
  return {enc, linear({1}, 0), "spectral_anbn"};
}

std::shared_ptr<const SAttention> build_attention_equal_counts() {
  return std::make_shared<SAttention>(Embedding::one_hot(kAb), RatMatrix{{1, 1}},
                                      RatMatrix{{1, 1}}, RatMatrix::identity(2),
                                      RatMatrix{{1, -1}, {-1, 1}}, RatMatrix{{1, 1}, {0, 0}},
                                      "attention_equal_counts");
}

std::shared_ptr<const StackRnn> build_stack_binary() {
  return std::make_shared<StackRnn>(
      Alphabet{'0', '1'}, 1,
      [](char x, const RatVec&) { return StackAction{StackOp::Push, {Rat(x == '1' ? 1 : 0)}}; },
      "stack_binary");
}

std::shared_ptr<const StackRnn> build_stack_geometric() {
  return std::make_shared<StackRnn>(
      kAb, 1,
      [](char x, const RatVec&) {
        return x == 'a' ? StackAction{StackOp::Push, {Rat(1)}} : StackAction{StackOp::Pop, {}};
      },
      "stack_geometric");
}

SeriesOracle stack_geometric_oracle() {
  auto net = build_stack_geometric();
  return {kAb, [net](std::string_view x) { return encode(*net, x)[0]; }};
}

namespace {

Rat random_weight(Rng& rng) { return rng.range(-2, 2); }
Rat random_bias(Rng& rng) { return Rat(2 * rng.range(-2, 1) + 1, 2); }

Affine random_affine(Rng& rng, std::size_t in, std::size_t k, bool recurrent) {
  Affine a{RatMatrix(k, in), recurrent ? RatMatrix(k, k) : RatMatrix(), RatVec(k)};
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < in; ++c) a.w(r, c) = random_weight(rng);
    if (recurrent)
      for (std::size_t c = 0; c < k; ++c) a.u(r, c) = random_weight(rng);
    a.b[r] = random_bias(rng);
  }
  return a;
}

Conv random_conv(Rng& rng, std::size_t window, std::size_t in, std::size_t k) {
  Conv c = zero_conv(window, in, k);
  for (auto& t : c.taps)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t j = 0; j < in; ++j) t(r, j) = random_weight(rng);
  for (auto& b : c.bias) b = random_bias(rng);
  return c;
}

}  // namespace

std::shared_ptr<const SRnn> random_generic_srnn(Rng& rng, std::size_t k) {
  return std::make_shared<SRnn>(Embedding::one_hot(kAb), random_affine(rng, 2, k, true),
                                "srnn_generic");
}

std::shared_ptr<const SGru> random_generic_sgru(Rng& rng, std::size_t k) {
  Affine z = random_affine(rng, 2, k, true);
  Affine r = random_affine(rng, 2, k, true);
  Affine u = random_affine(rng, 2, k, true);
  return std::make_shared<SGru>(Embedding::one_hot(kAb), std::move(z), std::move(r),
                                std::move(u), "sgru_generic");
}

std::shared_ptr<const SLstm> random_generic_slstm(Rng& rng, std::size_t k) {
  Affine f = random_affine(rng, 2, k, true);
  Affine i = random_affine(rng, 2, k, true);
  Affine o = random_affine(rng, 2, k, true);
  Affine c = random_affine(rng, 2, k, true);
  return std::make_shared<SLstm>(Embedding::one_hot(kAb), std::move(f), std::move(i),
                                 std::move(o), std::move(c), "slstm_generic");
}

std::shared_ptr<const SQrnn> random_generic_sqrnn(Rng& rng, std::size_t window,
                                                  std::size_t k) {
  QrnnLayer l;
  l.input_dim = 2;
  l.window = window;
  l.z = random_conv(rng, window, 2, k);
  l.f = random_conv(rng, window, 2, k);
  l.i = random_conv(rng, window, 2, k);
  l.o = random_conv(rng, window, 2, k);
  return std::make_shared<SQrnn>(Embedding::one_hot(kAb), std::vector<QrnnLayer>{l},
                                 "sqrnn_generic");
}

std::shared_ptr<const SQrnn> zero_sqrnn(std::size_t window, std::size_t k) {
  QrnnLayer l;
  l.input_dim = 2;
  l.window = window;
  l.z = l.f = l.i = l.o = zero_conv(window, 2, k);
  return std::make_shared<SQrnn>(Embedding::one_hot(kAb), std::vector<QrnnLayer>{l},
                                 "sqrnn_zero");
}

SuffixAttackResult suffix_attack(const SQrnn& net, std::size_t window) {
  for (const auto& l : net.layers()) {
    if (l.window > window) {
      fail("InvalidArgument", "net window " + std::to_string(l.window) +
                                  " exceeds the attack window " + std::to_string(window));
    }
  }
  SuffixAttackResult r;
  std::tie(r.w1, r.w2) = suffix_attack_pair(window);
  r.s1 = run(net, r.w1);
  r.s2 = run(net, r.w2);
  r.equal = r.s1 == r.s2;
  return r;
}

bool suffix_attack_check(const SQrnn& net, std::size_t window) {
  return suffix_attack(net, window).equal;
}

namespace {

// Fixed seeds for the named generic nets.
constexpr std::uint64_t kGenericSeed = 20200507;

const std::map<std::string, std::function<EncoderPtr()>, std::less<>>& encoder_table() {
  static const std::map<std::string, std::function<EncoderPtr()>, std::less<>> table = {
      {"slstm_f0", [] { return build_slstm_f0(); }},
      {"slstm_anbn", [] { return build_slstm_anbn().encoder; }},
      {"slstm_anbn_sigma", [] { return build_slstm_anbn_sigma().encoder; }},
      {"sqrnn_anbn_counters", [] { return build_sqrnn_anbn_counters().encoder; }},
      {"sqrnn2_anbn_sigma", [] { return build_sqrnn_two_layer_anbn_sigma().encoder; }},
      {"sqrnn_count", [] { return build_l_leq_pipeline().encoder; }},
      {"sqrnn_sigma_anbn", [] { return build_sigma_anbn_demonstrator().encoder; }},
      {"attention_equal_counts", [] { return build_attention_equal_counts(); }},
      {"stack_binary", [] { return build_stack_binary(); }},
      {"stack_geometric", [] { return build_stack_geometric(); }},
      {"srnn_generic",
       [] {
         Rng rng(derive_seed(kGenericSeed, 1, 0));
         return random_generic_srnn(rng, 3);
       }},
      {"sgru_generic",
       [] {
         Rng rng(derive_seed(kGenericSeed, 2, 0));
         return random_generic_sgru(rng, 3);
       }},
      {"sqrnn_generic",
       [] {
         Rng rng(derive_seed(kGenericSeed, 3, 0));
         return random_generic_sqrnn(rng, 2, 2);
       }},
      {"binary_wfa",
       [] {
         return std::make_shared<WfaEncoder>(std::vector<Wfa>{build_binary_value(2)},
                                             "binary_wfa");
       }},
      {"spectral_anbn", [] { return build_spectral_anbn_pipeline().encoder; }},
      {"f0_cm", [] { return std::make_shared<CmEncoder>(build_f0_cm(), "f0_cm"); }},
  };
  return table;
}

const std::map<std::string, std::function<Pipeline()>, std::less<>>& pipeline_table() {
  static const std::map<std::string, std::function<Pipeline()>, std::less<>> table = {
      {"slstm_anbn", build_slstm_anbn},
      {"slstm_anbn_sigma", build_slstm_anbn_sigma},
      {"sqrnn_anbn_counters", build_sqrnn_anbn_counters},
      {"sqrnn2_anbn_sigma", build_sqrnn_two_layer_anbn_sigma},
      {"l_leq", build_l_leq_pipeline},
      {"sigma_anbn_demo", build_sigma_anbn_demonstrator},
      {"spectral_anbn", build_spectral_anbn_pipeline},
      {"attention_equal_counts",
       [] {
         // Accepts exactly the strings with #a != #b.
         return Pipeline{build_attention_equal_counts(), LinearThresholdDecoder{{1, 0}, 0},
                         "attention_equal_counts"};
       }},
  };
  return table;
}

template <class Table>
std::vector<std::string> keys_of(const Table& t) {
  std::vector<std::string> out;
  for (const auto& [k, v] : t) out.push_back(k);
  return out;
}

}  // namespace

const std::vector<std::string>& encoder_names() {
  static const std::vector<std::string> names = keys_of(encoder_table());
  return names;
}

EncoderPtr named_encoder(std::string_view name) {
  auto it = encoder_table().find(name);
  if (it == encoder_table().end()) {
    fail("UnknownName", "no built-in encoder named '" + std::string(name) + "'");
  }
  return it->second();
}

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names = keys_of(pipeline_table());
  return names;
}

Pipeline named_pipeline(std::string_view name) {
  auto it = pipeline_table().find(name);
  if (it == pipeline_table().end()) {
    fail("UnknownName", "no built-in pipeline named '" + std::string(name) + "'");
  }
  return it->second();
}

}  // namespace rrlab
