// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "reference.hpp"
#include "rrlab/constructions.hpp"
#include "rrlab/counter_machine.hpp"
#include "rrlab/hankel.hpp"
#include "rrlab/profiler.hpp"
#include "rrlab/recognition.hpp"
#include "rrlab/strings.hpp"
#include "rrlab/wfa.hpp"

using namespace rrlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail.str("");
      detail << why;
    }
  }
};

long elapsed_ms(Clock::time_point start) {
  return static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

std::string key(const RatVec& v) {
  std::string s;
  for (const auto& r : v) s += r.get_str() + ",";
  return s;
}

const Alphabet kAb{'a', 'b'};

void binary_value(Outcome& o) {
  const auto t0 = Clock::now();
  const Wfa a = build_binary_value(2);
  o.require(eval(a, "101") == 5, "eval(\"101\") != 5");
  std::size_t checked = 0;
  for (const auto& x : strings_up_to(a.alphabet(), 12)) {
    if (eval(a, x) != Rat(ref::positional_value(x, 2))) {
      o.require(false, "wrong value on '" + x + "'");
      break;
    }
    ++checked;
  }
  const long ms = elapsed_ms(t0);
  o.require(ms < 1000, "took " + std::to_string(ms) + " ms");
  if (o.ok) o.detail << checked << " strings exact, " << ms << " ms";
}

void anbn_rank(Outcome& o) {
  const auto t0 = Clock::now();
  const auto p = strings_up_to(kAb, 2);
  const std::size_t r = rank(build_block(anbn_oracle(), p, p).entries);
  o.require(r == 7, "rank " + std::to_string(r));
  const Wfa a = spectral_reconstruct(anbn_oracle(), p, p);
  o.require(a.state_count() == 7, "reconstruction has " + std::to_string(a.state_count()) +
                                      " states");
  for (const auto& x : strings_up_to(kAb, 6)) {
    if (eval(a, x) != f_anbn(x)) {
      o.require(false, "reconstruction differs on '" + x + "'");
      break;
    }
  }
  const long ms = elapsed_ms(t0);
  o.require(ms < 5000, "took " + std::to_string(ms) + " ms");
  if (o.ok) o.detail << "rank 7, 7-state WFA exact on |x| <= 6, " << ms << " ms";
}

void spectral_pipeline(Outcome& o) {
  const Pipeline p = build_spectral_anbn_pipeline();
  const auto* d = std::get_if<LinearThresholdDecoder>(&p.decoder);
  o.require(d != nullptr && d->w == RatVec{1} && d->b == 0, "decoder is not the identity D1");
  const auto m = equivalence_sweep(
      p, [](std::string_view x) { return ref::in_language(Language::Anbn, x); }, 12);
  o.require(m.empty(), std::to_string(m.size()) + " mismatches");
  if (o.ok) o.detail << "0 mismatches on |x| <= 12";
}

void rank_witness(Outcome& o) {
  std::size_t prev = 0;
  std::ostringstream counts;
  for (std::size_t n = 1; n <= 12; ++n) {
    const std::size_t r = unbounded_rank_witness(f0_oracle(), n);
    counts << (n > 1 ? " " : "") << n << ":" << r;
    o.require(r > prev, "no growth at n=" + std::to_string(n));
    prev = r;
  }
  if (o.ok) {
    o.detail << "n:rank " << counts.str() << " (block is (n+1)x(n+1); rank = n)";
  }
}

bool compiled_matches(const CounterMachine& m, const std::vector<Wfa>& wfas) {
  if (wfas.size() != m.counters()) return false;
  bool ok = true;
  walk_strings(
      m.alphabet(), 8, cm_initial(m),
      [&](const CmConfiguration& c, char x) { return cm_step(m, c, x); },
      [&](std::string_view x, const CmConfiguration& c) {
        if (!ok) return;
        for (std::size_t i = 0; i < wfas.size(); ++i) {
          if (eval(wfas[i], x) != Rat(c.counters[i])) ok = false;
        }
      });
  return ok;
}

bool uses_assignment(const CounterMachine& m) {
  for (std::size_t s = 0; s < m.alphabet().size(); ++s)
    for (std::size_t q = 0; q < m.states().size(); ++q)
      for (const auto& u : m.update(s, q, 0))
        if (u.op == UpdateOp::Assign) return true;
  return false;
}

void cm_compilation(Outcome& o) {
  const auto t0 = Clock::now();
  constexpr std::uint64_t seed = 20200601;
  std::size_t with_assign = 0, total = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng(derive_seed(seed, 1, i));
    const CounterMachine m = random_sigma_cm(rng, kAb, 1 + rng.below(3), i % 2 == 0);
    with_assign += uses_assignment(m);
    ++total;
    o.require(compiled_matches(m, compile_sigma_restricted(m)),
              "sigma machine " + std::to_string(i) + " differs");
  }
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng(derive_seed(seed, 2, i));
    const std::size_t k = 1 + rng.below(3);
    const CounterMachine m = i % 2 == 0
                                 ? random_sigma_q_cm(rng, kAb, 2 + rng.below(3), k, i % 4 == 0)
                                 : random_sigma_w_cm(rng, kAb, 1 + rng.below(2), k, i % 4 == 1);
    with_assign += uses_assignment(m);
    ++total;
    o.require(compiled_matches(m, compile_sigma_q_restricted(m)),
              "machine " + std::to_string(i) + " differs");
  }
  const long ms = elapsed_ms(t0);
  o.require(with_assign > 0, "no machine used an assignment update");
  o.require(ms < 60000, "took " + std::to_string(ms) + " ms");
  if (o.ok) {
    o.detail << total << " machines (" << with_assign << " with :=) exact on |x| <= 8, " << ms
             << " ms";
  }
}

void slstm_f0(Outcome& o) {
  const auto net = build_slstm_f0();
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const std::string x = std::string(i, 'a') + std::string(j, 'b');
      if (net->memory(run(*net, x))[0] != std::max(i - j, 0)) {
        o.require(false, "memory differs on a^" + std::to_string(i) + " b^" + std::to_string(j));
      }
    }
  if (o.ok) o.detail << "441 strings exact";
}

void suffix_attack_run(Outcome& o) {
  std::size_t equal = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(derive_seed(7, 0, i));
    const auto net = random_generic_sqrnn(rng, 2, 3);
    equal += suffix_attack_check(*net, 2);
  }
  o.require(equal == 100, std::to_string(equal) + "/100 exactly equal");
  if (o.ok) o.detail << "100/100 nets give identical final states";
}

void construction_sweeps(Outcome& o) {
  const std::pair<const char*, Language> cases[] = {
      {"sqrnn_anbn_counters", Language::Anbn},   {"sqrnn2_anbn_sigma", Language::AnbnSigmaEps},
      {"slstm_anbn", Language::Anbn},            {"slstm_anbn_sigma", Language::AnbnSigma},
      {"l_leq", Language::LLeq},
  };
  for (const auto& [name, lang] : cases) {
    const auto m = equivalence_sweep(
        named_pipeline(name), [lang](std::string_view x) { return ref::in_language(lang, x); },
        12);
    o.require(m.empty(), std::string(name) + ": " + std::to_string(m.size()) + " mismatches");
  }
  if (o.ok) o.detail << "5 pipelines, 0 mismatches on |x| <= 12";
}

void attention(Outcome& o) {
  const auto net = build_attention_equal_counts();
  for (const auto& x : strings_up_to(kAb, 10)) {
    const Rat out = encode(*net, x)[0];
    // 0 when the counts agree, 1 otherwise.
    if (out != (ref::diff_ab(x) != 0 ? 1 : 0)) {
      o.require(false, "output differs on '" + x + "'");
      break;
    }
  }
  const std::size_t pairs = net->pair_count();
  std::ostringstream counts;
  for (std::size_t n = 2; n <= 10; ++n) {
    std::set<std::string> seen;
    for (const auto& x : strings_of_length(kAb, n)) seen.insert(key(net->configuration(run(*net, x))));
    std::size_t bound = 1;
    for (std::size_t i = 0; i < pairs; ++i) bound *= n;
    counts << (n > 2 ? " " : "") << seen.size();
    o.require(seen.size() <= bound, "n=" + std::to_string(n) + ": " +
                                        std::to_string(seen.size()) + " > " + std::to_string(bound));
  }
  if (o.ok) {
    o.detail << "indicator exact on |x| <= 10; |KxV| = " << pairs
             << ", configs at n=2..10: " << counts.str() << " <= n^" << pairs;
  }
}

void stack_encoder(Outcome& o) {
  const auto net = build_stack_binary();
  o.require(encode(*net, "101")[0] == Rat(5, 4), "\"101\" does not encode to 5/4");
  for (std::size_t n = 1; n <= 12; ++n) {
    std::set<std::string> seen;
    for (const auto& x : strings_of_length(net->alphabet(), n)) seen.insert(key(encode(*net, x)));
    o.require(seen.size() == (std::size_t{1} << n),
              "n=" + std::to_string(n) + ": " + std::to_string(seen.size()) + " encodings");
  }
  if (o.ok) o.detail << "\"101\" -> 5/4; 2^n encodings for n <= 12";
}

void space_tiers(Outcome& o) {
  const std::pair<const char*, GrowthClass> cases[] = {
      {"srnn_generic", GrowthClass::Constant},         {"sgru_generic", GrowthClass::Constant},
      {"slstm_f0", GrowthClass::Polynomial},           {"sqrnn_anbn_counters", GrowthClass::Polynomial},
      {"binary_wfa", GrowthClass::Exponential},        {"stack_binary", GrowthClass::Exponential},
  };
  std::ostringstream summary;
  for (const auto& [name, expected] : cases) {
    const GrowthProfile p = count_configs(*named_encoder(name), 14);
    const GrowthClass got = classify_growth(p);
    summary << (summary.tellp() > 0 ? ", " : "") << name << "=" << to_string(got) << "("
            << p.counts.back() << ")";
    o.require(got == expected, std::string(name) + " classified " + to_string(got));
  }
  if (o.ok) o.detail << summary.str();
}

void closure(Outcome& o) {
  Rng rng(20200602);
  for (int trial = 0; trial < 20; ++trial) {
    const Wfa f = ref::random_wfa(rng, kAb, 2 + rng.below(2));
    const Wfa g = ref::random_wfa(rng, kAb, 2 + rng.below(2));
    const Rat w = ref::q(rng.range(-4, 4), rng.range(1, 3));
    const Rat c = ref::q(rng.range(-4, 4), rng.range(1, 3));
    const Rat b = ref::q(rng.range(-4, 4), rng.range(1, 3));
    const std::vector<Wfa> ms{f, g};
    const RatVec ws{w, c};
    const Wfa sum = wfa_add(f, g), scaled = wfa_scale(f, w), shifted = wfa_add_const(f, c),
              aff = wfa_affine(ms, ws, b);
    for (const auto& x : strings_up_to(kAb, 6)) {
      const Rat fx = eval(f, x), gx = eval(g, x);
      if (eval(sum, x) != fx + gx || eval(scaled, x) != w * fx || eval(shifted, x) != fx + c ||
          eval(aff, x) != w * fx + c * gx + b) {
        o.require(false, "trial " + std::to_string(trial) + " differs on '" + x + "'");
        return;
      }
    }
  }
  o.detail << "20 random operand pairs exact on |x| <= 6";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"binary-value WFA", binary_value},
      {"a^n b^n Hankel rank and spectral reconstruction", anbn_rank},
      {"spectral WFA with identity D1 decides a^n b^n", spectral_pipeline},
      {"rectified-count Hankel rank grows without bound", rank_witness},
      {"restricted counter machines compile to WFAs", cm_compilation},
      {"s-LSTM computes the rectified count", slstm_f0},
      {"suffix attack on generic window-2 s-QRNNs", suffix_attack_run},
      {"construction pipelines match their languages", construction_sweeps},
      {"saturated attention counts and configuration bound", attention},
      {"stack RNN binary encoder", stack_encoder},
      {"space tiers from configuration counts", space_tiers},
      {"WFA closure combinators", closure},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const Error& e) {
      o.require(false, e.kind() + ": " + e.what());
    }
    failures += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " -- " << o.detail.str() << '\n';
  }
  const int total = static_cast<int>(std::size(criteria));
  std::cout << total - failures << "/" << total << " criteria passed\n";
  return failures;
}
