#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rrlab/constructions.hpp"
#include "rrlab/counter_machine.hpp"
#include "rrlab/error.hpp"
#include "rrlab/hankel.hpp"
#include "rrlab/json_io.hpp"
#include "rrlab/languages.hpp"
#include "rrlab/profiler.hpp"
#include "rrlab/recognition.hpp"
#include "rrlab/saturated.hpp"
#include "rrlab/wfa.hpp"

namespace rrlab {

using nlohmann::json;

namespace {

struct RunConfig {
  // sources
  std::string wfa_file;
  std::string cm_file;
  std::string net;
  std::string net_file;
  std::string pipeline;
  std::string decoder_file;
  std::string fn;
  unsigned base = 0;
  // inputs
  std::vector<std::string> inputs;
  std::string language;
  std::size_t prefix_max = 2;
  std::size_t suffix_max = 2;
  std::size_t witness = 0;
  std::size_t max_len = 12;
  std::size_t window = 2;
  std::size_t trials = 100;
  std::size_t hidden = 2;
  std::uint64_t seed = 0;
  bool by_paths = false;
  std::string mode = "auto";
  // gen-data
  std::size_t len = 64;
  std::size_t train = 10000;
  std::size_t val = 1000;
  std::size_t test = 1000;
  bool paper_scale = false;
  std::string sampler = "auto";
  std::vector<std::string> splits = {"train", "val", "test"};
  std::string out_file;
  std::string out_dir;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("FormatError", "'" + path + "' is not valid JSON: " + e.what());
  }
}

Wfa load_wfa(const RunConfig& c) {
  if (!c.wfa_file.empty()) return wfa_from_json(read_json(c.wfa_file));
  if (c.base != 0) return build_binary_value(c.base);
  fail("InvalidArgument", "give --wfa FILE or --base N");
}

EncoderPtr load_encoder(const RunConfig& c) {
  if (!c.net.empty()) return named_encoder(c.net);
  if (!c.net_file.empty()) return net_from_json(read_json(c.net_file));
  if (!c.cm_file.empty()) return std::make_shared<CmEncoder>(cm_from_json(read_json(c.cm_file)));
  if (!c.wfa_file.empty() || c.base != 0) {
    return std::make_shared<WfaEncoder>(std::vector<Wfa>{load_wfa(c)});
  }
  fail("InvalidArgument", "give one of --net, --net-file, --cm, --wfa, --base");
}

SeriesOracle load_series(const RunConfig& c) {
  if (c.fn == "f0") return f0_oracle();
  if (c.fn == "anbn") return anbn_oracle();
  if (c.fn == "stack_geometric") return stack_geometric_oracle();
  if (c.fn == "equal_counts") {
    auto net = build_attention_equal_counts();
    return {net->alphabet(), [net](std::string_view x) { return encode(*net, x)[0]; }};
  }
  if (c.fn.empty()) return wfa_oracle(load_wfa(c));
  fail("InvalidArgument", "unknown function '" + c.fn + "'");
}

json rat_array(std::span<const Rat> v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

void cmd_wfa_eval(const RunConfig& c, std::ostream& out) {
  const Wfa a = load_wfa(c);
  for (const auto& x : c.inputs) {
    out << to_string(c.by_paths ? eval_by_paths(a, x) : eval(a, x)) << '\n';
  }
}

void cmd_hankel_rank(const RunConfig& c, std::ostream& out) {
  const SeriesOracle f = load_series(c);
  if (c.witness > 0) {
    json rows = json::array();
    for (std::size_t n = 1; n <= c.witness; ++n) {
      rows.push_back({{"n", n}, {"block", n + 1}, {"rank", unbounded_rank_witness(f, n)}});
    }
    out << json{{"function", c.fn.empty() ? "wfa" : c.fn}, {"witness", rows}}.dump() << '\n';
    return;
  }
  auto block = build_block(f, strings_up_to(f.alphabet, c.prefix_max),
                           strings_up_to(f.alphabet, c.suffix_max));
  out << json{{"prefixes", block.prefixes},
              {"suffixes", block.suffixes},
              {"rank", rank(block.entries)}}
             .dump()
      << '\n';
}

void cmd_spectral(const RunConfig& c, std::ostream& out) {
  const SeriesOracle f = load_series(c);
  Wfa a = spectral_reconstruct(f, strings_up_to(f.alphabet, c.prefix_max),
                               strings_up_to(f.alphabet, c.suffix_max));
  out << wfa_to_json(a).dump() << '\n';
}

void cmd_cm_compile(const RunConfig& c, std::ostream& out) {
  if (c.cm_file.empty()) fail("InvalidArgument", "cm-compile needs --cm FILE");
  const CounterMachine m = cm_from_json(read_json(c.cm_file));
  std::vector<Wfa> wfas;
  std::string mode = c.mode;
  if (mode == "auto") mode = m.restriction() == Restriction::Sigma ? "sigma" : "sigma_q";
  if (mode == "sigma") {
    wfas = compile_sigma_restricted(m);
  } else if (mode == "sigma_q") {
    wfas = compile_sigma_q_restricted(m);
  } else {
    fail("InvalidArgument", "--mode must be auto, sigma or sigma_q");
  }
  json arr = json::array();
  for (const auto& w : wfas) arr.push_back(wfa_to_json(w));
  out << arr.dump() << '\n';
}

void cmd_simulate(const RunConfig& c, std::ostream& out) {
  const EncoderPtr enc = load_encoder(c);
  for (const auto& x : c.inputs) {
    StateVec s = enc->initial();
    out << json{{"t", 0}, {"symbol", nullptr}, {"state", rat_array(s)},
                {"readout", rat_array(enc->readout(s))}}
               .dump()
        << '\n';
    for (std::size_t t = 0; t < x.size(); ++t) {
      s = enc->step(s, x[t]);
      out << json{{"t", t + 1}, {"symbol", symbol_string(x[t])}, {"state", rat_array(s)},
                  {"readout", rat_array(enc->readout(s))}}
                 .dump()
          << '\n';
    }
  }
}

Pipeline load_pipeline(const RunConfig& c) {
  if (!c.pipeline.empty()) return named_pipeline(c.pipeline);
  if (c.decoder_file.empty()) fail("InvalidArgument", "give --pipeline NAME or --decoder FILE");
  EncoderPtr enc = load_encoder(c);
  return {enc, decoder_from_json(read_json(c.decoder_file)), enc->name()};
}

void cmd_decide(const RunConfig& c, std::ostream& out) {
  const Pipeline p = load_pipeline(c);
  for (const auto& x : c.inputs) {
    out << json{{"input", x}, {"accept", decide(p, x)}}.dump() << '\n';
  }
}

void cmd_sweep(const RunConfig& c, std::ostream& out) {
  const Pipeline p = load_pipeline(c);
  const Language l = parse_language(c.language);
  auto mismatches =
      equivalence_sweep(p, [l](std::string_view x) { return member(l, x); }, c.max_len);
  json arr = json::array();
  for (const auto& m : mismatches) {
    arr.push_back({{"input", m.input}, {"expected", m.expected}, {"actual", m.actual}});
  }
  out << json{{"pipeline", p.name},
              {"language", to_string(l)},
              {"max_len", c.max_len},
              {"mismatch_count", mismatches.size()},
              {"mismatches", arr}}
             .dump()
      << '\n';
}

void cmd_suffix_attack(const RunConfig& c, std::ostream& out) {
  std::size_t equal = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, 0, t));
    auto net = random_generic_sqrnn(rng, c.window, c.hidden);
    const SuffixAttackResult r = suffix_attack(*net, c.window);
    equal += r.equal ? 1 : 0;
    out << json{{"trial", t},
                {"equal", r.equal},
                {"w1_length", r.w1.size()},
                {"w2_length", r.w2.size()},
                {"w1_in_language", member(Language::AnbnSigma, r.w1)},
                {"w2_in_language", member(Language::AnbnSigma, r.w2)},
                {"state", rat_array(r.s1)}}
               .dump()
        << '\n';
  }
  out << json{{"summary", true},
              {"window", c.window},
              {"trials", c.trials},
              {"equal", equal},
              {"seed", c.seed}}
             .dump()
      << '\n';
}

void cmd_profile(const RunConfig& c, std::ostream& out) {
  const EncoderPtr enc = load_encoder(c);
  const GrowthProfile p = count_configs(*enc, c.max_len);
  if (p.counts.size() < 6) {
    json j = to_json(p, GrowthClass::Constant);
    j["class"] = nullptr;
    out << j.dump() << '\n';
    return;
  }
  out << to_json(p, classify_growth(p)).dump() << '\n';
}

void cmd_gen_data(const RunConfig& c, std::ostream& out) {
  const Language l = parse_language(c.language);
  std::string sampler = c.sampler;
  if (sampler == "auto") {
    sampler = (l == Language::AnbnSigma || l == Language::AnbnSigmaEps) ? "positive_biased"
                                                                         : "uniform";
  }
  if (sampler != "uniform" && sampler != "positive_biased") {
    fail("InvalidArgument", "--sampler must be auto, uniform or positive_biased");
  }
  const std::size_t scale = c.paper_scale ? 10 : 1;
  auto count_for = [&](const std::string& split) {
    if (split == "train") return c.train * scale;
    if (split == "val") return c.val * scale;
    return c.test * scale;
  };

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out_file.empty()) {
    file.open(c.out_file);
    if (!file) fail("IoError", "cannot write '" + c.out_file + "'");
    sink = &file;
  }
  if (!c.out_dir.empty()) std::filesystem::create_directories(c.out_dir);

  for (const auto& split : c.splits) {
    split_stream(split);
    const std::size_t n = count_for(split);
    auto batch = sampler == "uniform" ? sample_uniform(l, c.len, n, c.seed, split)
                                      : sample_positive_biased(l, c.len, n, c.seed, split);
    std::ofstream split_file;
    std::ostream* dst = sink;
    if (!c.out_dir.empty()) {
      const auto path = std::filesystem::path(c.out_dir) / (split + ".jsonl");
      split_file.open(path);
      if (!split_file) fail("IoError", "cannot write '" + path.string() + "'");
      dst = &split_file;
    }
    for (const auto& s : batch) *dst << to_json(s).dump() << '\n';
  }
}

void add_encoder_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--net", c.net, "built-in encoder name");
  sub->add_option("--net-file", c.net_file, "net weight JSON");
  sub->add_option("--cm", c.cm_file, "counter machine JSON");
  sub->add_option("--wfa", c.wfa_file, "WFA JSON");
  sub->add_option("--base", c.base, "use the built-in digit-value WFA in this base");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"rrlab: exact automata, counter machines and saturated networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* wfa_eval = app.add_subcommand("wfa-eval", "evaluate a WFA on strings");
  wfa_eval->add_option("--wfa", c.wfa_file, "WFA JSON");
  wfa_eval->add_option("--base", c.base, "use the built-in digit-value WFA in this base");
  wfa_eval->add_option("--input", c.inputs, "string to evaluate (repeatable)")->required();
  wfa_eval->add_flag("--by-paths", c.by_paths, "sum over all paths instead of matrices");

  auto* hankel = app.add_subcommand("hankel-rank", "rank of a Hankel sub-block");
  hankel->add_option("--fn", c.fn, "f0, anbn, stack_geometric or equal_counts");
  hankel->add_option("--wfa", c.wfa_file, "use a WFA's series instead of --fn");
  hankel->add_option("--base", c.base, "use the built-in digit-value WFA");
  hankel->add_option("--prefix-max", c.prefix_max, "prefixes are Σ^{<=n}");
  hankel->add_option("--suffix-max", c.suffix_max, "suffixes are Σ^{<=n}");
  hankel->add_option("--witness", c.witness, "report the a^i x b^j block rank for n = 1..N");

  auto* spectral = app.add_subcommand("spectral", "reconstruct a WFA from a Hankel block");
  spectral->add_option("--fn", c.fn, "f0, anbn, stack_geometric or equal_counts");
  spectral->add_option("--wfa", c.wfa_file, "use a WFA's series instead of --fn");
  spectral->add_option("--base", c.base, "use the built-in digit-value WFA");
  spectral->add_option("--prefix-max", c.prefix_max, "prefixes are Σ^{<=n}");
  spectral->add_option("--suffix-max", c.suffix_max, "suffixes are Σ^{<=n}");

  auto* cm_compile = app.add_subcommand("cm-compile", "compile a restricted CM to WFAs");
  cm_compile->add_option("--cm", c.cm_file, "counter machine JSON")->required();
  cm_compile->add_option("--mode", c.mode, "auto, sigma or sigma_q");

  auto* simulate = app.add_subcommand("simulate", "print per-step states as JSON lines");
  add_encoder_flags(simulate, c);
  simulate->add_option("--input", c.inputs, "input string (repeatable)")->required();

  auto* decide_cmd = app.add_subcommand("decide", "run an encoder-decoder pair");
  add_encoder_flags(decide_cmd, c);
  decide_cmd->add_option("--pipeline", c.pipeline, "built-in pipeline name");
  decide_cmd->add_option("--decoder", c.decoder_file, "decoder JSON");
  decide_cmd->add_option("--input", c.inputs, "input string (repeatable)")->required();

  auto* sweep = app.add_subcommand("sweep", "compare a pipeline with a language");
  add_encoder_flags(sweep, c);
  sweep->add_option("--pipeline", c.pipeline, "built-in pipeline name");
  sweep->add_option("--decoder", c.decoder_file, "decoder JSON");
  sweep->add_option("--language", c.language, "language name")->required();
  sweep->add_option("--max-len", c.max_len, "longest string checked");

  auto* suffix = app.add_subcommand("suffix-attack", "suffix attack on random s-QRNNs");
  suffix->add_option("--window", c.window, "QRNN window");
  suffix->add_option("--trials", c.trials, "number of random nets");
  suffix->add_option("--seed", c.seed, "seed");
  suffix->add_option("--hidden", c.hidden, "cells per net");

  auto* profile = app.add_subcommand("profile", "count distinct configurations");
  add_encoder_flags(profile, c);
  profile->add_option("--max-len", c.max_len, "longest string enumerated");

  auto* gen = app.add_subcommand("gen-data", "write labeled JSONL datasets");
  gen->add_option("--language", c.language, "language name")->required();
  gen->add_option("--len", c.len, "string length");
  gen->add_option("--train", c.train, "train strings");
  gen->add_option("--val", c.val, "validation strings");
  gen->add_option("--test", c.test, "test strings");
  gen->add_flag("--paper-scale", c.paper_scale, "multiply all split sizes by 10");
  gen->add_option("--sampler", c.sampler, "auto, uniform or positive_biased");
  gen->add_option("--splits", c.splits, "splits to write")->delimiter(',');
  gen->add_option("--seed", c.seed, "seed");
  gen->add_option("--out", c.out_file, "write all splits to this file");
  gen->add_option("--out-dir", c.out_dir, "write <split>.jsonl files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*wfa_eval) cmd_wfa_eval(c, out);
    else if (*hankel) cmd_hankel_rank(c, out);
    else if (*spectral) cmd_spectral(c, out);
    else if (*cm_compile) cmd_cm_compile(c, out);
    else if (*simulate) cmd_simulate(c, out);
    else if (*decide_cmd) cmd_decide(c, out);
    else if (*sweep) cmd_sweep(c, out);
    else if (*suffix) cmd_suffix_attack(c, out);
    else if (*profile) cmd_profile(c, out);
    else if (*gen) cmd_gen_data(c, out);
  } catch (const Error& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << json{{"error", "FormatError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rrlab
