#include "rrlab/constructions.hpp"
#include "rrlab/error.hpp"
#include "rrlab/json_io.hpp"
#include "rrlab/saturated.hpp"

namespace rrlab {

using nlohmann::json;

namespace {

json mat_out(const RatMatrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", matrix_to_json(m)}};
}

RatMatrix mat_in(const json& j) {
  return matrix_from_json(require(j, "data"), require(j, "rows").get<std::size_t>(),
                          require(j, "cols").get<std::size_t>());
}

json affine_out(const Affine& a) {
  return json{{"w", mat_out(a.w)}, {"u", mat_out(a.u)}, {"b", vec_to_json(a.b)}};
}

Affine affine_in(const json& j) {
  return {mat_in(require(j, "w")), mat_in(require(j, "u")), vec_from_json(require(j, "b"))};
}

json conv_out(const Conv& c) {
  json taps = json::array();
  for (const auto& t : c.taps) taps.push_back(mat_out(t));
  return json{{"taps", std::move(taps)}, {"bias", vec_to_json(c.bias)}};
}

Conv conv_in(const json& j) {
  Conv c;
  for (const auto& t : require(j, "taps")) c.taps.push_back(mat_in(t));
  c.bias = vec_from_json(require(j, "bias"));
  return c;
}

json embedding_out(const Embedding& e) {
  json v = json::array();
  for (const auto& row : e.vectors()) v.push_back(vec_to_json(row));
  return v;
}

Embedding embedding_in(const json& j) {
  Alphabet alphabet = alphabet_from_json(require(j, "alphabet"));
  if (!j.contains("embedding")) return Embedding::one_hot(alphabet);
  std::vector<RatVec> vectors;
  for (const auto& row : j.at("embedding")) vectors.push_back(vec_from_json(row));
  return Embedding(std::move(alphabet), std::move(vectors));
}

json header(const char* type, const Encoder& net, const Embedding& e) {
  return json{{"type", type},
              {"name", net.name()},
              {"alphabet", alphabet_to_json(e.alphabet())},
              {"embedding", embedding_out(e)}};
}

}  // namespace

json net_to_json(const Encoder& net) {
  if (const auto* n = dynamic_cast<const SRnn*>(&net)) {
    json j = header("srnn", net, n->embedding());
    j["h"] = affine_out(n->layer());
    return j;
  }
  if (const auto* n = dynamic_cast<const SGru*>(&net)) {
    json j = header("sgru", net, n->embedding());
    j["z"] = affine_out(n->z());
    j["r"] = affine_out(n->r());
    j["u"] = affine_out(n->u());
    return j;
  }
  if (const auto* n = dynamic_cast<const SLstm*>(&net)) {
    json j = header("slstm", net, n->embedding());
    j["f"] = affine_out(n->f());
    j["i"] = affine_out(n->i());
    j["o"] = affine_out(n->o());
    j["c"] = affine_out(n->c());
    return j;
  }
  if (const auto* n = dynamic_cast<const SQrnn*>(&net)) {
    json j = header("sqrnn", net, n->embedding());
    json layers = json::array();
    for (const auto& l : n->layers()) {
      layers.push_back(json{{"input_dim", l.input_dim},
                            {"window", l.window},
                            {"z", conv_out(l.z)},
                            {"f", conv_out(l.f)},
                            {"i", conv_out(l.i)},
                            {"o", conv_out(l.o)}});
    }
    j["layers"] = std::move(layers);
    return j;
  }
  if (const auto* n = dynamic_cast<const SAttention*>(&net)) {
    json j = header("attention", net, n->embedding());
    j["wq"] = mat_out(n->wq());
    j["wk"] = mat_out(n->wk());
    j["wv"] = mat_out(n->wv());
    j["wh"] = mat_out(n->wh());
    j["wc"] = mat_out(n->wc());
    return j;
  }
  if (dynamic_cast<const StackRnn*>(&net) != nullptr) {
    if (net.name() == "stack_binary") return json{{"type", "stack"}, {"controller", "binary"}};
    if (net.name() == "stack_geometric") {
      return json{{"type", "stack"}, {"controller", "geometric"}};
    }
    fail("FormatError", "only the built-in stack controllers can be serialized");
  }
  fail("FormatError", "encoder '" + net.name() + "' has no net JSON form");
}

EncoderPtr net_from_json(const json& j) {
  const auto type = require(j, "type").get<std::string>();
  if (type == "stack") {
    const auto ctl = require(j, "controller").get<std::string>();
    if (ctl == "binary") return build_stack_binary();
    if (ctl == "geometric") return build_stack_geometric();
    fail("FormatError", "unknown stack controller '" + ctl + "'");
  }
  const std::string name = j.value("name", type);
  Embedding emb = embedding_in(j);
  if (type == "srnn") return std::make_shared<SRnn>(std::move(emb), affine_in(require(j, "h")), name);
  if (type == "sgru") {
    return std::make_shared<SGru>(std::move(emb), affine_in(require(j, "z")),
                                  affine_in(require(j, "r")), affine_in(require(j, "u")), name);
  }
  if (type == "slstm") {
    return std::make_shared<SLstm>(std::move(emb), affine_in(require(j, "f")),
                                   affine_in(require(j, "i")), affine_in(require(j, "o")),
                                   affine_in(require(j, "c")), name);
  }
  if (type == "sqrnn") {
    std::vector<QrnnLayer> layers;
    for (const auto& l : require(j, "layers")) {
      QrnnLayer q;
      q.input_dim = require(l, "input_dim").get<std::size_t>();
      q.window = require(l, "window").get<std::size_t>();
      q.z = conv_in(require(l, "z"));
      q.f = conv_in(require(l, "f"));
      q.i = conv_in(require(l, "i"));
      q.o = conv_in(require(l, "o"));
      layers.push_back(std::move(q));
    }
    return std::make_shared<SQrnn>(std::move(emb), std::move(layers), name);
  }
  if (type == "attention") {
    return std::make_shared<SAttention>(std::move(emb), mat_in(require(j, "wq")),
                                        mat_in(require(j, "wk")), mat_in(require(j, "wv")),
                                        mat_in(require(j, "wh")), mat_in(require(j, "wc")), name);
  }
  fail("FormatError", "unknown net type '" + type + "'");
}

}  // namespace rrlab
