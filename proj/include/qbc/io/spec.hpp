#pragma once

#include <optional>
#include <string>

#include "qbc/channel/broadcast.hpp"
#include "qbc/io/json_codec.hpp"

namespace qbc::io {

// A parsed channel document: exactly one of `quantum` / `cq` is set.
struct ChannelSpec {
  std::string kind;
  std::string name;  // builtin name, if any
  std::optional<BroadcastChannel> quantum;
  std::optional<CqBroadcastChannel> cq;
  Json document;

  CqBroadcastChannel as_cq() const { return cq ? *cq : classical_input(*quantum); }

  const BroadcastChannel& as_quantum() const {
    if (!quantum) throw ValidationError("kind '" + kind + "' describes a cq channel; a quantum channel is required");
    return *quantum;
  }
};

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"pinching",     "ghz-copy",     "identity",
                                              "noiseless-bit", "constant",    "pinching-cq",
                                              "bsc-cascade"};
  return names;
}

inline ChannelSpec make_builtin(const std::string& name) {
  ChannelSpec s;
  s.kind = "builtin";
  s.name = name;
  s.document = Json{{"kind", "builtin"}, {"payload", {{"name", name}}}};
  if (name == "pinching") s.quantum = make_pinching();
  else if (name == "ghz-copy") s.quantum = make_ghz_copy();
  else if (name == "identity") s.quantum = make_identity_to_bob();
  else if (name == "noiseless-bit") s.cq = make_noiseless_bit_cq();
  else if (name == "constant") s.cq = make_constant_cq();
  else if (name == "pinching-cq") s.cq = make_pinching_cq();
  else if (name == "bsc-cascade")
    s.cq = make_classical_cascade_cq(binary_symmetric(0.1), binary_symmetric(0.2));
  else throw ValidationError("payload.name: unknown builtin '" + name + "'");
  return s;
}

namespace detail {

template <class F>
auto with_context(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const LabelNotFound& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

inline std::size_t dim_of(const Json& dims, const std::string& label) {
  const auto& d = require(dims, label, "dims");
  if (!d.is_number_integer() || d.get<long long>() < 1)
    throw ValidationError("dims." + label + ": dimension must be a positive integer");
  return d.get<std::size_t>();
}

}  // namespace detail

inline ChannelSpec parse_channel_document(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("channel document must be an object");
  const auto kind = require(doc, "kind", "document").get<std::string>();
  if (kind != "builtin" && kind != "cq" && kind != "kraus" && kind != "isometry" && kind != "dephasing")
    throw ValidationError("kind: unknown channel kind '" + kind + "'");
  const Json payload = doc.contains("payload") ? doc.at("payload") : Json::object();
  if (kind == "builtin") return make_builtin(require(payload, "name", "payload").get<std::string>());

  const auto& dims = require(doc, "dims", "document");
  ChannelSpec s;
  s.kind = kind;
  s.document = doc;
  const SystemLayout out{{kBobLabel, detail::dim_of(dims, kBobLabel)},
                         {kCharlieLabel, detail::dim_of(dims, kCharlieLabel)}};
  if (kind == "cq") {
    const auto& conds = require(payload, "conditionals", "payload");
    if (!conds.is_array() || conds.empty())
      throw ValidationError("payload.conditionals: expected a non-empty list of matrices");
    std::vector<DensityMatrix> rho;
    const auto d = out.total_dim();
    for (std::size_t x = 0; x < conds.size(); ++x) {
      const std::string where = "payload.conditionals[" + std::to_string(x) + "]";
      rho.push_back(detail::with_context(
          where, [&] { return DensityMatrix(matrix_from(conds[x], d, d, where), out); }));
    }
    s.cq = CqBroadcastChannel(std::move(rho));
    return s;
  }
  const SystemLayout in{{kInputLabel, detail::dim_of(dims, kInputLabel)}};
  if (kind == "kraus" || kind == "isometry") {
    std::vector<Matrix> ops;
    if (kind == "kraus") {
      const auto& list = require(payload, "kraus", "payload");
      if (!list.is_array() || list.empty())
        throw ValidationError("payload.kraus: expected a non-empty list of matrices");
      for (std::size_t i = 0; i < list.size(); ++i)
        ops.push_back(matrix_from(list[i], out.total_dim(), in.total_dim(),
                                  "payload.kraus[" + std::to_string(i) + "]"));
    } else {
      ops.push_back(matrix_from(require(payload, "isometry", "payload"), out.total_dim(),
                                in.total_dim(), "payload.isometry"));
    }
    s.quantum = detail::with_context("payload." + std::string(kind == "kraus" ? "kraus" : "isometry"),
                                     [&] { return BroadcastChannel(KrausChannel(ops, in, out)); });
    return s;
  }
  if (kind == "dephasing") {
    SystemLayout env{{kCharlieLabel, out.dim(kCharlieLabel)}};
    if (dims.contains(kEnvLabel)) env = env.concat(SystemLayout{{kEnvLabel, detail::dim_of(dims, kEnvLabel)}});
    const auto& list = require(payload, "env_vectors", "payload");
    if (!list.is_array() || list.size() != in.total_dim())
      throw ValidationError("payload.env_vectors: expected one vector per input basis state (" +
                            std::to_string(in.total_dim()) + ")");
    if (out.dim(kBobLabel) != in.total_dim())
      throw ValidationError("dims.B: a dephasing channel copies the input basis, so |B| must equal |A'|");
    std::vector<PureState> vecs;
    for (std::size_t x = 0; x < list.size(); ++x) {
      const std::string where = "payload.env_vectors[" + std::to_string(x) + "]";
      vecs.push_back(detail::with_context(
          where, [&] { return PureState(vector_from(list[x], env.total_dim(), where), env); }));
    }
    s.quantum = make_generalized_dephasing(DephasingSpec(std::move(vecs)));
    return s;
  }
  throw ValidationError("kind: unknown channel kind '" + kind + "'");
}

inline ChannelSpec parse_channel_spec(const std::string& text) {
  return parse_channel_document(parse_text(text, "channel spec"));
}

inline Json serialize(const CqBroadcastChannel& w) {
  Json conds = Json::array();
  for (const auto& r : w.conditionals()) conds.push_back(matrix_to(r.matrix()));
  return Json{{"kind", "cq"},
              {"dims", {{kBobLabel, w.bob_dim()}, {kCharlieLabel, w.charlie_dim()}}},
              {"payload", {{"conditionals", conds}}}};
}

inline Json serialize(const BroadcastChannel& bc) {
  Json dims{{kInputLabel, bc.input_dim()}, {kBobLabel, bc.bob_dim()}, {kCharlieLabel, bc.charlie_dim()}};
  if (const auto& spec = bc.dephasing()) {
    if (spec->env_layout().contains(kEnvLabel)) dims[kEnvLabel] = spec->e_dim();
    Json vecs = Json::array();
    for (const auto& v : spec->env_vectors) vecs.push_back(vector_to(v.amplitudes()));
    return Json{{"kind", "dephasing"}, {"dims", dims}, {"payload", {{"env_vectors", vecs}}}};
  }
  Json ops = Json::array();
  for (const auto& k : bc.channel().ops()) ops.push_back(matrix_to(k));
  return Json{{"kind", "kraus"}, {"dims", dims}, {"payload", {{"kraus", ops}}}};
}

inline Json serialize(const ChannelSpec& s) {
  if (s.kind == "builtin") return s.document;
  return s.quantum ? serialize(*s.quantum) : serialize(*s.cq);
}

}  // namespace qbc::io
