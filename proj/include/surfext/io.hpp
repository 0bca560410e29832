#pragma once

// Stable machine formats: JSON (de)serialization for actions, moves,
// scripts, verdicts, classes, recipes and lens certificates, plus the CSV
// table emitters.  Field names and CSV columns are frozen; changing any of
// them is a format break and must bump format_version.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cyclic.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "lens.hpp"
#include "moves.hpp"
#include "orbifold.hpp"

namespace surfext {
namespace io {

using Json = nlohmann::ordered_json;

constexpr int format_version = 1;

/// Fresh top-level object carrying the format tag (always the first key).
inline Json versioned() {
  Json j;
  j["format_version"] = format_version;
  return j;
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw InvalidSpec(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw InvalidSpec(std::string(what) + " is missing the field \"" + key + "\"");
  return *it;
}

inline Int get_int(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer())
    throw InvalidSpec(std::string(what) + " field \"" + key + "\" must be an integer");
  return v.get<Int>();
}

inline std::vector<Int> get_int_array(const Json& j, const char* key, const char* what,
                                      bool required) {
  if (!j.is_object())
    throw InvalidSpec(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) {
    if (required)
      throw InvalidSpec(std::string(what) + " is missing the field \"" + key + "\"");
    return {};
  }
  if (!it->is_array())
    throw InvalidSpec(std::string(what) + " field \"" + key + "\" must be an array");
  std::vector<Int> out;
  for (const Json& v : *it) {
    if (!v.is_number_integer())
      throw InvalidSpec(std::string(what) + " field \"" + key + "\" must hold integers");
    out.push_back(v.get<Int>());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Actions.

struct Action {
  OrbifoldSignature sig;
  EpimorphismSpec spec;
};

inline Json action_to_json(const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
  Json j;
  j["order"] = spec.order;
  j["quotient_genus"] = sig.underlying_genus;
  Json singular = Json::array();
  for (std::size_t k = 0; k < sig.singular_indices.size(); ++k) {
    Json pt;
    pt["index"] = sig.singular_indices[k];
    pt["image"] = k < spec.gamma.size() ? spec.gamma[k] : 0;
    singular.push_back(std::move(pt));
  }
  j["singular"] = std::move(singular);
  j["alpha"] = spec.alpha;
  j["beta"] = spec.beta;
  return j;
}

/// Parse an action.  Negative residues are accepted and reduced into [0, n).
/// alpha/beta may be omitted when the quotient genus is 0.
inline Action action_from_json(const Json& j) {
  Action act;
  act.spec.order = detail::get_int(j, "order", "action");
  if (act.spec.order < 2)
    throw InvalidSpec("action order must be at least 2, got " + std::to_string(act.spec.order));
  act.sig.underlying_genus = detail::get_int(j, "quotient_genus", "action");
  const Json& singular = detail::field(j, "singular", "action");
  if (!singular.is_array())
    throw InvalidSpec("action field \"singular\" must be an array");
  for (const Json& pt : singular) {
    act.sig.singular_indices.push_back(detail::get_int(pt, "index", "singular point"));
    act.spec.gamma.push_back(
        normalize_residue(act.spec.order, detail::get_int(pt, "image", "singular point")));
  }
  bool need_handles = act.sig.underlying_genus > 0;
  act.spec.alpha = detail::get_int_array(j, "alpha", "action", need_handles);
  act.spec.beta = detail::get_int_array(j, "beta", "action", need_handles);
  for (auto* vec : {&act.spec.alpha, &act.spec.beta})
    for (Int& c : *vec) c = normalize_residue(act.spec.order, c);
  check_signature(act.sig);
  if (act.spec.alpha.size() != static_cast<std::size_t>(act.sig.r()) ||
      act.spec.beta.size() != static_cast<std::size_t>(act.sig.r()))
    throw ShapeMismatch("alpha/beta must each hold " + std::to_string(act.sig.r()) +
                        " entries for quotient genus " + std::to_string(act.sig.r()));
  return act;
}

// ---------------------------------------------------------------------------
// Moves and scripts.

inline Json move_to_json(const Move& mv) {
  Json j;
  j["kind"] = move_kind(mv);
  Json args;
  struct {
    Json& args;
    void operator()(const SlidePointAlongAlpha& m) {
      args["point"] = m.point; args["handle"] = m.handle; args["sign"] = m.sign;
    }
    void operator()(const SlidePointAlongBeta& m) {
      args["point"] = m.point; args["handle"] = m.handle; args["sign"] = m.sign;
    }
    void operator()(const TwistAlpha& m) { args["handle"] = m.handle; args["sign"] = m.sign; }
    void operator()(const TwistBeta& m) { args["handle"] = m.handle; args["sign"] = m.sign; }
    void operator()(const HandleSlide& m) {
      args["moving"] = m.moving; args["along"] = m.along; args["sign"] = m.sign;
    }
    void operator()(const SwapPoints& m) { args["first"] = m.first; args["second"] = m.second; }
  } fill{args};
  std::visit(fill, mv);
  j["args"] = std::move(args);
  return j;
}

inline Move move_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InvalidMove("a move needs a string field \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  const Json& args = j.contains("args") ? j.at("args") : Json::object();
  auto geti = [&](const char* key) {
    if (!args.is_object() || !args.contains(key) || !args.at(key).is_number_integer())
      throw InvalidMove("move \"" + kind + "\" needs an integer argument \"" + key + "\"");
    return args.at(key).get<Int>();
  };
  auto sign = [&]() {
    Int s = geti("sign");
    if (s != 1 && s != -1) throw InvalidMove("move sign must be 1 or -1");
    return static_cast<int>(s);
  };
  if (kind == "slide_point_alpha")
    return SlidePointAlongAlpha{geti("point"), geti("handle"), sign()};
  if (kind == "slide_point_beta")
    return SlidePointAlongBeta{geti("point"), geti("handle"), sign()};
  if (kind == "twist_alpha") return TwistAlpha{geti("handle"), sign()};
  if (kind == "twist_beta") return TwistBeta{geti("handle"), sign()};
  if (kind == "handle_slide") return HandleSlide{geti("moving"), geti("along"), sign()};
  if (kind == "swap_points") return SwapPoints{geti("first"), geti("second")};
  throw InvalidMove("unknown move kind \"" + kind + "\"");
}

inline Json script_to_json(const MoveScript& script) {
  Json j = Json::array();
  for (const Move& mv : script) j.push_back(move_to_json(mv));
  return j;
}

inline MoveScript script_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidMove("a move script must be a JSON array");
  MoveScript script;
  for (const Json& mv : j) script.push_back(move_from_json(mv));
  return script;
}

// ---------------------------------------------------------------------------
// Verdicts and classes.

inline Json verdict_to_json(const ExtendabilityVerdict& v) {
  Json j;
  j["extendable"] = v.extendable;
  Json conds;
  for (auto [name, cond] : {std::pair<const char*, const ConditionResult*>{"a", &v.condition_a},
                            {"b", &v.condition_b},
                            {"c", &v.condition_c}}) {
    Json c;
    c["pass"] = cond->pass;
    c["witness"] = cond->witness;
    conds[name] = std::move(c);
  }
  j["conditions"] = std::move(conds);
  if (v.pairing) {
    Json pairs = Json::array();
    for (auto [a, b] : *v.pairing) pairs.push_back(Json::array({a, b}));
    j["pairing"] = std::move(pairs);
  } else {
    j["pairing"] = nullptr;
  }
  return j;
}

inline Json class_to_json(const StandardFormClass& c) {
  Json j;
  j["n"] = c.n;
  j["p"] = c.p;
  j["q"] = c.q;
  j["m"] = c.m;
  j["r"] = c.r;
  j["s1"] = c.s1;
  j["s2"] = c.s2;
  j["genus"] = c.genus;
  return j;
}

inline StandardFormClass class_from_json(const Json& j) {
  StandardFormClass c;
  c.n = detail::get_int(j, "n", "class");
  c.p = detail::get_int(j, "p", "class");
  c.q = detail::get_int(j, "q", "class");
  c.m = detail::get_int(j, "m", "class");
  c.r = detail::get_int(j, "r", "class");
  c.s1 = detail::get_int(j, "s1", "class");
  c.s2 = detail::get_int(j, "s2", "class");
  c.genus = detail::get_int(j, "genus", "class");
  check_class(c);
  return c;
}

inline Json recipe_to_json(const EmbeddingRecipe& rec) {
  Json j;
  j["class"] = class_to_json(rec.cls);
  Json rot;
  rot["first_denominator"] = rec.rotation.first;
  rot["second_denominator"] = rec.rotation.second;
  j["rotation"] = std::move(rot);
  auto orbits = [](const std::vector<OrbitCount>& v) {
    Json arr = Json::array();
    for (const OrbitCount& o : v) {
      Json e;
      e["count"] = o.count;
      e["orbit_size"] = o.orbit_size;
      arr.push_back(std::move(e));
    }
    return arr;
  };
  j["vertex_orbits"] = orbits(rec.vertex_orbits);
  j["edge_orbits"] = orbits(rec.edge_orbits);
  j["added_handles_per_point"] = rec.added_handles_per_point;
  j["graph_beta1"] = rec.graph_beta1 ? Json(*rec.graph_beta1) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Lens certificates.

inline Json certificate_to_json(const DominationCertificate& c) {
  Json j;
  j["r"] = c.r;
  j["a1"] = c.a1;
  j["b1"] = c.b1;
  j["a2"] = c.a2;
  j["b2"] = c.b2;
  j["m"] = c.m;
  j["n"] = c.n;
  j["q1_star"] = c.q1_star;
  j["b1_prime"] = c.b1_prime;
  j["b2_prime"] = c.b2_prime;
  return j;
}

inline Json digraph_to_json(const DominationDigraph& dg) {
  Json j;
  j["p"] = dg.p;
  j["classes"] = dg.classes;
  Json edges = Json::array();
  for (const auto& e : dg.edges) {
    Json je;
    je["q1"] = e.q1;
    je["q2"] = e.q2;
    je["certificate"] = certificate_to_json(e.cert);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  Json mutual = Json::array();
  for (auto [a, b] : dg.mutual_pairs) mutual.push_back(Json::array({a, b}));
  j["mutual_pairs"] = std::move(mutual);
  return j;
}

// ---------------------------------------------------------------------------
// CSV.  Columns are frozen.

inline std::string atlas_csv(const std::vector<StandardFormClass>& classes) {
  std::string out = "genus,n,p,q,m,r,s1,s2\n";
  for (const StandardFormClass& c : classes) {
    out += std::to_string(c.genus);
    for (Int v : {c.n, c.p, c.q, c.m, c.r, c.s1, c.s2}) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

inline std::string lens_csv_header() { return "p,q1,q2,r,a1,b1,a2,b2,m,n\n"; }

inline std::string lens_csv_row(Int p, Int q1, Int q2, const DominationCertificate& c) {
  std::string out = std::to_string(p);
  for (Int v : {q1, q2, c.r, c.a1, c.b1, c.a2, c.b2, c.m, c.n}) out += "," + std::to_string(v);
  out += "\n";
  return out;
}

inline std::string lens_csv(const DominationDigraph& dg) {
  std::string out = lens_csv_header();
  for (const auto& e : dg.edges) out += lens_csv_row(dg.p, e.q1, e.q2, e.cert);
  return out;
}

}  // namespace io
}  // namespace surfext
