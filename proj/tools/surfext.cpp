// Command-line front end.  Every subcommand is a thin adapter over one
// library operation; outputs are byte-stable (no timestamps) and the JSON
// schema matches io.hpp exactly.
//
// Exit codes: 0 success, 1 malformed input or arguments, 2 internal
// invariant violation, 3 oracle suite failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <typeinfo>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "surfext/surfext.hpp"

namespace {

using namespace surfext;
using Json = io::Json;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_internal = 2;
constexpr int exit_oracle = 3;

// Filesystem trouble (unreadable input, unwritable output).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format;  // empty = pick by destination
  std::string out_path;
  bool meta = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", opt.out_path, "write to this file (write-then-rename)");
  cmd->add_flag("--meta", opt.meta, "add a provenance object to JSON output");
}

std::string chosen_format(const OutputOptions& opt) {
  if (!opt.format.empty()) return opt.format;
  if (!opt.out_path.empty()) return "json";
  return isatty(fileno(stdout)) ? "table" : "json";
}

void emit(const OutputOptions& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::string tmp = opt.out_path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp + " for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), opt.out_path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + opt.out_path);
  }
}

Json finish_json(const Json& payload, const OutputOptions& opt) {
  Json j = io::versioned();
  if (opt.meta) {
    Json m;
    m["tool"] = "surfext";
    m["tool_version"] = "1.0.0";
    j["meta"] = std::move(m);
  }
  for (const auto& [key, value] : payload.items()) j[key] = value;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void no_csv(const char* cmd) {
  throw PreconditionViolated(std::string("csv output is not available for '") + cmd + "'");
}

/// Action argument: inline JSON (starts with '{'), "-" for stdin, or a path.
io::Action read_action(const std::string& arg) {
  std::string text;
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (!arg.empty() && arg.front() == '{') {
    text = arg;
  } else {
    std::ifstream f(arg);
    if (!f) throw IoError("cannot read action file '" + arg + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return io::action_from_json(Json::parse(text));
}

std::string describe_action(const io::Action& act) {
  std::ostringstream os;
  os << "order " << act.spec.order << " action, quotient genus " << act.sig.r()
     << ", cone indices (";
  for (Int i = 0; i < act.sig.s(); ++i)
    os << (i ? ", " : "") << act.sig.singular_indices[static_cast<std::size_t>(i)];
  os << ")";
  return os.str();
}

std::string class_line(const StandardFormClass& c) {
  std::ostringstream os;
  os << "(n=" << c.n << ", p=" << c.p << ", q=" << c.q << ", m=" << c.m << ", r=" << c.r
     << ", s1=" << c.s1 << ", s2=" << c.s2 << ")  genus " << c.genus;
  return os.str();
}

// ---------------------------------------------------------------------------
// atlas

int run_atlas(Int genus, std::optional<Int> max_order, bool free_only,
              const OutputOptions& opt) {
  std::vector<StandardFormClass> classes = enumerate_atlas(genus, max_order);
  if (free_only) {
    std::erase_if(classes,
                  [](const StandardFormClass& c) { return c.s1 != 0 || c.s2 != 0; });
  }
  std::string format = chosen_format(opt);
  if (format == "csv") {
    emit(opt, io::atlas_csv(classes));
  } else if (format == "json") {
    Json payload;
    payload["genus"] = genus;
    payload["max_order"] = max_order ? Json(*max_order) : Json(nullptr);
    payload["free_only"] = free_only;
    payload["count"] = classes.size();
    Json arr = Json::array();
    for (const StandardFormClass& c : classes) arr.push_back(io::class_to_json(c));
    payload["classes"] = std::move(arr);
    emit(opt, dump(finish_json(payload, opt)));
  } else {
    std::ostringstream os;
    os << classes.size() << (free_only ? " free" : "") << " class"
       << (classes.size() == 1 ? "" : "es") << " of genus " << genus;
    if (max_order) os << " with order <= " << *max_order;
    os << "\n";
    os << std::setw(6) << "n" << std::setw(5) << "p" << std::setw(5) << "q" << std::setw(5)
       << "m" << std::setw(5) << "r" << std::setw(5) << "s1" << std::setw(5) << "s2" << "\n";
    for (const StandardFormClass& c : classes)
      os << std::setw(6) << c.n << std::setw(5) << c.p << std::setw(5) << c.q << std::setw(5)
         << c.m << std::setw(5) << c.r << std::setw(5) << c.s1 << std::setw(5) << c.s2 << "\n";
    emit(opt, os.str());
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// check

int run_check(const std::string& action_arg, bool with_recipe, const OutputOptions& opt) {
  io::Action act = read_action(action_arg);
  ExtendabilityVerdict v = check_extendable(act.sig, act.spec);
  std::optional<StandardFormClass> cls;
  if (v.extendable) cls = canonical_class(act.sig, act.spec);

  std::string format = chosen_format(opt);
  if (format == "csv") no_csv("check");
  if (format == "json") {
    Json payload;
    payload["action"] = io::action_to_json(act.sig, act.spec);
    payload["covering_genus"] = quotient_genus(act.sig, act.spec.order);
    Json verdict = io::verdict_to_json(v);
    for (auto& [key, value] : verdict.items()) payload[key] = value;
    payload["class"] = cls ? io::class_to_json(*cls) : Json(nullptr);
    if (with_recipe)
      payload["recipe"] = cls ? io::recipe_to_json(embedding_recipe(*cls)) : Json(nullptr);
    emit(opt, dump(finish_json(payload, opt)));
    return exit_ok;
  }

  std::ostringstream os;
  os << describe_action(act) << ", covering genus " << quotient_genus(act.sig, act.spec.order)
     << "\n";
  for (auto [name, cond] : {std::pair<char, const ConditionResult*>{'a', &v.condition_a},
                            {'b', &v.condition_b},
                            {'c', &v.condition_c}})
    os << "condition (" << name << "): " << (cond->pass ? "pass" : "FAIL") << " -- "
       << cond->witness << "\n";
  if (v.extendable) {
    os << "extendable; class " << class_line(*cls) << "\n";
    if (with_recipe) {
      EmbeddingRecipe rec = embedding_recipe(*cls);
      os << "model rotation denominators (" << rec.rotation.first << ", "
         << rec.rotation.second << ")\n";
      for (const OrbitCount& o : rec.vertex_orbits)
        os << "  " << o.count << " vertex orbit(s) of size " << o.orbit_size << "\n";
      for (const OrbitCount& o : rec.edge_orbits)
        os << "  " << o.count << " edge orbit(s) of size " << o.orbit_size << "\n";
      if (rec.graph_beta1) os << "  spine Betti number " << *rec.graph_beta1 << "\n";
      if (rec.added_handles_per_point > 0)
        os << "  " << rec.added_handles_per_point << " handle(s) added per free point\n";
    }
  } else {
    std::string which;
    for (char c : v.failed_conditions()) {
      if (!which.empty()) which += ", ";
      which += std::string("(") + c + ")";
    }
    os << "not extendable: condition " << which
       << (v.failed_conditions().size() == 1 ? " fails" : " fail") << "\n";
  }
  emit(opt, os.str());
  return exit_ok;
}

// ---------------------------------------------------------------------------
// normalize

int run_normalize(const std::string& action_arg, const OutputOptions& opt) {
  io::Action act = read_action(action_arg);
  NormalizeResult norm = normalize(act.sig, act.spec);

  std::string format = chosen_format(opt);
  if (format == "csv") no_csv("normalize");
  if (format == "json") {
    Json payload;
    payload["action"] = io::action_to_json(act.sig, act.spec);
    payload["normal_form"] = io::action_to_json(act.sig, norm.spec);
    payload["script"] = io::script_to_json(norm.script);
    payload["script_length"] = norm.script.size();
    emit(opt, dump(finish_json(payload, opt)));
    return exit_ok;
  }

  std::ostringstream os;
  os << describe_action(act) << "\n";
  if (norm.script.empty()) {
    os << "already normal: empty script\n";
  } else {
    os << norm.script.size() << " move(s):\n";
    for (const Move& mv : norm.script) os << "  " << io::move_to_json(mv).dump() << "\n";
  }
  os << "normal form: " << io::action_to_json(act.sig, norm.spec).dump() << "\n";
  emit(opt, os.str());
  return exit_ok;
}

// ---------------------------------------------------------------------------
// conjugacy

int run_conjugacy(const std::vector<std::string>& action_args, std::optional<Int> generator_unit,
                  Int depth, const std::string& sign_rule_name, const OutputOptions& opt) {
  SignRule rule = sign_rule_name == "uniform" ? SignRule::uniform : SignRule::per_point;
  std::string format = chosen_format(opt);
  if (format == "csv") no_csv("conjugacy");

  io::Action a = read_action(action_args.front());

  if (action_args.size() == 2) {
    if (generator_unit)
      throw PreconditionViolated("--generators does not combine with a second action");
    io::Action b = read_action(action_args[1]);
    SemiDecision d = conjugate_semidecision(a.sig, a.spec, b.sig, b.spec, depth);
    const char* verdict = d == SemiDecision::yes ? "yes" : "unknown";
    if (format == "json") {
      Json payload;
      payload["mode"] = "compare";
      payload["depth"] = depth;
      payload["result"] = verdict;
      emit(opt, dump(finish_json(payload, opt)));
    } else {
      emit(opt, std::string("conjugate within depth ") + std::to_string(depth) + ": " +
                    verdict + "\n");
    }
    return exit_ok;
  }

  if (generator_unit) {
    bool conj = generators_conjugate(a.sig, a.spec, *generator_unit, rule);
    if (format == "json") {
      Json payload;
      payload["mode"] = "generator";
      payload["unit"] = *generator_unit;
      payload["sign_rule"] = sign_rule_name;
      payload["conjugate"] = conj;
      emit(opt, dump(finish_json(payload, opt)));
    } else {
      emit(opt, "generator rescaling by " + std::to_string(*generator_unit) + ": " +
                    (conj ? "conjugate" : "not conjugate") + "\n");
    }
    return exit_ok;
  }

  StandardFormClass cls = canonical_class(a.sig, a.spec);
  std::vector<Int> units = accepted_units(a.sig, a.spec, rule);
  Int count = count_generator_classes(a.sig, a.spec, rule);
  std::vector<Int> disagreements = sign_rule_disagreements(a.sig, a.spec);
  if (format == "json") {
    Json payload;
    payload["mode"] = "count";
    payload["class"] = io::class_to_json(cls);
    payload["sign_rule"] = sign_rule_name;
    payload["unit_group_order"] = euler_phi(a.spec.order);
    payload["accepted_units"] = units;
    payload["generator_classes"] = count;
    payload["sign_rule_disagreements"] = disagreements;
    emit(opt, dump(finish_json(payload, opt)));
  } else {
    std::ostringstream os;
    os << "class " << class_line(cls) << "\n";
    os << "accepted units {";
    for (std::size_t i = 0; i < units.size(); ++i) os << (i ? ", " : "") << units[i];
    os << "} of " << euler_phi(a.spec.order) << " units\n";
    os << "generator conjugacy classes: " << count << "\n";
    if (!disagreements.empty()) {
      os << "per-point and uniform sign readings disagree at units {";
      for (std::size_t i = 0; i < disagreements.size(); ++i)
        os << (i ? ", " : "") << disagreements[i];
      os << "}\n";
    }
    emit(opt, os.str());
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// lens

int run_lens(const std::vector<Int>& values, bool digraph_mode, const OutputOptions& opt) {
  std::string format = chosen_format(opt);

  if (digraph_mode) {
    if (values.size() != 1)
      throw PreconditionViolated("--digraph takes exactly one value: p");
    DominationDigraph dg = domination_digraph(values[0]);
    for (const auto& e : dg.edges)
      if (!verify_certificate(dg.p, e.q1, e.q2, e.cert))
        throw Error("digraph produced a certificate that fails verification");
    if (format == "csv") {
      emit(opt, io::lens_csv(dg));
    } else if (format == "json") {
      emit(opt, dump(finish_json(io::digraph_to_json(dg), opt)));
    } else {
      std::ostringstream os;
      os << "lens spaces L(" << dg.p << ", q), " << dg.classes.size() << " classes: {";
      for (std::size_t i = 0; i < dg.classes.size(); ++i)
        os << (i ? ", " : "") << dg.classes[i];
      os << "}\n" << dg.edges.size() << " domination edges\n";
      for (auto [a, b] : dg.mutual_pairs)
        os << "mutual non-equivalent pair: L(" << dg.p << ", " << a << ") and L(" << dg.p
           << ", " << b << ")\n";
      if (dg.mutual_pairs.empty()) os << "no mutual non-equivalent pairs\n";
      emit(opt, os.str());
    }
    return exit_ok;
  }

  if (values.size() == 2) {
    Int p = values[0], q = values[1];
    Int canon = lens_canonical(p, q);
    if (format == "csv") no_csv("lens canonical form");
    if (format == "json") {
      Json payload;
      payload["p"] = p;
      payload["q"] = normalize_residue(p, q);
      payload["canonical"] = canon;
      emit(opt, dump(finish_json(payload, opt)));
    } else {
      std::ostringstream os;
      os << "L(" << p << ", " << q << ") ~ L(" << p << ", " << canon << ")\n";
      emit(opt, os.str());
    }
    return exit_ok;
  }

  if (values.size() != 3)
    throw PreconditionViolated("lens takes p q1 q2 (domination), p q (canonical form), "
                               "or --digraph p");
  Int p = values[0], q1 = values[1], q2 = values[2];
  std::optional<DominationCertificate> cert = dominates_qr(p, q1, q2);
  if (cert && !verify_certificate(p, q1, q2, *cert))
    throw Error("constructed certificate fails verification");
  if (format == "csv") {
    std::string out = io::lens_csv_header();
    if (cert) out += io::lens_csv_row(p, q1, q2, *cert);
    emit(opt, out);
    return exit_ok;
  }
  if (format == "json") {
    Json payload;
    payload["p"] = p;
    payload["q1"] = normalize_residue(p, q1);
    payload["q2"] = normalize_residue(p, q2);
    payload["dominates"] = cert.has_value();
    payload["certificate"] = cert ? io::certificate_to_json(*cert) : Json(nullptr);
    payload["verified"] = cert.has_value();
    emit(opt, dump(finish_json(payload, opt)));
    return exit_ok;
  }
  std::ostringstream os;
  if (cert) {
    os << "L(" << p << ", " << q1 << ") admits a degree-one map onto L(" << p << ", " << q2
       << ")\n";
    os << "r = " << cert->r << ", a1 = " << cert->a1 << ", b1 = " << cert->b1
       << ", a2 = " << cert->a2 << ", b2 = " << cert->b2 << ", m = " << cert->m
       << ", n = " << cert->n << "\n";
    os << "checks: a1*b2 + a2*b1 = " << p << ", a1*a2 = " << cert->a1 * cert->a2 << " = "
       << normalize_residue(p, cert->a1 * cert->a2) << " (mod " << p << ")\n";
  } else {
    os << q1 << "*" << q2 << " is not a quadratic residue mod " << p
       << "; the construction yields no map\n";
  }
  emit(opt, os.str());
  return exit_ok;
}

// ---------------------------------------------------------------------------
// oracle

int run_oracle(std::vector<std::string> suites, const std::string& caps_name,
               const OutputOptions& opt) {
  if (suites.empty())
    suites = {"matching", "align", "normalize", "atlas", "validate", "moves"};
  bool smoke = caps_name == "smoke";

  std::vector<oracle::SuiteReport> reports;
  for (const std::string& name : suites) {
    if (name == "matching") {
      reports.push_back(smoke ? oracle::run_matching_suite(8, 4) : oracle::run_matching_suite());
    } else if (name == "align") {
      reports.push_back(smoke ? oracle::run_align_suite(60) : oracle::run_align_suite());
    } else if (name == "normalize") {
      reports.push_back(smoke ? oracle::run_normalize_suite(6, 1, 3)
                              : oracle::run_normalize_suite());
    } else if (name == "atlas") {
      reports.push_back(smoke ? oracle::run_atlas_suite(4) : oracle::run_atlas_suite());
    } else if (name == "validate") {
      reports.push_back(smoke ? oracle::run_validate_suite(12, 4, 20)
                              : oracle::run_validate_suite());
    } else {
      reports.push_back(smoke ? oracle::run_move_invariance_suite(6, 1, 3)
                              : oracle::run_move_invariance_suite());
    }
  }

  bool all_passed = true;
  for (const auto& rep : reports) all_passed = all_passed && rep.passed();

  std::string format = chosen_format(opt);
  if (format == "csv") no_csv("oracle");
  if (format == "json") {
    Json payload;
    Json arr = Json::array();
    for (const auto& rep : reports) {
      Json jr;
      jr["name"] = rep.name;
      jr["checks"] = rep.checks;
      jr["failure_count"] = rep.failure_count;
      jr["failure_samples"] = rep.failures;
      jr["passed"] = rep.passed();
      arr.push_back(std::move(jr));
    }
    payload["suites"] = std::move(arr);
    payload["all_passed"] = all_passed;
    emit(opt, dump(finish_json(payload, opt)));
  } else {
    std::ostringstream os;
    for (const auto& rep : reports) {
      os << "suite " << rep.name << ": " << rep.checks << " checks, "
         << (rep.passed() ? "PASS" : "FAIL (" + std::to_string(rep.failure_count) + ")") << "\n";
      for (const std::string& f : rep.failures) os << "  " << f << "\n";
    }
    emit(opt, os.str());
  }
  return all_passed ? exit_ok : exit_oracle;
}

int classify_error(const Error& e) {
  // NormalizationImpossible and CriterionNotSubgroup signal broken internal
  // guarantees, as does a bare Error (used only for self-check failures).
  if (dynamic_cast<const NormalizationImpossible*>(&e)) return exit_internal;
  if (dynamic_cast<const CriterionNotSubgroup*>(&e)) return exit_internal;
  if (typeid(e) == typeid(Error)) return exit_internal;
  return exit_input;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decide, enumerate, normalize and certify cyclic surface actions "
               "that extend over the 3-sphere"};
  app.require_subcommand(1);

  int rc = exit_ok;

  // atlas
  Int atlas_genus = 0;
  Int atlas_max_order = -1;
  bool atlas_free_only = false;
  OutputOptions atlas_out;
  CLI::App* atlas = app.add_subcommand("atlas", "list all classes of a given surface genus");
  atlas->add_option("--genus", atlas_genus, "surface genus (>= 1)")->required();
  atlas->add_option("--max-order", atlas_max_order, "cap on the group order");
  atlas->add_flag("--free-only", atlas_free_only, "only classes of free actions");
  add_output_flags(atlas, atlas_out);
  atlas->callback([&]() {
    rc = run_atlas(atlas_genus,
                   atlas_max_order >= 0 ? std::optional<Int>(atlas_max_order) : std::nullopt,
                   atlas_free_only, atlas_out);
  });

  // check
  std::string check_action;
  bool check_recipe = false;
  OutputOptions check_out;
  CLI::App* check = app.add_subcommand("check", "decide extendability of one action");
  check->add_option("action", check_action, "action JSON (inline, path, or - for stdin)")
      ->required();
  check->add_flag("--recipe", check_recipe, "include the model embedding data");
  add_output_flags(check, check_out);
  check->callback([&]() { rc = run_check(check_action, check_recipe, check_out); });

  // normalize
  std::string normalize_action;
  OutputOptions normalize_out;
  CLI::App* norm = app.add_subcommand("normalize", "rewrite an action into normal form");
  norm->add_option("action", normalize_action, "action JSON (inline, path, or - for stdin)")
      ->required();
  add_output_flags(norm, normalize_out);
  norm->callback([&]() { rc = run_normalize(normalize_action, normalize_out); });

  // conjugacy
  std::vector<std::string> conj_actions;
  Int conj_unit = -1;
  Int conj_depth = 10;
  std::string conj_rule = "per-point";
  OutputOptions conj_out;
  CLI::App* conj = app.add_subcommand(
      "conjugacy", "generator classes of one action, or compare two actions");
  conj->add_option("actions", conj_actions, "one or two action JSON arguments")
      ->expected(1, 2)
      ->required();
  conj->add_option("--generators", conj_unit, "test one generator rescaling unit");
  conj->add_option("--depth", conj_depth, "search depth for comparing two actions");
  conj->add_option("--sign-rule", conj_rule, "criterion sign reading")
      ->check(CLI::IsMember({"per-point", "uniform"}));
  add_output_flags(conj, conj_out);
  conj->callback([&]() {
    rc = run_conjugacy(conj_actions,
                       conj_unit >= 0 ? std::optional<Int>(conj_unit) : std::nullopt,
                       conj_depth, conj_rule, conj_out);
  });

  // lens
  std::vector<Int> lens_values;
  bool lens_digraph = false;
  OutputOptions lens_out;
  CLI::App* lens = app.add_subcommand(
      "lens", "lens-space canonical forms and degree-one domination certificates");
  lens->add_option("values", lens_values, "p q1 q2 (domination) or p q (canonical form)")
      ->expected(1, 3)
      ->required();
  lens->add_flag("--digraph", lens_digraph, "full domination digraph on p");
  add_output_flags(lens, lens_out);
  lens->callback([&]() { rc = run_lens(lens_values, lens_digraph, lens_out); });

  // oracle
  std::vector<std::string> oracle_suites;
  std::string oracle_caps = "full";
  OutputOptions oracle_out;
  CLI::App* orc = app.add_subcommand("oracle", "run the brute-force agreement suites");
  orc->add_option("--suite", oracle_suites, "suites to run (default: all)")
      ->check(CLI::IsMember({"matching", "align", "normalize", "atlas", "validate", "moves"}));
  orc->add_option("--caps", oracle_caps, "workload preset")
      ->check(CLI::IsMember({"full", "smoke"}));
  add_output_flags(orc, oracle_out);
  orc->callback([&]() { rc = run_oracle(oracle_suites, oracle_caps, oracle_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return exit_input;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_error(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return rc;
}
