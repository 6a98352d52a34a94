#include "kg2/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "kg2/errors.hpp"
#include "kg2/formula.hpp"
#include "kg2/frames.hpp"
#include "kg2/labelled.hpp"
#include "kg2/model_io.hpp"
#include "kg2/oracle.hpp"
#include "kg2/reductions.hpp"
#include "kg2/semantics.hpp"
#include "kg2/tableau.hpp"

namespace kg2 {

namespace {

struct Options {
  std::string formula;
  std::string formula_file;
  std::string model;
  std::string frame;
  std::string world;
  std::string format = "json";
  bool trace = false;
  std::uint64_t max_states = 10'000;
  std::size_t max_constraints = 200'000;
  double seconds = 60.0;
  int max_worlds = 2;
  int denom = 4;
  std::uint64_t max_models = OracleLimits{}.max_models;
  std::string mode;
  std::string edge;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct UsageError : Error {
  using Error::Error;
};

void add_formula(CLI::App* sub, Options& o) {
  sub->add_option("formula", o.formula, "Formula text");
  sub->add_option("--formula-file", o.formula_file, "Read the formula from a file");
}

void add_limits(CLI::App* sub, Options& o) {
  sub->add_option("--max-states", o.max_states, "Search step cap")->check(CLI::PositiveNumber);
  sub->add_option("--max-constraints", o.max_constraints, "Constraints per branch cap")->check(CLI::PositiveNumber);
  sub->add_option("--time", o.seconds, "Time budget in seconds")->check(CLI::PositiveNumber);
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Countermodel output format")->check(CLI::IsMember({"json", "dot"}));
}

Formula read_formula(const Options& o) {
  if (!o.formula.empty() && !o.formula_file.empty()) throw UsageError("give either a formula or --formula-file, not both");
  if (!o.formula_file.empty()) {
    std::ifstream in(o.formula_file);
    if (!in) throw FormatError("cannot open '" + o.formula_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }
  if (o.formula.empty()) throw UsageError("missing formula");
  return parse(o.formula);
}

TableauLimits limits(const Options& o) { return {o.max_states, o.max_constraints, o.seconds}; }

Json countermodel_json(const Model& m, const std::string& world, int side = 0) {
  Json doc = model_to_json(m);
  doc["world"] = world;
  if (side) doc["side"] = side;
  return doc;
}

// Prints the verdict document, or the DOT rendering of `model` when asked for.
void emit(std::ostream& out, const Options& o, const Json& doc, const Model* model, const std::string& root) {
  if (o.format == "dot" && model)
    out << model_to_dot(*model, root);
  else
    out << doc.dump(2) << "\n";
}

void print_trace(std::ostream& err, const Options& o, const std::vector<std::string>& trace) {
  if (!o.trace) return;
  for (const auto& line : trace) err << line << "\n";
}

int cmd_prove(const Options& o, std::ostream& out, std::ostream& err) {
  Formula f = read_formula(o);
  ProveResult r = prove_valid(f, limits(o), o.trace);
  print_trace(err, o, r.trace);
  Json doc = Json::object();
  doc["formula"] = print(f);
  doc["verdict"] = r.valid ? "Valid" : "Invalid";
  doc["states"] = Json::array({r.stats[0].states, r.stats[1].states});
  if (!r.valid) doc["countermodel"] = countermodel_json(*r.model, r.world, r.side);
  emit(out, o, doc, r.model ? &*r.model : nullptr, r.world);
  err << print(f) << ": " << (r.valid ? "Valid" : "Invalid");
  if (!r.valid) err << " (v" << r.side << " fails at " << r.world << ", " << r.model->worlds.size() << " worlds)";
  err << "\n";
  return kExitOk;
}

int cmd_sat(const Options& o, std::ostream& out, std::ostream& err) {
  Formula f = read_formula(o);
  SatResult r = check_sat(f, limits(o), o.trace);
  print_trace(err, o, r.trace);
  Json doc = Json::object();
  doc["formula"] = print(f);
  doc["verdict"] = r.sat ? "Sat" : "Unsat";
  doc["states"] = r.stats.states;
  if (r.sat) doc["model"] = countermodel_json(*r.model, r.world);
  emit(out, o, doc, r.model ? &*r.model : nullptr, r.world);
  err << print(f) << ": " << (r.sat ? "Sat" : "Unsat") << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  Formula f = read_formula(o);
  Model m = read_model_file(o.model);
  if (!m.has_world(o.world)) throw UsageError("unknown world '" + o.world + "'");
  TruthPair v = eval(m, o.world, f);
  out << to_string(v) << "\n";
  err << "v(" << print(f) << ", " << o.world << ") = " << to_string(v) << "\n";
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  Formula f = read_formula(o);
  if (o.max_worlds < 1 || o.denom < 1) throw UsageError("--max-worlds and --denominator must be positive");
  bool valid = o.mode == "valid";
  OracleResult r = valid ? oracle_valid(f, o.max_worlds, o.denom, {o.max_models})
                         : oracle_sat(f, o.max_worlds, o.denom, {o.max_models});
  Json doc = Json::object();
  doc["formula"] = print(f);
  doc["max_worlds"] = o.max_worlds;
  doc["denominator"] = o.denom;
  if (valid)
    doc["verdict"] = r.found ? "Invalid" : "ValidWithin";
  else
    doc["verdict"] = r.found ? "Sat" : "UnsatWithin";
  doc["examined"] = r.examined;
  if (r.found) doc[valid ? "countermodel" : "model"] = countermodel_json(*r.model, r.world, valid ? r.side : 0);
  emit(out, o, doc, r.model ? &*r.model : nullptr, r.world);
  err << print(f) << ": " << doc["verdict"].get<std::string>() << " (" << r.examined << (r.examined == 1 ? " model" : " models") << " examined)\n";
  return kExitOk;
}

int cmd_labelled(const Options& o, std::ostream& out, std::ostream& err) {
  Formula f = read_formula(o);
  if (o.denom < 1) throw UsageError("--denominator must be positive");
  LabelledResult r = labelled_solve(f, o.denom, limits(o));
  Json doc = Json::object();
  doc["formula"] = print(f);
  doc["denominator"] = o.denom;
  doc["verdict"] = r.sat ? "Sat" : "Unsat";
  doc["steps"] = r.steps;
  doc["max_live"] = r.max_live;
  if (r.sat) doc["model"] = countermodel_json(*r.model, r.world);
  emit(out, o, doc, r.model ? &*r.model : nullptr, r.world);
  err << print(f) << ": " << (r.sat ? "Sat" : "Unsat") << " on the grid of denominator " << o.denom << " (" << r.steps
      << " steps, at most " << r.max_live << " live labels)\n";
  return kExitOk;
}

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  Formula f = read_formula(o);
  Formula g = o.mode == "nabla"      ? nabla_transform(f)
              : o.mode == "triangle" ? triangle_transform(f)
              : o.mode == "sat2fal"  ? sat_falsif_reduce(f, ReduceMode::SatToFalsif)
                                     : sat_falsif_reduce(f, ReduceMode::FalsifToSat);
  Json doc = Json::object();
  doc["transform"] = o.mode;
  doc["input"] = print(f);
  doc["output"] = print(g);
  out << doc.dump(2) << "\n";
  err << print(g) << "\n";
  return kExitOk;
}

Json edge_json(const std::optional<Frame::Edge>& e) {
  if (!e) return nullptr;
  return Json::array({e->first, e->second});
}

int cmd_frame_check(const Options& o, std::ostream& out, std::ostream& err) {
  Frame f = read_frame_file(o.frame);
  FrameReport r = frame_report(f);
  Json doc = Json::object();
  doc["crisp_plus"] = r.crisp_plus;
  doc["crisp_minus"] = r.crisp_minus;
  doc["mono_relational"] = r.mono_relational;
  doc["finitely_branching"] = r.finitely_branching;
  Json wit = Json::object();
  if (r.crisp_plus_witness) wit["crisp_plus"] = edge_json(r.crisp_plus_witness);
  if (r.crisp_minus_witness) wit["crisp_minus"] = edge_json(r.crisp_minus_witness);
  if (r.mono_witness) wit["mono_relational"] = edge_json(r.mono_witness);
  doc["witnesses"] = wit;
  if (o.samples > 0) {
    DefinabilityReport d = definability_suite(f, o.samples, o.seed);
    Json suite = Json::object();
    suite["seed"] = d.seed;
    suite["samples"] = d.samples;
    Json rows = Json::array();
    for (std::size_t i = 0; i < d.violations_per_formula.size(); ++i) {
      Json row = Json::object();
      row["formula"] = print(defining_formulas()[i]);
      row["violations"] = d.violations_per_formula[i];
      for (const auto& v : d.first_violation)
        if (v.formula == i) row["first"] = countermodel_json(v.model, v.world);
      rows.push_back(row);
    }
    suite["formulas"] = rows;
    doc["definability"] = suite;
    err << d.to_text();
  }
  out << doc.dump(2) << "\n";
  err << "crisp R+: " << (r.crisp_plus ? "yes" : "no") << ", crisp R-: " << (r.crisp_minus ? "yes" : "no")
      << ", mono-relational: " << (r.mono_relational ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_frame_countermodel(const Options& o, std::ostream& out, std::ostream& err) {
  Frame f = read_frame_file(o.frame);
  std::optional<Frame::Edge> edge;
  if (!o.edge.empty()) {
    auto comma = o.edge.find(',');
    if (comma == std::string::npos) throw UsageError("--edge expects w,w'");
    edge = Frame::Edge{o.edge.substr(0, comma), o.edge.substr(comma + 1)};
  } else {
    FrameReport r = frame_report(f);
    edge = o.mode == "crisp+" ? r.crisp_plus_witness : o.mode == "crisp-" ? r.crisp_minus_witness : r.mono_witness;
    if (!edge) {
      if (o.mode == "mono") throw EdgeNotDiffering("the frame is mono-relational");
      throw EdgeNotFractional(std::string("R") + o.mode.back() + " is crisp");
    }
  }
  for (const auto& w : {edge->first, edge->second})
    if (!f.has_world(w)) throw UsageError("unknown world '" + w + "'");
  Countermodel c = o.mode == "mono" ? mono_countermodel(f, edge->first, edge->second)
                                    : crispness_countermodel(f, o.mode == "crisp+" ? Sign::Plus : Sign::Minus,
                                                             edge->first, edge->second);
  TruthPair v = eval(c.model, c.world, c.formula);
  Json doc = Json::object();
  doc["formula"] = print(c.formula);
  doc["edge"] = edge_json(edge);
  doc["value"] = to_string(v);
  doc["countermodel"] = countermodel_json(c.model, c.world);
  emit(out, o, doc, &c.model, c.world);
  err << "v(" << print(c.formula) << ", " << c.world << ") = " << to_string(v) << "\n";
  return kExitOk;
}

int cmd_model(const Options& o, std::ostream& out, std::ostream& err) {
  Model m = read_model_file(o.model);
  if (o.mode == "star") {
    Model s = star(m);
    emit(out, o, model_to_json(s), &s, "");
    err << "star model with " << s.worlds.size() << " worlds\n";
    return kExitOk;
  }
  Splitting s = split(m);
  Json doc = Json::object();
  doc["model"] = model_to_json(s.model);
  Json corr = Json::object();
  for (const auto& w : m.worlds) corr[w] = s.correspondence.at(w);
  doc["correspondence"] = corr;
  emit(out, o, doc, &s.model, "");
  err << "split model with " << s.model.worlds.size() << " worlds\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decision procedures for the bi-relational paraconsistent Goedel modal logic", "kg2"};
  app.require_subcommand(1);

  auto* prove = app.add_subcommand("prove", "Decide validity; print a countermodel when invalid");
  add_formula(prove, o);
  add_limits(prove, o);
  add_format(prove, o);
  prove->add_flag("--trace", o.trace, "Print rule applications to standard error");

  auto* sat = app.add_subcommand("sat", "Decide satisfiability; print a model when satisfiable");
  add_formula(sat, o);
  add_limits(sat, o);
  add_format(sat, o);
  sat->add_flag("--trace", o.trace, "Print rule applications to standard error");

  auto* ev = app.add_subcommand("eval", "Evaluate a formula at a world of a model");
  add_formula(ev, o);
  ev->add_option("--model", o.model, "Model file")->required();
  ev->add_option("--world", o.world, "World label")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search over small grid models");
  oracle->add_option("mode", o.mode, "valid or sat")->required()->check(CLI::IsMember({"valid", "sat"}));
  add_formula(oracle, o);
  oracle->add_option("--max-worlds", o.max_worlds, "Largest number of worlds");
  oracle->add_option("--denominator", o.denom, "Values are multiples of 1/D");
  oracle->add_option("--max-models", o.max_models, "Candidate models examined before giving up")
      ->check(CLI::PositiveNumber);
  add_format(oracle, o);

  auto* lab = app.add_subcommand("labelled", "Labelled-value satisfiability search on a value grid");
  add_formula(lab, o);
  lab->add_option("--denominator", o.denom, "Values are multiples of 1/D");
  add_limits(lab, o);
  add_format(lab, o);

  auto* tr = app.add_subcommand("transform", "Apply a formula translation");
  tr->add_option("mode", o.mode, "nabla, triangle, sat2fal or fal2sat")
      ->required()
      ->check(CLI::IsMember({"nabla", "triangle", "sat2fal", "fal2sat"}));
  add_formula(tr, o);

  auto* frame = app.add_subcommand("frame", "Frame properties and definability countermodels");
  frame->require_subcommand(1);
  auto* fcheck = frame->add_subcommand("check", "Report crispness and mono-relationality");
  fcheck->add_option("--frame", o.frame, "Frame file")->required();
  fcheck->add_option("--samples", o.samples, "Random valuations for the definability suite");
  fcheck->add_option("--seed", o.seed, "Seed of the definability suite");
  auto* fcm = frame->add_subcommand("countermodel", "Build a valuation refuting a defining formula");
  fcm->add_option("kind", o.mode, "crisp+, crisp- or mono")->required()->check(CLI::IsMember({"crisp+", "crisp-", "mono"}));
  fcm->add_option("--frame", o.frame, "Frame file")->required();
  fcm->add_option("--edge", o.edge, "Edge w,w' (default: first offending edge)");
  add_format(fcm, o);

  auto* model = app.add_subcommand("model", "Model transformations");
  model->add_option("mode", o.mode, "split or star")->required()->check(CLI::IsMember({"split", "star"}));
  model->add_option("--model", o.model, "Model file")->required();
  add_format(model, o);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*prove) return cmd_prove(o, out, err);
    if (*sat) return cmd_sat(o, out, err);
    if (*ev) return cmd_eval(o, out, err);
    if (*oracle) return cmd_oracle(o, out, err);
    if (*lab) return cmd_labelled(o, out, err);
    if (*tr) return cmd_transform(o, out, err);
    if (*fcheck) return cmd_frame_check(o, out, err);
    if (*fcm) return cmd_frame_countermodel(o, out, err);
    if (*model) return cmd_model(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFile;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kg2
