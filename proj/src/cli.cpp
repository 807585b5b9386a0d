#include "wco/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "wco/error.hpp"
#include "wco/io.hpp"
#include "wco/example_report.hpp"

namespace wco::cli {
namespace {

using io::json;

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::VerifyPair, "verify-pair", "decide whether span{f, g} separates weighted composition operators"},
    {Command::ConstructPair, "construct-pair", "build the plane {h sigma, h} from a zero-free h and a schlicht sigma"},
    {Command::Decompose, "decompose", "recover (h, tau) with span{f, g} = span{h tau, h}"},
    {Command::Canonicalize, "canonicalize", "canonical representative of the Moebius class of sigma"},
    {Command::Identify, "identify", "recover an operator from its images of a separating pair"},
    {Command::Simulate, "simulate", "apply an operator to a series or to circle samples"},
    {Command::MpCheck, "mp-check", "outerness defect ladder of a disk function or a time signal"},
    {Command::ExampleSection4, "example-section4", "regression run of the compactly supported example"},
};

std::string flag_name(std::string field) {
  for (char& c : field)
    if (c == '_') c = '-';
  return "--" + field;
}

// Parsed inputs, loaded before any computation.
struct Inputs {
  std::map<std::string, json> docs;
  std::optional<TimeSignal> signal;

  const json& doc(const std::string& role) const { return docs.at(role); }
  bool has(const std::string& role) const { return docs.count(role) > 0; }
};

Inputs load_inputs(const CommandPlan& plan) {
  Inputs in;
  for (const auto& [role, path] : plan.inputs) {
    if (!std::filesystem::exists(path)) throw ParseError("--" + role + ": no such file '" + path + "'");
    if (role == "signal")
      in.signal = io::read_signal_csv_file(path);
    else
      in.docs[role] = io::read_json_file(path);
  }
  return in;
}

void require(const CommandPlan& plan, std::initializer_list<const char*> roles) {
  for (const char* r : roles)
    if (!plan.inputs.count(r))
      throw ParseError(std::string(to_string(plan.command)) + " requires --" + r);
}

Plane plane_input(const CommandPlan& plan, const Inputs& in) {
  if (in.has("plane")) return io::plane_from(in.doc("plane"), plan.cfg);
  require(plan, {"f", "g"});
  return Plane(io::series_from(in.doc("f")), io::series_from(in.doc("g")), plan.cfg);
}

SchlichtFunction sigma_input(const CommandPlan& plan, const Inputs& in) {
  if (in.has("sigma")) return SchlichtFunction(io::series_from(in.doc("sigma")), plan.cfg);
  if (plan.catalog.empty()) throw ParseError(std::string(to_string(plan.command)) + " requires --sigma or --catalog");
  return catalog_entry(plan.catalog, plan.cfg.order, plan.cfg);
}

struct Outcome {
  json doc;
  std::string summary;
  int code = kOk;
};

json with_schema(const char* schema, const json& body, std::initializer_list<std::pair<const char*, json>> extra = {}) {
  json out{{"schema", schema}};
  for (const auto& [k, v] : extra) out[k] = v;
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x + 0.0;
  return s.str();
}

std::string fmt(int x) { return std::to_string(x); }
std::string fmt(std::size_t x) { return std::to_string(x); }
std::string fmt(complex z) { return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")"; }

Outcome verify_pair(const CommandPlan& plan, const Inputs& in) {
  TaylorSeries f = in.has("plane") ? io::series_from(in.doc("plane").at("f")) : TaylorSeries::zero();
  TaylorSeries g = f;
  if (!in.has("plane")) {
    require(plan, {"f", "g"});
    f = io::series_from(in.doc("f"));
    g = io::series_from(in.doc("g"));
  } else {
    g = io::series_from(in.doc("plane").at("g"));
  }

  if (plan.verify_witness) {
    require(plan, {"witness"});
    const json& w = in.doc("witness");
    const Witness wit = io::witness_from(w.contains("verdict") ? w.at("verdict") : w, plan.cfg);
    const WitnessCheck chk = check_witness(f, g, wit, plan.witness_tol, plan.cfg);
    Outcome o;
    o.doc = json{{"schema", "wco.witness-check/1"},
                 {"valid", chk.valid},
                 {"gap_on_pair", chk.gap_on_pair},
                 {"gap_on_probe", chk.gap_on_probe},
                 {"tolerance", plan.witness_tol}};
    o.summary = std::string("witness ") + (chk.valid ? "valid" : "invalid") + ": gap on {f, g} = " +
                fmt(chk.gap_on_pair) + ", gap on {1, z} = " + fmt(chk.gap_on_probe);
    o.code = chk.valid ? kOk : kNegative;
    return o;
  }

  const double r = plan.radius.value_or(plan.cfg.r_verdict);
  const std::size_t n = plan.samples.value_or(plan.cfg.injectivity_samples);
  const SeparationVerdict v = separating_verdict(f, g, r, n, plan.cfg);
  Outcome o;
  o.doc = json{{"schema", "wco.verdict/1"}, {"verdict", io::to_json(v)}};
  o.summary = std::string("verdict: ") + (v.separating ? "separating" : "not separating") + " (" +
              to_string(v.reason) + "), r = " + fmt(r) + ", n = " + std::to_string(n);
  if (v.common_zero) o.summary += "\ncommon zero at " + fmt(*v.common_zero);
  if (v.collision) o.summary += "\ncollision mu(" + fmt(v.collision->z0) + ") = mu(" + fmt(v.collision->z1) + ")";
  if (v.witness)
    o.summary += "\nwitness: e1 = " + fmt(v.witness->e1.alpha) + " at " + fmt(v.witness->e1.z0) + ", e2 = " +
                 fmt(v.witness->e2.alpha) + " at " + fmt(v.witness->e2.z0);
  if (!v.note.empty()) o.summary += "\nnote: " + v.note;
  o.code = v.separating ? kOk : kNegative;
  return o;
}

Outcome construct_pair(const CommandPlan& plan, const Inputs& in) {
  const SchlichtFunction sigma = sigma_input(plan, in);
  const int order = sigma.s().order();
  ZeroFreeUnit h = ZeroFreeUnit::one(order);
  if (in.has("k"))
    h = ZeroFreeUnit::from_exponent(io::series_from(in.doc("k")), plan.cfg);
  else if (in.has("h"))
    h = ZeroFreeUnit::from_values(io::series_from(in.doc("h")), plan.cfg);
  const Plane p = make_pair(h, sigma, plan.cfg);
  Outcome o;
  o.doc = json{{"schema", "wco.plane/1"}, {"f", io::to_json(p.f())}, {"g", io::to_json(p.g())},
               {"h", io::to_json(h)}, {"sigma", io::to_json(sigma.s())}};
  o.summary = "plane {h sigma, h} of order " + std::to_string(p.f().order()) + ", a2(sigma) = " + fmt(sigma.a2());
  return o;
}

Outcome decompose(const CommandPlan& plan, const Inputs& in) {
  const DecompositionRecord d = decompose_plane(plane_input(plan, in), plan.cfg);
  Outcome o;
  o.doc = with_schema("wco.decomposition/1", io::to_json(d));
  o.summary = "alpha = " + fmt(d.alpha) + ", c = " + fmt(d.c) + ", a2(tau) = " + fmt(d.tau.a2()) +
              ", span residual = " + fmt(d.span_residual) + (d.swapped ? ", basis swapped" : "") +
              (d.tie ? ", canonical tie" : "");
  return o;
}

Outcome canonicalize_cmd(const CommandPlan& plan, const Inputs& in) {
  const CanonicalForm c = canonicalize(sigma_input(plan, in), plan.cfg);
  Outcome o;
  o.doc = json{{"schema", "wco.canonical/1"}, {"tau", io::to_json(c.tau.s())}, {"c", io::to_json(c.c)}, {"tie", c.tie}};
  o.summary = "c = " + fmt(c.c) + ", a2(tau) = " + fmt(c.tau.a2()) + (c.tie ? " (tie)" : "");
  return o;
}

Outcome identify_cmd(const CommandPlan& plan, const Inputs& in) {
  require(plan, {"probe"});
  const io::ProbeRecord rec = io::probe_from(in.doc("probe"), plan.cfg);
  Outcome o;
  try {
    IdentificationResult r = [&] {
      const auto* sf = std::get_if<TaylorSeries>(&rec.af);
      const auto* sg = std::get_if<TaylorSeries>(&rec.ag);
      if (sf && sg) return identify(rec.plane, *sf, *sg, plan.cfg);
      const auto* cf = std::get_if<CircleSamples>(&rec.af);
      const auto* cg = std::get_if<CircleSamples>(&rec.ag);
      const CircleSamples& ref = cf ? *cf : *cg;
      const CircleSamples a = cf ? *cf : sample_circle(*sf, ref.radius, ref.size());
      const CircleSamples b = cg ? *cg : sample_circle(*sg, ref.radius, ref.size());
      return identify(rec.plane, a, b, plan.cfg);
    }();
    o.doc = with_schema("wco.identification/1", io::to_json(r), {{"identified", true}});
    o.summary = std::string("identified ") + (r.canonical ? "(canonical probe)" : "(general probe)") +
                ", residual = " + fmt(r.residual) + ", psi(0) = " + fmt(r.op.psi()[0]) +
                ", phi(0) = " + fmt(r.op.phi()[0]);
  } catch (const Error& e) {
    if (e.name() != "NotSeparating" && e.name() != "NotAWCOImage") throw;
    o.doc = json{{"schema", "wco.identification/1"}, {"identified", false}, {"error", e.name()}, {"message", e.what()}};
    o.summary = "not identified: " + e.name() + ": " + e.what();
    o.code = kNegative;
  }
  return o;
}

Outcome simulate(const CommandPlan& plan, const Inputs& in) {
  require(plan, {"operator", "input"});
  const WCOperator b = io::operator_from(in.doc("operator"), plan.cfg);
  const io::Image k = io::image_from(in.doc("input"));
  Outcome o;
  if (const auto* s = std::get_if<TaylorSeries>(&k)) {
    o.doc = json{{"schema", "wco.simulation/1"}, {"output", io::to_json(apply(b, *s, plan.cfg))}};
    o.summary = "applied operator to a series of order " + std::to_string(s->order());
  } else {
    const auto& cs = std::get<CircleSamples>(k);
    o.doc = json{{"schema", "wco.simulation/1"}, {"output", io::to_json(simulate_channel(b, cs))}};
    o.summary = "applied operator to " + std::to_string(cs.size()) + " samples on |z| = " + fmt(cs.radius);
  }
  return o;
}

Outcome mp_check(const CommandPlan& plan, const Inputs& in) {
  const std::size_t m = plan.samples.value_or(4096);
  const double radii[] = {0.9, 0.99, 0.999};
  std::vector<double> defects;
  std::string source;
  if (in.has("series")) {
    const TaylorSeries k = io::series_from(in.doc("series"));
    for (double r : radii) defects.push_back(outerness_defect(k, r, m));
    source = "series";
  } else if (in.signal) {
    const TimeSignal x = *in.signal;
    const Evaluator fx = [&x](complex s) { return fourier_laplace(x, s); };
    const Evaluator k = [&fx](complex z) { return cayley_to_disk(fx, z); };
    for (double r : radii) defects.push_back(outerness_defect(k, r, m));
    source = "signal";
  } else {
    throw ParseError("mp-check requires --series or --signal");
  }
  const double threshold = 0.01;
  const bool ok = defects.back() < threshold;
  json ladder = json::array();
  for (std::size_t i = 0; i < defects.size(); ++i) ladder.push_back(json{{"r", radii[i]}, {"defect", defects[i]}});
  Outcome o;
  o.doc = json{{"schema", "wco.mp-check/1"}, {"source", source}, {"samples", m}, {"defects", ladder},
               {"threshold", threshold}, {"minimum_phase", ok}};
  o.summary = "defects";
  for (std::size_t i = 0; i < defects.size(); ++i) o.summary += " r=" + fmt(radii[i]) + ": " + fmt(defects[i]);
  o.summary += std::string("\n") + (ok ? "minimum phase" : "not minimum phase") + " (defect at 0.999 vs " + fmt(threshold) + ")";
  o.code = ok ? kOk : kNegative;
  return o;
}

Outcome example_report(const CommandPlan& plan, const Inputs&) {
  const ExampleReport rep = run_example_report(plan.cfg);
  json checks = json::array();
  std::ostringstream s;
  for (const auto& c : rep.checks) {
    checks.push_back(json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
                          {"pass", c.pass}, {"detail", c.detail}});
    s << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(30) << c.name << " residual " << fmt(c.residual)
      << " < " << fmt(c.tolerance) << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
  }
  Outcome o;
  o.doc = json{{"schema", "wco.example-report/1"}, {"checks", checks}, {"all_pass", rep.all_pass()}};
  o.summary = s.str();
  if (!o.summary.empty()) o.summary.pop_back();
  o.code = rep.all_pass() ? kOk : kNegative;
  return o;
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& info : kCommands)
    if (info.command == c) return info.name;
  return "?";
}

CommandPlan parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"Separating pairs for weighted composition operators", "wco"};
  app.require_subcommand(1);
  app.fallthrough();

  CommandPlan plan;
  std::string config;
  app.add_option("--config", config, "JSON file overriding numerical defaults")->check(CLI::ExistingFile);
  app.add_option("--out,-o", plan.output, "result document path (default: stdout)");

  std::map<std::string, std::string> overrides;
#define X(field)                                                                            \
  app.add_option(flag_name(#field), overrides[#field],                                      \
                 "override (default " + fmt(default_settings().field) + ")");
  WCO_SETTINGS_FIELDS(X)
#undef X

  std::optional<double> radius;
  std::optional<std::size_t> samples;
  std::map<std::string, CLI::App*> subs;
  for (const auto& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    sub->set_help_flag("--help", "print this help message and exit");
    subs[info.name] = sub;
    auto file = [&](const char* role, const char* help) {
      sub->add_option(std::string("--") + role, plan.inputs[role], help);
    };
    switch (info.command) {
      case Command::VerifyPair:
        file("f", "TaylorSeries JSON");
        file("g", "TaylorSeries JSON");
        file("plane", "Plane JSON {f, g}");
        file("witness", "verdict or witness JSON to re-validate");
        sub->add_flag("--verify-witness", plan.verify_witness, "re-validate a witness instead of deciding");
        sub->add_option("--witness-tol", plan.witness_tol, "agreement tolerance for --verify-witness");
        sub->add_option("--radius", radius, "verdict radius (default r-verdict)");
        sub->add_option("--samples", samples, "injectivity scan size (default injectivity-samples)");
        break;
      case Command::ConstructPair:
        file("h", "zero-free TaylorSeries JSON (default 1)");
        file("k", "exponent k with h = exp(z k)");
        file("sigma", "schlicht TaylorSeries JSON");
        sub->add_option("--catalog", plan.catalog, "catalog entry name instead of --sigma");
        break;
      case Command::Decompose:
        file("f", "TaylorSeries JSON");
        file("g", "TaylorSeries JSON");
        file("plane", "Plane JSON {f, g}");
        break;
      case Command::Canonicalize:
        file("sigma", "schlicht TaylorSeries JSON");
        sub->add_option("--catalog", plan.catalog, "catalog entry name instead of --sigma");
        break;
      case Command::Identify:
        file("probe", "probe record {plane, Af, Ag}");
        break;
      case Command::Simulate:
        file("operator", "WCOperator JSON {psi, phi}");
        file("input", "TaylorSeries or CircleSamples JSON");
        break;
      case Command::MpCheck:
        file("series", "TaylorSeries JSON on the disk");
        file("signal", "TimeSignal CSV t,re,im");
        sub->add_option("--samples", samples, "contour samples per radius (default 4096)");
        break;
      case Command::ExampleSection4:
        sub->add_option("--report", plan.output, "report path (same as --out)");
        break;
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    std::ostringstream text, ignored;
    app.exit(e, text, ignored);
    throw HelpRequested{text.str()};
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  for (const auto& info : kCommands)
    if (subs[info.name]->parsed()) plan.command = info.command;
  for (auto it = plan.inputs.begin(); it != plan.inputs.end();)
    it = it->second.empty() ? plan.inputs.erase(it) : std::next(it);

  plan.cfg = default_settings();
  if (!config.empty()) {
    io::json j = io::read_json_file(config);
    if (j.is_object()) j.erase("schema");
    plan.cfg = io::settings_from(j, plan.cfg);
  }
  io::json given = io::json::object();
  for (const auto& [field, text] : overrides) {
    if (text.empty()) continue;
    try {
      given[field] = io::json::parse(text);
    } catch (const io::json::exception&) {
      throw ParseError(flag_name(field) + ": '" + text + "' is not a number");
    }
  }
  plan.cfg = io::settings_from(given, plan.cfg);
  plan.radius = radius;
  plan.samples = samples;
  return plan;
}

int dispatch(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(plan);
  Outcome o;
  switch (plan.command) {
    case Command::VerifyPair: o = verify_pair(plan, in); break;
    case Command::ConstructPair: o = construct_pair(plan, in); break;
    case Command::Decompose: o = decompose(plan, in); break;
    case Command::Canonicalize: o = canonicalize_cmd(plan, in); break;
    case Command::Identify: o = identify_cmd(plan, in); break;
    case Command::Simulate: o = simulate(plan, in); break;
    case Command::MpCheck: o = mp_check(plan, in); break;
    case Command::ExampleSection4: o = example_report(plan, in); break;
  }
  o.doc["exit_code"] = o.code;
  const std::string text = o.doc.dump(2) + "\n";
  if (plan.output.empty()) {
    out << text;
    err << o.summary << '\n';
  } else {
    io::write_text_file(plan.output, text);
    out << o.summary << '\n';
  }
  return o.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_arguments(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace wco::cli
