// Command-line front end: certificates, exact probabilities, bound reports and
// Monte Carlo experiments over the scenario families.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgid/error.hpp"
#include "sgid/reads.hpp"
#include "sgid/repeat_prob.hpp"
#include "sgid/shells.hpp"
#include "sgid/simulate.hpp"

namespace {

using nlohmann::json;
using namespace sgid;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file '") + path + "': " + e.what());
  }
}

/// The single-pattern commands reuse the scenario config for geometry only, so
/// the Monte Carlo fields may be omitted there.
json with_run_defaults(json doc) {
  if (doc.is_object()) {
    if (!doc.contains("trials")) doc["trials"] = 0;
    if (!doc.contains("seed")) doc["seed"] = 0;
    if (!doc.contains("mode")) doc["mode"] = "certificates";
  }
  return doc;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/** Pattern file: first line the alphabet size, then one "coords : symbol" line
 *  per element of CK ("e : 2" addresses the free-group identity).  Blank lines
 *  and lines starting with '#' are skipped. */
Pattern read_pattern_file(const Instance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pattern file '" + path + "'");
  std::string line;
  int alphabet = -1;
  std::map<Element, Symbol> cells;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (alphabet < 0) {
      try {
        alphabet = std::stoi(line);
      } catch (const std::exception&) {
        throw ConfigError(where + ": first line must be the alphabet size");
      }
      if (alphabet != inst.alphabet)
        throw ConfigError(where + ": pattern alphabet " + std::to_string(alphabet) +
                          " does not match the configured alphabet " +
                          std::to_string(inst.alphabet));
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError(where + ": expected 'coords : symbol'");
    Element e;
    int sym = -1;
    try {
      e = parse_element(inst.ctx, trim(line.substr(0, colon)));
      sym = std::stoi(trim(line.substr(colon + 1)));
    } catch (const std::exception& ex) {
      throw ConfigError(where + ": " + ex.what());
    }
    if (sym < 0 || sym >= alphabet) throw ConfigError(where + ": symbol out of range");
    if (!cells.emplace(std::move(e), static_cast<Symbol>(sym)).second)
      throw ConfigError(where + ": duplicate element");
  }
  if (alphabet < 0) throw ConfigError(path + ": empty pattern file");
  if (cells.size() != inst.CK.size())
    throw ConfigError(path + ": pattern has " + std::to_string(cells.size()) +
                      " cells but CK has " + std::to_string(inst.CK.size()));
  std::vector<Symbol> symbols;
  symbols.reserve(inst.CK.size());
  for (const Element& e : inst.CK) {
    const auto it = cells.find(e);
    if (it == cells.end())
      throw ConfigError(path + ": pattern does not cover CK (missing " +
                        format_element(inst.ctx, e) + ")");
    symbols.push_back(it->second);
  }
  return make_pattern(inst.CK, std::move(symbols), inst.alphabet);
}

json pattern_to_json(const GroupCtx& ctx, const Pattern& w) {
  json lines = json::array();
  for (std::size_t i = 0; i < w.shape.size(); ++i)
    lines.push_back(format_element(ctx, w.shape[i]) + " : " + std::to_string(w.symbols[i]));
  return lines;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << text;
}

void write_report(const json& report, const std::string& path) {
  write_text(path, report.dump(2) + "\n");
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// ---------------------------------------------------------------------------
// certify / oracle: one pattern from file.

void cmd_certify(const std::string& config_path, const std::string& pattern_path,
                 const std::string& out_path) {
  const ScenarioConfig cfg = parse_config(with_run_defaults(load_json(config_path)));
  const BuiltScenario built = build_scenario(cfg);
  const Pattern w = read_pattern_file(built.inst, pattern_path);

  const UniqueLabelingResult ul = unique_labeling_certificate(built.inst, built.fam, w);
  const NonIdCertificate nc = certify_nonidentifiable(built.inst, w);
  if (ul.certified && nc.certified)
    throw InternalConflict("both certificates fired on the given pattern — "
                           "certificate soundness is broken");

  json report{{"verdict", ul.certified   ? "certified_identifiable"
                          : nc.certified ? "certified_non_identifiable"
                                         : "unknown"},
              {"unique_labeling", {{"certified", ul.certified}}},
              {"repeated_shell", {{"certified", nc.certified}}}};
  if (!ul.certified) report["unique_labeling"]["reason"] = ul.reason;
  if (nc.certified) {
    report["repeated_shell"]["pair"] = {format_element(built.inst.ctx, nc.pair->a),
                                        format_element(built.inst.ctx, nc.pair->b)};
    report["repeated_shell"]["swap_witness"] =
        pattern_to_json(built.inst.ctx, nc.pair->swap_witness);
  }
  write_report(report, out_path);
}

void cmd_oracle(const std::string& config_path, const std::string& pattern_path,
                const std::string& out_path) {
  const ScenarioConfig cfg = parse_config(with_run_defaults(load_json(config_path)));
  const BuiltScenario built = build_scenario(cfg);
  const Pattern w = read_pattern_file(built.inst, pattern_path);

  const OracleResult res = oracle_identifiable(built.inst, w, cfg.oracle_budget);
  json report{{"identifiable", res.identifiable}};
  report["witness"] =
      res.witness ? pattern_to_json(built.inst.ctx, *res.witness) : json(nullptr);
  write_report(report, out_path);
}

// ---------------------------------------------------------------------------
// exact-repeat: closed-form repeat probabilities for one (group, A, g | gs).

ProbVector parse_standalone_p(const json& doc) {
  if (!doc.contains("p")) throw ConfigError("exact-repeat config: missing field 'p'");
  const json& p = doc["p"];
  if (p.is_string() && p.get<std::string>() == "uniform") {
    if (!doc.contains("alphabet") || !doc["alphabet"].is_number_integer())
      throw ConfigError("exact-repeat config: p = \"uniform\" needs an 'alphabet' field");
    return ProbVector::uniform(doc["alphabet"].get<int>());
  }
  if (!p.is_array() || p.empty())
    throw ConfigError("exact-repeat config: p must be \"uniform\" or an array");
  if (p[0].is_string()) {
    std::vector<Rat> w;
    for (const auto& x : p) w.push_back(parse_rational(x.get<std::string>()));
    return ProbVector::from_rationals(std::move(w));
  }
  std::vector<double> w;
  for (const auto& x : p) w.push_back(x.get<double>());
  return ProbVector::from_doubles(std::move(w));
}

void cmd_exact_repeat(const std::string& config_path, const std::string& out_path) {
  const json doc = load_json(config_path);
  if (!doc.is_object()) throw ConfigError("exact-repeat config: document must be a JSON object");
  if (!doc.contains("group") || !doc["group"].is_string())
    throw ConfigError("exact-repeat config: missing field 'group'");
  const GroupCtx ctx = parse_group_string(doc["group"].get<std::string>());
  const ProbVector p = parse_standalone_p(doc);
  if (!doc.contains("A")) throw ConfigError("exact-repeat config: missing field 'A'");

  const auto parse_elem = [&](const json& arr) {
    std::vector<std::int64_t> payload;
    for (const auto& x : arr) payload.push_back(x.get<std::int64_t>());
    return make_element(ctx, std::move(payload));
  };
  std::vector<Element> a_elems;
  for (const auto& item : doc["A"]) a_elems.push_back(parse_elem(item));
  const Shape A = Shape::of(std::move(a_elems));

  if (doc.contains("g") == doc.contains("gs"))
    throw ConfigError("exact-repeat config: give exactly one of 'g' or 'gs'");

  json report;
  try {
    if (doc.contains("g")) {
      const Element g = parse_elem(doc["g"]);
      const OrbitDecomposition od = orbit_decomposition(ctx, A, g);
      json orbit_sizes = json::array();
      for (const auto& o : od.orbits) orbit_sizes.push_back(o.size());
      report["orbit_sizes"] = orbit_sizes;
      report["value"] = exact_repeat_prob(ctx, A, g, p);
      report["value_exact"] =
          p.has_exact() ? json(rat_str(exact_repeat_prob_exact(ctx, A, g, p))) : json(nullptr);
      if (g != identity(ctx)) {
        const auto [lo, hi] = repeat_prob_bounds(ctx, A, g, p);
        report["bounds"] = {{"lower", lo}, {"upper", hi}};
      } else {
        report["bounds"] = nullptr;
      }
    } else {
      std::vector<Element> gs;
      for (const auto& item : doc["gs"]) gs.push_back(parse_elem(item));
      report["value"] = disjoint_repeat_prob(ctx, A, gs, p);
      report["value_exact"] =
          p.has_exact() ? json(rat_str(disjoint_repeat_prob_exact(ctx, A, gs, p))) : json(nullptr);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("exact-repeat config: ") + e.what());
  }
  write_report(report, out_path);
}

// ---------------------------------------------------------------------------
// bounds: finite-n condition reports and closed-form bounds for a scenario.

void cmd_bounds(const std::string& config_path, std::optional<double> eps_flag,
                const std::string& out_path) {
  const json doc = with_run_defaults(load_json(config_path));
  ScenarioConfig cfg = parse_config(doc);
  if (eps_flag) {
    if (!(*eps_flag > 0.0)) throw ConfigError("--eps must be > 0");
    cfg.eps = *eps_flag;
  }
  const BuiltScenario built = build_scenario(cfg);
  const Instance& inst = built.inst;

  const IConditionReport ic = check_I_conditions(inst, built.fam, cfg.p, cfg.eps);
  const double id_lb = identifiability_lower_bound(inst, built.fam, cfg.p);

  Shape B = inst.CK;
  if (doc.contains("B")) {
    std::vector<Element> elems;
    for (const auto& item : doc["B"]) {
      std::vector<std::int64_t> payload;
      for (const auto& x : item) payload.push_back(x.get<std::int64_t>());
      elems.push_back(make_element(inst.ctx, std::move(payload)));
    }
    B = Shape::of(std::move(elems));
  }
  const NConditionReport nc = check_N_conditions(inst, B, cfg.p, cfg.eps);
  const Shape D0 = dsc_greedy(inst, B);

  // rs_lower_bound needs every represented shell type twice; drop the
  // singleton-type members of the greedy set.
  std::map<Shape, std::vector<Element>> by_type;
  for (const Element& h : D0) by_type[shell_info(inst, h).shell_type].push_back(h);
  std::vector<Element> kept;
  for (const auto& [type, members] : by_type)
    if (members.size() >= 2) kept.insert(kept.end(), members.begin(), members.end());
  json rs = nullptr;
  std::size_t d_size = kept.size();
  if (!kept.empty()) {
    const RsLowerBound r = rs_lower_bound(inst, Shape::of(std::move(kept)), cfg.p);
    rs = {{"value", r.value}, {"vacuous", r.vacuous}};
  }

  const json report{
      {"instance",
       {{"family", cfg.family},
        {"C_size", inst.C.size()},
        {"K_size", inst.K.size()},
        {"CK_size", inst.CK.size()},
        {"G_C_size", inst.G_C.size()},
        {"alphabet", cfg.alphabet}}},
      {"eps", cfg.eps},
      {"identifiability",
       {{"i1_connected", ic.i1_connected},
        {"i2_ratio", ic.i2_ratio},
        {"i3", ic.i3},
        {"lower_bound", id_lb}}},
      {"non_identifiability",
       {{"n1_ratio", nc.n1_ratio},
        {"n2_ratio", nc.n2_ratio},
        {"n3", nc.n3},
        {"B_size", B.size()},
        {"dsc_size", D0.size()},
        {"rs_set_size", d_size},
        {"rs_lower_bound", rs},
        {"exceptional_upper_bound", exceptional_upper_bound(inst, cfg.p)}}}};
  write_report(report, out_path);
}

// ---------------------------------------------------------------------------
// simulate / sweep / scenario.

struct RunFlags {
  std::optional<std::uint64_t> seed;
  std::optional<long long> trials;
  std::optional<std::string> mode;
  std::optional<int> threads;
  std::optional<double> eps;
};

json apply_flags(json doc, const RunFlags& f) {
  if (f.seed) doc["seed"] = *f.seed;
  if (f.trials) doc["trials"] = *f.trials;
  if (f.mode) doc["mode"] = *f.mode;
  if (f.threads) doc["threads"] = *f.threads;
  if (f.eps) doc["eps"] = *f.eps;
  return doc;
}

void cmd_simulate(const std::string& config_path, const RunFlags& flags,
                  const std::string& format, const std::string& out_path) {
  const ScenarioConfig cfg = parse_config(apply_flags(load_json(config_path), flags));
  emit({run_trials(cfg)}, format, out_path);
}

void cmd_sweep(const std::string& config_path, const RunFlags& flags, std::string parameter,
               std::vector<std::int64_t> values, const std::string& format,
               const std::string& out_path) {
  const json doc = apply_flags(load_json(config_path), flags);
  if (parameter.empty() && doc.contains("sweep")) {
    const json& sw = doc["sweep"];
    if (!sw.is_object() || !sw.contains("parameter") || !sw.contains("values"))
      throw ConfigError("config: 'sweep' must carry 'parameter' and 'values'");
    parameter = sw["parameter"].get<std::string>();
    for (const auto& v : sw["values"]) values.push_back(v.get<std::int64_t>());
  }
  if (parameter.empty())
    throw ConfigError("sweep: give --param/--values or a 'sweep' block in the config");
  emit(sweep(parse_config(doc), parameter, values), format, out_path);
}

void cmd_scenario(const std::string& family, const std::string& out_path) {
  json doc;
  if (family == "ex1") {
    doc = {{"family", "ex1"},
           {"ex1", {{"d", 1}, {"ell", 1}, {"R", 5000}, {"r", 20}}},
           {"alphabet", 2},
           {"p", "uniform"},
           {"trials", 500},
           {"seed", 1},
           {"mode", "certificates"},
           {"threads", 4},
           {"sweep", {{"parameter", "r"}, {"values", {6, 8, 12, 16, 20, 24, 28, 35, 40}}}}};
  } else if (family == "ex2") {
    doc = {{"family", "ex2"},
           {"ex2", {{"n", 60}, {"K_named", {{"kind", "cube"}, {"d", 2}, {"r", 5}}}}},
           {"alphabet", 2},
           {"p", "uniform"},
           {"trials", 200},
           {"seed", 1},
           {"mode", "certificates"},
           {"threads", 4},
           {"sweep", {{"parameter", "r"}, {"values", {3, 4, 5, 6, 8}}}}};
  } else {
    doc = {{"family", "ex3"},
           {"ex3", {{"group", "free:2"}, {"R", 7}, {"r", 2}}},
           {"alphabet", 2},
           {"p", "uniform"},
           {"trials", 200},
           {"seed", 1},
           {"mode", "certificates"},
           {"threads", 4},
           {"sweep", {{"parameter", "r"}, {"values", {1, 2, 3, 4}}}}};
  }
  parse_config(doc);  // presets must stay valid
  write_text(out_path, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shotgun identification of random patterns on countable groups"};
  app.require_subcommand(1);

  std::string config_path, pattern_path, out_path, format = "csv", sweep_param, scenario_family;
  std::vector<std::int64_t> sweep_values;
  RunFlags flags;
  std::optional<double> eps_flag;
  double eps_val = 0.0, flag_eps = 0.0;
  std::uint64_t flag_seed = 0;
  long long flag_trials = 0;
  std::string flag_mode;
  int flag_threads = 0;

  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "scenario config (JSON)")->required();
  };
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "output path ('-' = stdout)");
  };
  const auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", flag_seed, "override config seed");
    sub->add_option("--trials", flag_trials, "override config trials");
    sub->add_option("--mode", flag_mode, "override config mode")
        ->check(CLI::IsMember({"certificates", "oracle"}));
    sub->add_option("--threads", flag_threads, "override config threads");
    sub->add_option("--eps", flag_eps, "override config eps");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto collect_flags = [&](const CLI::App* sub) {
    if (sub->count("--seed")) flags.seed = flag_seed;
    if (sub->count("--trials")) flags.trials = flag_trials;
    if (sub->count("--mode")) flags.mode = flag_mode;
    if (sub->count("--threads")) flags.threads = flag_threads;
    if (sub->count("--eps")) flags.eps = flag_eps;
  };

  CLI::App* certify = app.add_subcommand("certify", "run both certificates on one pattern file");
  add_config(certify);
  certify->add_option("pattern", pattern_path, "pattern file")->required();
  add_out(certify);
  certify->callback([&] { cmd_certify(config_path, pattern_path, out_path); });

  CLI::App* oracle = app.add_subcommand("oracle", "exact identifiability of one pattern file");
  add_config(oracle);
  oracle->add_option("pattern", pattern_path, "pattern file")->required();
  add_out(oracle);
  oracle->callback([&] { cmd_oracle(config_path, pattern_path, out_path); });

  CLI::App* exact = app.add_subcommand("exact-repeat", "exact repeat probabilities for (A, g)");
  add_config(exact);
  add_out(exact);
  exact->callback([&] { cmd_exact_repeat(config_path, out_path); });

  CLI::App* bounds = app.add_subcommand("bounds", "condition reports and closed-form bounds");
  add_config(bounds);
  bounds->add_option("--eps", eps_val, "margin for the size conditions");
  add_out(bounds);
  bounds->callback([&] {
    if (bounds->count("--eps")) eps_flag = eps_val;
    cmd_bounds(config_path, eps_flag, out_path);
  });

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo identifiability estimate");
  add_config(simulate);
  add_run_flags(simulate);
  add_out(simulate);
  simulate->callback([&] {
    collect_flags(simulate);
    cmd_simulate(config_path, flags, format, out_path);
  });

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "one estimate per swept parameter value");
  add_config(sweep_cmd);
  add_run_flags(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "parameter to sweep (r, R, m, ell, alphabet)");
  sweep_cmd->add_option("--values", sweep_values, "swept values")->delimiter(',');
  add_out(sweep_cmd);
  sweep_cmd->callback([&] {
    collect_flags(sweep_cmd);
    cmd_sweep(config_path, flags, sweep_param, sweep_values, format, out_path);
  });

  CLI::App* scenario = app.add_subcommand("scenario", "print a ready-to-run preset config");
  scenario->add_option("family", scenario_family, "ex1, ex2 or ex3")
      ->required()
      ->check(CLI::IsMember({"ex1", "ex2", "ex3"}));
  add_out(scenario);
  scenario->callback([&] { cmd_scenario(scenario_family, out_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InternalConflict& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
