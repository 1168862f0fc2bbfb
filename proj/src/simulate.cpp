#include "sgid/simulate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "sgid/error.hpp"
#include "sgid/reads.hpp"

namespace sgid {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& msg) { throw ConfigError("config: " + msg); }

std::int64_t require_int(const json& obj, const std::string& key, std::int64_t lo, std::int64_t hi) {
  if (!obj.contains(key)) config_fail("missing field '" + key + "'");
  if (!obj[key].is_number_integer()) config_fail("field '" + key + "' must be an integer");
  const auto v = obj[key].get<std::int64_t>();
  if (v < lo || v > hi) config_fail("field '" + key + "' out of range");
  return v;
}

Shape parse_shape(const GroupCtx& ctx, const json& arr, const std::string& what) {
  if (!arr.is_array() || arr.empty()) config_fail(what + " must be a nonempty array of coordinate arrays");
  std::vector<Element> elems;
  for (const auto& item : arr) {
    if (!item.is_array()) config_fail(what + ": each element must be a coordinate array");
    std::vector<std::int64_t> payload;
    for (const auto& x : item) {
      if (!x.is_number_integer()) config_fail(what + ": coordinates must be integers");
      payload.push_back(x.get<std::int64_t>());
    }
    try {
      elems.push_back(make_element(ctx, std::move(payload)));
    } catch (const std::exception& e) {
      config_fail(what + ": " + e.what());
    }
  }
  return Shape::of(std::move(elems));
}

/// Cartesian product of per-axis coordinate lists, as lattice elements.
Shape box_shape(const std::vector<std::vector<std::int64_t>>& axes) {
  double total = 1.0;
  for (const auto& a : axes) total *= static_cast<double>(a.size());
  if (total > static_cast<double>(1 << 22)) config_fail("instance too large (> 2^22 cells)");
  std::vector<Element> elems;
  elems.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    Element e;
    e.v.reserve(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) e.v.push_back(axes[i][idx[i]]);
    elems.push_back(std::move(e));
    std::size_t i = axes.size();
    while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return Shape::of(std::move(elems));
}

std::vector<std::int64_t> range_list(std::int64_t from, std::int64_t to, std::int64_t step) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = from; x <= to; x += step) out.push_back(x);
  return out;
}

ProbVector parse_p(const json& doc, int alphabet) {
  if (!doc.contains("p")) config_fail("missing field 'p'");
  const json& p = doc["p"];
  try {
    if (p.is_string()) {
      if (p.get<std::string>() != "uniform") config_fail("field 'p' must be \"uniform\" or an array");
      return ProbVector::uniform(alphabet);
    }
    if (!p.is_array() || p.size() != static_cast<std::size_t>(alphabet))
      config_fail("field 'p' must have one entry per symbol");
    if (p[0].is_string()) {
      std::vector<Rat> w;
      for (const auto& x : p) w.push_back(parse_rational(x.get<std::string>()));
      return ProbVector::from_rationals(std::move(w));
    }
    std::vector<double> w;
    for (const auto& x : p) w.push_back(x.get<double>());
    return ProbVector::from_doubles(std::move(w));
  } catch (const std::invalid_argument& e) {
    config_fail(e.what());
  }
}

}  // namespace

GroupCtx parse_group_string(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  std::int64_t arg = 0;
  if (colon != std::string::npos) {
    try {
      arg = std::stoll(s.substr(colon + 1));
    } catch (const std::exception&) {
      config_fail("bad group parameter in '" + s + "'");
    }
  }
  try {
    if (kind == "z") return z_lattice(static_cast<int>(arg));
    if (kind == "cyclic") return cyclic_z(arg);
    if (kind == "free") return free_group(static_cast<int>(arg));
    if (kind == "heis") return heisenberg3();
  } catch (const std::invalid_argument& e) {
    config_fail(e.what());
  }
  config_fail("unknown group '" + s + "' (use z:D, cyclic:M, free:K or heis)");
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) config_fail("document must be a JSON object");
    static const char* known[] = {"family", "ex1",  "ex2",  "ex3", "custom",  "alphabet",
                                  "p",      "trials", "seed", "mode", "eps",     "threads",
                                  "budget", "family_shapes", "sweep", "B"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) config_fail("unknown field '" + it.key() + "'");
    }
    ScenarioConfig cfg;
    cfg.raw = doc;
    if (!doc.contains("family") || !doc["family"].is_string()) config_fail("missing field 'family'");
    cfg.family = doc["family"].get<std::string>();
    if (cfg.family != "ex1" && cfg.family != "ex2" && cfg.family != "ex3" && cfg.family != "custom")
      config_fail("family must be ex1, ex2, ex3 or custom");
    if (!doc.contains(cfg.family) || !doc[cfg.family].is_object())
      config_fail("missing family block '" + cfg.family + "'");
    cfg.alphabet = static_cast<int>(require_int(doc, "alphabet", 2, kMaxAlphabet));
    cfg.p = parse_p(doc, cfg.alphabet);
    cfg.trials = require_int(doc, "trials", 0, std::int64_t{1} << 40);
    if (!doc.contains("seed") || !doc["seed"].is_number_integer()) config_fail("missing field 'seed'");
    cfg.seed = doc["seed"].get<std::uint64_t>();
    if (!doc.contains("mode") || !doc["mode"].is_string()) config_fail("missing field 'mode'");
    const std::string mode = doc["mode"].get<std::string>();
    if (mode == "certificates")
      cfg.mode = RunMode::Certificates;
    else if (mode == "oracle")
      cfg.mode = RunMode::Oracle;
    else
      config_fail("mode must be 'certificates' or 'oracle'");
    if (doc.contains("eps")) {
      if (!doc["eps"].is_number()) config_fail("field 'eps' must be a number");
      cfg.eps = doc["eps"].get<double>();
      if (!(cfg.eps > 0.0)) config_fail("field 'eps' must be > 0");
    }
    if (doc.contains("threads"))
      cfg.threads = static_cast<int>(require_int(doc, "threads", 1, 256));
    if (doc.contains("budget"))
      cfg.oracle_budget = static_cast<std::uint64_t>(require_int(doc, "budget", 1, std::int64_t{1} << 40));
    return cfg;
  } catch (const json::exception& e) {
    config_fail(e.what());
  }
}

namespace {

BuiltScenario build_ex1(const ScenarioConfig& cfg) {
  const json& b = cfg.raw["ex1"];
  const auto d = require_int(b, "d", 1, 8);
  const auto ell = require_int(b, "ell", 1, 1 << 20);
  const auto r = require_int(b, "r", 1, 1 << 20);
  if (r <= ell) config_fail("ex1: r must exceed ell (the overlap prisms are empty otherwise)");
  if (b.contains("m") && b.contains("R")) config_fail("ex1: give either m or R, not both");
  std::int64_t m = 0;
  if (b.contains("m")) {
    m = require_int(b, "m", 1, 1 << 30);
  } else if (b.contains("R")) {
    const auto R = require_int(b, "R", 1, 1 << 30);
    m = (R - r) / ell;
    if (m < 1) config_fail("ex1: R too small for the given r and ell");
  } else {
    config_fail("ex1: missing field 'm' or 'R'");
  }

  const GroupCtx ctx = z_lattice(static_cast<int>(d));
  const Shape C = box_shape(std::vector(static_cast<std::size_t>(d), range_list(0, m * ell, ell)));
  const Shape K = box_shape(std::vector(static_cast<std::size_t>(d), range_list(0, r - 1, 1)));

  // One overlap prism per axis: the intersection of K with its own translate by
  // ell along that axis, normalized back to the origin.
  std::vector<Shape> prisms;
  for (std::int64_t axis = 0; axis < d; ++axis) {
    std::vector<std::vector<std::int64_t>> axes(static_cast<std::size_t>(d), range_list(0, r - 1, 1));
    axes[static_cast<std::size_t>(axis)] = range_list(0, r - ell - 1, 1);
    prisms.push_back(box_shape(axes));
  }

  BuiltScenario out{make_instance(ctx, C, K, cfg.alphabet), OverlapFamily{}, ParamCols{}};
  out.fam = make_overlap_family(out.inst, std::move(prisms));
  out.cols.d = std::to_string(d);
  out.cols.m = std::to_string(m);
  out.cols.r = std::to_string(r);
  out.cols.ell = std::to_string(ell);
  out.cols.R = std::to_string(m * ell + r);
  out.cols.group = "z:" + std::to_string(d);
  return out;
}

BuiltScenario build_ex2(const ScenarioConfig& cfg) {
  const json& b = cfg.raw["ex2"];
  const auto n = require_int(b, "n", 1, 1 << 30);
  Shape K;
  std::int64_t d = 0;
  std::string r_col;
  if (b.contains("K")) {
    if (!b["K"].is_array() || b["K"].empty() || !b["K"][0].is_array())
      config_fail("ex2: field 'K' must be an array of coordinate arrays");
    d = static_cast<std::int64_t>(b["K"][0].size());
    if (d < 1) config_fail("ex2: K coordinates must be nonempty");
    K = parse_shape(z_lattice(static_cast<int>(d)), b["K"], "ex2.K");
  } else if (b.contains("K_named")) {
    const json& kn = b["K_named"];
    d = require_int(kn, "d", 1, 8);
    const auto r = require_int(kn, "r", 1, 1 << 20);
    r_col = std::to_string(r);
    const std::string kind = kn.contains("kind") && kn["kind"].is_string()
                                 ? kn["kind"].get<std::string>()
                                 : std::string("cube");
    if (kind == "cube") {
      K = box_shape(std::vector(static_cast<std::size_t>(d), range_list(0, r - 1, 1)));
    } else if (kind == "ball") {
      K = ball(z_lattice(static_cast<int>(d)), static_cast<int>(r));
    } else {
      config_fail("ex2: K_named.kind must be 'cube' or 'ball'");
    }
  } else {
    config_fail("ex2: missing field 'K' or 'K_named'");
  }

  const GroupCtx ctx = z_lattice(static_cast<int>(d));
  const Shape C = box_shape(std::vector(static_cast<std::size_t>(d), range_list(0, n - 1, 1)));
  const Shape F = interior_1(ctx, K);
  if (F.empty()) config_fail("ex2: interior_1(K) is empty, no overlap family");

  BuiltScenario out{make_instance(ctx, C, K, cfg.alphabet), OverlapFamily{}, ParamCols{}};
  out.fam = make_overlap_family(out.inst, {F});
  out.cols.d = std::to_string(d);
  out.cols.n = std::to_string(n);
  out.cols.r = r_col;
  out.cols.group = "z:" + std::to_string(d);
  return out;
}

BuiltScenario build_ex3(const ScenarioConfig& cfg) {
  const json& b = cfg.raw["ex3"];
  if (!b.contains("group") || !b["group"].is_string()) config_fail("ex3: missing field 'group'");
  const std::string group = b["group"].get<std::string>();
  const GroupCtx ctx = parse_group_string(group);
  const auto R = require_int(b, "R", 1, 1 << 20);
  const auto r = require_int(b, "r", 1, 1 << 20);
  if (r >= R) config_fail("ex3: need r < R");

  const Shape C = ball(ctx, static_cast<int>(R - r));
  const Shape K = ball(ctx, static_cast<int>(r));
  if (C.size() > (1u << 22) || K.size() > (1u << 22)) config_fail("ex3: ball too large");
  const Shape F = interior_T(ctx, K);
  if (F.empty()) config_fail("ex3: interior_T(K) is empty, no overlap family");

  BuiltScenario out{make_instance(ctx, C, K, cfg.alphabet), OverlapFamily{}, ParamCols{}};
  out.fam = make_overlap_family(out.inst, {F});
  out.cols.r = std::to_string(r);
  out.cols.R = std::to_string(R);
  out.cols.group = group;
  return out;
}

BuiltScenario build_custom(const ScenarioConfig& cfg) {
  const json& b = cfg.raw["custom"];
  if (!b.contains("group") || !b["group"].is_string()) config_fail("custom: missing field 'group'");
  const std::string group = b["group"].get<std::string>();
  const GroupCtx ctx = parse_group_string(group);
  if (!b.contains("C") || !b.contains("K")) config_fail("custom: missing field 'C' or 'K'");
  const Shape C = parse_shape(ctx, b["C"], "custom.C");
  const Shape K = parse_shape(ctx, b["K"], "custom.K");

  BuiltScenario out{make_instance(ctx, C, K, cfg.alphabet), OverlapFamily{}, ParamCols{}};
  out.fam = make_overlap_family(out.inst, {K});
  out.cols.group = group;
  return out;
}

}  // namespace

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
  BuiltScenario out = [&] {
    try {
      if (cfg.family == "ex1") return build_ex1(cfg);
      if (cfg.family == "ex2") return build_ex2(cfg);
      if (cfg.family == "ex3") return build_ex3(cfg);
      return build_custom(cfg);
    } catch (const json::exception& e) {
      config_fail(e.what());
    } catch (const std::invalid_argument& e) {
      config_fail(e.what());
    }
  }();
  if (cfg.raw.contains("family_shapes")) {
    const json& fs = cfg.raw["family_shapes"];
    if (!fs.is_array() || fs.empty()) config_fail("family_shapes must be a nonempty array of shapes");
    std::vector<Shape> shapes;
    for (const auto& s : fs) shapes.push_back(parse_shape(out.inst.ctx, s, "family_shapes"));
    try {
      out.fam = make_overlap_family(out.inst, std::move(shapes));
    } catch (const std::invalid_argument& e) {
      config_fail(e.what());
    }
  }
  return out;
}

std::pair<double, double> wilson95(long long k, long long n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / nn;
  const double den = 1.0 + z2 / nn;
  const double ctr = ph + z2 / (2.0 * nn);
  const double hw = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, (ctr - hw) / den), std::min(1.0, (ctr + hw) / den)};
}

EstimateResult run_trials(const ScenarioConfig& cfg) { return run_trials(cfg, build_scenario(cfg)); }

EstimateResult run_trials(const ScenarioConfig& cfg, const BuiltScenario& built) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance& inst = built.inst;

  WindowPlan window_plan;
  ShellPlan shell_plan;
  if (cfg.mode == RunMode::Certificates) {
    window_plan = make_window_plan(inst, built.fam);
    shell_plan = make_shell_plan(inst);
  }

  std::vector<std::uint8_t> verdicts(static_cast<std::size_t>(cfg.trials));
  std::atomic<long long> next{0};
  std::atomic<long long> conflict_trial{-1};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto worker = [&] {
    std::vector<Symbol> cells(inst.CK.size());
    try {
      for (;;) {
        const long long t = next.fetch_add(1);
        if (t >= cfg.trials || conflict_trial.load() >= 0) break;
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        for (auto& c : cells) c = cfg.p.sample_symbol(rng.next_double());
        Verdict v = Verdict::Unknown;
        if (cfg.mode == RunMode::Certificates) {
          const bool id = unique_labeling_certified(window_plan, cells);
          const bool nonid = certified_nonidentifiable(shell_plan, cells);
          if (id && nonid) {
            long long expected = -1;
            conflict_trial.compare_exchange_strong(expected, t);
            break;
          }
          v = id ? Verdict::CertifiedIdentifiable
                 : nonid ? Verdict::CertifiedNonIdentifiable : Verdict::Unknown;
        } else {
          const OracleResult o =
              oracle_identifiable(inst, Pattern{inst.CK, cells}, cfg.oracle_budget);
          v = o.identifiable ? Verdict::CertifiedIdentifiable : Verdict::CertifiedNonIdentifiable;
        }
        verdicts[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(v);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const int n_threads = static_cast<int>(
      std::min<long long>(std::max(1, cfg.threads), std::max<long long>(1, cfg.trials)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  if (const long long ct = conflict_trial.load(); ct >= 0)
    throw InternalConflict("both certificates fired on trial " + std::to_string(ct) + " (seed " +
                           std::to_string(cfg.seed) + ") — certificate soundness is broken");

  EstimateResult res;
  res.family = cfg.family;
  res.cols = built.cols;
  res.alphabet = cfg.alphabet;
  res.trials = cfg.trials;
  res.seed = cfg.seed;
  for (std::uint8_t v : verdicts) {
    if (v == static_cast<std::uint8_t>(Verdict::CertifiedIdentifiable)) ++res.n_cert_id;
    else if (v == static_cast<std::uint8_t>(Verdict::CertifiedNonIdentifiable)) ++res.n_cert_nonid;
    else ++res.n_unknown;
  }
  res.p_id_lo = wilson95(res.n_cert_id, cfg.trials).first;
  res.p_id_hi = wilson95(res.n_cert_id + res.n_unknown, cfg.trials).second;
  res.lambda_ratio =
      static_cast<double>(inst.K.size()) / std::log(static_cast<double>(inst.CK.size()));
  res.lambda_c = 2.0 / renyi2(cfg.p);
  res.config = cfg.raw;
  res.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

std::vector<EstimateResult> sweep(const ScenarioConfig& cfg, const std::string& parameter,
                                  const std::vector<std::int64_t>& values) {
  static const std::vector<std::string> sweepable{"r", "R", "m", "ell", "alphabet"};
  bool known = false;
  for (const auto& s : sweepable) known = known || s == parameter;
  if (!known) throw ConfigError("sweep: unknown parameter '" + parameter + "'");
  if (values.empty()) throw ConfigError("sweep: no values given");

  std::vector<EstimateResult> out;
  out.reserve(values.size());
  for (const std::int64_t v : values) {
    json doc = cfg.raw;
    if (parameter == "alphabet") {
      if (!doc["p"].is_string()) throw ConfigError("sweep over alphabet requires p = \"uniform\"");
      doc["alphabet"] = v;
    } else if (cfg.family == "ex1") {
      doc["ex1"][parameter] = v;
      if (parameter == "m") doc["ex1"].erase("R");
      if (parameter == "R") doc["ex1"].erase("m");
    } else if (cfg.family == "ex3" && (parameter == "r" || parameter == "R")) {
      doc["ex3"][parameter] = v;
    } else if (cfg.family == "ex2" && parameter == "r" && doc["ex2"].contains("K_named")) {
      doc["ex2"]["K_named"]["r"] = v;
    } else {
      throw ConfigError("sweep: parameter '" + parameter + "' does not apply to " + cfg.family);
    }
    out.push_back(run_trials(parse_config(doc)));
  }
  return out;
}

namespace {

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<EstimateResult>& results, std::ostream& out) {
  out << "family,d,m,r,ell,R,n,group,alphabet,trials,seed,n_cert_id,n_cert_nonid,n_unknown,"
         "p_id_lo,p_id_hi,lambda_ratio,lambda_c,wall_ms\n";
  for (const EstimateResult& r : results) {
    out << r.family << ',' << r.cols.d << ',' << r.cols.m << ',' << r.cols.r << ',' << r.cols.ell
        << ',' << r.cols.R << ',' << r.cols.n << ',' << r.cols.group << ',' << r.alphabet << ','
        << r.trials << ',' << r.seed << ',' << r.n_cert_id << ',' << r.n_cert_nonid << ','
        << r.n_unknown << ',' << fmt6(r.p_id_lo) << ',' << fmt6(r.p_id_hi) << ','
        << fmt6(r.lambda_ratio) << ',' << fmt6(r.lambda_c) << ',' << r.wall_ms << '\n';
  }
}

void emit_json(const std::vector<EstimateResult>& results, std::ostream& out) {
  json arr = json::array();
  for (const EstimateResult& r : results) {
    json row{{"family", r.family},
             {"params",
              {{"d", r.cols.d},
               {"m", r.cols.m},
               {"r", r.cols.r},
               {"ell", r.cols.ell},
               {"R", r.cols.R},
               {"n", r.cols.n},
               {"group", r.cols.group}}},
             {"alphabet", r.alphabet},
             {"trials", r.trials},
             {"seed", r.seed},
             {"n_cert_id", r.n_cert_id},
             {"n_cert_nonid", r.n_cert_nonid},
             {"n_unknown", r.n_unknown},
             {"p_id_lo", r.p_id_lo},
             {"p_id_hi", r.p_id_hi},
             {"lambda_ratio", r.lambda_ratio},
             {"lambda_c", r.lambda_c},
             {"wall_ms", r.wall_ms},
             {"config", r.config}};
    arr.push_back(std::move(row));
  }
  out << arr.dump(2) << '\n';
}

void emit(const std::vector<EstimateResult>& results, const std::string& format,
          const std::string& path) {
  if (format != "csv" && format != "json") throw ConfigError("emit: format must be csv or json");
  const auto write = [&](std::ostream& out) {
    if (format == "csv") emit_csv(results, out);
    else emit_json(results, out);
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("emit: cannot open output file '" + path + "'");
  write(out);
}

}  // namespace sgid
