#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgid/overlap.hpp"
#include "sgid/reads.hpp"
#include "sgid/shells.hpp"

namespace sgid {

enum class RunMode { Certificates, Oracle };

/// Three-valued trial outcome.  Both certificates are one-sided, so the honest
/// estimator reports the unknown mass instead of forcing a boolean.
enum class Verdict : std::uint8_t { CertifiedIdentifiable, CertifiedNonIdentifiable, Unknown };

/** A parsed scenario: the raw JSON document (kept verbatim for embedding in
 *  result files) plus the realized common fields.  Family-specific geometry
 *  stays in `raw` and is interpreted by build_scenario. */
struct ScenarioConfig {
  nlohmann::json raw;
  std::string family;  // ex1 | ex2 | ex3 | custom
  int alphabet = 2;
  ProbVector p = ProbVector::uniform(2);
  long long trials = 0;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::Certificates;
  double eps = 0.1;
  int threads = 1;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
};

/// Parses and validates a config document; throws ConfigError on any problem.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Group-string syntax shared by configs: "z:D", "cyclic:M", "free:K", "heis".
GroupCtx parse_group_string(const std::string& s);

/// Reporting columns shared by every family; blank when not applicable.
struct ParamCols {
  std::string d, m, r, ell, R, n, group;
};

struct BuiltScenario {
  Instance inst;
  OverlapFamily fam;
  ParamCols cols;
};

/** Realizes the configured family:
 *    ex1    C = ell·[0,m]^d, K = [0,r-1]^d, family = the d axis-overlap prisms
 *           (size r^{d-1}·(r-ell) each); give m directly or give R and m is
 *           derived as floor((R-r)/ell).
 *    ex2    C = [0,n-1]^d, K explicit or named, family = {interior_1(K)}
 *    ex3    C = T_{R-r}, K = T_r in the configured group, family = {interior_T(K)}
 *    custom explicit C and K, family = {K}
 *  A "family_shapes" entry overrides the default overlap family. */
BuiltScenario build_scenario(const ScenarioConfig& cfg);

struct EstimateResult {
  std::string family;
  ParamCols cols;
  int alphabet = 2;
  long long trials = 0;
  std::uint64_t seed = 0;
  long long n_cert_id = 0, n_cert_nonid = 0, n_unknown = 0;
  double p_id_lo = 0.0;  // Wilson 95% lower bound on the certified-identifiable fraction
  double p_id_hi = 1.0;  // Wilson 95% upper bound on (certified-identifiable + unknown)
  double lambda_ratio = 0.0;  // |K| / ln|CK|
  double lambda_c = 0.0;      // 2 / H_2(p)
  std::int64_t wall_ms = 0;
  nlohmann::json config;
};

/** Runs cfg.trials independent trials.  Trial t samples its pattern from the
 *  substream CounterRng(seed, t), so results are identical for any thread
 *  count.  Certificates mode runs both certificates on every sample and aborts
 *  with InternalConflict if they ever both fire; oracle mode runs the exact
 *  oracle (desk scale only). */
EstimateResult run_trials(const ScenarioConfig& cfg);
EstimateResult run_trials(const ScenarioConfig& cfg, const BuiltScenario& built);

/// One run per value of the swept parameter (r, R, m, ell or alphabet).
std::vector<EstimateResult> sweep(const ScenarioConfig& cfg, const std::string& parameter,
                                  const std::vector<std::int64_t>& values);

/// CSV with the fixed column set; rows in input order.  Everything except
/// wall_ms is a pure function of (config, seed).
void emit_csv(const std::vector<EstimateResult>& results, std::ostream& out);
/// Same rows as objects, with the full config document embedded per row.
void emit_json(const std::vector<EstimateResult>& results, std::ostream& out);
/// Dispatches on format ("csv" | "json"); path "-" or "" writes to stdout.
void emit(const std::vector<EstimateResult>& results, const std::string& format,
          const std::string& path);

/// 95% Wilson score interval for k successes in n trials; (0, 1) when n = 0.
std::pair<double, double> wilson95(long long k, long long n);

}  // namespace sgid
