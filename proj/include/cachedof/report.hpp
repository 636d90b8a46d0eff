#pragma once

// Table and report builders behind the command-line tool. Each builder
// returns plain data plus CSV / JSON renderers, so output is deterministic for
// fixed inputs and can be checked without spawning the binary.

#include "cachedof/channel.hpp"
#include "cachedof/dof_bounds.hpp"
#include "cachedof/network_model.hpp"
#include "cachedof/precoding.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cachedof {

inline constexpr const char* kToolVersion = "0.1.0";

// Six significant digits, %g style.
std::string format_float(double value);

struct BoundRow {
  NetworkConfig cfg;
  Scheme scheme = Scheme::proposed;
  Rational dof;
};

// One row per (tau, scheme). All tau in [1, K_T] unless `only_tau` is given;
// an empty scheme list means every scheme. Schemes that do not apply at a tau
// are skipped.
std::vector<BoundRow> bounds_table(const NetworkConfig& base, const std::vector<Scheme>& schemes,
                                   std::optional<int> only_tau = std::nullopt);

// Columns: K_T,K_R,N,tau,M,scheme,dof,one_over_dof,ndt
std::string bounds_csv(const std::vector<BoundRow>& rows);
nlohmann::ordered_json bounds_json(const std::vector<BoundRow>& rows);

struct FigureRow {
  std::string series;
  int tau = 0;
  Rational m;
  Rational value;  // 1/DoF
};

// Reciprocal convex envelope of each achievable scheme (proposed, zf, ia,
// mixed), sampled at every corner M = tau N / K_T.
std::vector<FigureRow> figure2_rows(const NetworkConfig& base);

// 1 / coop_x_upper_bound at tau = 1..min(K_T, K_R).
std::vector<FigureRow> figure4_rows(const NetworkConfig& base);

// Columns: series,tau,M,one_over_dof
std::string figure_csv(const std::vector<FigureRow>& rows);
nlohmann::ordered_json figure_json(const std::vector<FigureRow>& rows);

struct GapRow {
  int k_t = 0;
  int k_r = 0;
  int tau = 0;
  Rational ratio;  // cutset / proposed
};

std::vector<GapRow> gap_sweep(int max_k);
std::string gap_csv(const std::vector<GapRow>& rows);
nlohmann::ordered_json gap_json(const std::vector<GapRow>& rows);

struct VerifyRequest {
  NetworkConfig cfg;
  DemandVector demand;
  int n = 1;
  std::vector<std::uint64_t> seeds;
  std::size_t mu_cap = kDefaultMuCap;
  ChannelMode mode = ChannelMode::gaussian;
  VerifyTolerances tol;
  ScheduleLimits limits;
};

struct VerifyRecord {
  std::uint64_t seed = 0;
  std::size_t block = 0;
  bool flagged = false;
  bool passed = false;
  std::optional<BlockVerdict> alignment;  // tau < K_R
  std::optional<MisoVerdict> broadcast;   // tau >= K_R
};

struct VerifyReport {
  VerifyRequest request;
  bool broadcast_path = false;
  std::optional<ExtensionParams> params;
  std::vector<VerifyRecord> records;  // sorted by (seed, block)
  std::size_t unflagged = 0;
  std::size_t failures = 0;           // unflagged runs that failed a check
  Rational achieved_dof;

  // All unflagged runs passed and at least one run was unflagged.
  bool passed() const { return failures == 0 && unflagged > 0; }
  int exit_code() const { return passed() ? 0 : 1; }
};

// Runs every block of the schedule for every seed. Channel and precoder
// randomness for (seed, block) is derived from the seed, so records do not
// depend on evaluation order. Throws ConfigError for invalid configs or when
// mu_n exceeds the cap.
VerifyReport run_verify(const VerifyRequest& request);

nlohmann::ordered_json verify_json(const VerifyReport& report);
std::string verify_csv(const VerifyReport& report);

struct RunManifest {
  std::string command;
  NetworkConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<int> n_values;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO 8601, UTC
};

std::string utc_timestamp();
nlohmann::ordered_json manifest_json(const RunManifest& manifest);

}  // namespace cachedof
