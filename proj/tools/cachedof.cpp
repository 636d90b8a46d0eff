// cachedof: bounds tables, figure data, scheme verification and schedule
// dumps for cache-aided interference networks.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 usage/config error.

#include "cachedof/dof_bounds.hpp"
#include "cachedof/network_model.hpp"
#include "cachedof/precoding.hpp"
#include "cachedof/report.hpp"
#include "cachedof/schedule_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cachedof;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  int kt = 0;
  int kr = 0;
  std::optional<int> n_files;
  std::optional<int> tau;
  std::string format = "csv";
  std::string out;
  std::string manifest;
};

void add_network_flags(CLI::App* cmd, CommonOptions& o, bool n_alias_for_files) {
  cmd->add_option("--kt", o.kt, "number of transmitters K_T");
  cmd->add_option("--kr", o.kr, "number of receivers K_R");
  // Subcommands without an alignment parameter accept --n for the library size.
  cmd->add_option(n_alias_for_files ? "--n-files,--n" : "--n-files", o.n_files,
                  "library size N (default K_R)");
  cmd->add_option("--tau", o.tau, "cooperation order tau = K_T M / N");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "write output to PATH instead of stdout");
  cmd->add_option("--manifest", o.manifest, "write a run manifest (JSON) to PATH");
}

void emit(const CommonOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + o.out + "'");
  f << text;
}

void write_manifest(const CommonOptions& o, const std::string& command, const NetworkConfig& cfg,
                    std::vector<std::uint64_t> seeds = {}, std::vector<int> n_values = {}) {
  if (o.manifest.empty()) return;
  RunManifest m;
  m.command = command;
  m.config = cfg;
  m.seeds = std::move(seeds);
  m.n_values = std::move(n_values);
  if (!o.out.empty()) m.outputs.push_back(o.out);
  m.timestamp = utc_timestamp();
  std::ofstream f(o.manifest, std::ios::binary);
  if (!f) throw ConfigError("cannot open manifest file '" + o.manifest + "'");
  f << manifest_json(m).dump(2) << '\n';
}

NetworkConfig network_from(const CommonOptions& o, int default_kt, int default_kr) {
  const int kt = o.kt > 0 ? o.kt : default_kt;
  const int kr = o.kr > 0 ? o.kr : default_kr;
  if (kt <= 0 || kr <= 0) throw ConfigError("--kt and --kr are required");
  return make_config(kt, kr, o.tau.value_or(1), o.n_files.value_or(kr));
}

std::vector<std::uint64_t> seed_list(std::uint64_t base, int count) {
  if (const char* env = std::getenv("CACHEDOF_SEED")) {
    try {
      base = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("CACHEDOF_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  if (count < 1) throw ConfigError("--seeds must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int s = 0; s < count; ++s) seeds.push_back(base + static_cast<std::uint64_t>(s));
  return seeds;
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const auto& n : names) out.push_back(parse_scheme(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cachedof: sum-DoF bounds and delivery-scheme certification for cache-aided interference networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOptions bounds_opt, fig2_opt, fig4_opt, verify_opt, sched_opt, gap_opt;
  std::vector<std::string> scheme_names;

  auto* bounds = app.add_subcommand("bounds", "closed-form sum-DoF table, one row per (tau, scheme)");
  add_network_flags(bounds, bounds_opt, true);
  bounds->add_option("--schemes", scheme_names, "subset of proposed,zf,ia,mixed,coopx_bound,cutset")->delimiter(',');

  auto* fig2 = app.add_subcommand("figure2", "reciprocal DoF envelopes vs cache size (default 50x50x50)");
  add_network_flags(fig2, fig2_opt, true);

  auto* fig4 = app.add_subcommand("figure4", "reciprocal cooperative X-network upper bound (default 10x10)");
  add_network_flags(fig4, fig4_opt, true);

  auto* verify = app.add_subcommand("verify", "numerically certify the delivery scheme over seeds");
  add_network_flags(verify, verify_opt, false);
  int n_param = 1;
  int seed_count = 20;
  std::uint64_t seed_base = 1;
  std::size_t mu_cap = kDefaultMuCap;
  std::string channel = "gaussian";
  std::vector<int> demand_files;
  int max_kt = ScheduleLimits{}.max_kt;
  verify->add_option("--n", n_param, "alignment parameter n");
  verify->add_option("--seeds", seed_count, "number of seeds");
  verify->add_option("--seed", seed_base, "first seed (CACHEDOF_SEED overrides)");
  verify->add_option("--mu-cap", mu_cap, "largest accepted symbol extension mu_n");
  verify->add_option("--channel", channel, "channel distribution")->check(CLI::IsMember({"gaussian", "phase"}));
  verify->add_option("--demand", demand_files, "demanded file per receiver")->delimiter(',');
  verify->add_option("--max-kt", max_kt, "schedule guard on K_T");
  verify_opt.format = "json";

  auto* sched = app.add_subcommand("schedule", "dump the block schedule as JSON");
  add_network_flags(sched, sched_opt, false);
  bool with_placement = false;
  sched->add_option("--demand", demand_files, "demanded file per receiver")->delimiter(',');
  sched->add_option("--max-kt", max_kt, "schedule guard on K_T");
  sched->add_flag("--placement", with_placement, "include the cache placement");
  sched_opt.format = "json";

  auto* gap = app.add_subcommand("gap-sweep", "cutset / achievable ratio for all K_T, K_R <= max");
  add_network_flags(gap, gap_opt, true);
  int max_k = 20;
  gap->add_option("--max-k", max_k, "largest K_T and K_R in the sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (bounds->parsed()) {
      auto cfg = network_from(bounds_opt, 0, 0);
      const auto rows = bounds_table(cfg, parse_schemes(scheme_names), bounds_opt.tau);
      emit(bounds_opt, bounds_opt.format == "csv" ? bounds_csv(rows) : bounds_json(rows).dump(2) + "\n");
      write_manifest(bounds_opt, "bounds", cfg);
      return 0;
    }
    if (fig2->parsed()) {
      auto cfg = network_from(fig2_opt, 50, 50);
      const auto rows = figure2_rows(cfg);
      emit(fig2_opt, fig2_opt.format == "csv" ? figure_csv(rows) : figure_json(rows).dump(2) + "\n");
      write_manifest(fig2_opt, "figure2", cfg);
      return 0;
    }
    if (fig4->parsed()) {
      auto cfg = network_from(fig4_opt, 10, 10);
      const auto rows = figure4_rows(cfg);
      emit(fig4_opt, fig4_opt.format == "csv" ? figure_csv(rows) : figure_json(rows).dump(2) + "\n");
      write_manifest(fig4_opt, "figure4", cfg);
      return 0;
    }
    if (gap->parsed()) {
      const auto rows = gap_sweep(max_k);
      emit(gap_opt, gap_opt.format == "csv" ? gap_csv(rows) : gap_json(rows).dump(2) + "\n");
      write_manifest(gap_opt, "gap-sweep", NetworkConfig{max_k, max_k, max_k, 1});
      bool ok = std::all_of(rows.begin(), rows.end(), [](const GapRow& r) { return r.ratio <= 2; });
      return ok ? 0 : kExitFailure;
    }
    if (verify->parsed()) {
      if (!verify_opt.tau) throw ConfigError("verify needs --tau");
      VerifyRequest req;
      req.cfg = network_from(verify_opt, 0, 0);
      req.demand = demand_files.empty() ? DemandVector::cyclic(req.cfg) : DemandVector{demand_files};
      req.n = n_param;
      req.seeds = seed_list(seed_base, seed_count);
      req.mu_cap = mu_cap;
      req.mode = parse_channel_mode(channel);
      req.limits.max_kt = max_kt;
      const auto report = run_verify(req);
      emit(verify_opt, verify_opt.format == "csv" ? verify_csv(report) : verify_json(report).dump(2) + "\n");
      write_manifest(verify_opt, "verify", req.cfg, req.seeds, {n_param});
      std::cerr << (report.passed() ? "PASS" : "FAIL") << ": " << report.unflagged << "/" << report.records.size()
                << " unflagged runs, " << report.failures << " failures, achieved DoF "
                << to_fraction_string(report.achieved_dof) << "\n";
      return report.exit_code();
    }
    if (sched->parsed()) {
      if (!sched_opt.tau) throw ConfigError("schedule needs --tau");
      ScheduleDocument doc;
      doc.config = network_from(sched_opt, 0, 0);
      doc.demand = demand_files.empty() ? DemandVector::cyclic(doc.config) : DemandVector{demand_files};
      doc.blocks = schedule_blocks(doc.config, doc.demand, ScheduleLimits{max_kt});
      auto j = schedule_to_json(doc);
      if (with_placement) j["placement"] = placement_to_json(doc.config, place_content(doc.config))["caches"];
      emit(sched_opt, j.dump(2) + "\n");
      write_manifest(sched_opt, "schedule", doc.config);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
