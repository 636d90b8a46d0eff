#include "cachedof/report.hpp"

#include "cachedof/schedule_io.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace cachedof {

using nlohmann::ordered_json;

std::string format_float(double value) {
  std::ostringstream os;
  os << std::setprecision(6) << value;
  return os.str();
}

std::vector<BoundRow> bounds_table(const NetworkConfig& base, const std::vector<Scheme>& schemes,
                                   std::optional<int> only_tau) {
  base.validate();
  const auto& wanted = schemes.empty() ? all_schemes() : schemes;
  std::vector<BoundRow> rows;
  for (int t = 1; t <= base.k_t; ++t) {
    if (only_tau && *only_tau != t) continue;
    NetworkConfig cfg = base;
    cfg.tau = t;
    for (Scheme s : wanted) {
      if (!scheme_applies(s, cfg)) continue;
      rows.push_back(BoundRow{cfg, s, scheme_dof(s, cfg)});
    }
  }
  return rows;
}

std::string bounds_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream os;
  os << "K_T,K_R,N,tau,M,scheme,dof,one_over_dof,ndt\n";
  for (const auto& r : rows) {
    os << r.cfg.k_t << ',' << r.cfg.k_r << ',' << r.cfg.n_files << ',' << r.cfg.tau << ','
       << format_float(to_double(r.cfg.cache_size())) << ',' << scheme_name(r.scheme) << ','
       << format_float(to_double(r.dof)) << ',' << format_float(to_double(Rational(1) / r.dof)) << ','
       << format_float(to_double(ndt(r.dof, r.cfg))) << '\n';
  }
  return os.str();
}

ordered_json bounds_json(const std::vector<BoundRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back(ordered_json{{"K_T", r.cfg.k_t},
                               {"K_R", r.cfg.k_r},
                               {"N", r.cfg.n_files},
                               {"tau", r.cfg.tau},
                               {"M", to_fraction_string(r.cfg.cache_size())},
                               {"scheme", scheme_name(r.scheme)},
                               {"dof", to_fraction_string(r.dof)},
                               {"one_over_dof", to_fraction_string(Rational(1) / r.dof)},
                               {"ndt", to_fraction_string(ndt(r.dof, r.cfg))}});
  }
  return out;
}

std::vector<FigureRow> figure2_rows(const NetworkConfig& base) {
  base.validate();
  std::vector<FigureRow> rows;
  for (Scheme s : {Scheme::proposed, Scheme::zf, Scheme::ia, Scheme::mixed}) {
    const auto points = corner_points(base, s);
    const auto envelope = reciprocal_envelope(points);
    for (const auto& p : points) {
      rows.push_back(FigureRow{std::string(scheme_name(s)), p.tau, p.m_files, envelope.evaluate(p.m_files)});
    }
  }
  return rows;
}

std::vector<FigureRow> figure4_rows(const NetworkConfig& base) {
  base.validate();
  std::vector<FigureRow> rows;
  for (const auto& p : corner_points(base, Scheme::coop_x)) {
    rows.push_back(FigureRow{std::string(scheme_name(Scheme::coop_x)), p.tau, p.m_files, Rational(1) / p.dof});
  }
  return rows;
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
  std::ostringstream os;
  os << "series,tau,M,one_over_dof\n";
  for (const auto& r : rows) {
    os << r.series << ',' << r.tau << ',' << format_float(to_double(r.m)) << ',' << format_float(to_double(r.value))
       << '\n';
  }
  return os.str();
}

ordered_json figure_json(const std::vector<FigureRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back(ordered_json{{"series", r.series},
                               {"tau", r.tau},
                               {"M", to_fraction_string(r.m)},
                               {"one_over_dof", to_fraction_string(r.value)},
                               {"one_over_dof_float", to_double(r.value)}});
  }
  return out;
}

std::vector<GapRow> gap_sweep(int max_k) {
  if (max_k < 1) throw ConfigError("gap sweep needs max K >= 1");
  std::vector<GapRow> rows;
  for (int kt = 1; kt <= max_k; ++kt) {
    for (int kr = 1; kr <= max_k; ++kr) {
      for (int t = 1; t <= kt; ++t) {
        NetworkConfig cfg{kt, kr, kr, t};
        rows.push_back(GapRow{kt, kr, t, gap_ratio(cfg)});
      }
    }
  }
  return rows;
}

std::string gap_csv(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  os << "K_T,K_R,tau,ratio,within_factor_2\n";
  for (const auto& r : rows) {
    os << r.k_t << ',' << r.k_r << ',' << r.tau << ',' << format_float(to_double(r.ratio)) << ','
       << (r.ratio <= 2 ? "true" : "false") << '\n';
  }
  return os.str();
}

ordered_json gap_json(const std::vector<GapRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back(ordered_json{
        {"K_T", r.k_t}, {"K_R", r.k_r}, {"tau", r.tau}, {"ratio", to_fraction_string(r.ratio)}, {"within_factor_2", r.ratio <= 2}});
  }
  return out;
}

VerifyReport run_verify(const VerifyRequest& request) {
  request.cfg.validate();
  request.demand.validate(request.cfg);
  if (request.seeds.empty()) throw ConfigError("verification needs at least one seed");

  VerifyReport report;
  report.request = request;
  const auto& cfg = request.cfg;

  if (cfg.tau >= cfg.k_r) {
    report.broadcast_path = true;
    report.achieved_dof = Rational(cfg.k_r);
    for (auto seed : request.seeds) {
      VerifyRecord rec;
      rec.seed = seed;
      rec.broadcast = simulate_miso_bc(cfg, request.demand, seed, request.mode, request.tol);
      rec.flagged = rec.broadcast->flagged;
      rec.passed = rec.broadcast->checks_pass(request.tol);
      report.records.push_back(std::move(rec));
    }
  } else {
    const auto params = make_extension_params(cfg, request.n, request.mu_cap);
    report.params = params;
    report.achieved_dof = per_block_dof(cfg, request.n);
    const auto blocks = schedule_blocks(cfg, request.demand, request.limits);
    for (auto seed : request.seeds) {
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto ch = draw_channel(cfg, params, seed, request.mode, b);
        const auto precoders = build_precoders(ch, cfg, blocks[b], params, derive_seed(seed, 2 * b + 1));
        VerifyRecord rec;
        rec.seed = seed;
        rec.block = b;
        rec.alignment = simulate_block_noiseless(ch, cfg, blocks[b], precoders, params, derive_seed(seed, 2 * b + 2),
                                                 request.tol);
        rec.flagged = rec.alignment->flagged;
        rec.passed = rec.alignment->checks_pass(request.tol);
        report.records.push_back(std::move(rec));
      }
    }
  }

  std::sort(report.records.begin(), report.records.end(), [](const VerifyRecord& a, const VerifyRecord& b) {
    return std::tie(a.seed, a.block) < std::tie(b.seed, b.block);
  });
  for (const auto& r : report.records) {
    if (r.flagged) continue;
    ++report.unflagged;
    if (!r.passed) ++report.failures;
  }
  return report;
}

namespace {

ordered_json record_json(const VerifyReport& report, const VerifyRecord& r) {
  const auto& cfg = report.request.cfg;
  ordered_json j{{"config", config_to_json(cfg)}, {"seed", r.seed}, {"block", r.block}};
  if (r.alignment) {
    const auto& v = *r.alignment;
    j["n"] = report.params->n;
    j["mu_n"] = report.params->mu_n;
    j["zf_residual"] = v.zf_residual;
    j["align_residual"] = v.align_residual;
    j["align_ok"] = v.align_ok;
    j["ranks"] = ordered_json{{"V", v.rank_v}, {"V1", v.rank_v1}, {"R", v.rank_r}};
    j["expected_ranks"] = ordered_json{{"V", v.expected_rank_v}, {"V1", v.expected_rank_v1}, {"R", v.expected_rank_r}};
    j["decode_error"] = v.decode_error;
    j["condition"] = v.condition;
    j["achieved_dof"] = to_fraction_string(v.achieved_dof);
    j["flags"] = v.flags;
  } else {
    const auto& v = *r.broadcast;
    j["slots"] = v.slots;
    j["zf_residual"] = v.cross_interference;
    j["decode_error"] = v.decode_error;
    j["condition"] = v.condition;
    j["achieved_dof"] = to_fraction_string(v.achieved_dof);
    j["flags"] = v.flags;
  }
  j["passed"] = r.passed;
  return j;
}

}  // namespace

ordered_json verify_json(const VerifyReport& report) {
  ordered_json records = ordered_json::array();
  for (const auto& r : report.records) records.push_back(record_json(report, r));
  ordered_json summary{{"path", report.broadcast_path ? "broadcast" : "alignment"},
                       {"runs", report.records.size()},
                       {"unflagged", report.unflagged},
                       {"failures", report.failures},
                       {"achieved_dof", to_fraction_string(report.achieved_dof)},
                       {"passed", report.passed()}};
  if (report.params) {
    summary["n"] = report.params->n;
    summary["gamma"] = report.params->gamma;
    summary["mu_n"] = report.params->mu_n;
  }
  return ordered_json{{"config", config_to_json(report.request.cfg)},
                      {"channel", channel_mode_name(report.request.mode)},
                      {"summary", std::move(summary)},
                      {"records", std::move(records)}};
}

std::string verify_csv(const VerifyReport& report) {
  std::ostringstream os;
  os << "seed,block,path,mu_n,zf_residual,min_rank_R,decode_error,condition,achieved_dof,flagged,passed\n";
  for (const auto& r : report.records) {
    os << r.seed << ',' << r.block << ',';
    if (r.alignment) {
      const auto& v = *r.alignment;
      const auto min_rank = v.rank_r.empty() ? 0 : *std::min_element(v.rank_r.begin(), v.rank_r.end());
      os << "alignment," << report.params->mu_n << ',' << format_float(v.zf_residual) << ',' << min_rank << ','
         << format_float(v.decode_error) << ',' << format_float(v.condition) << ','
         << to_fraction_string(v.achieved_dof);
    } else {
      const auto& v = *r.broadcast;
      os << "broadcast," << v.slots << ',' << format_float(v.cross_interference) << ",," << format_float(v.decode_error)
         << ',' << format_float(v.condition) << ',' << to_fraction_string(v.achieved_dof);
    }
    os << ',' << (r.flagged ? "true" : "false") << ',' << (r.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ordered_json manifest_json(const RunManifest& m) {
  return ordered_json{{"command", m.command},
                      {"config", config_to_json(m.config)},
                      {"seeds", m.seeds},
                      {"n_values", m.n_values},
                      {"outputs", m.outputs},
                      {"tool_version", m.tool_version},
                      {"timestamp", m.timestamp}};
}

}  // namespace cachedof
