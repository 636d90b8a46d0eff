#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cachedof/report.hpp"

#include <sstream>
#include <string>

using namespace cachedof;

namespace {

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

VerifyRequest request(int kt, int kr, int tau, int n, int seeds) {
  VerifyRequest r;
  r.cfg = make_config(kt, kr, tau);
  r.demand = DemandVector::cyclic(r.cfg);
  r.n = n;
  for (int s = 1; s <= seeds; ++s) r.seeds.push_back(static_cast<std::uint64_t>(s));
  return r;
}

}  // namespace

TEST_CASE("float formatting") {
  CHECK(format_float(100.0 / 3) == "33.3333");
  CHECK(format_float(0.02) == "0.02");
  CHECK(format_float(25) == "25");
}

TEST_CASE("bounds table rows") {
  const auto rows = bounds_table(make_config(50, 50, 1, 50), {}, 25);
  CHECK(rows.size() == all_schemes().size());
  const auto csv = bounds_csv(rows);
  CHECK(csv.rfind("K_T,K_R,N,tau,M,scheme,dof,one_over_dof,ndt\n", 0) == 0);
  CHECK(has_line(csv, "50,50,50,25,25,proposed,33.3333,0.03,1.5"));
  CHECK(has_line(csv, "50,50,50,25,25,zf,25,0.04,2"));
  CHECK(has_line(csv, "50,50,50,25,25,ia,25.2525,0.0396,1.98"));
  CHECK(has_line(csv, "50,50,50,25,25,mixed,25.4902,0.0392308,1.96154"));
  const auto j = bounds_json(rows);
  CHECK(j[0]["dof"] == "100/3");

  const auto all = bounds_table(make_config(10, 4, 1), {Scheme::coop_x}, std::nullopt);
  CHECK(all.size() == 4);  // tau > min(K_T, K_R) rows are skipped
}

TEST_CASE("figure data") {
  const auto f2 = figure2_rows(make_config(50, 50, 1, 50));
  CHECK(f2.size() == 4 * 50);
  CHECK(f2[49].series == "proposed");
  CHECK(f2[49].value == Rational(1, 50));
  const auto f4 = figure4_rows(make_config(10, 10, 1));
  CHECK(f4.size() == 10);
  CHECK(f4[1].value == Rational(11, 90));
  CHECK(f4[8].value == Rational(91, 900));
  CHECK(f4[9].value == Rational(1, 10));
  CHECK(has_line(figure_csv(f4), "coopx_bound,2,2,0.122222"));
  CHECK(figure_json(f4)[1]["one_over_dof"] == "11/90");
}

TEST_CASE("gap sweep stays below two") {
  const auto rows = gap_sweep(12);
  CHECK(rows.size() == 12 * (12 * 13 / 2));  // K_R choices times tau <= K_T
  for (const auto& r : rows) CHECK(r.ratio <= 2);
  CHECK(gap_csv(rows).rfind("K_T,K_R,tau,", 0) == 0);
}

TEST_CASE("verify passes for the 3x3 case and is deterministic") {
  const auto req = request(3, 3, 2, 1, 4);
  const auto a = run_verify(req);
  CHECK(a.records.size() == 8);
  CHECK(a.passed());
  CHECK(a.exit_code() == 0);
  CHECK(a.achieved_dof == Rational(9, 11));
  CHECK(a.params->mu_n == 11);
  const auto b = run_verify(req);
  CHECK(verify_json(a).dump() == verify_json(b).dump());
  CHECK(verify_csv(a) == verify_csv(b));
}

TEST_CASE("verify takes the broadcast path when tau >= K_R") {
  const auto r = run_verify(request(4, 2, 2, 1, 3));
  CHECK(r.broadcast_path);
  CHECK(r.achieved_dof == Rational(2));
  CHECK(r.passed());
}

TEST_CASE("verify refuses oversized extensions and bad seeds") {
  CHECK_THROWS_AS(run_verify(request(4, 4, 1, 4, 1)), ConfigError);
  auto empty = request(3, 3, 2, 1, 0);
  CHECK_THROWS_AS(run_verify(empty), ConfigError);
}

TEST_CASE("an impossible tolerance fails verification") {
  auto req = request(3, 3, 2, 1, 2);
  req.tol.decode = 0.0;
  const auto r = run_verify(req);
  CHECK_FALSE(r.passed());
  CHECK(r.exit_code() == 1);
}

TEST_CASE("manifest carries the run inputs") {
  RunManifest m;
  m.command = "verify";
  m.config = make_config(3, 3, 2);
  m.seeds = {1, 2};
  m.n_values = {1};
  m.timestamp = utc_timestamp();
  const auto j = manifest_json(m);
  CHECK(j["command"] == "verify");
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["seeds"].size() == 2);
  CHECK(m.timestamp.size() == 20);
  CHECK(m.timestamp.back() == 'Z');
}
