#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cachedof/dof_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace cachedof;

namespace {

// Pascal triangle, independent of binomial().
BigInt pascal(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<BigInt> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, 1);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

// Direct scan over sigma of the cooperative X-network bound.
Rational coop_x_oracle(int kt, int kr, int tau, int* argmin = nullptr) {
  Rational best = -1;
  const BigInt c = pascal(kt, tau);
  for (int s = tau; s <= std::min(kt, kr); ++s) {
    Rational v(BigInt(tau) * c * kr, BigInt(tau) * c + BigInt(kr - s) * pascal(s - 1, tau - 1));
    if (best < 0 || v < best) {
      best = v;
      if (argmin) *argmin = s;
    }
  }
  return best;
}

bool near(const Rational& r, double want, double tol) { return std::abs(to_double(r) - want) <= tol; }

}  // namespace

TEST_CASE("50x50, M=25 reference values") {
  const auto cfg = make_config(50, 50, 25);
  CHECK(dof_proposed(cfg) == Rational(100, 3));
  CHECK(dof_zf(cfg) == Rational(25));
  CHECK(dof_ia(cfg) == Rational(2500, 99));
  CHECK(dof_mixed(cfg) == Rational(1300, 51));
  CHECK(near(dof_proposed(cfg), 33.33, 0.01));
  CHECK(near(dof_zf(cfg), 25.0, 0.01));
  CHECK(near(dof_ia(cfg), 25.25, 0.01));
  CHECK(near(dof_mixed(cfg), 25.49, 0.01));
  CHECK(ndt(dof_proposed(cfg), cfg) == Rational(3, 2));
}

TEST_CASE("3x3 golden values") {
  const auto cfg = make_config(3, 3, 2);
  CHECK(dof_proposed(cfg) == Rational(9, 4));
  CHECK(coop_x_upper_bound(cfg) == Rational(18, 7));
  CHECK(coop_x_upper_bound_detail(cfg).argument == 2);
  CHECK(dof_mixed(cfg) == Rational(18, 7));
  CHECK(dof_mixed(make_config(3, 3, 1)) == Rational(9, 5));
  CHECK(cutset_bound(cfg) == Rational(3));
}

TEST_CASE("10x10 cooperative X-network bound") {
  int arg = 0;
  const auto want = coop_x_oracle(10, 10, 2, &arg);
  CHECK(want == Rational(90, 11));
  CHECK(coop_x_upper_bound(make_config(10, 10, 2)) == want);
  const auto d = coop_x_upper_bound_detail(make_config(10, 10, 2));
  CHECK(d.value == want);
  CHECK(d.argument == arg);
  CHECK(1 / coop_x_upper_bound(make_config(10, 10, 9)) == Rational(91, 900));
  CHECK(coop_x_upper_bound(make_config(10, 10, 10)) == Rational(10));
  CHECK_THROWS_AS(coop_x_upper_bound(make_config(10, 4, 5)), ConfigError);
}

TEST_CASE("bound formulas against the oracle over a grid") {
  for (int kt = 1; kt <= 12; ++kt) {
    for (int kr = 1; kr <= 12; ++kr) {
      for (int tau = 1; tau <= kt; ++tau) {
        const auto cfg = make_config(kt, kr, tau);
        const auto p = dof_proposed(cfg);
        CHECK(p == std::min(Rational(kt * kr, kt + kr - tau), Rational(kr)));
        CHECK(dof_zf(cfg) == Rational(std::min(tau, kr)));
        CHECK(dof_ia(cfg) == Rational(kt * kr, kt + kr - 1));
        CHECK(p >= dof_zf(cfg));
        CHECK(p >= dof_ia(cfg));
        CHECK(gap_ratio(cfg) <= 2);
        CHECK(gap_ratio(cfg) == cutset_bound(cfg) / p);
        if (tau <= std::min(kt, kr)) {
          const auto c = coop_x_upper_bound(cfg);
          CHECK(c == coop_x_oracle(kt, kr, tau));
          CHECK(p <= c);
          CHECK(c <= cutset_bound(cfg));
          if (tau == kr - 1) {
            const BigInt b = pascal(kt, tau);
            CHECK(c == Rational(BigInt(tau) * b * kr, BigInt(tau) * b + 1));
          }
        }
        if (tau > 1 && tau < kr - 1) CHECK(p >= dof_mixed(cfg));
      }
    }
  }
}

TEST_CASE("proposed scheme meets the one-shot bound when receivers are few") {
  // With tau = K_T the scheme is full broadcast.
  for (int k = 1; k <= 8; ++k) CHECK(dof_proposed(make_config(k, k, k)) == Rational(k));
  CHECK(dof_proposed(make_config(4, 2, 2)) == Rational(2));
  CHECK(dof_proposed(make_config(4, 2, 1)) == Rational(8, 5));
}

TEST_CASE("gap ratio at tau=1 approaches two") {
  CHECK(gap_ratio(make_config(20, 20, 1)) == Rational(39, 20));
  CHECK(gap_ratio(make_config(1, 1, 1)) == Rational(1));
}

TEST_CASE("scheme names round-trip") {
  for (auto s : all_schemes()) CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK(scheme_name(Scheme::coop_x) == "coopx_bound");
  CHECK_THROWS_AS(parse_scheme("bogus"), ConfigError);
  CHECK_FALSE(scheme_applies(Scheme::coop_x, make_config(10, 4, 5)));
  CHECK(scheme_applies(Scheme::proposed, make_config(10, 4, 5)));
}

TEST_CASE("reciprocal envelopes are convex and non-increasing") {
  const auto base = make_config(50, 50, 1, 50);
  for (auto s : {Scheme::proposed, Scheme::zf, Scheme::ia, Scheme::mixed}) {
    const auto pts = corner_points(base, s);
    const auto env = reciprocal_envelope(pts);
    CHECK(env.is_convex());
    CHECK(env.is_non_increasing());
    for (const auto& pt : pts) CHECK(env.evaluate(pt.m_files) <= 1 / pt.dof);
  }
  const auto env = reciprocal_envelope(corner_points(base, Scheme::proposed));
  CHECK(env.evaluate(Rational(50)) == Rational(1, 50));
  CHECK(env.evaluate(Rational(1)) == Rational(99, 2500));
  // Corner values lie on the hull for the proposed scheme.
  CHECK(env.evaluate(Rational(25)) == Rational(3, 100));
}

TEST_CASE("envelope of a non-convex point set drops the bump") {
  std::vector<DofPoint> pts{
      {1, Rational(1), Rational(1), Scheme::zf},
      {2, Rational(2), Rational(1), Scheme::zf},  // 1/DoF = 1 sits above the chord
      {3, Rational(3), Rational(4), Scheme::zf},
  };
  const auto env = reciprocal_envelope(pts);
  CHECK(env.breakpoints.size() == 2);
  CHECK(env.evaluate(Rational(2)) == Rational(5, 8));
  CHECK(env.is_convex());
}
