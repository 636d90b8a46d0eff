#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cachedof/channel.hpp"
#include "cachedof/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace cachedof;

namespace {

// Leibniz expansion over all permutations, sign from inversion count.
Complex leibniz(const ChannelRealization& ch, std::size_t u, const std::vector<int>& rows,
                const std::vector<int>& cols) {
  std::vector<int> p(rows.size());
  std::iota(p.begin(), p.end(), 0);
  Complex sum = 0;
  do {
    int inv = 0;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b) inv += p[a] > p[b];
    Complex term = inv % 2 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < p.size(); ++r) term *= ch.h(rows[r], cols[p[r]], u);
    sum += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

}  // namespace

TEST_CASE("extension parameters") {
  const auto p = make_extension_params(make_config(3, 3, 2), 1);
  CHECK(p.gamma == 3);
  CHECK(p.desired_width == 1);
  CHECK(p.aligned_width == 8);
  CHECK(p.mu_n == 11);
  CHECK(make_extension_params(make_config(3, 3, 2), 2).mu_n == 51);
  CHECK(make_extension_params(make_config(3, 3, 2), 3).mu_n == 145);
  const auto q = make_extension_params(make_config(4, 4, 3), 1);
  CHECK(q.gamma == 4);
  CHECK(q.mu_n == 20);
  CHECK_THROWS_AS(make_extension_params(make_config(3, 3, 3), 1), ConfigError);
  CHECK_THROWS_AS(make_extension_params(make_config(3, 3, 2), 0), ConfigError);
  try {
    make_extension_params(make_config(4, 4, 1), 4);
    FAIL("expected the cap to trigger");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("799530739") != std::string::npos);
  }
}

TEST_CASE("channel draws are deterministic per seed and stream") {
  const auto a = draw_channel(3, 3, 11, 7);
  const auto b = draw_channel(3, 3, 11, 7);
  const auto c = draw_channel(3, 3, 11, 8);
  const auto d = draw_channel(3, 3, 11, 7, ChannelMode::gaussian, 1);
  CHECK(a.coefficients() == b.coefficients());
  CHECK(a.coefficients() != c.coefficients());
  CHECK(a.coefficients() != d.coefficients());
  CHECK(a.coefficients().size() == 3 * 3 * 11);
  CHECK(a.matrix(4).rows() == 3);
  CHECK(a.matrix(4)(1, 2) == a.h(2, 3, 4));
}

TEST_CASE("gaussian draws have unit mean power") {
  const auto v = draw_coefficients(100000, 12345, ChannelMode::gaussian, 0);
  double power = 0;
  Complex mean = 0;
  for (auto z : v) {
    power += std::norm(z);
    mean += z;
  }
  CHECK(std::abs(power / v.size() - 1.0) < 0.02);
  CHECK(std::abs(mean / double(v.size())) < 0.02);
}

TEST_CASE("phase draws have unit modulus") {
  for (auto z : draw_coefficients(1000, 3, ChannelMode::phase, 0)) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
  CHECK(parse_channel_mode("phase") == ChannelMode::phase);
  CHECK_THROWS_AS(parse_channel_mode("rayleigh"), ConfigError);
}

TEST_CASE("minors agree with the Leibniz expansion") {
  const auto ch = draw_channel(5, 5, 4, 99);
  std::mt19937 rng(4);
  for (int size = 1; size <= 5; ++size) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> rows{1, 2, 3, 4, 5}, cols{1, 2, 3, 4, 5};
      std::shuffle(rows.begin(), rows.end(), rng);
      std::shuffle(cols.begin(), cols.end(), rng);
      rows.resize(size);
      cols.resize(size);
      const std::size_t u = trial % 4;
      const auto want = leibniz(ch, u, rows, cols);
      CHECK(std::abs(channel_minor(ch, u, rows, cols) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
  CHECK(channel_minor(ch, 0, std::vector<int>{}, std::vector<int>{}) == Complex(1));
  CHECK_THROWS_AS(channel_minor(ch, 0, std::vector<int>{1, 2}, std::vector<int>{1}), std::invalid_argument);
  CHECK_THROWS_AS(channel_minor(ch, 0, std::vector<int>{6}, std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("row order flips the sign only") {
  const auto ch = draw_channel(3, 3, 1, 5);
  const std::vector<int> cols{1, 2};
  CHECK(std::abs(channel_minor(ch, 0, std::vector<int>{3, 2}, cols) +
                 channel_minor(ch, 0, std::vector<int>{2, 3}, cols)) < 1e-14);
}

TEST_CASE("numerical rank ignores column scaling") {
  const auto v = draw_coefficients(8 * 5, 1, ChannelMode::gaussian, 0);
  Eigen::MatrixXcd a(8, 5);
  for (int c = 0; c < 5; ++c)
    for (int r = 0; r < 8; ++r) a(r, c) = v[c * 8 + r];
  a.col(4) = a.col(0) + 2.0 * a.col(1);
  CHECK(numerical_rank(a) == 4);
  Eigen::MatrixXcd scaled = a;
  scaled.col(0) *= 1e12;
  scaled.col(2) *= 1e-10;
  CHECK(numerical_rank(scaled) == 4);
  CHECK(numerical_rank(a.leftCols(4)) == 4);
  CHECK(numerical_rank(scaled.leftCols(4)) == 4);
  CHECK((std::isinf(normalized_condition(a)) || normalized_condition(a) > 1e12));
  CHECK(normalized_condition(scaled.leftCols(4)) < 1e6);
  CHECK(normalize_columns(Eigen::MatrixXcd::Zero(3, 2)).isZero());
}

TEST_CASE("projection residual detects containment") {
  const auto v = draw_coefficients(6 * 3, 2, ChannelMode::gaussian, 0);
  Eigen::MatrixXcd basis(6, 2), other(6, 1);
  for (int r = 0; r < 6; ++r) {
    basis(r, 0) = v[r];
    basis(r, 1) = v[6 + r];
    other(r, 0) = v[12 + r];
  }
  Eigen::VectorXcd inside = 3.0 * basis.col(0) - Complex(0, 2) * basis.col(1);
  CHECK(projection_residual(basis, inside) < 1e-12);
  CHECK(projection_residual(basis, other.col(0)) > 1e-3);
  CHECK(projection_residual(basis, Eigen::VectorXcd::Zero(6)) == 0.0);
  CHECK(max_projection_residual(basis, basis) < 1e-12);
}
