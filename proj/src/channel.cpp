#include "cachedof/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace cachedof {

std::string_view channel_mode_name(ChannelMode mode) {
  return mode == ChannelMode::gaussian ? "gaussian" : "phase";
}

ChannelMode parse_channel_mode(std::string_view name) {
  if (name == "gaussian") return ChannelMode::gaussian;
  if (name == "phase") return ChannelMode::phase;
  throw ConfigError("unknown channel mode '" + std::string(name) + "'");
}

namespace {

// Saturating power; returns false when base^exp exceeds `limit`.
bool checked_pow(std::size_t base, int exp, std::size_t limit, std::size_t& out) {
  out = 1;
  for (int e = 0; e < exp; ++e) {
    if (base != 0 && out > limit / base) return false;
    out *= base;
  }
  return true;
}

}  // namespace

ExtensionParams make_extension_params(const NetworkConfig& cfg, int n, std::size_t mu_cap) {
  cfg.validate();
  if (cfg.tau >= cfg.k_r) {
    throw ConfigError("alignment precoding needs tau < K_R; use the broadcast path for tau >= K_R");
  }
  if (n < 1) throw ConfigError("alignment parameter n must be at least 1");

  ExtensionParams p;
  p.n = n;
  p.gamma = cfg.k_t * (cfg.k_r - cfg.tau);
  const std::size_t huge = std::numeric_limits<std::size_t>::max() / 4;
  bool ok = checked_pow(n, p.gamma, huge / cfg.k_t, p.desired_width) &&
            checked_pow(n + 1, p.gamma, huge / cfg.k_r, p.aligned_width);
  if (!ok) {
    throw ConfigError("mu_n for n=" + std::to_string(n) + ", Gamma=" + std::to_string(p.gamma) +
                      " overflows; cap is " + std::to_string(mu_cap));
  }
  p.mu_n = cfg.k_t * p.desired_width + (cfg.k_r - cfg.tau) * p.aligned_width;
  if (p.mu_n > mu_cap) {
    throw ConfigError("mu_n=" + std::to_string(p.mu_n) + " exceeds the cap of " + std::to_string(mu_cap));
  }
  return p;
}

ChannelRealization::ChannelRealization(int k_r, int k_t, std::size_t slots, std::uint64_t seed, ChannelMode mode,
                                       std::vector<Complex> coefficients)
    : k_r_(k_r), k_t_(k_t), slots_(slots), seed_(seed), mode_(mode), coefficients_(std::move(coefficients)) {
  if (k_r < 1 || k_t < 1) throw std::invalid_argument("channel needs at least one receiver and transmitter");
  if (coefficients_.size() != static_cast<std::size_t>(k_r) * k_t * slots) {
    throw std::invalid_argument("channel coefficient count does not match K_R x K_T x slots");
  }
}

Eigen::MatrixXcd ChannelRealization::matrix(std::size_t u) const {
  Eigen::MatrixXcd m(k_r_, k_t_);
  for (int k = 1; k <= k_r_; ++k) {
    for (int i = 1; i <= k_t_; ++i) m(k - 1, i - 1) = h(k, i, u);
  }
  return m;
}

double ChannelRealization::max_magnitude(std::size_t u) const {
  double best = 0.0;
  for (int k = 1; k <= k_r_; ++k) {
    for (int i = 1; i <= k_t_; ++i) best = std::max(best, std::abs(h(k, i, u)));
  }
  return best;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Complex> draw_coefficients(std::size_t count, std::uint64_t seed, ChannelMode mode,
                                       std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<Complex> out(count);
  if (mode == ChannelMode::gaussian) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (auto& c : out) {
      double re = normal(rng);
      double im = normal(rng);
      c = Complex(re, im);
    }
  } else {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto& c : out) c = std::polar(1.0, angle(rng));
  }
  return out;
}

ChannelRealization draw_channel(int k_r, int k_t, std::size_t slots, std::uint64_t seed, ChannelMode mode,
                                std::uint64_t stream) {
  auto coefficients = draw_coefficients(static_cast<std::size_t>(k_r) * k_t * slots, seed, mode, stream);
  return ChannelRealization(k_r, k_t, slots, seed, mode, std::move(coefficients));
}

ChannelRealization draw_channel(const NetworkConfig& cfg, const ExtensionParams& params, std::uint64_t seed,
                                ChannelMode mode, std::uint64_t stream) {
  return draw_channel(cfg.k_r, cfg.k_t, params.mu_n, seed, mode, stream);
}

Complex channel_minor(const ChannelRealization& ch, std::size_t u, std::span<const int> rows,
                      std::span<const int> cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs equally many rows and columns");
  if (rows.size() > static_cast<std::size_t>(std::min(ch.k_r(), ch.k_t()))) {
    throw std::invalid_argument("minor larger than the channel matrix");
  }
  if (u >= ch.slots()) throw std::invalid_argument("slot index out of range");
  for (int r : rows) {
    if (r < 1 || r > ch.k_r()) throw std::invalid_argument("receiver index out of range");
  }
  for (int c : cols) {
    if (c < 1 || c > ch.k_t()) throw std::invalid_argument("transmitter index out of range");
  }
  const auto size = static_cast<Eigen::Index>(rows.size());
  switch (size) {
    case 0: return Complex(1.0, 0.0);
    case 1: return ch.h(rows[0], cols[0], u);
    case 2:
      return ch.h(rows[0], cols[0], u) * ch.h(rows[1], cols[1], u) -
             ch.h(rows[0], cols[1], u) * ch.h(rows[1], cols[0], u);
    default: break;
  }
  Eigen::MatrixXcd sub(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = 0; c < size; ++c) sub(r, c) = ch.h(rows[r], cols[c], u);
  }
  return sub.partialPivLu().determinant();
}

}  // namespace cachedof
