#pragma once

// Symbol-extended channel realizations and their minors.
//
// A realization holds h[k][i][u] for receiver k in [1..K_R], transmitter i in
// [1..K_T] and extension slot u in [0, mu_n). Slots are independent draws, so
// one realization with many slots doubles as many independent channel uses.

#include "cachedof/network_model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cachedof {

using Complex = std::complex<double>;

enum class ChannelMode {
  gaussian,  // circularly-symmetric complex Gaussian, E|h|^2 = 1
  phase,     // unit modulus, uniform random phase
};

std::string_view channel_mode_name(ChannelMode mode);
ChannelMode parse_channel_mode(std::string_view name);  // throws ConfigError

inline constexpr std::size_t kDefaultMuCap = 4096;

// Alignment parameters of the two-layer scheme for tau < K_R.
struct ExtensionParams {
  int n = 1;
  int gamma = 0;                 // K_T (K_R - tau)
  std::size_t desired_width = 0; // n^gamma streams per message
  std::size_t aligned_width = 0; // (n+1)^gamma columns of the alignment space
  std::size_t mu_n = 0;          // K_T n^gamma + (K_R - tau)(n+1)^gamma
};

// Throws ConfigError if tau >= K_R, n < 1, or mu_n exceeds mu_cap (the
// computed mu_n is part of the message).
ExtensionParams make_extension_params(const NetworkConfig& cfg, int n, std::size_t mu_cap = kDefaultMuCap);

class ChannelRealization {
 public:
  ChannelRealization(int k_r, int k_t, std::size_t slots, std::uint64_t seed, ChannelMode mode,
                     std::vector<Complex> coefficients);

  int k_r() const { return k_r_; }
  int k_t() const { return k_t_; }
  std::size_t slots() const { return slots_; }
  std::uint64_t seed() const { return seed_; }
  ChannelMode mode() const { return mode_; }

  Complex h(int receiver, int transmitter, std::size_t u) const {
    return coefficients_[index(receiver, transmitter, u)];
  }

  // K_R x K_T channel matrix at slot u.
  Eigen::MatrixXcd matrix(std::size_t u) const;

  // max |h_{ki}(u)| over all k, i at slot u.
  double max_magnitude(std::size_t u) const;

  const std::vector<Complex>& coefficients() const { return coefficients_; }

 private:
  std::size_t index(int receiver, int transmitter, std::size_t u) const {
    return (u * static_cast<std::size_t>(k_r_) + (receiver - 1)) * k_t_ + (transmitter - 1);
  }

  int k_r_;
  int k_t_;
  std::size_t slots_;
  std::uint64_t seed_;
  ChannelMode mode_;
  std::vector<Complex> coefficients_;
};

// Deterministic in (seed, stream). `stream` separates independent draws that
// share a user-facing seed (e.g. different transmission blocks).
ChannelRealization draw_channel(int k_r, int k_t, std::size_t slots, std::uint64_t seed,
                                ChannelMode mode = ChannelMode::gaussian, std::uint64_t stream = 0);

ChannelRealization draw_channel(const NetworkConfig& cfg, const ExtensionParams& params, std::uint64_t seed,
                                ChannelMode mode = ChannelMode::gaussian, std::uint64_t stream = 0);

// SplitMix64 mix of (seed, tag); used to derive independent sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// Draws `count` i.i.d. values from the same distribution as the channel.
std::vector<Complex> draw_coefficients(std::size_t count, std::uint64_t seed, ChannelMode mode,
                                       std::uint64_t stream);

// Determinant of the submatrix of H(u) with the given rows and columns, taken
// in the order listed. Row order matters for the sign only. An empty selection
// has determinant 1. Throws std::invalid_argument on a size mismatch or an
// index out of range.
Complex channel_minor(const ChannelRealization& ch, std::size_t u, std::span<const int> rows,
                      std::span<const int> cols);

}  // namespace cachedof
