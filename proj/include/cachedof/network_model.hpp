#pragma once

// Combinatorial core of the cache-aided interference network: configuration,
// uncoded placement, subfile splitting and the circular-permutation block
// schedule. Transmitter, receiver and file indices are 1-based throughout,
// matching the usual [K] = {1..K} notation; windows wrap modulo K_T (for
// transmitters) or K_R (for receivers).

#include "cachedof/rational.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cachedof {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NetworkConfig {
  int k_t = 1;      // transmitters
  int k_r = 1;      // receivers
  int n_files = 1;  // library size N
  int tau = 1;      // cooperation order, M = tau * N / K_T

  // Throws ConfigError when any invariant is violated.
  void validate() const;

  // Cache size M in files.
  Rational cache_size() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

// Builds and validates a config. N defaults to K_R, the smallest valid library.
NetworkConfig make_config(int k_t, int k_r, int tau, std::optional<int> n_files = std::nullopt);

// Maps any integer onto [1..k] cyclically.
int wrap_index(long long x, int k);

// [first : last] with indices wrapped into [1..k]; empty when last < first.
std::vector<int> circular_range(long long first, long long last, int k);

using Permutation = std::vector<int>;

struct SubfileId {
  int file = 0;
  std::vector<int> storage_set;  // sorted, |S| = tau

  friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
};

// One smaller subfile: the part of W_{d_j,S} that `master` is responsible for,
// with `coop_window` (master first) an ordering of S and `excluded_window` an
// ordering of the transmitters that do not cache it.
struct MessageId {
  int receiver = 0;
  int master = 0;
  std::vector<int> coop_window;
  std::vector<int> excluded_window;

  friend auto operator<=>(const MessageId&, const MessageId&) = default;
};

struct TransmissionBlock {
  Permutation pi;                   // circular permutation anchored at 1
  std::vector<MessageId> messages;  // position i outer (1..K_T), receiver j inner

  // Message whose window starts at position `position` (1-based) of pi.
  const MessageId& message(int position, int receiver, int k_r) const;

  friend bool operator==(const TransmissionBlock&, const TransmissionBlock&) = default;
};

struct CachePlacement {
  std::vector<std::vector<SubfileId>> caches;  // caches[i - 1] is Z_i

  const std::vector<SubfileId>& cache(int transmitter) const { return caches.at(transmitter - 1); }
};

struct DemandVector {
  std::vector<int> files;  // d_j, j = 1..K_R

  void validate(const NetworkConfig& cfg) const;

  // d_j = ((j - 1) mod N) + 1; distinct whenever N >= K_R.
  static DemandVector cyclic(const NetworkConfig& cfg);
};

// Guard against the (K_T - 1)! blowup of the block schedule.
struct ScheduleLimits {
  int max_kt = 8;
};

// All k-subsets of [1..n] in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

// The (k-1)! circular permutations of [1..k], each anchored with 1 first, in
// lexicographic order of their tails.
std::vector<Permutation> circular_permutations(int k);

CachePlacement place_content(const NetworkConfig& cfg);

// Every smaller subfile that has to be delivered: K_R * K_T! messages.
std::vector<MessageId> split_subfiles(const NetworkConfig& cfg, const DemandVector& demand,
                                      ScheduleLimits limits = {});

TransmissionBlock make_block(const NetworkConfig& cfg, const Permutation& pi);

// The (K_T - 1)! blocks, one per circular permutation.
std::vector<TransmissionBlock> schedule_blocks(const NetworkConfig& cfg, const DemandVector& demand,
                                               ScheduleLimits limits = {});

// The placement-phase subfile W_{d_j,S} a message was carved from.
SubfileId parent_subfile(const MessageId& message, const DemandVector& demand);

}  // namespace cachedof
