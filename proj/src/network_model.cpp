#include "cachedof/network_model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cachedof {

void NetworkConfig::validate() const {
  if (k_t < 1 || k_r < 1 || n_files < 1) {
    throw ConfigError("K_T, K_R and N must all be at least 1");
  }
  if (tau < 1 || tau > k_t) {
    throw ConfigError("tau must lie in [1, K_T] (got tau=" + std::to_string(tau) +
                      ", K_T=" + std::to_string(k_t) + ")");
  }
  if (n_files < k_r) {
    throw ConfigError("library must hold at least K_R files (N=" + std::to_string(n_files) +
                      ", K_R=" + std::to_string(k_r) + ")");
  }
}

Rational NetworkConfig::cache_size() const { return Rational(tau) * n_files / k_t; }

NetworkConfig make_config(int k_t, int k_r, int tau, std::optional<int> n_files) {
  NetworkConfig cfg{k_t, k_r, n_files.value_or(k_r), tau};
  cfg.validate();
  return cfg;
}

int wrap_index(long long x, int k) {
  long long r = (x - 1) % k;
  if (r < 0) r += k;
  return static_cast<int>(r + 1);
}

std::vector<int> circular_range(long long first, long long last, int k) {
  std::vector<int> out;
  for (long long x = first; x <= last; ++x) out.push_back(wrap_index(x, k));
  return out;
}

const MessageId& TransmissionBlock::message(int position, int receiver, int k_r) const {
  return messages.at(static_cast<std::size_t>(position - 1) * k_r + (receiver - 1));
}

void DemandVector::validate(const NetworkConfig& cfg) const {
  if (static_cast<int>(files.size()) != cfg.k_r) {
    throw ConfigError("demand vector needs exactly K_R=" + std::to_string(cfg.k_r) + " entries");
  }
  for (int f : files) {
    if (f < 1 || f > cfg.n_files) {
      throw ConfigError("demanded file " + std::to_string(f) + " outside [1, N]");
    }
  }
}

DemandVector DemandVector::cyclic(const NetworkConfig& cfg) {
  DemandVector d;
  for (int j = 1; j <= cfg.k_r; ++j) d.files.push_back(wrap_index(j, cfg.n_files));
  return d;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> current(k);
  std::iota(current.begin(), current.end(), 1);
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++current[i];
    for (int m = i + 1; m < k; ++m) current[m] = current[m - 1] + 1;
  }
  return out;
}

std::vector<Permutation> circular_permutations(int k) {
  if (k < 1) throw ConfigError("circular permutations need k >= 1");
  Permutation pi(k);
  std::iota(pi.begin(), pi.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(pi);
  } while (std::next_permutation(pi.begin() + 1, pi.end()));
  return out;
}

CachePlacement place_content(const NetworkConfig& cfg) {
  cfg.validate();
  const auto sets = combinations(cfg.k_t, cfg.tau);
  CachePlacement placement;
  placement.caches.resize(cfg.k_t);
  for (int f = 1; f <= cfg.n_files; ++f) {
    for (const auto& s : sets) {
      for (int i : s) placement.caches[i - 1].push_back(SubfileId{f, s});
    }
  }
  return placement;
}

namespace {

void check_limits(const NetworkConfig& cfg, const ScheduleLimits& limits) {
  if (cfg.k_t > limits.max_kt) {
    throw ConfigError("K_T=" + std::to_string(cfg.k_t) + " exceeds the schedule limit of " +
                      std::to_string(limits.max_kt) + " ((K_T-1)! blocks)");
  }
}

}  // namespace

std::vector<MessageId> split_subfiles(const NetworkConfig& cfg, const DemandVector& demand,
                                      ScheduleLimits limits) {
  cfg.validate();
  demand.validate(cfg);
  check_limits(cfg, limits);

  std::vector<MessageId> out;
  Permutation p(cfg.k_t);
  for (int j = 1; j <= cfg.k_r; ++j) {
    std::iota(p.begin(), p.end(), 1);
    do {
      MessageId m;
      m.receiver = j;
      m.master = p.front();
      m.coop_window.assign(p.begin(), p.begin() + cfg.tau);
      m.excluded_window.assign(p.begin() + cfg.tau, p.end());
      out.push_back(std::move(m));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

TransmissionBlock make_block(const NetworkConfig& cfg, const Permutation& pi) {
  if (static_cast<int>(pi.size()) != cfg.k_t) throw ConfigError("permutation length must equal K_T");
  auto at = [&](long long pos) { return pi[wrap_index(pos, cfg.k_t) - 1]; };

  TransmissionBlock block;
  block.pi = pi;
  block.messages.reserve(static_cast<std::size_t>(cfg.k_t) * cfg.k_r);
  for (int i = 1; i <= cfg.k_t; ++i) {
    std::vector<int> coop, excluded;
    for (long long pos = i; pos <= i + cfg.tau - 1; ++pos) coop.push_back(at(pos));
    for (long long pos = i + cfg.tau; pos <= cfg.k_t + i - 1; ++pos) excluded.push_back(at(pos));
    for (int j = 1; j <= cfg.k_r; ++j) {
      block.messages.push_back(MessageId{j, coop.front(), coop, excluded});
    }
  }
  return block;
}

std::vector<TransmissionBlock> schedule_blocks(const NetworkConfig& cfg, const DemandVector& demand,
                                               ScheduleLimits limits) {
  cfg.validate();
  demand.validate(cfg);
  check_limits(cfg, limits);

  std::vector<TransmissionBlock> blocks;
  for (const auto& pi : circular_permutations(cfg.k_t)) blocks.push_back(make_block(cfg, pi));
  return blocks;
}

SubfileId parent_subfile(const MessageId& message, const DemandVector& demand) {
  SubfileId id;
  id.file = demand.files.at(message.receiver - 1);
  id.storage_set = message.coop_window;
  std::sort(id.storage_set.begin(), id.storage_set.end());
  return id;
}

}  // namespace cachedof
