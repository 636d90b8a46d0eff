#include "cachedof/precoding.hpp"

#include "cachedof/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cachedof {

std::vector<int> protected_receivers(const NetworkConfig& cfg, int receiver) {
  return circular_range(receiver + 1, receiver + cfg.tau - 1, cfg.k_r);
}

std::vector<int> interfered_receivers(const NetworkConfig& cfg, int receiver) {
  return circular_range(receiver + cfg.tau, cfg.k_r + receiver - 1, cfg.k_r);
}

std::vector<int> interferers_at(const NetworkConfig& cfg, int receiver) {
  return circular_range(receiver + 1, cfg.k_r + receiver - cfg.tau, cfg.k_r);
}

std::vector<int> surviving_rows(const NetworkConfig& cfg, int intended, int observed) {
  std::vector<int> rows{observed};
  for (int r : protected_receivers(cfg, intended)) rows.push_back(r);
  return rows;
}

ZfPrecoder zf_precoder(const ChannelRealization& ch, const NetworkConfig& cfg, const MessageId& message) {
  if (static_cast<int>(message.coop_window.size()) != cfg.tau) {
    throw std::invalid_argument("message window size differs from tau");
  }
  if (cfg.tau > cfg.k_r) throw std::invalid_argument("ZF layer needs tau <= K_R");
  ZfPrecoder zf;
  zf.receiver = message.receiver;
  zf.transmitters = message.coop_window;
  const auto rows = protected_receivers(cfg, message.receiver);
  const int t = cfg.tau;
  zf.gains.assign(t, std::vector<Complex>(ch.slots()));
  std::vector<int> cols(t - 1);
  for (int l = 0; l < t; ++l) {
    for (int c = 0, w = 0; c < t; ++c) {
      if (c != l) cols[w++] = message.coop_window[c];
    }
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t u = 0; u < ch.slots(); ++u) zf.gains[l][u] = sign * channel_minor(ch, u, rows, cols);
  }
  return zf;
}

Complex aggregate_gain(const ChannelRealization& ch, const ZfPrecoder& zf, int receiver, std::size_t u) {
  Complex sum(0.0, 0.0);
  for (std::size_t l = 0; l < zf.transmitters.size(); ++l) sum += ch.h(receiver, zf.transmitters[l], u) * zf.gains[l][u];
  return sum;
}

std::vector<std::vector<int>> exponent_tuples(int count, int max_exponent) {
  if (count < 0 || max_exponent < 0) throw std::invalid_argument("exponent tuples need non-negative sizes");
  std::vector<std::vector<int>> out;
  std::vector<int> current(count, 0);
  while (true) {
    out.push_back(current);
    int pos = count - 1;
    while (pos >= 0 && current[pos] == max_exponent) current[pos--] = 0;
    if (pos < 0) break;
    ++current[pos];
  }
  return out;
}

namespace {

// powers[g][e] = gain_g .^ e for e = 0..max_exponent
using PowerTable = std::vector<std::vector<Eigen::VectorXcd>>;

PowerTable power_table(const std::vector<AlignmentTerm>& terms, int max_exponent, Eigen::Index length) {
  PowerTable table(terms.size());
  for (std::size_t g = 0; g < terms.size(); ++g) {
    table[g].push_back(Eigen::VectorXcd::Ones(length));
    for (int e = 1; e <= max_exponent; ++e) table[g].push_back(table[g].back().cwiseProduct(terms[g].gain));
  }
  return table;
}

Eigen::MatrixXcd monomial_matrix(const Eigen::VectorXcd& a, const PowerTable& powers, int max_exponent) {
  const auto tuples = exponent_tuples(static_cast<int>(powers.size()), max_exponent);
  Eigen::MatrixXcd m(a.size(), static_cast<Eigen::Index>(tuples.size()));
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    Eigen::VectorXcd col = a;
    for (std::size_t g = 0; g < powers.size(); ++g) col = col.cwiseProduct(powers[g][tuples[t][g]]);
    m.col(static_cast<Eigen::Index>(t)) = col;
  }
  return m;
}

std::vector<int> window_at(const NetworkConfig& cfg, const Permutation& pi, int position) {
  std::vector<int> w;
  for (long long p = position; p <= position + cfg.tau - 1; ++p) w.push_back(pi[wrap_index(p, cfg.k_t) - 1]);
  return w;
}

void check_block(const NetworkConfig& cfg, const TransmissionBlock& block) {
  if (static_cast<int>(block.pi.size()) != cfg.k_t ||
      block.messages.size() != static_cast<std::size_t>(cfg.k_t) * cfg.k_r) {
    throw std::invalid_argument("block does not match the network configuration");
  }
}

}  // namespace

std::vector<IaPrecoder> ia_precoders(const ChannelRealization& ch, const NetworkConfig& cfg,
                                     const TransmissionBlock& block, const ExtensionParams& params,
                                     std::uint64_t a_seed) {
  if (cfg.tau >= cfg.k_r) throw std::invalid_argument("alignment layer needs tau < K_R");
  check_block(cfg, block);
  if (ch.slots() != params.mu_n) throw std::invalid_argument("channel slot count differs from mu_n");
  const auto mu = static_cast<Eigen::Index>(params.mu_n);

  std::vector<IaPrecoder> out;
  for (int j = 1; j <= cfg.k_r; ++j) {
    IaPrecoder ia;
    ia.receiver = j;
    for (int k : interfered_receivers(cfg, j)) {
      for (int i = 1; i <= cfg.k_t; ++i) {
        AlignmentTerm term;
        term.observed = k;
        term.position = i;
        term.rows = surviving_rows(cfg, j, k);
        term.cols = window_at(cfg, block.pi, i);
        term.gain.resize(mu);
        for (Eigen::Index u = 0; u < mu; ++u) {
          term.gain(u) = channel_minor(ch, static_cast<std::size_t>(u), term.rows, term.cols);
        }
        ia.terms.push_back(std::move(term));
      }
    }
    const auto a = draw_coefficients(params.mu_n, a_seed, ch.mode(), static_cast<std::uint64_t>(j));
    ia.a = Eigen::Map<const Eigen::VectorXcd>(a.data(), mu);
    const auto powers = power_table(ia.terms, params.n, mu);
    ia.v = monomial_matrix(ia.a, powers, params.n);
    ia.v1 = monomial_matrix(ia.a, powers, params.n - 1);
    out.push_back(std::move(ia));
  }
  return out;
}

PrecoderSet build_precoders(const ChannelRealization& ch, const NetworkConfig& cfg, const TransmissionBlock& block,
                            const ExtensionParams& params, std::uint64_t a_seed) {
  PrecoderSet set;
  for (const auto& m : block.messages) set.zf.push_back(zf_precoder(ch, cfg, m));
  set.ia = ia_precoders(ch, cfg, block, params, a_seed);
  return set;
}

Eigen::MatrixXcd assemble_decode_matrix(const ChannelRealization& ch, const NetworkConfig& cfg,
                                        const TransmissionBlock& block, const PrecoderSet& precoders,
                                        const ExtensionParams& params, int receiver) {
  check_block(cfg, block);
  const auto mu = static_cast<Eigen::Index>(params.mu_n);
  const auto dw = static_cast<Eigen::Index>(params.desired_width);
  const auto aw = static_cast<Eigen::Index>(params.aligned_width);
  Eigen::MatrixXcd r(mu, mu);
  const auto& v1 = precoders.ia.at(receiver - 1).v1;
  Eigen::Index col = 0;
  for (int i = 1; i <= cfg.k_t; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i - 1) * cfg.k_r + (receiver - 1);
    Eigen::VectorXcd gain(mu);
    for (Eigen::Index u = 0; u < mu; ++u) {
      gain(u) = aggregate_gain(ch, precoders.zf.at(idx), receiver, static_cast<std::size_t>(u));
    }
    r.middleCols(col, dw) = gain.asDiagonal() * v1;
    col += dw;
  }
  for (int j : interferers_at(cfg, receiver)) {
    r.middleCols(col, aw) = precoders.ia.at(j - 1).v;
    col += aw;
  }
  if (col != mu) throw std::logic_error("decode matrix is not square");
  return r;
}

bool BlockVerdict::checks_pass(const VerifyTolerances& tol) const {
  if (!(zf_residual < tol.zf)) return false;
  if (std::find(align_ok.begin(), align_ok.end(), false) != align_ok.end()) return false;
  auto all_equal = [](const std::vector<std::size_t>& v, std::size_t want) {
    return std::all_of(v.begin(), v.end(), [want](std::size_t x) { return x == want; });
  };
  if (!all_equal(rank_v, expected_rank_v) || !all_equal(rank_v1, expected_rank_v1) ||
      !all_equal(rank_r, expected_rank_r)) {
    return false;
  }
  return decode_error < tol.decode;
}

BlockVerdict simulate_block_noiseless(const ChannelRealization& ch, const NetworkConfig& cfg,
                                      const TransmissionBlock& block, const PrecoderSet& precoders,
                                      const ExtensionParams& params, std::uint64_t payload_seed,
                                      const VerifyTolerances& tol, PayloadMode payload) {
  check_block(cfg, block);
  const auto mu = static_cast<Eigen::Index>(params.mu_n);
  const auto dw = static_cast<Eigen::Index>(params.desired_width);

  BlockVerdict verdict;
  verdict.expected_rank_v = params.aligned_width;
  verdict.expected_rank_v1 = params.desired_width;
  verdict.expected_rank_r = params.mu_n;
  verdict.achieved_dof = per_block_dof(cfg, params.n);

  // Nulling at the protected receivers, relative to (max |h|)^tau per slot.
  for (const auto& zf : precoders.zf) {
    for (int k : protected_receivers(cfg, zf.receiver)) {
      for (std::size_t u = 0; u < params.mu_n; ++u) {
        const double scale = std::pow(ch.max_magnitude(u), cfg.tau);
        verdict.zf_residual = std::max(verdict.zf_residual, std::abs(aggregate_gain(ch, zf, k, u)) / scale);
      }
    }
  }

  // Alignment: every interfering copy diag(M) V1_j must lie in span(V_j).
  for (const auto& ia : precoders.ia) {
    const std::size_t rank_v = numerical_rank(ia.v, tol.rank);
    verdict.rank_v.push_back(rank_v);
    verdict.rank_v1.push_back(numerical_rank(ia.v1, tol.rank));
    Eigen::MatrixXcd stacked(mu, ia.v.cols() + static_cast<Eigen::Index>(ia.terms.size()) * ia.v1.cols());
    stacked.leftCols(ia.v.cols()) = ia.v;
    Eigen::Index col = ia.v.cols();
    for (const auto& term : ia.terms) {
      Eigen::MatrixXcd copy = term.gain.asDiagonal() * ia.v1;
      verdict.align_residual = std::max(verdict.align_residual, max_projection_residual(ia.v, copy));
      stacked.middleCols(col, ia.v1.cols()) = copy;
      col += ia.v1.cols();
    }
    const bool ok = numerical_rank(stacked, tol.rank) == rank_v && rank_v == params.aligned_width;
    verdict.align_ok.push_back(ok);
  }

  // Payload streams, one n^Gamma vector per message.
  std::vector<Eigen::VectorXcd> streams;
  for (std::size_t m = 0; m < block.messages.size(); ++m) {
    if (payload == PayloadMode::zero) {
      streams.push_back(Eigen::VectorXcd::Zero(dw));
    } else {
      const auto x = draw_coefficients(params.desired_width, payload_seed, ChannelMode::gaussian, m);
      streams.push_back(Eigen::Map<const Eigen::VectorXcd>(x.data(), dw));
    }
  }

  // Transmitted signals X_l, built from each transmitter's cached messages.
  std::vector<Eigen::VectorXcd> tx(cfg.k_t, Eigen::VectorXcd::Zero(mu));
  for (std::size_t m = 0; m < block.messages.size(); ++m) {
    const auto& msg = block.messages[m];
    const auto& zf = precoders.zf[m];
    const Eigen::VectorXcd shaped = precoders.ia.at(msg.receiver - 1).v1 * streams[m];
    for (std::size_t l = 0; l < zf.transmitters.size(); ++l) {
      auto& x = tx[zf.transmitters[l] - 1];
      for (Eigen::Index u = 0; u < mu; ++u) x(u) += zf.gains[l][static_cast<std::size_t>(u)] * shaped(u);
    }
  }

  for (int k = 1; k <= cfg.k_r; ++k) {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(mu);
    for (int l = 1; l <= cfg.k_t; ++l) {
      for (Eigen::Index u = 0; u < mu; ++u) y(u) += ch.h(k, l, static_cast<std::size_t>(u)) * tx[l - 1](u);
    }
    verdict.signal_norm = std::max(verdict.signal_norm, y.norm());

    const Eigen::MatrixXcd r = assemble_decode_matrix(ch, cfg, block, precoders, params, k);
    const Eigen::VectorXd sv = normalized_singular_values(r);
    std::size_t rank = 0;
    for (Eigen::Index s = 0; s < sv.size(); ++s) {
      if (sv(s) > tol.rank * sv(0)) ++rank;
    }
    verdict.rank_r.push_back(rank);
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    verdict.condition = std::max(verdict.condition, cond);

    // Solve in normalized coordinates, then undo the column scaling.
    const Eigen::VectorXd scales = column_scales(r);
    Eigen::MatrixXcd rn = r;
    for (Eigen::Index c = 0; c < r.cols(); ++c) rn.col(c) /= scales(c);
    Eigen::VectorXcd z = rn.fullPivLu().solve(y);
    for (Eigen::Index c = 0; c < z.size(); ++c) z(c) /= scales(c);

    double err2 = 0.0;
    double ref2 = 0.0;
    for (int i = 1; i <= cfg.k_t; ++i) {
      const std::size_t idx = static_cast<std::size_t>(i - 1) * cfg.k_r + (k - 1);
      const Eigen::VectorXcd est = z.segment(static_cast<Eigen::Index>(i - 1) * dw, dw);
      err2 += (est - streams[idx]).squaredNorm();
      ref2 += streams[idx].squaredNorm();
    }
    const double err = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
    if (std::isfinite(err)) {
      verdict.decode_error = std::max(verdict.decode_error, err);
    } else {
      verdict.decode_error = INFINITY;
    }
  }

  if (!(verdict.condition <= tol.condition)) {
    verdict.flagged = true;
    verdict.flags.push_back("ill_conditioned_decode_matrix");
  }
  return verdict;
}

Rational per_block_dof(const NetworkConfig& cfg, int n) {
  if (cfg.tau >= cfg.k_r) throw std::domain_error("per-block alignment DoF needs tau < K_R");
  if (n < 1) throw std::domain_error("n must be at least 1");
  const int gamma = cfg.k_t * (cfg.k_r - cfg.tau);
  const BigInt desired = boost::multiprecision::pow(BigInt(n), gamma);
  const BigInt aligned = boost::multiprecision::pow(BigInt(n + 1), gamma);
  return Rational(BigInt(cfg.k_r) * cfg.k_t * desired, BigInt(cfg.k_t) * desired + BigInt(cfg.k_r - cfg.tau) * aligned);
}

int Polynomial::degree() const {
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
    if (coeffs[d] != 0) return d;
  }
  return -1;
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

RationalFunction per_block_dof_function(const NetworkConfig& cfg) {
  if (cfg.tau >= cfg.k_r) throw std::domain_error("per-block alignment DoF needs tau < K_R");
  const int gamma = cfg.k_t * (cfg.k_r - cfg.tau);
  RationalFunction f;
  f.numerator.coeffs.assign(gamma + 1, BigInt(0));
  f.numerator.coeffs[gamma] = BigInt(cfg.k_r) * cfg.k_t;
  f.denominator.coeffs.assign(gamma + 1, BigInt(0));
  for (int c = 0; c <= gamma; ++c) f.denominator.coeffs[c] = BigInt(cfg.k_r - cfg.tau) * binomial(gamma, c);
  f.denominator.coeffs[gamma] += cfg.k_t;
  return f;
}

Rational limit_at_infinity(const RationalFunction& f) {
  const int dn = f.numerator.degree();
  const int dd = f.denominator.degree();
  if (dd < 0) throw std::domain_error("zero denominator");
  if (dn < dd) return Rational(0);
  if (dn > dd) throw std::domain_error("rational function diverges");
  return Rational(f.numerator.coeffs[dn], f.denominator.coeffs[dd]);
}

bool MisoVerdict::checks_pass(const VerifyTolerances& tol) const {
  return cross_interference < tol.zf && decode_error < tol.decode;
}

MisoVerdict simulate_miso_bc(const NetworkConfig& cfg, const DemandVector& demand, std::uint64_t seed,
                             ChannelMode mode, const VerifyTolerances& tol) {
  cfg.validate();
  demand.validate(cfg);
  if (cfg.tau < cfg.k_r) throw ConfigError("broadcast path needs tau >= K_R");

  const auto subsets = combinations(cfg.k_t, cfg.tau);
  const auto ch = draw_channel(cfg.k_r, cfg.k_t, subsets.size(), seed, mode);
  const auto kr = static_cast<Eigen::Index>(cfg.k_r);
  const auto t = static_cast<Eigen::Index>(cfg.tau);

  MisoVerdict verdict;
  verdict.slots = subsets.size();
  verdict.achieved_dof = Rational(cfg.k_r);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    Eigen::MatrixXcd hs(kr, t);
    for (Eigen::Index k = 0; k < kr; ++k) {
      for (Eigen::Index c = 0; c < t; ++c) hs(k, c) = ch.h(static_cast<int>(k + 1), subsets[s][c], s);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hs);
    const auto sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    verdict.condition = std::max(verdict.condition, cond);

    // Right inverse: H_S W = I.
    const Eigen::MatrixXcd w = hs.adjoint() * (hs * hs.adjoint()).fullPivLu().inverse();
    const Eigen::MatrixXcd eff = hs * w;
    double diag_min = INFINITY;
    double off_max = 0.0;
    for (Eigen::Index a = 0; a < kr; ++a) {
      for (Eigen::Index b = 0; b < kr; ++b) {
        if (a == b) {
          diag_min = std::min(diag_min, std::abs(eff(a, b)));
        } else {
          off_max = std::max(off_max, std::abs(eff(a, b)));
        }
      }
    }
    verdict.cross_interference = std::max(verdict.cross_interference, off_max / diag_min);

    const auto payload = draw_coefficients(static_cast<std::size_t>(kr), derive_seed(seed, s + 1),
                                           ChannelMode::gaussian, 0);
    const Eigen::Map<const Eigen::VectorXcd> streams(payload.data(), kr);
    const Eigen::VectorXcd received = hs * (w * streams);
    const double err = (received - streams).norm() / streams.norm();
    verdict.decode_error = std::max(verdict.decode_error, std::isfinite(err) ? err : INFINITY);

    for (int j = 1; j <= cfg.k_r; ++j) verdict.delivered.push_back(SubfileId{demand.files[j - 1], subsets[s]});
  }
  if (!(verdict.condition <= tol.condition)) {
    verdict.flagged = true;
    verdict.flags.push_back("singular_channel_submatrix");
  }
  return verdict;
}

MonomialFamily alignment_family(const NetworkConfig& cfg, const Permutation& pi, int receiver, int max_exponent) {
  if (cfg.tau >= cfg.k_r) throw std::invalid_argument("alignment family needs tau < K_R");
  MonomialFamily family;
  for (int k : interfered_receivers(cfg, receiver)) {
    for (int i = 1; i <= cfg.k_t; ++i) {
      family.minors.push_back(MinorSpec{surviving_rows(cfg, receiver, k), window_at(cfg, pi, i)});
    }
  }
  family.exponents = exponent_tuples(static_cast<int>(family.minors.size()), max_exponent);
  return family;
}

IndependenceReport certify_monomial_independence(const NetworkConfig& cfg, const MonomialFamily& family, std::size_t trials,
                                  std::uint64_t seed, ChannelMode mode, double rank_tol) {
  if (trials == 0 || trials > kMaxIndependenceSamples) {
    throw std::invalid_argument("independence certification takes 1.." + std::to_string(kMaxIndependenceSamples) +
                                " samples");
  }
  for (const auto& e : family.exponents) {
    if (e.size() != family.minors.size()) throw std::invalid_argument("exponent tuple length differs from minor count");
  }
  const auto ch = draw_channel(cfg.k_r, cfg.k_t, trials, seed, mode);
  const auto rows = static_cast<Eigen::Index>(trials);
  std::vector<Eigen::VectorXcd> values;
  for (const auto& spec : family.minors) {
    Eigen::VectorXcd v(rows);
    for (Eigen::Index u = 0; u < rows; ++u) v(u) = channel_minor(ch, static_cast<std::size_t>(u), spec.rows, spec.cols);
    values.push_back(std::move(v));
  }
  Eigen::MatrixXcd m(rows, static_cast<Eigen::Index>(family.exponents.size()));
  for (std::size_t c = 0; c < family.exponents.size(); ++c) {
    Eigen::VectorXcd col = Eigen::VectorXcd::Ones(rows);
    for (std::size_t g = 0; g < values.size(); ++g) {
      for (int e = 0; e < family.exponents[c][g]; ++e) col = col.cwiseProduct(values[g]);
    }
    m.col(static_cast<Eigen::Index>(c)) = col;
  }
  IndependenceReport report;
  report.samples = trials;
  report.monomials = family.exponents.size();
  report.rank = numerical_rank(m, rank_tol);
  report.independent = report.rank == report.monomials;
  return report;
}

}  // namespace cachedof
