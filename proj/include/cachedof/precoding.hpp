#pragma once

// Two-layer precoding for one transmission block and its numerical
// certification.
//
// Message (receiver j, window w) is sent from every transmitter l in w with
// beamformer diag(zf_l) * V1_j. The first (ZF) layer makes the message vanish
// at the tau-1 receivers j+1..j+tau-1 (mod K_R). What survives at receiver k
// is the minor of H(u) with rows [k, j+1, ..., j+tau-1] and columns w. The
// second (IA) layer is built from monomials in those surviving minors so that
// every interfering copy lands inside span(V_j).

#include "cachedof/channel.hpp"
#include "cachedof/network_model.hpp"
#include "cachedof/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace cachedof {

// Receivers [j+1 : j+tau-1] where messages for j are nulled.
std::vector<int> protected_receivers(const NetworkConfig& cfg, int receiver);

// Receivers [j+tau : K_R+j-1] where messages for j still interfere.
std::vector<int> interfered_receivers(const NetworkConfig& cfg, int receiver);

// Receivers [k+1 : K_R+k-tau] whose messages interfere at k.
std::vector<int> interferers_at(const NetworkConfig& cfg, int receiver);

// Row list [k, j+1, ..., j+tau-1] of the minor surviving at receiver k.
std::vector<int> surviving_rows(const NetworkConfig& cfg, int intended, int observed);

struct ZfPrecoder {
  int receiver = 0;
  std::vector<int> transmitters;           // the cooperative window, master first
  std::vector<std::vector<Complex>> gains; // gains[l][u] for transmitters[l]
};

// Cofactors of the free first row of the tau x tau matrix
//   [ a_1 ... a_tau ; H_{[j+1:j+tau-1]}^{window}(u) ].
// For tau = 1 the layer is the identity.
ZfPrecoder zf_precoder(const ChannelRealization& ch, const NetworkConfig& cfg, const MessageId& message);

// sum_l h_{k,l}(u) zf_l(u): the scalar gain of a ZF-precoded message at receiver k.
Complex aggregate_gain(const ChannelRealization& ch, const ZfPrecoder& zf, int receiver, std::size_t u);

// Exponent tuples in {0..max_exponent}^count, lexicographic with the first
// coordinate most significant.
std::vector<std::vector<int>> exponent_tuples(int count, int max_exponent);

// One interfering gain diag(M) for the alignment of receiver j's messages.
struct AlignmentTerm {
  int observed = 0;  // interfered receiver k
  int position = 0;  // window start position i in the block permutation
  std::vector<int> rows;
  std::vector<int> cols;
  Eigen::VectorXcd gain;  // M(u), u = 0..mu_n-1
};

struct IaPrecoder {
  int receiver = 0;
  std::vector<AlignmentTerm> terms;  // Gamma terms, k outer, i inner
  Eigen::VectorXcd a;                // random generator vector a_j
  Eigen::MatrixXcd v;                // mu_n x (n+1)^Gamma
  Eigen::MatrixXcd v1;               // mu_n x n^Gamma
};

// Column t of v is a .* prod_g terms[g].gain .^ alpha_g(t) over the tuples of
// exponent_tuples(Gamma, n); v1 uses exponent_tuples(Gamma, n - 1).
// a_j are drawn from (a_seed, stream j) with the channel's distribution.
std::vector<IaPrecoder> ia_precoders(const ChannelRealization& ch, const NetworkConfig& cfg,
                                     const TransmissionBlock& block, const ExtensionParams& params,
                                     std::uint64_t a_seed);

struct PrecoderSet {
  std::vector<ZfPrecoder> zf;  // parallel to block.messages
  std::vector<IaPrecoder> ia;  // indexed by receiver - 1
};

PrecoderSet build_precoders(const ChannelRealization& ch, const NetworkConfig& cfg, const TransmissionBlock& block,
                            const ExtensionParams& params, std::uint64_t a_seed);

// R_k = [D_k | I_k]: K_T n^Gamma desired directions (window positions in
// block order) followed by V_j for j = k+1 .. K_R+k-tau.
Eigen::MatrixXcd assemble_decode_matrix(const ChannelRealization& ch, const NetworkConfig& cfg,
                                        const TransmissionBlock& block, const PrecoderSet& precoders,
                                        const ExtensionParams& params, int receiver);

struct VerifyTolerances {
  double rank = 1e-9;        // singular value threshold relative to sigma_max
  double zf = 1e-9;          // nulling residual relative to (max |h|)^tau
  double alignment = 1e-8;   // projection residual
  double decode = 1e-6;      // relative stream recovery error
  double condition = 1e12;   // above this the run is flagged, not failed
};

enum class PayloadMode { random, zero };

struct BlockVerdict {
  double zf_residual = 0.0;
  double align_residual = 0.0;
  std::vector<bool> align_ok;          // per receiver
  std::vector<std::size_t> rank_v;     // per receiver
  std::vector<std::size_t> rank_v1;
  std::vector<std::size_t> rank_r;
  std::size_t expected_rank_v = 0;
  std::size_t expected_rank_v1 = 0;
  std::size_t expected_rank_r = 0;
  double decode_error = 0.0;
  double signal_norm = 0.0;  // largest |Y_k|; zero for a zero payload
  double condition = 0.0;    // worst normalized condition number of R_k
  Rational achieved_dof;
  bool flagged = false;
  std::vector<std::string> flags;

  // Nulling, alignment, ranks and decoding all within tolerance.
  bool checks_pass(const VerifyTolerances& tol) const;
};

// Encodes n^Gamma random streams per message (or zeros), superimposes the
// transmitted signals noiselessly, and decodes each receiver by solving
// R_k z = Y_k.
BlockVerdict simulate_block_noiseless(const ChannelRealization& ch, const NetworkConfig& cfg,
                                      const TransmissionBlock& block, const PrecoderSet& precoders,
                                      const ExtensionParams& params, std::uint64_t payload_seed,
                                      const VerifyTolerances& tol = {}, PayloadMode payload = PayloadMode::random);

// K_R K_T n^Gamma / (K_T n^Gamma + (K_R - tau)(n+1)^Gamma), exact.
Rational per_block_dof(const NetworkConfig& cfg, int n);

// Polynomial with ascending integer coefficients.
struct Polynomial {
  std::vector<BigInt> coeffs;

  int degree() const;
  Rational evaluate(const Rational& x) const;
};

struct RationalFunction {
  Polynomial numerator;
  Polynomial denominator;
};

// per_block_dof as a rational function of n.
RationalFunction per_block_dof_function(const NetworkConfig& cfg);

// Limit as the variable grows without bound; throws std::domain_error if it diverges.
Rational limit_at_infinity(const RationalFunction& f);

struct MisoVerdict {
  std::size_t slots = 0;
  double cross_interference = 0.0;  // worst |off-diagonal| of H_S W relative to the diagonal
  double decode_error = 0.0;
  double condition = 0.0;           // worst condition number of H_S
  Rational achieved_dof;
  std::vector<SubfileId> delivered; // W_{d_j,S} in delivery order
  bool flagged = false;
  std::vector<std::string> flags;

  bool checks_pass(const VerifyTolerances& tol) const;
};

// tau >= K_R: one slot per tau-subset S, each zero-forcing K_R streams with the
// right inverse of the K_R x tau submatrix H_S. Channels are drawn from `seed`.
MisoVerdict simulate_miso_bc(const NetworkConfig& cfg, const DemandVector& demand, std::uint64_t seed,
                             ChannelMode mode = ChannelMode::gaussian, const VerifyTolerances& tol = {});

struct MinorSpec {
  std::vector<int> rows;
  std::vector<int> cols;
};

struct MonomialFamily {
  std::vector<MinorSpec> minors;
  std::vector<std::vector<int>> exponents;  // one exponent per minor, per monomial
};

struct IndependenceReport {
  std::size_t samples = 0;
  std::size_t monomials = 0;
  std::size_t rank = 0;
  bool independent = false;
};

// The Gamma surviving minors of receiver j's messages under block permutation
// pi, with all exponent tuples in {0..max_exponent}.
MonomialFamily alignment_family(const NetworkConfig& cfg, const Permutation& pi, int receiver, int max_exponent);

inline constexpr std::size_t kMaxIndependenceSamples = 2000;

// Evaluates each monomial over `trials` independent channel draws and checks
// for full column rank, a sampled stand-in for linear independence of the
// monomials as polynomials.
IndependenceReport certify_monomial_independence(const NetworkConfig& cfg, const MonomialFamily& family, std::size_t trials,
                                  std::uint64_t seed, ChannelMode mode = ChannelMode::gaussian,
                                  double rank_tol = 1e-9);

}  // namespace cachedof
