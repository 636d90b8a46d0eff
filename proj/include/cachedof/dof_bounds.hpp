#pragma once

// Closed-form sum-DoF expressions at cache corner points M = tau * N / K_T,
// their reciprocal convex envelopes over M, and normalized delivery time.
// Everything here is exact rational arithmetic.

#include "cachedof/network_model.hpp"
#include "cachedof/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cachedof {

enum class Scheme {
  proposed,   // scheduled two-layer ZF + IA delivery
  zf,         // one-shot zero-forcing baseline, min(tau, K_R)
  ia,         // pure X-network alignment baseline, ignores cooperation
  mixed,      // earlier ZF + IA baseline with its piecewise formula
  coop_x,     // upper bound for the cooperative X-network under uncoded placement
  cutset,     // full-cooperation MIMO bound min(K_T, K_R)
};

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);  // throws ConfigError
const std::vector<Scheme>& all_schemes();

// min(K_T K_R / (K_T + K_R - tau), K_R)
Rational dof_proposed(const NetworkConfig& cfg);

// min(tau, K_R)
Rational dof_zf(const NetworkConfig& cfg);

// K_T K_R / (K_T + K_R - 1), independent of tau
Rational dof_ia(const NetworkConfig& cfg);

struct BoundDetail {
  Rational value;
  int argument = 0;  // maximizing tau' (mixed) or minimizing sigma (coop_x); 0 if unused
};

// K_R if tau >= K_R; tau C(K_T,tau) K_R / (tau C(K_T,tau) + 1) if tau = K_R - 1;
// otherwise max of tau and the best tau' in [1, tau] of
// tau' C(K_T,tau') K_R / (tau' C(K_T,tau') + (K_R - tau') C(K_T,tau'-1)).
Rational dof_mixed(const NetworkConfig& cfg);
BoundDetail dof_mixed_detail(const NetworkConfig& cfg);

// min over sigma in [tau, min(K_T,K_R)] of
// tau C(K_T,tau) K_R / (tau C(K_T,tau) + (K_R - sigma) C(sigma-1, tau-1)).
// Requires tau <= min(K_T, K_R); ties resolve to the smallest sigma.
Rational coop_x_upper_bound(const NetworkConfig& cfg);
BoundDetail coop_x_upper_bound_detail(const NetworkConfig& cfg);

// min(K_T, K_R)
Rational cutset_bound(const NetworkConfig& cfg);

// cutset_bound / dof_proposed
Rational gap_ratio(const NetworkConfig& cfg);

// K_R / dof
Rational ndt(const Rational& dof, const NetworkConfig& cfg);

Rational scheme_dof(Scheme s, const NetworkConfig& cfg);

// Whether `s` is defined at cfg.tau (coop_x needs tau <= min(K_T, K_R)).
bool scheme_applies(Scheme s, const NetworkConfig& cfg);

struct DofPoint {
  int tau = 0;
  Rational m_files;
  Rational dof;
  Scheme scheme = Scheme::proposed;
};

// Corner points for tau = 1..K_T (only where the scheme applies).
std::vector<DofPoint> corner_points(const NetworkConfig& base, Scheme s);

struct Breakpoint {
  Rational m;
  Rational inverse_dof;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

struct EnvelopeCurve {
  std::vector<Breakpoint> breakpoints;  // strictly increasing in m

  // Piecewise-linear interpolation; m must lie within the breakpoint range.
  Rational evaluate(const Rational& m) const;
  bool is_convex() const;
  bool is_non_increasing() const;
};

// Lower convex envelope of (M, 1/DoF). Past the envelope minimum the curve is
// held flat, since extra cache can always be left unused.
EnvelopeCurve reciprocal_envelope(const std::vector<DofPoint>& points);

}  // namespace cachedof
