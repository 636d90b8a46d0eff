#include "cachedof/dof_bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace cachedof {

namespace {

Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }

void require_valid_tau(const NetworkConfig& cfg) {
  if (cfg.k_t < 1 || cfg.k_r < 1) throw ConfigError("K_T and K_R must be at least 1");
  if (cfg.tau < 1 || cfg.tau > cfg.k_t) throw ConfigError("tau must lie in [1, K_T]");
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::zf: return "zf";
    case Scheme::ia: return "ia";
    case Scheme::mixed: return "mixed";
    case Scheme::coop_x: return "coopx_bound";
    case Scheme::cutset: return "cutset";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : all_schemes()) {
    if (scheme_name(s) == name) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> schemes{Scheme::proposed, Scheme::zf,     Scheme::ia,
                                           Scheme::mixed,    Scheme::coop_x, Scheme::cutset};
  return schemes;
}

Rational dof_proposed(const NetworkConfig& cfg) {
  require_valid_tau(cfg);
  Rational value(BigInt(cfg.k_t) * cfg.k_r, BigInt(cfg.k_t + cfg.k_r - cfg.tau));
  return rmin(value, Rational(cfg.k_r));
}

Rational dof_zf(const NetworkConfig& cfg) {
  require_valid_tau(cfg);
  return Rational(std::min(cfg.tau, cfg.k_r));
}

Rational dof_ia(const NetworkConfig& cfg) {
  require_valid_tau(cfg);
  return Rational(BigInt(cfg.k_t) * cfg.k_r, BigInt(cfg.k_t + cfg.k_r - 1));
}

BoundDetail dof_mixed_detail(const NetworkConfig& cfg) {
  require_valid_tau(cfg);
  const int t = cfg.tau;
  if (t >= cfg.k_r) return {Rational(cfg.k_r), 0};
  if (t == cfg.k_r - 1) {
    BigInt tc = t * binomial(cfg.k_t, t);
    return {Rational(tc * cfg.k_r, tc + 1), 0};
  }
  BoundDetail best{Rational(-1), 0};
  for (int tp = 1; tp <= t; ++tp) {
    BigInt tc = tp * binomial(cfg.k_t, tp);
    Rational value(tc * cfg.k_r, tc + (cfg.k_r - tp) * binomial(cfg.k_t, tp - 1));
    if (value > best.value) best = {value, tp};
  }
  // The bare "tau" term competes with the inner maximum.
  if (Rational(t) > best.value) best = {Rational(t), 0};
  return best;
}

Rational dof_mixed(const NetworkConfig& cfg) { return dof_mixed_detail(cfg).value; }

BoundDetail coop_x_upper_bound_detail(const NetworkConfig& cfg) {
  require_valid_tau(cfg);
  const int t = cfg.tau;
  const int top = std::min(cfg.k_t, cfg.k_r);
  if (t > top) throw ConfigError("cooperative X-network bound needs tau <= min(K_T, K_R)");
  const BigInt tc = t * binomial(cfg.k_t, t);
  BoundDetail best{Rational(0), 0};
  for (int sigma = t; sigma <= top; ++sigma) {
    Rational value(tc * cfg.k_r, tc + (cfg.k_r - sigma) * binomial(sigma - 1, t - 1));
    if (best.argument == 0 || value < best.value) best = {value, sigma};
  }
  return best;
}

Rational coop_x_upper_bound(const NetworkConfig& cfg) { return coop_x_upper_bound_detail(cfg).value; }

Rational cutset_bound(const NetworkConfig& cfg) { return Rational(std::min(cfg.k_t, cfg.k_r)); }

Rational gap_ratio(const NetworkConfig& cfg) { return cutset_bound(cfg) / dof_proposed(cfg); }

Rational ndt(const Rational& dof, const NetworkConfig& cfg) {
  if (dof <= 0) throw std::domain_error("DoF must be positive");
  return Rational(cfg.k_r) / dof;
}

bool scheme_applies(Scheme s, const NetworkConfig& cfg) {
  if (s == Scheme::coop_x) return cfg.tau <= std::min(cfg.k_t, cfg.k_r);
  return true;
}

Rational scheme_dof(Scheme s, const NetworkConfig& cfg) {
  switch (s) {
    case Scheme::proposed: return dof_proposed(cfg);
    case Scheme::zf: return dof_zf(cfg);
    case Scheme::ia: return dof_ia(cfg);
    case Scheme::mixed: return dof_mixed(cfg);
    case Scheme::coop_x: return coop_x_upper_bound(cfg);
    case Scheme::cutset: return cutset_bound(cfg);
  }
  throw std::logic_error("unhandled scheme");
}

std::vector<DofPoint> corner_points(const NetworkConfig& base, Scheme s) {
  std::vector<DofPoint> points;
  for (int t = 1; t <= base.k_t; ++t) {
    NetworkConfig cfg = base;
    cfg.tau = t;
    if (!scheme_applies(s, cfg)) continue;
    points.push_back(DofPoint{t, cfg.cache_size(), scheme_dof(s, cfg), s});
  }
  return points;
}

Rational EnvelopeCurve::evaluate(const Rational& m) const {
  if (breakpoints.empty()) throw std::logic_error("empty envelope");
  if (m < breakpoints.front().m || m > breakpoints.back().m) {
    throw std::out_of_range("cache size outside the envelope range");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const auto& a = breakpoints[i];
    const auto& b = breakpoints[i + 1];
    if (m <= b.m) {
      return a.inverse_dof + (b.inverse_dof - a.inverse_dof) * (m - a.m) / (b.m - a.m);
    }
  }
  return breakpoints.back().inverse_dof;
}

bool EnvelopeCurve::is_convex() const {
  for (std::size_t i = 0; i + 2 < breakpoints.size(); ++i) {
    const auto& a = breakpoints[i];
    const auto& b = breakpoints[i + 1];
    const auto& c = breakpoints[i + 2];
    Rational left = (b.inverse_dof - a.inverse_dof) / (b.m - a.m);
    Rational right = (c.inverse_dof - b.inverse_dof) / (c.m - b.m);
    if (right < left) return false;
  }
  return true;
}

bool EnvelopeCurve::is_non_increasing() const {
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1].inverse_dof > breakpoints[i].inverse_dof) return false;
  }
  return true;
}

EnvelopeCurve reciprocal_envelope(const std::vector<DofPoint>& points) {
  std::vector<Breakpoint> pts;
  for (const auto& p : points) pts.push_back({p.m_files, Rational(1) / p.dof});
  std::sort(pts.begin(), pts.end(), [](const Breakpoint& a, const Breakpoint& b) {
    return a.m < b.m || (a.m == b.m && a.inverse_dof < b.inverse_dof);
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.m == b.m; }),
            pts.end());

  // Monotone-chain lower hull; collinear middle points are dropped.
  std::vector<Breakpoint> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      Rational cross = (b.m - a.m) * (p.inverse_dof - a.inverse_dof) - (b.inverse_dof - a.inverse_dof) * (p.m - a.m);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }

  // Hold the minimum flat to the right.
  if (!hull.empty()) {
    auto lowest = std::min_element(hull.begin(), hull.end(), [](const Breakpoint& a, const Breakpoint& b) {
      return a.inverse_dof < b.inverse_dof;
    });
    if (lowest + 1 != hull.end()) {
      Breakpoint tail{hull.back().m, lowest->inverse_dof};
      hull.erase(lowest + 1, hull.end());
      hull.push_back(tail);
    }
  }
  return EnvelopeCurve{std::move(hull)};
}

}  // namespace cachedof
