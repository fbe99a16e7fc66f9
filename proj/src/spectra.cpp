// Copyright 2026 The kpell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kpell/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <string>

#include "kpell/bigseq.hpp"

namespace kpell {

namespace {

using cd = std::complex<double>;

// ------------------------------------------------------------ doubles

// Psi'/Psi via the four-term form, scaled by z^{-(k-1)} outside the disk.
cd log_derivative(int k, cd z) {
  const double kk = k;
  cd num, den;
  if (std::abs(z) > 1.0) {
    const cd w = 1.0 / z;
    num = ((kk + 1.0) * z * z - 3.0 * kk * z + (kk - 1.0)) * w;
    den = z * z - 3.0 * z + 1.0 + std::pow(w, k - 1);
  } else {
    const cd zk2 = std::pow(z, k - 2);
    num = zk2 * ((kk + 1.0) * z * z - 3.0 * kk * z + (kk - 1.0));
    den = zk2 * z * (z * z - 3.0 * z + 1.0) + 1.0;
  }
  return num / den - 1.0 / (z - 1.0);
}

// Simultaneous Aberth iteration in double precision.
std::vector<cd> aberth_roots(int k) {
  std::vector<cd> z(static_cast<std::size_t>(k));
  z[0] = cd(2.5, 0.0);
  const double pi = std::acos(-1.0);
  for (int j = 1; j < k; ++j) {
    const double t = 2.0 * pi * (j - 1) / (k - 1) + 0.4;
    z[static_cast<std::size_t>(j)] = std::polar(0.93, t);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const cd zi = z[static_cast<std::size_t>(i)];
      const cd ld = log_derivative(k, zi);
      cd repulse = 0.0;
      for (int j = 0; j < k; ++j) {
        if (j != i) repulse += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
      }
      const cd step = 1.0 / (ld - repulse);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[static_cast<std::size_t>(i)] = zi - step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(zi)));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

// ------------------------------------------------------ ball helpers

ComplexBall cball(double re, double im, mpfr_prec_t prec) {
  return {Ball::from_double(re, prec), Ball::from_double(im, prec)};
}

template <class T>
T delta_eval(int k, const T& x) {
  const T xk1 = pow(x, k - 1);
  return xk1 * (x * x - x * 3 + 1) + 1;
}

template <class T>
T delta_derivative(int k, const T& x) {
  const T xk2 = pow(x, k - 2);
  return xk2 * (x * x * (k + 1) - x * (3 * k) + (k - 1));
}

template <class T>
T psi_generic(int k, const T& x, bool near_one) {
  if (near_one) {
    T acc = x - 2;
    for (int j = 2; j <= k; ++j) acc = acc * x - 1;
    return acc;
  }
  return delta_eval(k, x) / (x - 1);
}

template <class T>
T gk_generic(int k, const T& x) {
  const T x2 = x * x;
  return (x - 1) / ((x2 - x * 3 + 1) * k + x2 - 1);
}

double dist_to_one(const Ball& x) { return std::abs(x.mid_double() - 1.0); }
double dist_to_one(const ComplexBall& x) {
  return std::hypot(x.re.mid_double() - 1.0, x.im.mid_double());
}

// Certain comparison a < b; throws when the enclosures overlap.
bool decide_lt(const Ball& a, const Ball& b) {
  if (certainly_lt(a, b)) return true;
  if (!certainly_lt(b, a) && overlaps(a, b)) {
    throw IndeterminateError("comparison undecided at current precision");
  }
  return false;
}

double margin_of(const Ball& gap) { return gap.mid_double(); }

struct Candidate {
  ComplexBall z;
  bool real;
};

// Newton refinement of midpoints on the four-term form.
ComplexBall newton_refine(int k, ComplexBall z, bool real, mpfr_prec_t prec) {
  z = ComplexBall(z.re.with_prec(prec).midpoint(), real ? Ball(prec) : z.im.with_prec(prec).midpoint());
  const int max_iter = 8 + 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(prec) / 40.0 + 1.0)));
  for (int it = 0; it < max_iter; ++it) {
    ComplexBall step(prec);
    try {
      step = (delta_eval(k, z) / delta_derivative(k, z)).midpoint();
    } catch (const IndeterminateError&) {
      break;
    }
    if (real) step.im = Ball(prec);
    z = (z - step).midpoint();
    const double s = std::hypot(step.re.mid_double(), step.im.mid_double());
    if (s == 0.0 || std::log2(s) < -static_cast<double>(prec) + 4.0) break;
  }
  return z;
}

std::vector<Candidate> initial_candidates(int k, mpfr_prec_t prec) {
  std::vector<cd> z = aberth_roots(k);
  std::vector<Candidate> out;
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::abs(z[i].imag()) < 1e-9 * std::max(1.0, std::abs(z[i]))) {
      out.push_back({cball(z[i].real(), 0.0, prec), true});
      used[i] = true;
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i] || z[i].imag() < 0) continue;
    used[i] = true;
    // consume the nearest lower half-plane partner
    std::size_t best = z.size();
    double bd = 1e300;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (used[j] || z[j].imag() >= 0) continue;
      const double d = std::abs(z[j] - std::conj(z[i]));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (best != z.size()) used[best] = true;
    out.push_back({cball(z[i].real(), z[i].imag(), prec), false});
  }
  return out;
}

int count_roots(const std::vector<Candidate>& c) {
  int n = 0;
  for (const auto& x : c) n += x.real ? 1 : 2;
  return n;
}

// Certifies the candidate midpoints; returns false when the enclosures
// are not yet fine enough.
bool try_certify(int k, const std::vector<Candidate>& cands, mpfr_prec_t prec, RootSystem& out) {
  if (count_roots(cands) != k) return false;
  std::vector<ComplexBall> mids;
  std::vector<bool> real;
  for (const auto& c : cands) {
    mids.push_back(c.z.midpoint());
    real.push_back(c.real);
    if (!c.real) {
      mids.push_back(c.z.conj().midpoint());
      real.push_back(false);
    }
  }
  const int n = static_cast<int>(mids.size());
  // Weierstrass corrections and inclusion radii k |W_i|.
  std::vector<Ball> radius(static_cast<std::size_t>(n), Ball(Ball::kRadiusPrec));
  std::vector<std::vector<Ball>> dist(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dist[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n), Ball(prec));
  std::vector<ComplexBall> prod(static_cast<std::size_t>(n), ComplexBall(Ball(1, prec)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const ComplexBall d = mids[static_cast<std::size_t>(i)] - mids[static_cast<std::size_t>(j)];
      prod[static_cast<std::size_t>(i)] = prod[static_cast<std::size_t>(i)] * d;
      prod[static_cast<std::size_t>(j)] = prod[static_cast<std::size_t>(j)] * (-d);
      const Ball a = abs(d);
      dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
      dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = a;
    }
  }
  try {
    for (int i = 0; i < n; ++i) {
      const ComplexBall w = psi_eval(k, mids[static_cast<std::size_t>(i)]) / prod[static_cast<std::size_t>(i)];
      const Ball r = abs(w) * k;
      radius[static_cast<std::size_t>(i)] = Ball::from_mid_rad(r.upper(), Float(Ball::kRadiusPrec), prec);
    }
  } catch (const IndeterminateError&) {
    return false;
  }
  // Pairwise disjoint inclusion disks.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Ball sum = radius[static_cast<std::size_t>(i)] + radius[static_cast<std::size_t>(j)];
      if (!certainly_lt(sum, dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) return false;
    }
  }
  // Enclosures and moduli.
  struct Item {
    ComplexBall z;
    Ball modulus;
    bool real;
    int partner;  // index into items before sorting
  };
  std::vector<Item> items;
  for (int i = 0; i < n; ++i) {
    const Float r = radius[static_cast<std::size_t>(i)].upper();
    const ComplexBall& m = mids[static_cast<std::size_t>(i)];
    Ball re = Ball::from_mid_rad(m.re.mid(), r, prec);
    Ball im = real[static_cast<std::size_t>(i)] ? Ball(prec) : Ball::from_mid_rad(m.im.mid(), r, prec);
    Ball mod = abs(m);
    mod.inflate(r);
    items.push_back({ComplexBall(re, im), mod, real[static_cast<std::size_t>(i)], -1});
  }
  // Real roots: a sign change of Psi on a bracket confirms realness and location.
  for (auto& it : items) {
    if (!it.real) continue;
    bool ok = false;
    Ball half = Ball::from_mid_rad(it.z.re.rad(), Float(Ball::kRadiusPrec), prec);
    for (int widen = 0; widen < 6 && !ok; ++widen) {
      const Ball lo = it.z.re.midpoint() - half;
      const Ball hi = it.z.re.midpoint() + half;
      const Ball plo = psi_eval(k, lo.midpoint());
      const Ball phi = psi_eval(k, hi.midpoint());
      ok = (plo.is_negative() && phi.is_positive()) || (plo.is_positive() && phi.is_negative());
      half = half * 256;
    }
    if (!ok) return false;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Conjugate midpoints have bit-identical moduli, so exact comparison
  // keeps each pair adjacent with the upper half-plane member first.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Item& x = items[static_cast<std::size_t>(a)];
    const Item& y = items[static_cast<std::size_t>(b)];
    const int c = mpfr_cmp(x.modulus.mid().get(), y.modulus.mid().get());
    if (c != 0) return c > 0;
    return mpfr_cmp(x.z.im.mid().get(), y.z.im.mid().get()) > 0;
  });
  RootSystem rs;
  rs.k = k;
  rs.prec = prec;
  for (int idx : order) {
    rs.roots.push_back(items[static_cast<std::size_t>(idx)].z);
    rs.moduli.push_back(items[static_cast<std::size_t>(idx)].modulus);
  }
  for (int i = 0; i < n; ++i) {
    if (items[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])].real) rs.real_roots.push_back(i);
  }
  // Adjacent moduli: strictly separated unless the two roots are conjugates.
  for (int i = 0; i + 1 < n; ++i) {
    const ComplexBall& a = rs.roots[static_cast<std::size_t>(i)];
    const ComplexBall& b = rs.roots[static_cast<std::size_t>(i + 1)];
    const bool conj = !rs.is_real(i) && !rs.is_real(i + 1) &&
                      mpfr_equal_p(a.re.mid().get(), b.re.mid().get()) &&
                      a.im.is_positive() && b.im.is_negative() &&
                      mpfr_cmpabs(a.im.mid().get(), b.im.mid().get()) == 0;
    if (conj) {
      rs.conj_pairs.emplace_back(i, i + 1);
      ++i;
      if (i + 1 < n && !certainly_gt(rs.moduli[static_cast<std::size_t>(i)], rs.moduli[static_cast<std::size_t>(i + 1)])) {
        return false;
      }
      continue;
    }
    if (!certainly_gt(rs.moduli[static_cast<std::size_t>(i)], rs.moduli[static_cast<std::size_t>(i + 1)])) return false;
  }
  // Exactly one root outside the unit circle.
  if (!certainly_gt(rs.moduli[0], 1) || !rs.is_real(0) || !rs.roots[0].re.is_positive()) return false;
  for (int i = 1; i < n; ++i) {
    if (!certainly_lt(rs.moduli[static_cast<std::size_t>(i)], 1)) return false;
  }
  rs.dominant = 0;
  out = std::move(rs);
  return true;
}

std::vector<Candidate> refine_all(int k, const std::vector<Candidate>& cands, mpfr_prec_t prec) {
  std::vector<Candidate> out;
  out.reserve(cands.size());
  for (const auto& c : cands) out.push_back({newton_refine(k, c.z, c.real, prec), c.real});
  return out;
}

RootSystem certify_from(int k, std::vector<Candidate> cands, mpfr_prec_t prec) {
  for (mpfr_prec_t p = prec; p <= kPrecCeiling; p *= 2) {
    cands = refine_all(k, cands, p);
    RootSystem rs;
    if (try_certify(k, cands, p, rs)) return rs;
  }
  throw PrecisionExhaustedError("root certification failed below the precision ceiling for k = " +
                                std::to_string(k));
}

// Sum of g_k(gamma_i) gamma_i^e.
ComplexBall binet_sum(int k, long long e, const RootSystem& rs) {
  ComplexBall acc(rs.prec);
  for (int i = 0; i < k; ++i) {
    const ComplexBall& z = rs.roots[static_cast<std::size_t>(i)];
    const int partner = rs.conjugate_of(i);
    if (partner >= 0 && partner < i) continue;
    ComplexBall term = eval_gk(k, z) * pow(z, static_cast<long>(e));
    if (partner >= 0) {
      // a conjugate pair contributes twice its real part
      term = ComplexBall(term.re * 2, Ball(rs.prec));
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace

// ------------------------------------------------------------- public

bool RootSystem::is_real(int i) const {
  return std::find(real_roots.begin(), real_roots.end(), i) != real_roots.end();
}

int RootSystem::conjugate_of(int i) const {
  for (const auto& [a, b] : conj_pairs) {
    if (a == i) return b;
    if (b == i) return a;
  }
  return -1;
}

Ball psi_eval(int k, const Ball& x) { return psi_generic(k, x, dist_to_one(x) < 0.125); }
ComplexBall psi_eval(int k, const ComplexBall& x) { return psi_generic(k, x, dist_to_one(x) < 0.125); }

Ball eval_gk(int k, const Ball& x) { return gk_generic(k, x); }
ComplexBall eval_gk(int k, const ComplexBall& x) { return gk_generic(k, x); }

RootSystem solve_roots(int k, mpfr_prec_t target_prec) {
  if (k < 2) throw DomainError("order k must be at least 2");
  if (target_prec < 64) throw DomainError("target precision must be at least 64 bits");
  return certify_from(k, initial_candidates(k, target_prec), target_prec);
}

RootSystem certify_roots(int k, const std::vector<ComplexBall>& approx, mpfr_prec_t prec) {
  std::vector<Candidate> cands;
  for (const auto& z : approx) {
    if (z.im.contains_zero()) {
      cands.push_back({ComplexBall(z.re, Ball(prec)), true});
    } else if (z.im.is_positive()) {
      cands.push_back({z, false});
    }
  }
  if (count_roots(cands) != k) return solve_roots(k, prec);
  return certify_from(k, std::move(cands), prec);
}

int exponent_offset() {
  static std::once_flag once;
  static int offset = 0;
  std::call_once(once, [] {
    std::vector<int> hits;
    for (int o = -1; o <= 1; ++o) {
      bool ok = true;
      for (int k = 2; k <= 3 && ok; ++k) {
        const RootSystem rs = solve_roots(k, kDefaultPrec);
        const KContext ctx(k);
        for (long long n = 1; n <= 10 && ok; ++n) {
          const ComplexBall s = binet_sum(k, n + o, rs);
          ok = s.re.contains(eval_term(ctx, n).value) && s.im.contains_zero();
        }
      }
      if (ok) hits.push_back(o);
    }
    if (hits.size() != 1) throw Error("exponent calibration did not single out one offset");
    offset = hits.front();
  });
  return offset;
}

Ball binet_reconstruct(int k, long long n, const RootSystem& rs) {
  if (rs.k != k) throw DomainError("root system order does not match k");
  const ComplexBall s = binet_sum(k, binet_exponent(n), rs);
  if (s.re.rad_double() > 0.4 || s.im.rad_double() > 0.4) {
    throw PrecisionExhaustedError("reconstruction radius exceeds 0.4 at n = " + std::to_string(n));
  }
  return s.re;
}

Ball binet_dominant(int k, long long n, const RootSystem& rs) {
  const Ball& g = rs.roots[0].re;
  return eval_gk(k, g) * pow(g, static_cast<long>(binet_exponent(n)));
}

bool check_dominant_bounds(const RootSystem& rs) {
  const mpfr_prec_t p = rs.prec;
  const Ball phi = (sqrt(Ball(5, p)) + 1) / 2;
  const Ball phi2 = sqr(phi);
  const Ball lower = phi2 * (1 - pow(phi, -rs.k));
  const Ball& gamma = rs.roots[0].re;
  return decide_lt(lower, gamma) && decide_lt(gamma, phi2);
}

std::vector<CheckResult> check_root_properties(const RootSystem& rs) {
  const int k = rs.k;
  const mpfr_prec_t p = rs.prec;
  std::vector<CheckResult> out;
  const Ball& gamma = rs.roots[0].re;
  const Ball log_gamma = log(gamma);
  std::vector<ComplexBall> g;
  g.reserve(static_cast<std::size_t>(k));
  for (const auto& z : rs.roots) g.push_back(eval_gk(k, z));

  {
    // ln(|gamma_i|/|gamma_j| - 1) > -k^3 ln 1.59 on consecutive distinct moduli
    CheckResult c{"modulus_ratio_gap", true, 1e300, ""};
    const Ball floor_log = -(Ball(static_cast<long>(k) * k * k, p) * log(Ball::from_ratio(159, 100, p)));
    for (int i = 0; i + 1 < k; ++i) {
      if (rs.conjugate_of(i) == i + 1) continue;
      const Ball ratio = rs.moduli[static_cast<std::size_t>(i)] / rs.moduli[static_cast<std::size_t>(i + 1)];
      const Ball gap = log(ratio - 1) - floor_log;
      c.margin = std::min(c.margin, margin_of(gap));
      if (!decide_lt(Ball(p), gap)) c.passed = false;
    }
    out.push_back(c);
  }
  {
    CheckResult c{"dominant_weight_range", true, 0.0, ""};
    const Ball g0 = g[0].re;
    const Ball lo = Ball::from_ratio(276, 1000, p);
    const Ball hi = Ball::from_ratio(1, 2, p);
    c.passed = !decide_lt(g0, lo) && !decide_lt(hi, g0);
    c.margin = std::min(margin_of(g0 - lo), margin_of(hi - g0));
    c.detail = "g(gamma) = " + g0.mid_string(12);
    // stated for k >= 4; the two smallest orders are reported only
    c.required = k >= 4;
    out.push_back(c);
  }
  {
    CheckResult c{"weight_magnitude", true, 1e300, ""};
    const Ball cap = k <= 4 ? Ball(1, p) : Ball::from_ratio(2, k - 2, p);
    for (int i = 1; i < k; ++i) {
      const Ball a = abs(g[static_cast<std::size_t>(i)]);
      c.margin = std::min(c.margin, margin_of(cap - a));
      if (!decide_lt(a, cap)) c.passed = false;
    }
    out.push_back(c);
  }
  const Ball& smallest = rs.moduli.back();
  {
    CheckResult c{"smallest_root_bound", true, 0.0, ""};
    const Ball rhs = 1 - log_gamma / (2 * k);
    c.passed = decide_lt(smallest, rhs);
    c.margin = margin_of(rhs - smallest);
    out.push_back(c);
  }
  {
    CheckResult c{"smallest_weight_lower", true, 0.0, ""};
    const Ball rhs = log_gamma / (Ball(2L * k, p) * (5 * k + 2));
    const Ball a = abs(g.back());
    c.passed = decide_lt(rhs, a);
    c.margin = margin_of(a - rhs);
    out.push_back(c);
  }
  {
    CheckResult c{"equal_modulus_conjugate", true, 0.0, ""};
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (!overlaps(rs.moduli[static_cast<std::size_t>(i)], rs.moduli[static_cast<std::size_t>(j)])) continue;
        const ComplexBall& a = rs.roots[static_cast<std::size_t>(i)];
        const ComplexBall& b = rs.roots[static_cast<std::size_t>(j)];
        const bool conj = rs.conjugate_of(i) == j && overlaps(a.re, b.re) && overlaps(a.im, -b.im) &&
                          !a.im.contains_zero();
        if (!conj) {
          c.passed = false;
          c.detail = "roots " + std::to_string(i) + " and " + std::to_string(j) + " share a modulus";
        }
      }
    }
    c.margin = static_cast<double>(rs.conj_pairs.size());
    out.push_back(c);
  }
  return out;
}

CheckResult check_even_tail_gap(const RootSystem& rs) {
  const int k = rs.k;
  if (k % 2 != 0) throw DomainError("tail gap check needs even k");
  const mpfr_prec_t p = rs.prec;
  const Ball ratio = rs.moduli[static_cast<std::size_t>(k - 2)] / rs.moduli[static_cast<std::size_t>(k - 1)];
  const Ball rhs = -(Ball(static_cast<long>(k) * k, p) * log(Ball(k, p)));
  const Ball gap = log(ratio - 1) - rhs;
  CheckResult c{"even_tail_gap", decide_lt(Ball(p), gap), margin_of(gap), ""};
  return c;
}

std::vector<SeparationResult> check_modulus_separation(const RootSystem& rs) {
  const int d = rs.k;
  const mpfr_prec_t p = rs.prec;
  const Ball log_m = log(mahler_measure(rs));
  const Ball dd(d, p);
  const Ball log_d = log(dd);
  // log of the required separation per case
  const Ball pairs = Ball(static_cast<long>(d) * (d - 1), p) / 2;
  const Ball nonreal = log(sqrt(Ball(3, p)) / 2) -
                       (Ball(static_cast<long>(d) * (d - 1), p) / 4 + 1) * log(pairs) -
                       (Ball(static_cast<long>(d) * d * d, p) / 2 - Ball(static_cast<long>(d) * d, p) -
                        dd / 2 + 1) * log_m;
  const Ball mixed = -log(Ball(4, p)) - (Ball(static_cast<long>(d) * d, p) / 2 + d + 1) * log_d -
                     Ball(4L * d * (d - 1) + 1, p) * log_m;
  const Ball both_real = -(Ball(static_cast<long>(d) * d, p) / 2 - 1) * log(Ball(2, p)) - Ball(d - 1, p) * log_m;
  std::vector<SeparationResult> out;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (rs.conjugate_of(i) == j) continue;
      const bool ri = rs.is_real(i), rj = rs.is_real(j);
      SeparationResult r;
      r.i = i;
      r.j = j;
      const Ball* bound = &mixed;
      if (ri && rj) {
        r.kind = "real";
        bound = &both_real;
      } else if (!ri && !rj) {
        r.kind = "nonreal";
        bound = &nonreal;
      } else {
        r.kind = "mixed";
      }
      const Ball gap = log(abs(rs.moduli[static_cast<std::size_t>(i)] - rs.moduli[static_cast<std::size_t>(j)]));
      const Ball m = gap - *bound;
      r.log_margin = m.mid_double();
      r.passed = decide_lt(Ball(p), m);
      out.push_back(r);
    }
  }
  return out;
}

Ball mahler_measure(const RootSystem& rs) {
  Ball prod(1, rs.prec);
  for (const auto& m : rs.moduli) {
    if (certainly_gt(m, 1)) {
      prod = prod * m;
    } else if (!certainly_lt(m, 1)) {
      throw IndeterminateError("a root modulus is not separated from 1");
    }
  }
  return prod;
}

bool check_no_root_of_unity_ratio(const RootSystem& rs, int max_m) {
  const int k = rs.k;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!overlaps(rs.moduli[static_cast<std::size_t>(i)], rs.moduli[static_cast<std::size_t>(j)])) continue;
      const ComplexBall ratio = rs.roots[static_cast<std::size_t>(i)] / rs.roots[static_cast<std::size_t>(j)];
      ComplexBall power = ratio;
      for (int m = 1; m <= max_m; ++m) {
        if ((power - 1).contains_zero()) throw IndeterminateError("root ratio power not separated from 1");
        power = power * ratio;
      }
    }
  }
  return true;
}

Ball weight_height(const RootSystem& rs) {
  const int k = rs.k;
  const mpfr_prec_t p = rs.prec;
  // Q(x) = prod (den_i x - num_i) has integer coefficients; its primitive
  // part is the minimal polynomial of g_k(gamma).
  std::vector<ComplexBall> coef{ComplexBall(Ball(1, p))};
  for (const auto& z : rs.roots) {
    const ComplexBall z2 = z * z;
    const ComplexBall den = (z2 - z * 3 + 1) * k + z2 - 1;
    const ComplexBall num = z - 1;
    std::vector<ComplexBall> next(coef.size() + 1, ComplexBall(p));
    for (std::size_t c = 0; c < coef.size(); ++c) {
      next[c + 1] = next[c + 1] + coef[c] * den;
      next[c] = next[c] - coef[c] * num;
    }
    coef = std::move(next);
  }
  mpz_class content = 0;
  mpz_class lead;
  for (std::size_t c = 0; c < coef.size(); ++c) {
    const Ball& re = coef[c].re;
    if (re.rad_double() >= 0.5 || coef[c].im.rad_double() >= 0.5 || !coef[c].im.contains_zero()) {
      throw IndeterminateError("coefficient enclosure too wide for integer recovery");
    }
    const mpz_class v = re.round_mid();
    if (!re.contains(v)) throw IndeterminateError("coefficient enclosure holds no integer");
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    if (c + 1 == coef.size()) lead = abs(v);
  }
  const mpz_class a0 = lead / content;
  Ball h = log(Ball(a0, p));
  for (const auto& z : rs.roots) {
    const Ball a = abs(eval_gk(k, z));
    if (certainly_gt(a, 1)) {
      h = h + log(a);
    } else if (!certainly_lt(a, 1)) {
      throw IndeterminateError("weight modulus not separated from 1");
    }
  }
  return h / k;
}

}  // namespace kpell
