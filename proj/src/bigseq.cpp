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

#include "kpell/bigseq.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

#include "kpell/error.hpp"

namespace kpell {

KContext::KContext(int order, long long limit) : k(order), max_index(limit) {
  if (order < 2) throw DomainError("order k must be at least 2, got " + std::to_string(order));
  if (limit < 1) throw DomainError("max_index must be positive");
}

namespace {

constexpr std::size_t kCacheCapacity = 1 << 16;

struct TermCache {
  std::shared_mutex mutex;
  std::map<std::pair<int, long long>, mpz_class> terms;
  std::atomic<bool> enabled{true};
};

TermCache& cache() {
  static TermCache c;
  return c;
}

void check_limit(const KContext& ctx, long long n) {
  if (n > ctx.max_index || n < -ctx.max_index) {
    throw ResourceLimitError("index " + std::to_string(n) + " exceeds the configured limit " +
                             std::to_string(ctx.max_index));
  }
}

// Window values P_{-(k-2)} .. P_1.
bool in_window(int k, long long n) { return n <= 1 && n >= -(k - 2); }

// Ring buffer slot for index n.
std::size_t slot(long long n, int k) {
  const long long m = n % k;
  return static_cast<std::size_t>(m < 0 ? m + k : m);
}

}  // namespace

void sweep_down(const KContext& ctx, long long floor,
                const std::function<bool(long long, const mpz_class&)>& visit) {
  check_limit(ctx, floor);
  const int k = ctx.k;
  // ring[slot(i)] holds P_i for i in [t-k+1, t].
  std::vector<mpz_class> ring(static_cast<std::size_t>(k));
  ring[slot(1, k)] = 1;
  if (!visit(1, ring[slot(1, k)])) return;
  for (long long n = 0; n >= floor && n >= -(k - 2); --n) {
    if (!visit(n, ring[slot(n, k)])) return;
  }
  // s = sum_{j=1}^{k-1} P_{t-j} at top index t. At t = 1 the window is all zero.
  mpz_class s = 0;
  mpz_class next;
  for (long long t = 1; t - k >= floor; --t) {
    const mpz_class& top = ring[slot(t, k)];
    const mpz_class& below = ring[slot(t - 1, k)];
    // P_{t-k} = P_t - P_{t-1} - s
    next = top - below;
    next -= s;
    s -= below;
    s += next;
    ring[slot(t - k, k)].swap(next);
    if (!visit(t - k, ring[slot(t - k, k)])) return;
  }
}

void sweep_up(const KContext& ctx, long long ceil,
              const std::function<bool(long long, const mpz_class&)>& visit) {
  check_limit(ctx, ceil);
  const int k = ctx.k;
  std::vector<mpz_class> ring(static_cast<std::size_t>(k));
  ring[slot(1, k)] = 1;
  if (ceil < 1 || !visit(1, ring[slot(1, k)])) return;
  // s = sum_{j=1}^{k} P_{n-j}; P_n = P_{n-1} + s.
  mpz_class s = 1;
  mpz_class next;
  for (long long n = 2; n <= ceil; ++n) {
    next = ring[slot(n - 1, k)] + s;
    s += next;
    s -= ring[slot(n - k, k)];
    ring[slot(n, k)].swap(next);
    if (!visit(n, ring[slot(n, k)])) return;
  }
}

ExactTerm eval_term(const KContext& ctx, long long n) {
  check_limit(ctx, n);
  if (in_window(ctx.k, n)) return {n, mpz_class(n == 1 ? 1 : 0)};
  TermCache& c = cache();
  const auto key = std::make_pair(ctx.k, n);
  const bool use_cache = c.enabled.load();
  if (use_cache) {
    std::shared_lock lock(c.mutex);
    auto it = c.terms.find(key);
    if (it != c.terms.end()) return {n, it->second};
  }
  mpz_class value;
  auto grab = [&](long long i, const mpz_class& v) {
    if (i != n) return true;
    value = v;
    return false;
  };
  if (n > 1) {
    sweep_up(ctx, n, grab);
  } else {
    sweep_down(ctx, n, grab);
  }
  if (use_cache) {
    std::unique_lock lock(c.mutex);
    if (c.terms.size() >= kCacheCapacity) c.terms.clear();
    c.terms.emplace(key, value);
  }
  return {n, value};
}

std::vector<ExactTerm> eval_range(const KContext& ctx, long long n_lo, long long n_hi) {
  if (n_lo > n_hi) throw DomainError("eval_range needs n_lo <= n_hi");
  check_limit(ctx, n_lo);
  check_limit(ctx, n_hi);
  std::vector<ExactTerm> out;
  out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  if (n_lo <= 0) {
    const long long top = std::min<long long>(n_hi, 0);
    sweep_down(ctx, n_lo, [&](long long i, const mpz_class& v) {
      if (i <= top) out.push_back({i, v});
      return true;
    });
    std::reverse(out.begin(), out.end());
  }
  if (n_hi >= 1) {
    const long long start = std::max<long long>(n_lo, 1);
    sweep_up(ctx, n_hi, [&](long long i, const mpz_class& v) {
      if (i >= start) out.push_back({i, v});
      return true;
    });
  }
  return out;
}

void set_term_cache_enabled(bool enabled) {
  cache().enabled.store(enabled);
  if (!enabled) clear_term_cache();
}

bool term_cache_enabled() { return cache().enabled.load(); }

void clear_term_cache() {
  std::unique_lock lock(cache().mutex);
  cache().terms.clear();
}

std::size_t term_cache_size() {
  std::shared_lock lock(cache().mutex);
  return cache().terms.size();
}

}  // namespace kpell
