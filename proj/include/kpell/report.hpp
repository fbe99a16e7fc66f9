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

#pragma once

// Per-k verification records, their JSON and CSV renderings, and the
// on-disk root cache.

#include <gmpxx.h>

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpell/spectra.hpp"
#include "kpell/zerostruct.hpp"

namespace kpell {

inline constexpr const char* kReportSchema = "kpell.zero_report/1";
inline constexpr int kDefaultMaxK = 500;

/// Default reduction bound, 3 * 10^47.
mpz_class default_reduction_bound();

struct VerifyOptions {
  /// Scan down to the parity bound instead of the default floor.
  bool full = false;
  mpz_class M = default_reduction_bound();
  mpfr_prec_t prec = kDefaultPrec;
  /// Read and write certified roots through the root cache.
  bool use_cache = false;
};

/// A certified real rendered as decimal midpoint and radius.
struct Approx {
  std::string mid;
  std::string rad;

  static Approx of(const Ball& b, int digits = 20);
};

struct BoundUsed {
  /// "refined_even", "reduced_odd", "theorem1" or "none".
  std::string kind = "none";
  std::optional<long long> R;
  /// log10 of the closed-form bound, when one applies.
  std::optional<std::string> log10;
  std::optional<std::string> display;
};

struct OddDetails {
  Approx tau, mu, A, B, epsilon;
  std::string q_used;
  int m_index = 0;
  int attempts = 0;
  bool switched_conjugate = false;
  bool lambda_nonzero = false;
};

struct ZeroReport {
  int k = 0;
  std::vector<long long> zeros;
  std::vector<Block> predicted_blocks;
  std::vector<long long> predicted;
  long long chi_formula = 0;
  long long chi_observed = 0;
  long long floor = 0;
  BoundUsed bound_used;
  BoundUsed theorem1;
  std::vector<CheckResult> checks;
  std::optional<OddDetails> odd;
  mpfr_prec_t precision_used = 0;
  std::string started_at;
  std::string finished_at;
  bool pass = false;
  /// Set when the verification stopped on an error.
  std::string error;

  std::string parity() const { return k % 2 == 0 ? "even" : "odd"; }
};

ZeroReport verify_k(int k, const VerifyOptions& opts = {});

/// Verifies every k in `ks` on `jobs` worker threads and hands the
/// reports to `sink` in the order of `ks`.
void run_verify(const std::vector<int>& ks, const VerifyOptions& opts, int jobs,
                const std::function<void(const ZeroReport&)>& sink);

/// `positive_indices` lists zeros as the n >= 0 with P_{-n} = 0.
nlohmann::json to_json(const ZeroReport& r, bool positive_indices = false);
std::string csv_header();
std::string to_csv_row(const ZeroReport& r, bool positive_indices = false);

nlohmann::json roots_to_json(const RootSystem& rs);

// Root cache: one file roots-k<K>-p<P>.txt per (k, precision) holding a
// checksum of the Psi_k coefficients and decimal mid/rad of every root.

/// $KPELL_CACHE_DIR, else $XDG_CACHE_HOME/kpell, else ~/.cache/kpell.
std::filesystem::path cache_dir();

/// FNV-1a over the coefficient list of Psi_k.
std::string psi_checksum(int k);

void write_root_cache(const std::filesystem::path& dir, const RootSystem& rs);

/// Reads and re-certifies a cached root system; nullopt when the file is
/// missing, malformed or stale.
std::optional<RootSystem> read_root_cache(const std::filesystem::path& dir, int k, mpfr_prec_t prec);

RootSystem cached_solve_roots(int k, mpfr_prec_t prec, const std::filesystem::path& dir);

struct CacheEntry {
  std::filesystem::path path;
  int k = 0;
  mpfr_prec_t prec = 0;
  bool valid = false;
  std::uintmax_t bytes = 0;
};

std::vector<CacheEntry> cache_inspect(const std::filesystem::path& dir);
/// Removes every cache file; returns how many were removed.
std::size_t cache_clear(const std::filesystem::path& dir);

}  // namespace kpell
