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

#include "kpell/report.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>
#include <tuple>

#include "kpell/effbounds.hpp"
#include "kpell/error.hpp"
#include "kpell/reduction.hpp"

namespace kpell {

namespace {

constexpr long long kEvenBoundLo = 111;
constexpr long long kEvenBoundHi = 8'445'448;
constexpr long long kOddBoundLo = 1568;
constexpr long long kOddBoundHi = 130'068'833;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CheckResult make_check(std::string name, bool passed, double margin, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = passed;
  c.margin = margin;
  c.detail = std::move(detail);
  return c;
}

CheckResult range_check(const std::string& name, long long v, long long lo, long long hi) {
  const bool ok = v >= lo && v <= hi;
  const double margin = static_cast<double>(std::min(v - lo, hi - v));
  return make_check(name, ok, margin,
                    std::to_string(v) + " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::string join_indices(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "{" + s + "}";
}

void run_spectral_checks(const RootSystem& rs, ZeroReport& rep) {
  const int k = rs.k;
  rep.checks.push_back(make_check("dominant_bounds", check_dominant_bounds(rs), 0.0, "phi^2(1 - phi^-k) < gamma < phi^2"));
  for (CheckResult& c : check_root_properties(rs)) rep.checks.push_back(std::move(c));
  if (k % 2 == 0) rep.checks.push_back(check_even_tail_gap(rs));

  const auto seps = check_modulus_separation(rs);
  bool all = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < seps.size(); ++i) {
    all = all && seps[i].passed;
    if (i == 0 || seps[i].log_margin < worst) worst = seps[i].log_margin;
  }
  rep.checks.push_back(make_check("modulus_separation", all, worst, std::to_string(seps.size()) + " pairs"));
}

void even_bound(int k, ZeroReport& rep, const VerifyOptions& opts) {
  const auto [L, chain_at, chain_after] = with_certified_roots(k, opts.prec, [](const RootSystem& rs) {
    const long long l = refined_even_bound(rs);
    return std::tuple{l, even_chain_holds(rs, l), even_chain_holds(rs, l + 1)};
  });
  rep.bound_used.kind = "refined_even";
  rep.bound_used.R = L;
  rep.checks.push_back(range_check("refined_bound_range", L, kEvenBoundLo, kEvenBoundHi));
  rep.checks.push_back(make_check("even_chain", chain_at && !chain_after, 0.0,
                                  "chain holds at L and fails at L + 1"));
  const LogMagnitude t1 = index_bound(k);
  const bool dominated = certainly_less(LogMagnitude(log(Ball(L, t1.ln.prec()))), t1);
  rep.checks.push_back(make_check("theorem1_dominates", dominated, t1.log10().mid_double() - std::log10(double(L)),
                                  "log10 gap to the closed-form bound"));
}

void odd_bound(int k, ZeroReport& rep, const VerifyOptions& opts) {
  const OddReduction red = reduce_odd(k, opts.M);
  const long long R = red.outcome.R;
  rep.bound_used.kind = "reduced_odd";
  rep.bound_used.R = R;
  rep.precision_used = std::max(rep.precision_used, red.outcome.prec);
  for (const CheckResult& c : red.instance.checks) rep.checks.push_back(c);
  rep.checks.push_back(range_check("reduced_bound_range", R, kOddBoundLo, kOddBoundHi));
  rep.checks.push_back(make_check("lambda_nonzero", red.lambda_nonzero, 0.0, "linear form at u = R"));

  OddDetails d;
  const ReductionInstance& in = red.instance.inst;
  d.tau = Approx::of(in.tau);
  d.mu = Approx::of(in.mu);
  d.A = Approx::of(in.A);
  d.B = Approx::of(in.B);
  d.epsilon = Approx::of(red.outcome.epsilon);
  d.q_used = red.outcome.q_used.get_str();
  d.m_index = red.outcome.m_index;
  d.attempts = red.outcome.attempts;
  d.switched_conjugate = red.instance.switched;
  d.lambda_nonzero = red.lambda_nonzero;
  rep.odd = std::move(d);
}

}  // namespace

mpz_class default_reduction_bound() { return parse_exact_integer("3e47"); }

Approx Approx::of(const Ball& b, int digits) { return {b.mid_string(digits), b.rad_string()}; }

ZeroReport verify_k(int k, const VerifyOptions& opts) {
  ZeroReport rep;
  rep.k = k;
  rep.started_at = utc_now();
  try {
    if (k < 2) throw DomainError("order k must be at least 2");
    rep.predicted = predicted_zero_set(k);
    if (k >= 4) {
      rep.predicted_blocks = predicted_intervals(k).blocks;
    } else if (k == 3) {
      rep.predicted_blocks = {{-3, -3}};
    }
    rep.chi_formula = chi(k);

    for (mpfr_prec_t prec = opts.prec;; prec *= 2) {
      const RootSystem rs = opts.use_cache ? cached_solve_roots(k, prec, cache_dir()) : solve_roots(k, prec);
      ZeroReport trial = rep;
      try {
        run_spectral_checks(rs, trial);
      } catch (const IndeterminateError&) {
        if (prec * 2 > kPrecCeiling) throw PrecisionExhaustedError("root checks undecided for k = " + std::to_string(k));
        continue;
      }
      rep = std::move(trial);
      rep.precision_used = rs.prec;
      break;
    }

    if (k >= 4) {
      const LogMagnitude t1 = index_bound(k);
      rep.theorem1.kind = "theorem1";
      rep.theorem1.log10 = t1.log10_string(12);
      rep.theorem1.display = t1.display();
      if (k % 2 == 0) {
        even_bound(k, rep, opts);
      } else if (k >= 5) {
        odd_bound(k, rep, opts);
      }
      rep.bound_used.log10 = rep.theorem1.log10;
      rep.bound_used.display = rep.theorem1.display;
    }

    rep.floor = default_floor(k);
    if (opts.full && rep.bound_used.R) rep.floor = std::min(rep.floor, -*rep.bound_used.R);
    const ZeroSet zs = enumerate_zeros(k, rep.floor);
    rep.zeros = zs.indices;
    rep.chi_observed = static_cast<long long>(zs.indices.size());

    const bool match = rep.zeros == rep.predicted;
    rep.checks.push_back(make_check("zero_set_match", match, match ? 0.0 : -1.0,
                                    "observed " + join_indices(rep.zeros) + ", predicted " +
                                        join_indices(rep.predicted)));
    rep.checks.push_back(make_check("chi_match", rep.chi_observed == rep.chi_formula,
                                    static_cast<double>(-std::llabs(rep.chi_observed - rep.chi_formula)),
                                    "observed " + std::to_string(rep.chi_observed) + ", formula " +
                                        std::to_string(rep.chi_formula)));
    if (rep.bound_used.R) {
      const long long deepest = -zs.deepest();
      rep.checks.push_back(make_check("bound_dominates_zeros", *rep.bound_used.R >= deepest,
                                      static_cast<double>(*rep.bound_used.R - deepest),
                                      "R = " + std::to_string(*rep.bound_used.R) + ", deepest zero " +
                                          std::to_string(-deepest)));
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.passed || !c.required; });
  } catch (const Error& e) {
    rep.error = e.what();
    rep.pass = false;
  }
  rep.finished_at = utc_now();
  return rep;
}

void run_verify(const std::vector<int>& ks, const VerifyOptions& opts, int jobs,
                const std::function<void(const ZeroReport&)>& sink) {
  const std::size_t n = ks.size();
  if (n == 0) return;
  jobs = std::clamp(jobs, 1, static_cast<int>(n));
  if (jobs == 1) {
    for (int k : ks) sink(verify_k(k, opts));
    return;
  }
  std::vector<std::optional<ZeroReport>> slots(n);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        ZeroReport r = verify_k(ks[i], opts);
        {
          std::lock_guard lock(mu);
          slots[i] = std::move(r);
        }
        cv.notify_all();
      }
    });
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return slots[i].has_value(); });
    const ZeroReport r = std::move(*slots[i]);
    slots[i].reset();
    lock.unlock();
    sink(r);
  }
}

namespace {

nlohmann::json approx_json(const Approx& a) { return {{"mid", a.mid}, {"rad", a.rad}}; }

nlohmann::json bound_json(const BoundUsed& b) {
  nlohmann::json j{{"kind", b.kind}};
  j["R"] = b.R ? nlohmann::json(*b.R) : nlohmann::json(nullptr);
  j["value_log10"] = b.log10 ? nlohmann::json(*b.log10) : nlohmann::json(nullptr);
  j["display"] = b.display ? nlohmann::json(*b.display) : nlohmann::json(nullptr);
  return j;
}

long long flip(long long n, bool positive) { return positive ? -n : n; }

}  // namespace

nlohmann::json to_json(const ZeroReport& r, bool positive_indices) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["k"] = r.k;
  j["parity"] = r.parity();
  j["status"] = r.pass ? "PASS" : "FAIL";
  j["index_convention"] = positive_indices ? "P_{-n}" : "n";
  auto& zeros = j["zeros"] = nlohmann::json::array();
  for (long long n : r.zeros) zeros.push_back(flip(n, positive_indices));
  auto& blocks = j["predicted_blocks"] = nlohmann::json::array();
  for (const Block& b : r.predicted_blocks) {
    blocks.push_back(positive_indices ? nlohmann::json{-b.hi, -b.lo} : nlohmann::json{b.lo, b.hi});
  }
  j["chi_formula"] = r.chi_formula;
  j["chi_observed"] = r.chi_observed;
  j["floor"] = flip(r.floor, positive_indices);
  j["bound_used"] = bound_json(r.bound_used);
  j["theorem1"] = bound_json(r.theorem1);
  auto& checks = j["checks"] = nlohmann::json::object();
  for (const CheckResult& c : r.checks) {
    checks[c.name] = {{"passed", c.passed}, {"margin", c.margin}, {"required", c.required}, {"detail", c.detail}};
  }
  if (r.odd) {
    const OddDetails& d = *r.odd;
    j["reduction"] = {{"tau", approx_json(d.tau)},
                      {"mu", approx_json(d.mu)},
                      {"A", approx_json(d.A)},
                      {"B", approx_json(d.B)},
                      {"epsilon", approx_json(d.epsilon)},
                      {"q_used", d.q_used},
                      {"m_index", d.m_index},
                      {"attempts", d.attempts},
                      {"switched_conjugate", d.switched_conjugate},
                      {"lambda_nonzero", d.lambda_nonzero}};
  }
  j["precision_used"] = r.precision_used;
  j["timestamps"] = {{"started", r.started_at}, {"finished", r.finished_at}};
  j["error"] = r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error);
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string csv_header() {
  return "k,parity,status,chi_formula,chi_observed,zeros,predicted_blocks,floor,bound_kind,bound_R,"
         "theorem1_log10,tau_mid,mu_mid,q_used,epsilon_mid,precision_used,failed_checks,error,"
         "started_at,finished_at";
}

std::string to_csv_row(const ZeroReport& r, bool positive_indices) {
  std::string zeros, blocks, failed;
  for (long long n : r.zeros) zeros += (zeros.empty() ? "" : " ") + std::to_string(flip(n, positive_indices));
  for (const Block& b : r.predicted_blocks) {
    const long long a = positive_indices ? -b.hi : b.lo;
    const long long c = positive_indices ? -b.lo : b.hi;
    blocks += (blocks.empty() ? "" : " ") + std::to_string(a) + ".." + std::to_string(c);
  }
  for (const CheckResult& c : r.checks) {
    if (!c.passed && c.required) failed += (failed.empty() ? "" : " ") + c.name;
  }
  std::vector<std::string> cols{std::to_string(r.k),
                                r.parity(),
                                r.pass ? "PASS" : "FAIL",
                                std::to_string(r.chi_formula),
                                std::to_string(r.chi_observed),
                                zeros,
                                blocks,
                                std::to_string(flip(r.floor, positive_indices)),
                                r.bound_used.kind,
                                r.bound_used.R ? std::to_string(*r.bound_used.R) : "",
                                r.theorem1.log10.value_or(""),
                                r.odd ? r.odd->tau.mid : "",
                                r.odd ? r.odd->mu.mid : "",
                                r.odd ? r.odd->q_used : "",
                                r.odd ? r.odd->epsilon.mid : "",
                                std::to_string(r.precision_used),
                                failed,
                                r.error,
                                r.started_at,
                                r.finished_at};
  std::string row;
  for (std::size_t i = 0; i < cols.size(); ++i) row += (i ? "," : "") + csv_field(cols[i]);
  return row;
}

nlohmann::json roots_to_json(const RootSystem& rs) {
  nlohmann::json j;
  j["k"] = rs.k;
  j["precision"] = rs.prec;
  j["dominant"] = rs.dominant;
  auto& roots = j["roots"] = nlohmann::json::array();
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    roots.push_back({{"re", approx_json(Approx::of(rs.roots[i].re))},
                     {"im", approx_json(Approx::of(rs.roots[i].im))},
                     {"modulus", approx_json(Approx::of(rs.moduli[i]))},
                     {"real", rs.is_real(static_cast<int>(i))}});
  }
  return j;
}

// ---- root cache ---------------------------------------------------------

std::filesystem::path cache_dir() {
  if (const char* d = std::getenv("KPELL_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "kpell";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "kpell";
  return std::filesystem::temp_directory_path() / "kpell-cache";
}

std::string psi_checksum(int k) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  feed("1,-2");
  for (int i = 2; i <= k; ++i) feed(",-1");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::filesystem::path cache_file(const std::filesystem::path& dir, int k, mpfr_prec_t prec) {
  return dir / ("roots-k" + std::to_string(k) + "-p" + std::to_string(prec) + ".txt");
}

struct ParsedCache {
  int k = 0;
  long prec = 0;
  std::string checksum;
  std::vector<std::array<std::string, 4>> roots;
};

std::optional<ParsedCache> parse_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  ParsedCache pc;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "k") {
      ls >> pc.k;
    } else if (key == "prec") {
      ls >> pc.prec;
    } else if (key == "checksum") {
      ls >> pc.checksum;
    } else if (key == "root") {
      std::array<std::string, 4> f;
      for (auto& s : f) ls >> s;
      if (f[3].empty()) return std::nullopt;
      pc.roots.push_back(f);
    } else {
      return std::nullopt;
    }
    if (ls.fail()) return std::nullopt;
  }
  return pc;
}

bool cache_consistent(const ParsedCache& pc) {
  return pc.k >= 2 && pc.checksum == psi_checksum(pc.k) && static_cast<int>(pc.roots.size()) == pc.k;
}

}  // namespace

void write_root_cache(const std::filesystem::path& dir, const RootSystem& rs) {
  std::filesystem::create_directories(dir);
  const auto target = cache_file(dir, rs.k, rs.prec);
  const auto tmp = target.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    out << "# kpell root cache v1\n";
    out << "k " << rs.k << "\nprec " << rs.prec << "\nchecksum " << psi_checksum(rs.k) << "\n";
    for (const ComplexBall& z : rs.roots) {
      out << "root " << z.re.mid_string() << ' ' << z.re.rad_string() << ' ' << z.im.mid_string() << ' '
          << z.im.rad_string() << '\n';
    }
    if (!out) throw ResourceLimitError("cannot write root cache file " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

std::optional<RootSystem> read_root_cache(const std::filesystem::path& dir, int k, mpfr_prec_t prec) {
  const auto pc = parse_cache(cache_file(dir, k, prec));
  if (!pc || pc->k != k || pc->prec != prec || !cache_consistent(*pc)) return std::nullopt;
  try {
    std::vector<ComplexBall> approx;
    for (const auto& f : pc->roots) {
      approx.emplace_back(Ball::from_strings(f[0], f[1], prec), Ball::from_strings(f[2], f[3], prec));
    }
    return certify_roots(k, approx, prec);
  } catch (const Error&) {
    return std::nullopt;
  }
}

RootSystem cached_solve_roots(int k, mpfr_prec_t prec, const std::filesystem::path& dir) {
  if (auto rs = read_root_cache(dir, k, prec)) return *rs;
  RootSystem rs = solve_roots(k, prec);
  try {
    write_root_cache(dir, rs);
  } catch (const std::exception&) {
    // an unwritable cache only costs recomputation
  }
  return rs;
}

std::vector<CacheEntry> cache_inspect(const std::filesystem::path& dir) {
  std::vector<CacheEntry> out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return out;
  static const std::regex name(R"(roots-k(\d+)-p(\d+)\.txt)");
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string fn = e.path().filename().string();
    if (!e.is_regular_file() || !std::regex_match(fn, m, name)) continue;
    CacheEntry c;
    c.path = e.path();
    c.k = std::stoi(m[1]);
    c.prec = std::stol(m[2]);
    c.bytes = e.file_size();
    const auto pc = parse_cache(e.path());
    c.valid = pc && pc->k == c.k && pc->prec == c.prec && cache_consistent(*pc);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const CacheEntry& a, const CacheEntry& b) { return std::tie(a.k, a.prec) < std::tie(b.k, b.prec); });
  return out;
}

std::size_t cache_clear(const std::filesystem::path& dir) {
  std::size_t n = 0;
  for (const CacheEntry& c : cache_inspect(dir)) n += std::filesystem::remove(c.path) ? 1 : 0;
  return n;
}

}  // namespace kpell
