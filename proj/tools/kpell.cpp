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

// kpell command-line front end.
//
// Exit status: 0 when everything verified, 1 when any verification
// failed, 2 on usage, domain or resource errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kpell/bigseq.hpp"
#include "kpell/effbounds.hpp"
#include "kpell/error.hpp"
#include "kpell/reduction.hpp"
#include "kpell/report.hpp"
#include "kpell/spectra.hpp"
#include "kpell/zerostruct.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

json approx(const kpell::Ball& b) { return {{"mid", b.mid_string(20)}, {"rad", b.rad_string()}}; }

json magnitude(const kpell::LogMagnitude& m) {
  return {{"negative", m.negative}, {"value_log10", m.log10_string(12)}, {"display", m.display()}};
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--k-range", "expected a:b");
  try {
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--k-range", "expected integers a:b");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact zeros, certified roots and effective bounds for k-generalized Pell sequences"};
  app.require_subcommand(1);
  int status = 0;

  // eval
  auto* eval = app.add_subcommand("eval", "Print P_n exactly");
  int eval_k = 0;
  long long eval_n = 0;
  long long max_index = kpell::kDefaultMaxIndex;
  eval->add_option("--k", eval_k, "Order")->required()->check(CLI::Range(2, 1 << 20));
  eval->add_option("--n", eval_n, "Index")->required();
  eval->add_option("--max-index", max_index, "Largest |n| allowed");
  eval->callback([&] {
    const kpell::KContext ctx(eval_k, max_index);
    std::cout << kpell::eval_term(ctx, eval_n).value.get_str() << '\n';
  });

  // zeros
  auto* zeros = app.add_subcommand("zeros", "List the zeros of P at n <= 0");
  int zk = 0;
  std::optional<long long> zfloor;
  bool zpos = false;
  zeros->add_option("--k", zk, "Order")->required()->check(CLI::Range(2, 1 << 20));
  zeros->add_option("--floor", zfloor, "Deepest index scanned (negative)");
  zeros->add_flag("--positive-indices", zpos, "Report n with P_{-n} = 0");
  zeros->callback([&] {
    const long long floor = zfloor.value_or(kpell::default_floor(zk));
    const kpell::ZeroSet zs = kpell::enumerate_zeros(zk, floor);
    json idx = json::array();
    for (long long n : zs.indices) idx.push_back(zpos ? -n : n);
    json blocks = json::array();
    for (const kpell::Block& b : kpell::observed_blocks(zs)) {
      blocks.push_back(zpos ? json{-b.hi, -b.lo} : json{b.lo, b.hi});
    }
    std::cout << json{{"k", zk}, {"floor", zpos ? -floor : floor}, {"zeros", idx}, {"blocks", blocks},
                      {"count", zs.indices.size()}}
                     .dump()
              << '\n';
  });

  // chi
  auto* chi = app.add_subcommand("chi", "Print the zero-multiplicity formula value");
  int ck = 0;
  chi->add_option("--k", ck, "Order")->required()->check(CLI::Range(2, 1 << 20));
  chi->callback([&] { std::cout << kpell::chi(ck) << '\n'; });

  // roots
  auto* roots = app.add_subcommand("roots", "Certified roots of the characteristic polynomial");
  int rk = 0;
  long rprec = kpell::kDefaultPrec;
  bool rcache = false;
  roots->add_option("--k", rk, "Order")->required()->check(CLI::Range(2, 1 << 16));
  roots->add_option("--precision", rprec, "Working precision in bits")->check(CLI::Range(32L, long{kpell::kPrecCeiling}));
  roots->add_flag("--use-cache", rcache, "Read and write the root cache");
  roots->callback([&] {
    const kpell::RootSystem rs =
        rcache ? kpell::cached_solve_roots(rk, rprec, kpell::cache_dir()) : kpell::solve_roots(rk, rprec);
    std::cout << kpell::roots_to_json(rs).dump() << '\n';
  });

  // bound
  auto* bound = app.add_subcommand("bound", "Effective bounds in log space");
  int bk = 0;
  bool refined = false, theorem1 = false, matveev = false;
  int mt = 0;
  long md = 0;
  std::string mB;
  std::vector<std::string> mA;
  bound->add_option("--k", bk, "Order");
  auto* f_ref = bound->add_flag("--refined", refined, "Refined index bound for even k");
  auto* f_t1 = bound->add_flag("--theorem1", theorem1, "Closed-form index bound");
  auto* f_mat = bound->add_flag("--matveev", matveev, "Linear-form lower bound with explicit parameters");
  f_ref->excludes(f_t1)->excludes(f_mat);
  f_t1->excludes(f_mat);
  bound->add_option("--t", mt, "Number of logarithms");
  bound->add_option("--d", md, "Field degree");
  bound->add_option("--B", mB, "Exponent bound");
  bound->add_option("--A", mA, "Height parameters, one per logarithm")->expected(1, -1);
  bound->callback([&] {
    if (matveev) {
      kpell::MatveevInstance m;
      m.t = mt;
      m.d = md;
      m.B = kpell::parse_exact_integer(mB);
      for (const std::string& a : mA) m.A.push_back(kpell::Ball::from_strings(a, "0", kpell::kDefaultPrec));
      std::cout << json{{"kind", "matveev"}, {"log_abs_lambda_lower", magnitude(kpell::matveev_lower_bound(m))}}.dump()
                << '\n';
      return;
    }
    if (bk < 2) throw CLI::ValidationError("--k", "required for --refined and --theorem1");
    if (refined) {
      const long long L = kpell::refined_even_bound(bk);
      std::cout << json{{"kind", "refined_even"}, {"k", bk}, {"R", L}}.dump() << '\n';
    } else if (theorem1) {
      std::cout << json{{"kind", "theorem1"}, {"k", bk}, {"bound", magnitude(kpell::index_bound(bk))}}.dump() << '\n';
    } else {
      throw CLI::ValidationError("bound", "choose --refined, --theorem1 or --matveev");
    }
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Continued-fraction reduction for odd k");
  int dk = 0;
  std::string dM = "3e47";
  reduce->add_option("--k", dk, "Odd order >= 5")->required();
  reduce->add_option("--M", dM, "Initial bound on the index");
  reduce->callback([&] {
    const kpell::OddReduction r = kpell::reduce_odd(dk, kpell::parse_exact_integer(dM));
    json checks = json::object();
    for (const auto& c : r.instance.checks) checks[c.name] = {{"passed", c.passed}, {"margin", c.margin}};
    std::cout << json{{"k", dk},
                      {"tau", approx(r.instance.inst.tau)},
                      {"mu", approx(r.instance.inst.mu)},
                      {"A", approx(r.instance.inst.A)},
                      {"B", approx(r.instance.inst.B)},
                      {"q_used", r.outcome.q_used.get_str()},
                      {"m_index", r.outcome.m_index},
                      {"epsilon", approx(r.outcome.epsilon)},
                      {"R", r.outcome.R},
                      {"attempts", r.outcome.attempts},
                      {"precision", r.outcome.prec},
                      {"lambda_nonzero", r.lambda_nonzero},
                      {"checks", checks}}
                     .dump()
              << '\n';
    if (!r.instance.all_passed() || !r.lambda_nonzero) status = kExitFail;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verify zero structure, root properties and bounds per k");
  std::optional<int> vk;
  std::string vrange, vformat = "json", vM = "3e47";
  bool odd_only = false, even_only = false, full = false, allow_large = false, vpos = false, vcache = false;
  int jobs = 1;
  long vprec = kpell::kDefaultPrec;
  auto* o_k = verify->add_option("--k", vk, "Single order");
  auto* o_range = verify->add_option("--k-range", vrange, "Inclusive range a:b");
  o_k->excludes(o_range);
  auto* f_odd = verify->add_flag("--odd-only", odd_only, "Only odd k");
  verify->add_flag("--even-only", even_only, "Only even k")->excludes(f_odd);
  verify->add_flag("--full", full, "Scan down to the parity bound");
  verify->add_option("--M", vM, "Reduction bound for odd k");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  verify->add_option("--format", vformat, "Output format")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--precision", vprec, "Starting precision in bits")->check(CLI::Range(32L, long{kpell::kPrecCeiling}));
  verify->add_flag("--allow-large", allow_large, "Permit k above 500");
  verify->add_flag("--positive-indices", vpos, "Report n with P_{-n} = 0");
  verify->add_flag("--use-cache", vcache, "Read and write the root cache");
  verify->callback([&] {
    int lo = 0, hi = 0;
    if (vk) {
      lo = hi = *vk;
    } else if (!vrange.empty()) {
      std::tie(lo, hi) = parse_range(vrange);
    } else {
      throw CLI::ValidationError("verify", "give --k or --k-range");
    }
    if (lo < 2 || hi < lo) throw CLI::ValidationError("verify", "need 2 <= a <= b");
    if (hi > kpell::kDefaultMaxK && !allow_large) {
      throw CLI::ValidationError("verify", "k above 500 needs --allow-large");
    }
    std::vector<int> ks;
    for (int k = lo; k <= hi; ++k) {
      if ((odd_only && k % 2 == 0) || (even_only && k % 2 != 0)) continue;
      ks.push_back(k);
    }
    kpell::VerifyOptions opts;
    opts.full = full;
    opts.M = kpell::parse_exact_integer(vM);
    opts.prec = vprec;
    opts.use_cache = vcache;
    const bool single = vk.has_value();
    const bool csv = vformat == "csv";
    if (csv) std::cout << kpell::csv_header() << '\n';
    bool any_fail = false;
    kpell::run_verify(ks, opts, jobs, [&](const kpell::ZeroReport& r) {
      any_fail = any_fail || !r.pass;
      if (csv) {
        std::cout << kpell::to_csv_row(r, vpos) << '\n';
      } else {
        std::cout << kpell::to_json(r, vpos).dump(single ? 2 : -1) << '\n';
      }
      std::cout.flush();
    });
    if (any_fail) status = kExitFail;
  });

  // cache
  auto* cache = app.add_subcommand("cache", "Inspect or clear the root cache");
  cache->require_subcommand(1);
  std::string cdir;
  cache->add_option("--dir", cdir, "Cache directory (default: $KPELL_CACHE_DIR)");
  auto dir_of = [&] { return cdir.empty() ? kpell::cache_dir() : std::filesystem::path(cdir); };
  cache->add_subcommand("inspect", "List cache entries")->callback([&] {
    json entries = json::array();
    for (const auto& e : kpell::cache_inspect(dir_of())) {
      entries.push_back({{"file", e.path.filename().string()}, {"k", e.k}, {"precision", e.prec},
                         {"valid", e.valid}, {"bytes", e.bytes}});
    }
    std::cout << json{{"dir", dir_of().string()}, {"entries", entries}}.dump() << '\n';
  });
  cache->add_subcommand("clear", "Remove every cache entry")->callback([&] {
    std::cout << json{{"dir", dir_of().string()}, {"removed", kpell::cache_clear(dir_of())}}.dump() << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const kpell::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return status;
}
