#include "knapqsec/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "knapqsec/rng.hpp"

namespace knapqsec::qsim {

namespace {

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) + b) % r);
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return a >= b ? a - b : a + (r - b);
}

void check_width(const core::BitVector& v, int n, const char* name) {
  if (v.width != n)
    fail(Errc::WidthMismatch,
         std::string(name) + " has width " + std::to_string(v.width) +
             ", the instance has n = " + std::to_string(n));
}

void check_guard(int n, int guard, const char* what) {
  if (n > guard)
    fail(Errc::InstanceTooLarge,
         std::string(what) + ": n = " + std::to_string(n) +
             " exceeds the simulation guard " + std::to_string(guard));
}

struct Tables {
  std::vector<std::uint64_t> sum;  // subset sums mod r, indexed by value
  std::vector<std::uint64_t> dbl;  // doubled subset sums mod r
};

Tables build_tables(const core::KnapsackInstance& inst) {
  const int n = inst.n();
  const std::uint64_t r = inst.modulus();
  const auto& b = inst.weights();
  Tables t;
  t.sum.assign(std::uint64_t{1} << n, 0);
  t.dbl.assign(std::uint64_t{1} << n, 0);
  for (std::uint64_t x = 1; x < t.sum.size(); ++x) {
    const int j = std::countr_zero(x);
    const std::uint64_t w = b[n - 1 - j];
    t.sum[x] = addmod(t.sum[x & (x - 1)], w, r);
    t.dbl[x] = addmod(t.dbl[x & (x - 1)], addmod(w, w, r), r);
  }
  return t;
}

}  // namespace

std::uint64_t oracle_f(const core::BitVector& x, const core::BitVector& y,
                       const core::KnapsackInstance& inst) {
  const int n = inst.n();
  check_width(x, n, "x");
  check_width(y, n, "y");
  const std::uint64_t r = inst.modulus();
  const auto& b = inst.weights();
  std::uint64_t acc = inst.target() % r;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t w = b[i] % r;
    if (x.bit(i) != y.bit(i)) acc = addmod(acc, addmod(w, w, r), r);
    if (x.bit(i)) acc = submod(acc, w, r);
  }
  return acc;
}

std::uint64_t oracle_g(const core::BitVector& z,
                       const core::KnapsackInstance& inst) {
  const int n = inst.n();
  check_width(z, n, "z");
  const std::uint64_t r = inst.modulus();
  const auto& b = inst.weights();
  std::uint64_t acc = 0;
  for (int i = 0; i < n; ++i)
    if (z.bit(i)) acc = addmod(acc, addmod(b[i] % r, b[i] % r, r), r);
  return acc;
}

std::uint64_t oracle_h(const core::BitVector& u, const core::BitVector& v,
                       const core::KnapsackInstance& inst) {
  const int n = inst.n();
  check_width(u, n, "u");
  check_width(v, n, "v");
  return oracle_g({u.value ^ v.value, n}, inst);
}

std::uint64_t oracle_G(int flag, const core::BitVector& x,
                       const core::BitVector& y, const core::BitVector& z,
                       const core::KnapsackInstance& inst) {
  const int n = inst.n();
  check_width(x, n, "x");
  check_width(y, n, "y");
  check_width(z, n, "z");
  return flag == 0 ? oracle_f(x, y, inst) : oracle_h(x, z, inst);
}

Rational OutcomeDistribution::probability(const OutcomeRow& row) const {
  return Rational(row.n0 + row.n1, total_mass());
}

Rational OutcomeDistribution::flag0_probability(const OutcomeRow& row) const {
  return Rational(row.n0, row.n0 + row.n1);
}

const OutcomeRow* OutcomeDistribution::find(std::uint64_t a_value) const {
  auto it = std::lower_bound(
      rows.begin(), rows.end(), a_value,
      [](const OutcomeRow& row, std::uint64_t v) { return row.a_value < v; });
  return it != rows.end() && it->a_value == a_value ? &*it : nullptr;
}

const char* run_status_name(RunStatus status) {
  switch (status) {
    case RunStatus::Success: return "success";
    case RunStatus::FlagRejected: return "flag_rejected";
    case RunStatus::CheckFailed: return "check_failed";
  }
  return "?";
}

Simulator::Simulator(core::KnapsackInstance inst, int guard)
    : inst_(std::move(inst)) {
  check_guard(inst_.n(), guard, "Simulator");
  const int n = inst_.n();
  const std::uint64_t r = inst_.modulus();
  const std::uint64_t count = std::uint64_t{1} << n;
  auto tables = build_tables(inst_);
  sum_table_ = std::move(tables.sum);
  g_table_ = std::move(tables.dbl);

  for (std::uint64_t x = 0; x < count; ++x)
    if (sum_table_[x] == inst_.target()) ++solution_count_;

  // tally |{(x,y): f=A}|, the good subset of those pairs, and |{w: g(w)=A}|;
  // dense when the modulus is small enough to index directly
  auto tally = [&](auto&& visit_rows) {
    if (r <= (std::uint64_t{1} << 22)) {
      std::vector<std::uint64_t> f_tally(r, 0), good(r, 0), g_tally(r, 0);
      for (std::uint64_t x = 0; x < count; ++x) {
        const bool solves = sum_table_[x] == inst_.target();
        const std::uint64_t shift = submod(inst_.target(), sum_table_[x], r);
        for (std::uint64_t y = 0; y < count; ++y) {
          const std::uint64_t a = addmod(g_table_[x ^ y], shift, r);
          ++f_tally[a];
          if (solves) ++good[a];
        }
      }
      for (std::uint64_t w = 0; w < count; ++w) ++g_tally[g_table_[w]];
      for (std::uint64_t a = 0; a < r; ++a)
        if (f_tally[a] || g_tally[a]) visit_rows(a, f_tally[a], good[a], g_tally[a]);
    } else {
      std::unordered_map<std::uint64_t, std::uint64_t> f_tally, good, g_tally;
      for (std::uint64_t x = 0; x < count; ++x) {
        const bool solves = sum_table_[x] == inst_.target();
        const std::uint64_t shift = submod(inst_.target(), sum_table_[x], r);
        for (std::uint64_t y = 0; y < count; ++y) {
          const std::uint64_t a = addmod(g_table_[x ^ y], shift, r);
          ++f_tally[a];
          if (solves) ++good[a];
        }
      }
      for (std::uint64_t w = 0; w < count; ++w) ++g_tally[g_table_[w]];
      std::vector<std::uint64_t> keys;
      for (const auto& [a, c] : f_tally) keys.push_back(a);
      for (const auto& [a, c] : g_tally) keys.push_back(a);
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      auto at = [](const auto& m, std::uint64_t k) {
        auto it = m.find(k);
        return it == m.end() ? std::uint64_t{0} : it->second;
      };
      for (std::uint64_t a : keys)
        visit_rows(a, at(f_tally, a), at(good, a), at(g_tally, a));
    }
  };

  dist_.width = n;
  tally([&](std::uint64_t a, std::uint64_t f_pairs, std::uint64_t good,
            std::uint64_t g_count) {
    dist_.rows.push_back({a, f_pairs << n, g_count << (2 * n)});
    good_pairs_.push_back(good);
  });
}

std::uint64_t Simulator::f_value(std::uint64_t x, std::uint64_t y) const {
  const std::uint64_t r = inst_.modulus();
  return addmod(g_table_[x ^ y], submod(inst_.target(), sum_table_[x], r), r);
}

std::pair<std::uint64_t, std::uint64_t> Simulator::nth_f_pair(
    std::uint64_t a_value, std::uint64_t index) const {
  const std::uint64_t count = std::uint64_t{1} << inst_.n();
  std::uint64_t seen = 0;
  for (std::uint64_t x = 0; x < count; ++x)
    for (std::uint64_t y = 0; y < count; ++y)
      if (f_value(x, y) == a_value && seen++ == index) return {x, y};
  fail(Errc::InstanceTooLarge, "internal: f-pair index out of range");
}

RunOutcome Simulator::run_once(std::uint64_t seed) const {
  SplitMix64 rng(seed);
  const int n = inst_.n();

  // measure the result register
  const std::uint64_t m = rng.bounded(dist_.total_mass());
  const OutcomeRow* row = &dist_.rows.back();  // row masses sum to the total
  std::uint64_t cum = 0;
  for (const auto& candidate : dist_.rows) {
    cum += candidate.n0 + candidate.n1;
    if (m < cum) { row = &candidate; break; }
  }

  RunOutcome out;
  out.measured_value = row->a_value;

  // measure the flag register conditioned on A
  out.measured_flag =
      rng.bounded(row->n0 + row->n1) < row->n0 ? 0 : 1;
  if (out.measured_flag == 1) {
    out.status = RunStatus::FlagRejected;
    return out;
  }

  // measure (x, y): uniform over the f-pairs of this A
  const std::uint64_t index = rng.bounded(dist_.f_pair_count(*row));
  const auto [x, y] = nth_f_pair(row->a_value, index);
  out.measured_xy = {x, y};

  if (sum_table_[x] == inst_.target()) {
    out.status = RunStatus::Success;
    out.solution = core::BitVector{x, n};
  } else {
    out.status = RunStatus::CheckFailed;
  }
  return out;
}

Rational Simulator::success_probability_exact() const {
  Rational p = 0;
  for (std::size_t i = 0; i < dist_.rows.size(); ++i) {
    const auto& row = dist_.rows[i];
    const std::uint64_t f_pairs = dist_.f_pair_count(row);
    if (f_pairs == 0 || good_pairs_[i] == 0) continue;
    p += dist_.probability(row) * dist_.flag0_probability(row) *
         Rational(good_pairs_[i], f_pairs);
  }
  return p;
}

Estimate Simulator::estimate_success_probability(std::uint64_t trials,
                                                 std::uint64_t seed) const {
  if (trials == 0)
    fail(Errc::BadParameters, "trials must be at least 1");
  Estimate est;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (run_once(derive_subseed(seed, t)).status == RunStatus::Success)
      ++est.successes;
  }
  est.frequency =
      static_cast<double>(est.successes) / static_cast<double>(trials);
  est.sigma = std::sqrt(est.frequency * (1.0 - est.frequency) /
                        static_cast<double>(trials));
  est.low = std::max(0.0, est.frequency - 3.0 * est.sigma);
  est.high = std::min(1.0, est.frequency + 3.0 * est.sigma);
  return est;
}

BoundReport Simulator::bound_report() const {
  BoundReport report;
  report.solution_count = solution_count_;
  report.exact_success = success_probability_exact();
  for (std::size_t i = 0; i < dist_.rows.size(); ++i) {
    const auto& row = dist_.rows[i];
    BoundRow out;
    out.a_value = row.a_value;
    out.f_pairs = dist_.f_pair_count(row);
    out.h_pairs = dist_.h_pair_count(row);
    out.p1 = dist_.flag0_probability(row);
    out.p1_above_half = out.p1 > Rational(1, 2);
    if (out.f_pairs > 0) {
      out.p2 = Rational(solution_count_, out.f_pairs);
      out.success_bound_holds =
          report.exact_success >= Rational(solution_count_, 2 * out.f_pairs);
    }
    report.rows.push_back(std::move(out));
  }
  return report;
}

OutcomeDistribution exact_distribution(const core::KnapsackInstance& inst,
                                       int guard) {
  return Simulator(inst, guard).distribution();
}

RunOutcome run_once(const core::KnapsackInstance& inst, std::uint64_t seed,
                    int guard) {
  return Simulator(inst, guard).run_once(seed);
}

Rational success_probability_exact(const core::KnapsackInstance& inst,
                                   int guard) {
  return Simulator(inst, guard).success_probability_exact();
}

Estimate estimate_success_probability(const core::KnapsackInstance& inst,
                                      std::uint64_t trials, std::uint64_t seed,
                                      int guard) {
  return Simulator(inst, guard).estimate_success_probability(trials, seed);
}

BoundReport bound_report(const core::KnapsackInstance& inst, int guard) {
  return Simulator(inst, guard).bound_report();
}

VerificationResult verify_fg_collision(const core::KnapsackInstance& inst,
                                       int guard) {
  check_guard(inst.n(), guard, "verify_fg_collision");
  const int n = inst.n();
  const std::uint64_t count = std::uint64_t{1} << n;

  // deliberately avoids the simulator's tables: oracles evaluate the formulas
  // bit by bit, solution status comes from the independent subset-sum path
  VerificationResult result;
  for (std::uint64_t x = 0; x < count; ++x) {
    const bool solves = core::is_solution(inst, x);
    for (std::uint64_t y = 0; y < count; ++y) {
      const core::BitVector bx{x, n}, by{y, n}, bz{x ^ y, n};
      const bool collides = oracle_f(bx, by, inst) == oracle_g(bz, inst);
      ++result.checked;
      if (collides != solves) {
        ++result.mismatches;
        if (result.counterexamples.size() < 8)
          result.counterexamples.push_back({x, y, 0});
      }
    }
  }
  result.ok = result.mismatches == 0;
  return result;
}

VerificationResult verify_fh_collision(const core::KnapsackInstance& inst,
                                       int guard) {
  check_guard(inst.n(), guard, "verify_fh_collision");
  const int n = inst.n();
  const std::uint64_t count = std::uint64_t{1} << n;

  VerificationResult result;
  for (std::uint64_t x = 0; x < count; ++x) {
    const bool solves = core::is_solution(inst, x);
    for (std::uint64_t y = 0; y < count; ++y) {
      const std::uint64_t f =
          oracle_f({x, n}, {y, n}, inst);
      for (std::uint64_t u = 0; u < count; ++u) {
        // v is pinned by u xor v = x xor y
        const std::uint64_t v = u ^ x ^ y;
        const bool collides = f == oracle_h({u, n}, {v, n}, inst);
        ++result.checked;
        if (collides != solves) {
          ++result.mismatches;
          if (result.counterexamples.size() < 8)
            result.counterexamples.push_back({x, y, u});
        }
      }
    }
  }
  result.ok = result.mismatches == 0;
  return result;
}

ResourceEstimate resource_estimate(int n) {
  if (n < 1)
    fail(Errc::BadParameters, "width must be at least 1");
  ResourceEstimate est;
  est.width = n;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  est.qft_gate_count = 1 + 3 * un * un;
  est.adder_count = 2 * un + 1;
  const int lg = n == 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1));
  est.adder_width = n + lg + 1;
  const std::uint64_t aw = static_cast<std::uint64_t>(est.adder_width);
  est.total_elementary_gates = est.qft_gate_count + est.adder_count * aw * aw;
  return est;
}

}  // namespace knapqsec::qsim
