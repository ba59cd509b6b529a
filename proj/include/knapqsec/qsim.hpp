#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "knapqsec/core.hpp"

namespace knapqsec::qsim {

using Rational = boost::multiprecision::cpp_rational;

// The measurement statistics are counting problems over 2*4^n oracle rows,
// so the guard bounds n, not the register count.
inline constexpr int kSimGuard = 12;
// The adjoint-collision verifier walks (x, y, u) triples: 8^n work.
inline constexpr int kTripleGuard = 8;

// Oracle pair: f(x,y) = 2*sum (x_i xor y_i) b_i + s - sum x_i b_i and
// g(z) = sum 2 z_i b_i, both canonical mod r. f(x,y) collides with
// g(x xor y) exactly when x encodes a solution. h is f's adjoint:
// h(u,v) = g(u xor v).
std::uint64_t oracle_f(const core::BitVector& x, const core::BitVector& y,
                       const core::KnapsackInstance& inst);
std::uint64_t oracle_g(const core::BitVector& z,
                       const core::KnapsackInstance& inst);
std::uint64_t oracle_h(const core::BitVector& u, const core::BitVector& v,
                       const core::KnapsackInstance& inst);
// Combined oracle selected by the flag register: f(x,y) when flag = 0,
// h(x,z) when flag = 1.
std::uint64_t oracle_G(int flag, const core::BitVector& x,
                       const core::BitVector& y, const core::BitVector& z,
                       const core::KnapsackInstance& inst);

// One reachable value A of the result register. n0/n1 count basis tuples
// (flag, x, y, z) mapping to A with flag 0/1; each f-pair carries a free z
// register and each h-pair a free y register, so n0 = f_pairs * 2^n and
// n1 = h_pairs * 2^n.
struct OutcomeRow {
  std::uint64_t a_value = 0;
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
};

struct OutcomeDistribution {
  int width = 0;
  std::vector<OutcomeRow> rows;  // ascending by a_value, reachable rows only

  std::uint64_t total_mass() const {  // 2^{3n+1}
    return std::uint64_t{1} << (3 * width + 1);
  }
  std::uint64_t f_pair_count(const OutcomeRow& row) const {
    return row.n0 >> width;
  }
  std::uint64_t h_pair_count(const OutcomeRow& row) const {
    return row.n1 >> width;
  }
  Rational probability(const OutcomeRow& row) const;        // P(A)
  Rational flag0_probability(const OutcomeRow& row) const;  // P(flag=0 | A)
  const OutcomeRow* find(std::uint64_t a_value) const;
};

enum class RunStatus {
  Success,       // final sum check passed; a solution was extracted
  FlagRejected,  // flag register measured 1, run aborted
  CheckFailed,   // extracted candidate does not satisfy the instance
};

const char* run_status_name(RunStatus status);

struct RunOutcome {
  RunStatus status = RunStatus::FlagRejected;
  std::uint64_t measured_value = 0;  // A
  int measured_flag = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> measured_xy;
  std::optional<core::BitVector> solution;  // set iff status == Success
};

struct Estimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double frequency = 0.0;
  double sigma = 0.0;  // binomial standard error at the observed frequency
  double low = 0.0;    // frequency -/+ 3 sigma, clamped to [0, 1]
  double high = 0.0;
};

// Per-outcome record of the branch weights and of two heuristic bounds
// attached to this construction: the flag-0 conditional probability
// exceeding 1/2, and the overall success probability being at least
// k / (2 * f_pairs). Neither bound holds universally (see the tests for a
// counterexample), so the report records them without asserting them.
struct BoundRow {
  std::uint64_t a_value = 0;
  std::uint64_t f_pairs = 0;  // |{(x,y) : f(x,y) = A}|
  std::uint64_t h_pairs = 0;  // |{(x,z) : h(x,z) = A}|
  Rational p1;                // P(flag=0 | A) = n0 / (n0 + n1)
  std::optional<Rational> p2;              // k / f_pairs, when f_pairs > 0
  bool p1_above_half = false;
  std::optional<bool> success_bound_holds;  // P >= k / (2 f_pairs)
};

struct BoundReport {
  std::uint64_t solution_count = 0;  // k
  Rational exact_success;
  std::vector<BoundRow> rows;
};

struct VerificationResult {
  bool ok = true;
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  // first few offending tuples; u is meaningful only for the adjoint check
  struct Counterexample {
    std::uint64_t x, y, u;
  };
  std::vector<Counterexample> counterexamples;
};

struct ResourceEstimate {
  int width = 0;
  std::uint64_t qft_gate_count = 0;  // one 1-wide + three n-wide transforms
  std::uint64_t adder_count = 0;     // 2n + 1
  int adder_width = 0;               // n + ceil(log2 n) + 1
  std::uint64_t total_elementary_gates = 0;
};

// Exact simulator for one instance. The state after the oracle step is a
// uniform superposition over (flag, x, y, z) basis tuples tagged with
// G(flag, x, y, z), so every measurement statistic reduces to exact integer
// counting over those tuples; no statevector is kept.
class Simulator {
 public:
  explicit Simulator(core::KnapsackInstance inst, int guard = kSimGuard);

  const core::KnapsackInstance& instance() const { return inst_; }
  const OutcomeDistribution& distribution() const { return dist_; }
  std::uint64_t solution_count() const { return solution_count_; }

  // One full seeded run: measure A, then the flag, then (x, y), then apply
  // the final sum check. Identical seeds give identical outcomes.
  RunOutcome run_once(std::uint64_t seed) const;

  Rational success_probability_exact() const;
  Estimate estimate_success_probability(std::uint64_t trials,
                                        std::uint64_t seed) const;
  BoundReport bound_report() const;

 private:
  std::uint64_t f_value(std::uint64_t x, std::uint64_t y) const;
  std::pair<std::uint64_t, std::uint64_t> nth_f_pair(std::uint64_t a_value,
                                                     std::uint64_t index) const;

  core::KnapsackInstance inst_;
  std::vector<std::uint64_t> sum_table_;  // subset sums mod r by value
  std::vector<std::uint64_t> g_table_;    // doubled sums mod r by value
  OutcomeDistribution dist_;
  // per reachable A: |{(x,y) : f(x,y) = A, x solves the instance}|
  std::vector<std::uint64_t> good_pairs_;
  std::uint64_t solution_count_ = 0;
};

OutcomeDistribution exact_distribution(const core::KnapsackInstance& inst,
                                       int guard = kSimGuard);
RunOutcome run_once(const core::KnapsackInstance& inst, std::uint64_t seed,
                    int guard = kSimGuard);
Rational success_probability_exact(const core::KnapsackInstance& inst,
                                   int guard = kSimGuard);
Estimate estimate_success_probability(const core::KnapsackInstance& inst,
                                      std::uint64_t trials, std::uint64_t seed,
                                      int guard = kSimGuard);
BoundReport bound_report(const core::KnapsackInstance& inst,
                         int guard = kSimGuard);

// Exhaustive check that f(x,y) = g(x xor y) (mod r) exactly when x encodes
// a solution, over all 4^n pairs.
VerificationResult verify_fg_collision(const core::KnapsackInstance& inst,
                                       int guard = kSimGuard);
// Exhaustive check of the adjoint form: for every (x, y, u) with
// v = u xor x xor y, f(x,y) = h(u,v) exactly when x encodes a solution.
VerificationResult verify_fh_collision(const core::KnapsackInstance& inst,
                                       int guard = kTripleGuard);

// Gate-count bookkeeping for a width-n run: documentation-grade estimates,
// not circuit synthesis.
ResourceEstimate resource_estimate(int n);

}  // namespace knapqsec::qsim
