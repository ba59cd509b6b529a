// knapqsec CLI: knapsack-over-Z_r solvers, the measurement-driven solver
// simulation, the Chor-Rivest cryptosystem, and parameter audits.
//
// Exit codes: 0 success/secure, 1 negative result, 2 input error,
// 3 indeterminate (audit could not decide the factor bound).

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knapqsec/audit.hpp"
#include "knapqsec/chor_rivest.hpp"
#include "knapqsec/core.hpp"
#include "knapqsec/json_io.hpp"
#include "knapqsec/qsim.hpp"

namespace {

using namespace knapqsec;

// KNAPQSEC_GUARD_N raises the enumeration guards (at your own risk).
int guard_or(int fallback) {
  if (const char* s = std::getenv("KNAPQSEC_GUARD_N")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0 && v <= 62) return static_cast<int>(v);
  }
  return fallback;
}

cr::BigInt parse_decimal(const std::string& text, const char* what) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::MalformedInput,
         std::string(what) + " must be a decimal integer; got \"" + text +
             "\"");
  return cr::BigInt(text);
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  const cr::BigInt v = parse_decimal(text, what);
  if (v > std::numeric_limits<std::uint64_t>::max())
    fail(Errc::MalformedInput,
         std::string(what) + " does not fit in 64 bits: " + text);
  return v.convert_to<std::uint64_t>();
}

int run_solve(const std::string& path, const std::string& method,
              const std::string& format) {
  const auto inst = io::load_instance(path);
  const auto solutions =
      method == "mitm"
          ? core::meet_in_the_middle_solutions(
                inst, guard_or(core::kMeetInMiddleGuard))
          : core::brute_force_solutions(inst, guard_or(core::kBruteForceGuard));

  if (format == "json") {
    io::json doc = {{"n", inst.n()},
                    {"r", inst.modulus()},
                    {"s", inst.target()},
                    {"method", method},
                    {"k", solutions.size()}};
    io::json list = io::json::array();
    for (const auto& x : solutions) list.push_back(x.to_string());
    doc["solutions"] = std::move(list);
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "n: " << inst.n() << "  r: " << inst.modulus()
              << "  s: " << inst.target() << "  method: " << method << '\n'
              << "k: " << solutions.size() << '\n';
    if (solutions.empty()) {
      std::cout << "no solutions\n";
    } else {
      for (const auto& x : solutions) std::cout << x.to_string() << '\n';
    }
  }
  return solutions.empty() ? 1 : 0;
}

int run_qsim(const std::string& path, bool exact, std::uint64_t trials,
             std::uint64_t seed, const std::string& format) {
  const auto inst = io::load_instance(path);
  const qsim::Simulator sim(inst, guard_or(qsim::kSimGuard));

  if (exact) {
    const auto p = sim.success_probability_exact();
    const auto report = sim.bound_report();
    if (format == "json") {
      io::json doc = {{"n", inst.n()},
                      {"r", inst.modulus()},
                      {"s", inst.target()},
                      {"distribution", io::to_json(sim.distribution())},
                      {"success_probability", io::fraction_string(p)},
                      {"success_probability_float", p.convert_to<double>()},
                      {"bound_report", io::to_json(report)}};
      std::cout << doc.dump(2) << '\n';
    } else {
      std::cout << "n: " << inst.n() << "  r: " << inst.modulus()
                << "  s: " << inst.target() << '\n'
                << "k: " << report.solution_count << '\n'
                << "P_success: " << io::fraction_string(p) << '\n'
                << "A  N0  N1  p1\n";
      const auto& dist = sim.distribution();
      for (const auto& row : dist.rows)
        std::cout << row.a_value << "  " << row.n0 << "  " << row.n1 << "  "
                  << io::fraction_string(dist.flag0_probability(row)) << '\n';
    }
    return 0;
  }

  const auto est = sim.estimate_success_probability(trials, seed);
  if (format == "json") {
    io::json doc = {{"seed", seed},
                    {"n", inst.n()},
                    {"r", inst.modulus()},
                    {"s", inst.target()},
                    {"estimate", io::to_json(est)}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "seed: " << seed << '\n'
              << "n: " << inst.n() << "  r: " << inst.modulus()
              << "  s: " << inst.target() << '\n'
              << "trials: " << est.trials << '\n'
              << "successes: " << est.successes << '\n'
              << "frequency: " << est.frequency << '\n'
              << "interval: [" << est.low << ", " << est.high << "]\n";
  }
  return 0;
}

int run_keygen(std::uint64_t p, std::uint64_t h, std::uint64_t seed,
               const std::string& pub_path, const std::string& priv_path,
               const std::string& format) {
  const auto pair = cr::keygen(p, h, seed);
  io::save_json(io::to_json(pair.pub), pub_path);
  io::save_json(io::to_json(pair.priv), priv_path);
  if (format == "json") {
    io::json doc = {{"seed", seed},
                    {"p", p},
                    {"h", h},
                    {"public_key_file", pub_path},
                    {"private_key_file", priv_path}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "seed: " << seed << '\n'
              << "p: " << p << "  h: " << h << '\n'
              << "public key: " << pub_path << '\n'
              << "private key: " << priv_path << '\n';
  }
  return 0;
}

int run_encrypt(const std::string& key_path, const std::string& message,
                const std::string& format) {
  const auto pub = io::load_public_key(key_path);
  const auto c = cr::encrypt(pub, parse_decimal(message, "--message"));
  if (format == "json") {
    io::json doc = {{"c", c}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << c << '\n';
  }
  return 0;
}

int run_decrypt(const std::string& key_path, const std::string& pub_path,
                const std::string& ciphertext, const std::string& format) {
  const auto priv = io::load_private_key(key_path);
  const std::uint64_t c = parse_u64(ciphertext, "--ciphertext");
  const cr::BigInt m = pub_path.empty()
                           ? cr::decrypt(priv, c)
                           : cr::decrypt(priv, io::load_public_key(pub_path), c);
  if (format == "json") {
    io::json doc = {{"m", m.str()}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << m.str() << '\n';
  }
  return 0;
}

int run_audit_cr(std::uint64_t p, std::uint64_t h, const std::string& format) {
  const auto report = audit::chor_rivest_quantum_audit(p, h);
  if (format == "json") {
    std::cout << io::to_json(report).dump(2) << '\n';
  } else {
    const auto& fc = report.fc;
    std::cout << "p: " << p << "  h: " << h << '\n'
              << "FC: p_prime=" << fc.p_prime << " h_prime=" << fc.h_prime
              << " h_le_p=" << fc.h_le_p << " h_in_11_31=" << fc.h_in_11_31
              << " size_window=" << fc.size_window << " all=" << fc.all()
              << '\n'
              << "gpf: status=" << audit::gpf_status_name(report.gpf.status)
              << " bound=" << report.gpf.bound.str() << '\n'
              << "quantum_ratio: " << audit::decimal_string(report.ratio, 1)
              << '\n'
              << "quantum_threshold: 2^" << p << '\n'
              << "quantum_secure: " << (report.quantum_secure ? "true" : "false")
              << '\n';
    if (report.break_probability_bound)
      std::cout << "break_probability_bound: "
                << audit::break_bound_display(report) << '\n';
  }
  const bool bad = !report.quantum_secure || !report.fc.all() ||
                   report.gpf.status == audit::GpfStatus::Violated;
  if (bad) return 1;
  if (report.gpf.status == audit::GpfStatus::Unknown) return 3;
  return 0;
}

int run_audit_zr(std::uint64_t n, const cr::BigInt& r,
                 const std::string& format) {
  const auto verdict = audit::knapsack_zr_audit(n, r);
  if (format == "json") {
    std::cout << io::to_json(verdict).dump(2) << '\n';
  } else {
    std::cout << "n: " << n << "  r: " << verdict.r.str() << '\n'
              << "threshold: " << verdict.threshold.str() << '\n'
              << "secure: " << (verdict.secure ? "true" : "false") << '\n';
  }
  return verdict.secure ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knapsack-over-Z_r toolkit: solvers, measurement-driven "
               "solver simulation, Chor-Rivest, parameter audits"};
  app.require_subcommand(1);

  std::string inst_path, method = "brute", format = "text";
  auto* solve = app.add_subcommand("solve", "enumerate knapsack solutions");
  solve->add_option("instance", inst_path, "instance JSON file")->required();
  solve->add_option("--method", method, "brute or mitm")
      ->check(CLI::IsMember({"brute", "mitm"}));
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  std::string qsim_path, qsim_format = "text";
  bool exact = false;
  std::uint64_t trials = 10000, seed = 0;
  auto* qsim_cmd = app.add_subcommand(
      "qsim", "simulate the measurement-driven solver exactly");
  qsim_cmd->add_option("instance", qsim_path, "instance JSON file")->required();
  qsim_cmd->add_flag("--exact", exact,
                     "exact distribution and success probability");
  qsim_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  qsim_cmd->add_option("--seed", seed);
  qsim_cmd->add_option("--format", qsim_format)
      ->check(CLI::IsMember({"json", "text"}));

  std::uint64_t kg_p = 0, kg_h = 0, kg_seed = 0;
  std::string pub_path = "public_key.json", priv_path = "private_key.json";
  std::string kg_format = "text";
  auto* keygen = app.add_subcommand("cr-keygen", "generate a Chor-Rivest keypair");
  keygen->add_option("prime", kg_p, "the prime p")->required();
  keygen->add_option("degree", kg_h, "the extension degree h")->required();
  keygen->add_option("--seed", kg_seed);
  keygen->add_option("--pub", pub_path, "public key output file");
  keygen->add_option("--priv", priv_path, "private key output file");
  keygen->add_option("--format", kg_format)
      ->check(CLI::IsMember({"json", "text"}));

  std::string enc_key, enc_message, enc_format = "text";
  auto* encrypt = app.add_subcommand("cr-encrypt", "encrypt a message");
  encrypt->add_option("--key", enc_key, "public key file")->required();
  encrypt->add_option("--message", enc_message, "message (decimal)")
      ->required();
  encrypt->add_option("--format", enc_format)
      ->check(CLI::IsMember({"json", "text"}));

  std::string dec_key, dec_pub, dec_c, dec_format = "text";
  auto* decrypt = app.add_subcommand("cr-decrypt", "decrypt a ciphertext");
  decrypt->add_option("--key", dec_key, "private key file")->required();
  decrypt->add_option("--pub", dec_pub,
                      "public key file for a consistency cross-check");
  decrypt->add_option("--ciphertext", dec_c, "ciphertext (decimal)")
      ->required();
  decrypt->add_option("--format", dec_format)
      ->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> cr_args, zr_args;
  std::string audit_format = "text";
  auto* audit_cmd = app.add_subcommand("audit", "audit parameters");
  auto* cr_opt = audit_cmd->add_option("--chor-rivest", cr_args,
                                       "audit Chor-Rivest parameters p h")
                     ->expected(2);
  auto* zr_opt =
      audit_cmd->add_option("--zr", zr_args, "audit a Z_r knapsack shape n r")
          ->expected(2);
  cr_opt->excludes(zr_opt);
  audit_cmd->add_option("--format", audit_format)
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);

    if (*solve) return run_solve(inst_path, method, format);
    if (*qsim_cmd) return run_qsim(qsim_path, exact, trials, seed, qsim_format);
    if (*keygen)
      return run_keygen(kg_p, kg_h, kg_seed, pub_path, priv_path, kg_format);
    if (*encrypt) return run_encrypt(enc_key, enc_message, enc_format);
    if (*decrypt) return run_decrypt(dec_key, dec_pub, dec_c, dec_format);
    if (*audit_cmd) {
      if (!cr_args.empty())
        return run_audit_cr(parse_u64(cr_args[0], "p"),
                            parse_u64(cr_args[1], "h"), audit_format);
      if (!zr_args.empty())
        return run_audit_zr(parse_u64(zr_args[0], "n"),
                            parse_decimal(zr_args[1], "r"), audit_format);
      fail(Errc::MalformedInput, "audit needs --chor-rivest or --zr");
    }
    return 0;
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
