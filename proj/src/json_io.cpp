#include "knapqsec/json_io.hpp"

#include <fstream>

namespace knapqsec::io {

namespace {

const json& require(const json& doc, const std::string& field) {
  if (!doc.is_object() || !doc.contains(field))
    fail(Errc::MalformedInput, "missing field \"" + field + "\"");
  return doc.at(field);
}

// accepts any integral JSON number >= 0; writers differ on whether small
// non-negative values are stored signed or unsigned
bool is_u64(const json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t require_u64(const json& doc, const std::string& field) {
  const json& v = require(doc, field);
  if (!is_u64(v))
    fail(Errc::MalformedInput,
         "field \"" + field + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> require_u64_array(const json& doc,
                                             const std::string& field) {
  const json& v = require(doc, field);
  if (!v.is_array())
    fail(Errc::MalformedInput, "field \"" + field + "\" must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_u64(v[i]))
      fail(Errc::MalformedInput,
           "field \"" + field + "[" + std::to_string(i) +
               "]\" must be a non-negative integer");
    out.push_back(v[i].get<std::uint64_t>());
  }
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(Errc::MalformedInput, "cannot open \"" + path + "\"");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded())
    fail(Errc::MalformedInput, "\"" + path + "\" is not valid JSON");
  return doc;
}

double to_double(const qsim::Rational& value) {
  return value.convert_to<double>();
}

}  // namespace

core::KnapsackInstance instance_from_json(const json& doc) {
  const std::uint64_t r = require_u64(doc, "r");
  const std::uint64_t s = require_u64(doc, "s");
  auto b = require_u64_array(doc, "b");
  return core::KnapsackInstance(std::move(b), s, r);
}

core::KnapsackInstance load_instance(const std::string& path) {
  return instance_from_json(parse_file(path));
}

std::string fraction_string(const qsim::Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const auto num = numerator(value);
  const auto den = denominator(value);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

json to_json(const qsim::OutcomeDistribution& dist) {
  json rows = json::array();
  for (const auto& row : dist.rows) {
    const auto p = dist.probability(row);
    const auto p1 = dist.flag0_probability(row);
    rows.push_back({{"A", row.a_value},
                    {"N0", row.n0},
                    {"N1", row.n1},
                    {"p1", fraction_string(p1)},
                    {"p1_float", to_double(p1)},
                    {"probability", fraction_string(p)},
                    {"probability_float", to_double(p)}});
  }
  return {{"n", dist.width},
          {"total_mass", dist.total_mass()},
          {"rows", std::move(rows)}};
}

json to_json(const qsim::Estimate& est) {
  return {{"trials", est.trials},   {"successes", est.successes},
          {"frequency", est.frequency}, {"sigma", est.sigma},
          {"low", est.low},         {"high", est.high}};
}

json to_json(const qsim::BoundReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = {{"A", row.a_value},
              {"f_pairs", row.f_pairs},
              {"h_pairs", row.h_pairs},
              {"p1", fraction_string(row.p1)},
              {"p1_float", to_double(row.p1)},
              {"p1_above_half", row.p1_above_half}};
    r["p2"] = row.p2 ? json(fraction_string(*row.p2)) : json(nullptr);
    r["success_bound_holds"] =
        row.success_bound_holds ? json(*row.success_bound_holds)
                                : json(nullptr);
    rows.push_back(std::move(r));
  }
  return {{"solution_count", report.solution_count},
          {"exact_success", fraction_string(report.exact_success)},
          {"exact_success_float", to_double(report.exact_success)},
          {"rows", std::move(rows)}};
}

json to_json(const audit::SecurityReport& report) {
  json factors = json::array();
  for (const auto& [prime, exp] : report.gpf.prime_factors)
    factors.push_back({{"prime", prime.str()}, {"exponent", exp}});
  json gpf = {{"status", audit::gpf_status_name(report.gpf.status)},
              {"bound", report.gpf.bound.str()},
              {"prime_factors", std::move(factors)},
              {"unfactored_cofactor", report.gpf.unfactored_cofactor.str()}};
  gpf["greatest_prime_factor"] =
      report.gpf.greatest_prime_factor
          ? json(report.gpf.greatest_prime_factor->str())
          : json(nullptr);

  json out = {{"p", report.p},
              {"h", report.h},
              {"fc",
               {{"p_prime", report.fc.p_prime},
                {"h_prime", report.fc.h_prime},
                {"h_le_p", report.fc.h_le_p},
                {"h_in_11_31", report.fc.h_in_11_31},
                {"size_window", report.fc.size_window},
                {"all", report.fc.all()}}},
              {"gpf", std::move(gpf)},
              {"quantum_ratio", fraction_string(report.ratio)},
              {"quantum_ratio_decimal", audit::decimal_string(report.ratio, 1)},
              {"quantum_threshold", report.threshold.str()},
              {"quantum_secure", report.quantum_secure}};
  out["break_probability_bound"] =
      report.break_probability_bound
          ? json(fraction_string(*report.break_probability_bound))
          : json(nullptr);
  out["break_probability_display"] = audit::break_bound_display(report);
  return out;
}

json to_json(const audit::ZrVerdict& verdict) {
  return {{"n", verdict.n},
          {"r", verdict.r.str()},
          {"threshold", verdict.threshold.str()},
          {"secure", verdict.secure}};
}

json to_json(const cr::PublicKey& key) {
  return {{"p", key.p}, {"h", key.h}, {"b", key.b}};
}

json to_json(const cr::PrivateKey& key) {
  return {{"p", key.p},        {"h", key.h}, {"f", key.f.coeffs},
          {"g", key.g.coeffs}, {"pi", key.pi}, {"d", key.d}};
}

cr::PublicKey public_key_from_json(const json& doc) {
  cr::PublicKey key;
  key.p = require_u64(doc, "p");
  key.h = require_u64(doc, "h");
  key.b = require_u64_array(doc, "b");
  const std::uint64_t order = cr::group_order(key.p, key.h);
  if (key.b.size() != key.p)
    fail(Errc::MalformedInput,
         "field \"b\" holds " + std::to_string(key.b.size()) +
             " weights, expected p = " + std::to_string(key.p));
  for (std::size_t i = 0; i < key.b.size(); ++i)
    if (key.b[i] >= order)
      fail(Errc::MalformedInput,
           "field \"b[" + std::to_string(i) + "]\" is not a residue mod " +
               std::to_string(order));
  return key;
}

cr::PrivateKey private_key_from_json(const json& doc) {
  cr::PrivateKey key;
  key.p = require_u64(doc, "p");
  key.h = require_u64(doc, "h");
  const std::uint64_t order = cr::group_order(key.p, key.h);

  key.f = cr::Poly::from_coeffs(require_u64_array(doc, "f"), key.p);
  if (!key.f.is_monic() ||
      key.f.degree() != static_cast<int>(key.h))
    fail(Errc::MalformedInput,
         "field \"f\" must be a monic polynomial of degree h");

  key.g = cr::Poly::from_coeffs(require_u64_array(doc, "g"), key.p);
  if (key.g.is_zero() || key.g.degree() >= key.f.degree())
    fail(Errc::MalformedInput,
         "field \"g\" must be a nonzero element of degree below h");

  key.pi = require_u64_array(doc, "pi");
  if (key.pi.size() != key.p)
    fail(Errc::MalformedInput,
         "field \"pi\" must be a permutation of 0.." + std::to_string(key.p - 1));
  std::vector<bool> seen(key.p, false);
  for (std::uint64_t v : key.pi) {
    if (v >= key.p || seen[v])
      fail(Errc::MalformedInput,
           "field \"pi\" must be a permutation of 0.." +
               std::to_string(key.p - 1));
    seen[v] = true;
  }

  key.d = require_u64(doc, "d");
  if (key.d >= order)
    fail(Errc::MalformedInput, "field \"d\" is not a residue mod " +
                                   std::to_string(order));
  return key;
}

cr::PublicKey load_public_key(const std::string& path) {
  return public_key_from_json(parse_file(path));
}

cr::PrivateKey load_private_key(const std::string& path) {
  return private_key_from_json(parse_file(path));
}

void save_json(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    fail(Errc::MalformedInput, "cannot write \"" + path + "\"");
  out << doc.dump(2) << '\n';
}

}  // namespace knapqsec::io
