#include "knapqsec/chor_rivest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "knapqsec/numtheory.hpp"

namespace knapqsec::cr {

namespace {

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

void strip(std::vector<std::uint64_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// largest prime-power subgroup BSGS is willing to table (~2^20 entries)
constexpr std::uint64_t kBsgsPrimeCap = std::uint64_t{1} << 40;

}  // namespace

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const std::uint64_t c = coeffs[k];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out;
}

Poly Poly::x_plus(std::uint64_t a, std::uint64_t p) {
  return from_coeffs({a % p, 1}, p);
}

Poly Poly::from_coeffs(std::vector<std::uint64_t> coeffs, std::uint64_t p) {
  for (auto& c : coeffs) c %= p;
  strip(coeffs);
  return {std::move(coeffs)};
}

Poly poly_add(const Poly& a, const Poly& b, std::uint64_t p) {
  std::vector<std::uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = addmod_u64(a.coeff(static_cast<int>(i)),
                      b.coeff(static_cast<int>(i)), p);
  strip(c);
  return {std::move(c)};
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t p) {
  std::vector<std::uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = submod(a.coeff(static_cast<int>(i)) % p,
                  b.coeff(static_cast<int>(i)) % p, p);
  strip(c);
  return {std::move(c)};
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.is_zero() || b.is_zero()) return Poly::zero();
  std::vector<std::uint64_t> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] =
          addmod_u64(c[i + j], mulmod_u64(a.coeffs[i], b.coeffs[j], p), p);
  }
  strip(c);
  return {std::move(c)};
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b,
                                  std::uint64_t p) {
  if (b.is_zero())
    fail(Errc::BadParameters, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly::zero(), a};
  const std::uint64_t inv_lead = invmod_u64(b.coeffs.back(), p);
  std::vector<std::uint64_t> rem = a.coeffs;
  std::vector<std::uint64_t> quot(a.coeffs.size() - b.coeffs.size() + 1, 0);
  for (int shift = static_cast<int>(quot.size()) - 1; shift >= 0; --shift) {
    const std::uint64_t lead = rem[shift + b.degree()];
    if (lead == 0) continue;
    const std::uint64_t factor = mulmod_u64(lead, inv_lead, p);
    quot[shift] = factor;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      rem[shift + j] =
          submod(rem[shift + j], mulmod_u64(factor, b.coeffs[j], p), p);
  }
  strip(rem);
  strip(quot);
  return {Poly{std::move(quot)}, Poly{std::move(rem)}};
}

Poly poly_mod(const Poly& a, const Poly& f, std::uint64_t p) {
  return poly_divmod(a, f, p).second;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f,
                  std::uint64_t p) {
  if (!f.is_monic())
    fail(Errc::NotMonic, "the modulus polynomial must be monic");
  if (a.degree() >= f.degree() || b.degree() >= f.degree())
    fail(Errc::DegreeOverflow,
         "operand degree must stay below the modulus degree " +
             std::to_string(f.degree()));
  return poly_mod(poly_mul(a, b, p), f, p);
}

Poly poly_pow_mod(const Poly& base, std::uint64_t exp, const Poly& f,
                  std::uint64_t p) {
  if (!f.is_monic())
    fail(Errc::NotMonic, "the modulus polynomial must be monic");
  Poly acc = Poly::one();
  Poly sq = poly_mod(base, f, p);
  while (exp > 0) {
    if (exp & 1u) acc = poly_mod(poly_mul(acc, sq, p), f, p);
    sq = poly_mod(poly_mul(sq, sq, p), f, p);
    exp >>= 1;
  }
  return acc;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.coeffs.back() != 1) {
    const std::uint64_t inv = invmod_u64(a.coeffs.back(), p);
    for (auto& c : a.coeffs) c = mulmod_u64(c, inv, p);
  }
  return a;
}

std::uint64_t poly_eval(const Poly& a, std::uint64_t v, std::uint64_t p) {
  std::uint64_t acc = 0;
  v %= p;
  for (int i = a.degree(); i >= 0; --i)
    acc = addmod_u64(mulmod_u64(acc, v, p), a.coeffs[i], p);
  return acc;
}

std::uint64_t element_key(const Poly& e, std::uint64_t p) {
  std::uint64_t key = 0;
  for (int i = e.degree(); i >= 0; --i) key = key * p + e.coeffs[i];
  return key;
}

Poly element_from_key(std::uint64_t key, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  while (key > 0) {
    c.push_back(key % p);
    key /= p;
  }
  return {std::move(c)};
}

std::uint64_t group_order(std::uint64_t p, std::uint64_t h) {
  if (p < 2 || h < 1)
    fail(Errc::DegenerateModulus,
         "p^h - 1 is not a positive group order for p = " + std::to_string(p) +
             ", h = " + std::to_string(h));
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < h; ++i) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / p)
      fail(Errc::BadParameters,
           "p^h - 1 exceeds the 64-bit desk-scale budget for p = " +
               std::to_string(p) + ", h = " + std::to_string(h));
    acc *= p;
  }
  return acc - 1;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
  if (!f.is_monic())
    fail(Errc::NotMonic, "irreducibility is tested on monic polynomials");
  const int m = f.degree();
  if (m < 1)
    fail(Errc::BadParameters, "irreducibility needs degree at least 1");
  if (m == 1) return true;

  const Poly x = Poly::from_coeffs({0, 1}, p);
  // frob[k] = x^{p^{k+1}} mod f via iterated Frobenius
  std::vector<Poly> frob(m);
  Poly cur = poly_mod(x, f, p);
  for (int k = 0; k < m; ++k) {
    cur = poly_pow_mod(cur, p, f, p);
    frob[k] = cur;
  }
  if (!(frob[m - 1] == x)) return false;
  for (const auto& factor : factor_u64(static_cast<std::uint64_t>(m))) {
    const int k = m / static_cast<int>(factor.first);
    const Poly w = poly_sub(frob[k - 1], x, p);
    if (!(poly_gcd(w, f, p) == Poly::one())) return false;
  }
  return true;
}

Poly random_irreducible(std::uint64_t p, std::uint64_t h, SplitMix64& rng) {
  if (!is_prime_u64(p))
    fail(Errc::BadParameters, "p = " + std::to_string(p) + " is not prime");
  if (h < 1)
    fail(Errc::BadParameters, "the degree h must be at least 1");
  for (;;) {
    std::vector<std::uint64_t> c(h + 1, 0);
    for (std::uint64_t i = 0; i < h; ++i) c[i] = rng.bounded(p);
    c[h] = 1;
    Poly candidate{std::move(c)};
    if (is_irreducible(candidate, p)) return candidate;
  }
}

Poly random_irreducible(std::uint64_t p, std::uint64_t h, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_irreducible(p, h, rng);
}

bool is_primitive(const Poly& e, std::uint64_t p, const Poly& f) {
  const Poly er = poly_mod(e, f, p);
  if (er.is_zero()) return false;
  const std::uint64_t order =
      group_order(p, static_cast<std::uint64_t>(f.degree()));
  if (order == 1) return er == Poly::one();
  for (const auto& factor : factor_u64(order)) {
    if (poly_pow_mod(er, order / factor.first, f, p) == Poly::one())
      return false;
  }
  return true;
}

Poly find_primitive(std::uint64_t p, std::uint64_t h, const Poly& f,
                    SplitMix64& rng) {
  for (;;) {
    std::vector<std::uint64_t> c(h, 0);
    for (std::uint64_t i = 0; i < h; ++i) c[i] = rng.bounded(p);
    Poly candidate = Poly::from_coeffs(std::move(c), p);
    if (candidate.is_zero()) continue;
    if (is_primitive(candidate, p, f)) return candidate;
  }
}

Poly find_primitive(std::uint64_t p, std::uint64_t h, const Poly& f,
                    std::uint64_t seed) {
  SplitMix64 rng(seed);
  return find_primitive(p, h, f, rng);
}

namespace {

// gamma^d = target with gamma of prime order q; returns d in [0, q)
std::uint64_t bsgs_prime_log(const Poly& gamma, const Poly& target,
                             std::uint64_t q, std::uint64_t p, const Poly& f) {
  if (q > kBsgsPrimeCap)
    fail(Errc::FactoringBudgetExceeded,
         "prime factor " + std::to_string(q) +
             " exceeds the baby-step/giant-step budget");
  std::uint64_t m = static_cast<std::uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(q))));
  while (m * m < q) ++m;

  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(m);
  Poly cur = Poly::one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(element_key(cur, p), j);
    cur = poly_mul_mod(cur, gamma, f, p);
  }
  // gamma^{-m}
  const Poly giant_inv = poly_pow_mod(gamma, (q - (m % q)) % q, f, p);
  Poly walk = poly_mod(target, f, p);
  for (std::uint64_t i = 0; i * m <= q; ++i) {
    auto it = baby.find(element_key(walk, p));
    if (it != baby.end()) return (i * m + it->second) % q;
    walk = poly_mul_mod(walk, giant_inv, f, p);
  }
  fail(Errc::BadParameters, "element is not a power of the base");
}

}  // namespace

std::uint64_t discrete_log(const Poly& g, const Poly& e, std::uint64_t p,
                           const Poly& f) {
  if (!f.is_monic())
    fail(Errc::NotMonic, "the modulus polynomial must be monic");
  const std::uint64_t h = static_cast<std::uint64_t>(f.degree());
  const std::uint64_t order = group_order(p, h);
  const Poly er = poly_mod(e, f, p);
  if (er.is_zero())
    fail(Errc::ZeroElement, "zero has no discrete logarithm");
  const Poly gr = poly_mod(g, f, p);
  if (gr.is_zero())
    fail(Errc::ZeroElement, "the base of the logarithm is zero");
  if (order == 1) return 0;

  std::uint64_t result = 0, modulus = 1;
  for (const auto& [q, exp] : factor_u64(order)) {
    std::uint64_t pe = 1;
    for (int i = 0; i < exp; ++i) pe *= q;

    // project into the order-pe subgroup and lift digit by digit
    const Poly gi = poly_pow_mod(gr, order / pe, f, p);
    const Poly gi_inv = poly_pow_mod(gi, pe - 1, f, p);
    const Poly y = poly_pow_mod(er, order / pe, f, p);
    const Poly gamma = poly_pow_mod(gr, order / q, f, p);

    std::uint64_t x = 0;   // log mod pe, accumulated digit by digit
    std::uint64_t qj = 1;  // q^j
    for (int j = 0; j < exp; ++j) {
      const Poly shifted = poly_mul_mod(y, poly_pow_mod(gi_inv, x, f, p), f, p);
      const Poly w = poly_pow_mod(shifted, pe / (qj * q), f, p);
      const std::uint64_t digit = bsgs_prime_log(gamma, w, q, p, f);
      x += digit * qj;
      qj *= q;
    }

    // CRT accumulate: result mod (modulus * pe)
    const std::uint64_t delta = submod(x % pe, result % pe, pe);
    const std::uint64_t t = mulmod_u64(delta, invmod_u64(modulus % pe, pe), pe);
    result += modulus * t;
    modulus *= pe;
  }
  return result;
}

KeyPair keygen(std::uint64_t p, std::uint64_t h, std::uint64_t seed) {
  if (!is_prime_u64(p))
    fail(Errc::BadParameters, "p = " + std::to_string(p) + " is not prime");
  if (h < 2)
    fail(Errc::BadParameters, "h must be at least 2");
  if (h > p)
    fail(Errc::BadParameters, "h = " + std::to_string(h) +
                                  " exceeds p = " + std::to_string(p));
  const std::uint64_t order = group_order(p, h);

  SplitMix64 rng(seed);
  PrivateKey priv;
  priv.p = p;
  priv.h = h;
  priv.f = random_irreducible(p, h, rng);
  priv.g = find_primitive(p, h, priv.f, rng);

  std::vector<std::uint64_t> a(p);
  for (std::uint64_t i = 0; i < p; ++i)
    a[i] = discrete_log(priv.g, Poly::x_plus(i, p), p, priv.f);

  priv.pi.resize(p);
  std::iota(priv.pi.begin(), priv.pi.end(), 0);
  for (std::uint64_t i = p - 1; i > 0; --i)
    std::swap(priv.pi[i], priv.pi[rng.bounded(i + 1)]);

  priv.d = rng.bounded(order - 1);  // uniform over [0, p^h - 2]

  PublicKey pub;
  pub.p = p;
  pub.h = h;
  pub.b.resize(p);
  for (std::uint64_t i = 0; i < p; ++i)
    pub.b[i] = addmod_u64(a[priv.pi[i]], priv.d, order);
  return {std::move(pub), std::move(priv)};
}

BigInt binomial(std::uint64_t nn, std::uint64_t kk) {
  if (kk > nn) return 0;
  kk = std::min(kk, nn - kk);
  BigInt res = 1;
  for (std::uint64_t i = 1; i <= kk; ++i) {
    res *= nn - kk + i;
    res /= i;  // exact: res is C(nn-kk+i, i) after this step
  }
  return res;
}

std::vector<std::uint8_t> encode_message(const BigInt& m, std::uint64_t p,
                                         std::uint64_t h) {
  if (m < 0 || m >= binomial(p, h))
    fail(Errc::MessageOutOfRange,
         "message " + m.str() + " is outside [0, C(" + std::to_string(p) +
             ", " + std::to_string(h) + "))");
  std::vector<std::uint8_t> M(p, 0);
  BigInt rest = m;
  std::uint64_t l = h;
  for (std::uint64_t i = 1; i <= p; ++i) {
    const BigInt c = binomial(p - i, l);
    if (rest >= c && l > 0) {
      M[i - 1] = 1;
      rest -= c;
      --l;
    }
  }
  if (l != 0)
    fail(Errc::MessageOutOfRange, "message does not encode to weight h");
  return M;
}

BigInt decode_message(const std::vector<std::uint8_t>& M, std::uint64_t p,
                      std::uint64_t h) {
  if (M.size() != p)
    fail(Errc::WrongWeight, "vector has length " + std::to_string(M.size()) +
                                ", expected p = " + std::to_string(p));
  std::uint64_t weight = 0;
  for (std::uint8_t bit : M) {
    if (bit > 1)
      fail(Errc::WrongWeight, "vector entries must be 0 or 1");
    weight += bit;
  }
  if (weight != h)
    fail(Errc::WrongWeight, "vector has weight " + std::to_string(weight) +
                                ", expected h = " + std::to_string(h));
  BigInt m = 0;
  std::uint64_t l = h;
  for (std::uint64_t i = 1; i <= p; ++i) {
    if (M[i - 1]) {
      m += binomial(p - i, l);
      --l;
    }
  }
  return m;
}

std::uint64_t encrypt(const PublicKey& pub, const BigInt& m) {
  if (pub.b.size() != pub.p)
    fail(Errc::BadParameters, "public key holds " +
                                  std::to_string(pub.b.size()) +
                                  " weights, expected p = " +
                                  std::to_string(pub.p));
  const std::uint64_t order = group_order(pub.p, pub.h);
  const auto M = encode_message(m, pub.p, pub.h);
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < pub.p; ++i)
    if (M[i]) c = addmod_u64(c, pub.b[i] % order, order);
  return c;
}

BigInt decrypt(const PrivateKey& priv, std::uint64_t c) {
  const std::uint64_t p = priv.p, h = priv.h;
  const std::uint64_t order = group_order(p, h);
  if (priv.pi.size() != p ||
      priv.f.degree() != static_cast<int>(h) || !priv.f.is_monic())
    fail(Errc::BadParameters, "private key is inconsistent");
  if (c >= order)
    fail(Errc::MalformedCiphertext,
         "ciphertext " + std::to_string(c) + " is not a residue mod " +
             std::to_string(order));

  const std::uint64_t shift = mulmod_u64(h % order, priv.d % order, order);
  const std::uint64_t r_prime = submod(c, shift, order);
  const Poly u = poly_pow_mod(priv.g, r_prime, priv.f, p);
  const Poly s = poly_add(u, priv.f, p);

  // s is monic of degree h; an honest ciphertext gives h distinct roots -t
  std::vector<std::uint64_t> ts;
  for (std::uint64_t t = 0; t < p; ++t)
    if (poly_eval(s, (p - t) % p, p) == 0) ts.push_back(t);
  if (ts.size() != h)
    fail(Errc::MalformedCiphertext,
         "the decryption polynomial has " + std::to_string(ts.size()) +
             " distinct roots, expected " + std::to_string(h));

  std::vector<std::uint64_t> inverse(p);
  for (std::uint64_t i = 0; i < p; ++i) inverse[priv.pi[i]] = i;
  std::vector<std::uint8_t> M(p, 0);
  for (std::uint64_t t : ts) M[inverse[t]] = 1;
  return decode_message(M, p, h);
}

BigInt decrypt(const PrivateKey& priv, const PublicKey& pub, std::uint64_t c) {
  if (pub.p != priv.p || pub.h != priv.h || pub.b.size() != pub.p)
    fail(Errc::BadParameters, "public key does not match the private key");
  const std::uint64_t order = group_order(priv.p, priv.h);
  for (std::uint64_t i = 0; i < pub.p; ++i) {
    // key equation: g^{b_i - d} = x + pi(i)
    const std::uint64_t exp = submod(pub.b[i] % order, priv.d % order, order);
    if (!(poly_pow_mod(priv.g, exp, priv.f, priv.p) ==
          Poly::x_plus(priv.pi[i], priv.p)))
      fail(Errc::BadParameters, "public key does not match the private key");
  }
  return decrypt(priv, c);
}

}  // namespace knapqsec::cr
