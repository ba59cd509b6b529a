#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "knapqsec/common.hpp"
#include "knapqsec/rng.hpp"

namespace knapqsec::cr {

using BigInt = boost::multiprecision::cpp_int;

// Polynomial over Z_p. Coefficients are stored low degree first and kept
// canonical in [0, p); the leading coefficient is nonzero (empty = zero
// polynomial).
struct Poly {
  std::vector<std::uint64_t> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  std::uint64_t coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0;
  }
  std::string to_string() const;  // e.g. "x^2 + 2x + 1"

  static Poly zero() { return {}; }
  static Poly one() { return {{1}}; }
  // x + a, reduced mod p
  static Poly x_plus(std::uint64_t a, std::uint64_t p);
  // reduces the coefficients mod p and strips leading zeros
  static Poly from_coeffs(std::vector<std::uint64_t> coeffs, std::uint64_t p);

  friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_add(const Poly& a, const Poly& b, std::uint64_t p);
Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p);
// quotient/remainder by a nonzero divisor (leading coefficient inverted
// mod p, so p must be prime)
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b,
                                  std::uint64_t p);
Poly poly_mod(const Poly& a, const Poly& f, std::uint64_t p);
// (a * b) mod f for operands of degree < deg f; f monic
Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f,
                  std::uint64_t p);
Poly poly_pow_mod(const Poly& base, std::uint64_t exp, const Poly& f,
                  std::uint64_t p);
Poly poly_gcd(Poly a, Poly b, std::uint64_t p);  // monic gcd
std::uint64_t poly_eval(const Poly& a, std::uint64_t v, std::uint64_t p);

// Field element encoding sum_j c_j p^j; injective for degree < h whenever
// p^h fits in 64 bits. Used for table keys and exhaustive element walks.
std::uint64_t element_key(const Poly& e, std::uint64_t p);
Poly element_from_key(std::uint64_t key, std::uint64_t p);

// p^h - 1 with an overflow check; the group order of F_{p^h}^*.
std::uint64_t group_order(std::uint64_t p, std::uint64_t h);

// Rabin irreducibility test: x^{p^h} = x mod f, and x^{p^{h/q}} - x coprime
// to f for every prime q dividing h.
bool is_irreducible(const Poly& f, std::uint64_t p);

Poly random_irreducible(std::uint64_t p, std::uint64_t h, SplitMix64& rng);
Poly random_irreducible(std::uint64_t p, std::uint64_t h, std::uint64_t seed);

// True iff e generates the full multiplicative group of Z_p[x]/(f).
bool is_primitive(const Poly& e, std::uint64_t p, const Poly& f);
Poly find_primitive(std::uint64_t p, std::uint64_t h, const Poly& f,
                    SplitMix64& rng);
Poly find_primitive(std::uint64_t p, std::uint64_t h, const Poly& f,
                    std::uint64_t seed);

// log_g(e) in Z_p[x]/(f) via Pohlig-Hellman over the factorization of
// p^h - 1, baby-step/giant-step within each prime-power subgroup.
std::uint64_t discrete_log(const Poly& g, const Poly& e, std::uint64_t p,
                           const Poly& f);

struct PublicKey {
  std::uint64_t p = 0;
  std::uint64_t h = 0;
  std::vector<std::uint64_t> b;  // p residues mod p^h - 1
};

struct PrivateKey {
  std::uint64_t p = 0;
  std::uint64_t h = 0;
  Poly f;                        // monic irreducible, degree h
  Poly g;                        // primitive element
  std::vector<std::uint64_t> pi; // permutation of 0..p-1
  std::uint64_t d = 0;           // shift, in [0, p^h - 2]
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

// Full key generation: random irreducible f, primitive g, the p discrete
// logs of the linear polynomials x + i, a random permutation and shift.
// Requires p prime, 2 <= h <= p, and p^h - 1 within the desk-scale budget.
KeyPair keygen(std::uint64_t p, std::uint64_t h, std::uint64_t seed);

// Exact binomial coefficient; zero when kk > nn.
BigInt binomial(std::uint64_t nn, std::uint64_t kk);

// Bijection between [0, C(p,h)) and length-p bit vectors of weight h,
// most significant position first.
std::vector<std::uint8_t> encode_message(const BigInt& m, std::uint64_t p,
                                         std::uint64_t h);
BigInt decode_message(const std::vector<std::uint8_t>& M, std::uint64_t p,
                      std::uint64_t h);

std::uint64_t encrypt(const PublicKey& pub, const BigInt& m);

// Inverts encrypt: shifts the exponent, splits the resulting monic degree-h
// polynomial over Z_p, and maps the h roots back through the permutation.
// Rejects ciphertexts whose polynomial does not split into h distinct
// linear factors.
BigInt decrypt(const PrivateKey& priv, std::uint64_t c);
// Same, with a cross-check that the public key matches the private one.
BigInt decrypt(const PrivateKey& priv, const PublicKey& pub, std::uint64_t c);

}  // namespace knapqsec::cr
