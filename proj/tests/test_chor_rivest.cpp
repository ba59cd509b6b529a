#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "knapqsec/chor_rivest.hpp"

using namespace knapqsec;
using namespace knapqsec::cr;
using testutil::errc_of;

namespace {

// enumerate the monic polynomial of degree d whose low coefficients are the
// base-p digits of key
Poly monic_from_key(std::uint64_t key, int d, std::uint64_t p) {
  std::vector<std::uint64_t> c(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    c[i] = key % p;
    key /= p;
  }
  c[d] = 1;
  return Poly::from_coeffs(std::move(c), p);
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// textbook irreducibility: no monic divisor of degree 1..d/2
bool naive_irreducible(const Poly& f, std::uint64_t p) {
  const int d = f.degree();
  for (int k = 1; 2 * k <= d; ++k)
    for (std::uint64_t key = 0; key < pow_u64(p, k); ++key)
      if (poly_divmod(f, monic_from_key(key, k, p), p).second.is_zero())
        return false;
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("chor_rivest");

TEST_CASE("polynomial printing") {
  CHECK(Poly::from_coeffs({1, 2, 1}, 3).to_string() == "x^2 + 2x + 1");
  CHECK(Poly::zero().to_string() == "0");
  CHECK(Poly::one().to_string() == "1");
  CHECK(Poly::x_plus(0, 5).to_string() == "x");
  CHECK(Poly::x_plus(9, 5).to_string() == "x + 4");
  CHECK(Poly::from_coeffs({0, 0, 3}, 5).to_string() == "3x^2");
}

TEST_CASE("from_coeffs canonicalizes") {
  CHECK(Poly::from_coeffs({4, 7}, 3) == Poly::from_coeffs({1, 1}, 3));
  CHECK(Poly::from_coeffs({0, 0, 0}, 3).is_zero());
  CHECK(Poly::from_coeffs({5, 3}, 3) == Poly::from_coeffs({2}, 3));
}

TEST_CASE("division reconstructs the dividend") {
  SplitMix64 rng(0xd117);
  for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    for (int round = 0; round < 50; ++round) {
      std::vector<std::uint64_t> ac(1 + rng.bounded(7));
      for (auto& c : ac) c = rng.bounded(p);
      std::vector<std::uint64_t> bc(1 + rng.bounded(4));
      for (auto& c : bc) c = rng.bounded(p);
      const Poly a = Poly::from_coeffs(ac, p);
      Poly b = Poly::from_coeffs(bc, p);
      if (b.is_zero()) b = Poly::one();
      const auto [q, rem] = poly_divmod(a, b, p);
      CHECK(poly_add(poly_mul(q, b, p), rem, p) == a);
      CHECK(rem.degree() < b.degree());
    }
  }
  CHECK(errc_of([] { poly_divmod(Poly::one(), Poly::zero(), 3); }) ==
        Errc::BadParameters);
}

TEST_CASE("modular multiplication in F_9") {
  const std::uint64_t p = 3;
  const Poly f = Poly::from_coeffs({1, 0, 1}, p);  // x^2 + 1
  const Poly x = Poly::x_plus(0, p);
  // x * x = x^2 = -1 = 2 in Z_3[x]/(x^2+1)
  CHECK(poly_mul_mod(x, x, f, p) == Poly::from_coeffs({2}, p));
  CHECK(poly_mul_mod(x, Poly::one(), f, p) == x);
  CHECK(poly_mul_mod(x, Poly::zero(), f, p).is_zero());
  CHECK(errc_of([&] { poly_mul_mod(f, x, f, p); }) == Errc::DegreeOverflow);
  const Poly not_monic = Poly::from_coeffs({1, 0, 2}, p);
  CHECK(errc_of([&] { poly_mul_mod(x, x, not_monic, p); }) == Errc::NotMonic);
}

TEST_CASE("Fermat in F_9: every nonzero element to the 8th power is 1") {
  const std::uint64_t p = 3;
  const Poly f = Poly::from_coeffs({1, 0, 1}, p);
  for (std::uint64_t key = 1; key < 9; ++key) {
    const Poly e = element_from_key(key, p);
    CHECK(poly_pow_mod(e, 8, f, p) == Poly::one());
  }
  CHECK(poly_pow_mod(Poly::x_plus(1, p), 0, f, p) == Poly::one());
}

TEST_CASE("gcd is monic") {
  const std::uint64_t p = 3;
  const Poly x1 = Poly::x_plus(1, p);
  const Poly x2 = Poly::x_plus(2, p);
  const Poly a = poly_mul(poly_mul(x1, x1, p), x2, p);
  const Poly b = poly_mul(Poly::from_coeffs({2}, p), poly_mul(x1, x2, p), p);
  CHECK(poly_gcd(a, b, p) == poly_mul(x1, x2, p));
  CHECK(poly_gcd(a, Poly::zero(), p) == poly_mul(poly_mul(x1, x1, p), x2, p));
}

TEST_CASE("element keys are a bijection") {
  const std::uint64_t p = 5;
  for (std::uint64_t key = 0; key < 125; ++key) {
    const Poly e = element_from_key(key, p);
    CHECK(element_key(e, p) == key);
  }
  CHECK(element_key(Poly::from_coeffs({2, 3}, 5), 5) == 17);
}

TEST_CASE("group order") {
  CHECK(group_order(7, 4) == 2400);
  CHECK(group_order(3, 2) == 8);
  CHECK(group_order(2, 2) == 3);
  CHECK(errc_of([] { group_order(1, 1); }) == Errc::DegenerateModulus);
  CHECK(errc_of([] { group_order(2, 0); }) == Errc::DegenerateModulus);
  CHECK(errc_of([] { group_order(2, 64); }) == Errc::BadParameters);
  CHECK(errc_of([] { group_order(109, 29); }) == Errc::BadParameters);
}

TEST_CASE("irreducibility fixtures") {
  CHECK(is_irreducible(Poly::from_coeffs({1, 0, 1}, 3), 3));   // x^2+1 / Z_3
  CHECK(!is_irreducible(Poly::from_coeffs({1, 0, 1}, 5), 5));  // (x+2)(x+3)
  CHECK(!is_irreducible(Poly::from_coeffs({0, 0, 1}, 3), 3));  // x^2
  CHECK(is_irreducible(Poly::x_plus(2, 5), 5));
  CHECK(errc_of([] { is_irreducible(Poly::from_coeffs({1, 0, 2}, 3), 3); }) ==
        Errc::NotMonic);
  CHECK(errc_of([] { is_irreducible(Poly::one(), 3); }) == Errc::BadParameters);
}

TEST_CASE("irreducibility matches trial division exhaustively") {
  for (const std::uint64_t p : {2ull, 3ull}) {
    for (int d = 2; d <= 4; ++d) {
      for (std::uint64_t key = 0; key < pow_u64(p, d); ++key) {
        const Poly f = monic_from_key(key, d, p);
        CHECK(is_irreducible(f, p) == naive_irreducible(f, p));
      }
    }
  }
}

TEST_CASE("random_irreducible postconditions") {
  SplitMix64 rng(0x199);
  for (const auto& [p, h] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 3}, {3, 2}, {5, 3}, {7, 4}, {11, 2}}) {
    const Poly f = random_irreducible(p, h, rng);
    CHECK(f.is_monic());
    CHECK(f.degree() == static_cast<int>(h));
    CHECK(is_irreducible(f, p));
  }
  const Poly lin = random_irreducible(2, 1, 7);
  CHECK(lin.degree() == 1);
  CHECK(errc_of([] { random_irreducible(4, 2, 1); }) == Errc::BadParameters);
}

TEST_CASE("primitivity in F_9") {
  const std::uint64_t p = 3;
  const Poly f = Poly::from_coeffs({1, 0, 1}, p);
  const Poly g = Poly::x_plus(1, p);
  CHECK(is_primitive(g, p, f));
  CHECK(!is_primitive(Poly::from_coeffs({2}, p), p, f));  // order 2
  CHECK(!is_primitive(Poly::one(), p, f));
  CHECK(!is_primitive(Poly::zero(), p, f));

  // powers of a primitive element enumerate every nonzero element once
  std::set<std::uint64_t> seen;
  for (std::uint64_t j = 0; j < 8; ++j)
    seen.insert(element_key(poly_pow_mod(g, j, f, p), p));
  CHECK(seen.size() == 8);
  CHECK(!seen.count(0));

  const Poly found = find_primitive(p, 2, f, 99);
  CHECK(is_primitive(found, p, f));
}

TEST_CASE("discrete log fixtures in F_9") {
  const std::uint64_t p = 3;
  const Poly f = Poly::from_coeffs({1, 0, 1}, p);
  const Poly g = Poly::x_plus(1, p);
  CHECK(discrete_log(g, Poly::one(), p, f) == 0);
  CHECK(discrete_log(g, g, p, f) == 1);
  CHECK(discrete_log(g, Poly::from_coeffs({0, 2}, p), p, f) == 2);  // 2x
  CHECK(discrete_log(g, Poly::from_coeffs({2}, p), p, f) == 4);
  CHECK(errc_of([&] { discrete_log(g, Poly::zero(), p, f); }) ==
        Errc::ZeroElement);
  CHECK(errc_of([&] { discrete_log(Poly::zero(), g, p, f); }) ==
        Errc::ZeroElement);
}

TEST_CASE("discrete log agrees with a power walk over whole small fields") {
  for (const auto& [p, h, fc] :
       std::vector<std::tuple<std::uint64_t, std::uint64_t,
                              std::vector<std::uint64_t>>>{
           {3, 2, {1, 0, 1}}, {7, 2, {1, 0, 1}}}) {
    const Poly f = Poly::from_coeffs(fc, p);
    REQUIRE(is_irreducible(f, p));
    const Poly g = find_primitive(p, h, f, 7);
    const std::uint64_t order = group_order(p, h);
    Poly cur = Poly::one();
    for (std::uint64_t j = 0; j < order; ++j) {
      CHECK(discrete_log(g, cur, p, f) == j);
      cur = poly_mul_mod(cur, g, f, p);
    }
    CHECK(cur == Poly::one());  // full cycle
  }
}

TEST_CASE("keygen produces a consistent keypair") {
  const auto kp = keygen(7, 4, 42);
  const std::uint64_t order = 2400;
  CHECK(kp.pub.p == 7);
  CHECK(kp.pub.h == 4);
  REQUIRE(kp.pub.b.size() == 7);
  for (const auto bi : kp.pub.b) CHECK(bi < order);

  CHECK(kp.priv.f.is_monic());
  CHECK(kp.priv.f.degree() == 4);
  CHECK(is_irreducible(kp.priv.f, 7));
  CHECK(is_primitive(kp.priv.g, 7, kp.priv.f));
  CHECK(kp.priv.d < order);

  std::vector<std::uint64_t> sorted_pi = kp.priv.pi;
  std::sort(sorted_pi.begin(), sorted_pi.end());
  std::vector<std::uint64_t> iota(7);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted_pi == iota);

  // the defining key equation: g^{b_i - d} = x + pi(i)
  for (std::size_t i = 0; i < 7; ++i) {
    const std::uint64_t e = (kp.pub.b[i] + order - kp.priv.d % order) % order;
    CHECK(poly_pow_mod(kp.priv.g, e, kp.priv.f, 7) ==
          Poly::x_plus(kp.priv.pi[i], 7));
  }

  // determinism and seed sensitivity
  const auto again = keygen(7, 4, 42);
  CHECK(again.pub.b == kp.pub.b);
  CHECK(again.priv.d == kp.priv.d);
  const auto other = keygen(7, 4, 43);
  CHECK(other.pub.b != kp.pub.b);
}

TEST_CASE("keygen rejects bad parameters") {
  CHECK(errc_of([] { keygen(6, 3, 1); }) == Errc::BadParameters);
  CHECK(errc_of([] { keygen(5, 7, 1); }) == Errc::BadParameters);
  CHECK(errc_of([] { keygen(7, 1, 1); }) == Errc::BadParameters);
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(1, 2) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(7, 4) == 35);
  CHECK(binomial(11, 5) == 462);
  CHECK(binomial(13, 5) == 1287);
  CHECK(binomial(109, 29) == BigInt("228169934120166135923428974"));
  SplitMix64 rng(0xb1);
  for (int round = 0; round < 40; ++round) {
    const std::uint64_t nn = 1 + rng.bounded(60);
    const std::uint64_t kk = 1 + rng.bounded(nn);
    CHECK(binomial(nn, kk) ==
          binomial(nn - 1, kk - 1) + binomial(nn - 1, kk));
  }
}

TEST_CASE("message encoding fixtures") {
  using V = std::vector<std::uint8_t>;
  CHECK(encode_message(0, 5, 2) == V{0, 0, 0, 1, 1});
  CHECK(encode_message(9, 5, 2) == V{1, 1, 0, 0, 0});
  CHECK(decode_message({0, 0, 0, 1, 1}, 5, 2) == 0);
  CHECK(errc_of([] { encode_message(10, 5, 2); }) == Errc::MessageOutOfRange);
  CHECK(errc_of([] { encode_message(BigInt(-1), 5, 2); }) ==
        Errc::MessageOutOfRange);
}

TEST_CASE("encode and decode are inverse bijections") {
  for (const auto& [p, h] :
       std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 2}, {7, 3},
                                                            {9, 4}}) {
    const BigInt count = binomial(p, h);
    std::set<std::vector<std::uint8_t>> seen;
    for (BigInt m = 0; m < count; ++m) {
      const auto M = encode_message(m, p, h);
      REQUIRE(M.size() == p);
      std::uint64_t weight = 0;
      for (const auto bit : M) {
        CHECK(bit <= 1);
        weight += bit;
      }
      CHECK(weight == h);
      CHECK(decode_message(M, p, h) == m);
      seen.insert(M);
    }
    CHECK(BigInt(seen.size()) == count);
  }
}

TEST_CASE("decode rejects malformed vectors") {
  CHECK(errc_of([] { decode_message({1, 0, 0, 0, 1}, 5, 3); }) ==
        Errc::WrongWeight);
  CHECK(errc_of([] { decode_message({1, 1, 1}, 5, 3); }) == Errc::WrongWeight);
  CHECK(errc_of([] { decode_message({2, 1, 0, 0, 0}, 5, 3); }) ==
        Errc::WrongWeight);
}

TEST_CASE("encrypt is the masked subset sum") {
  const auto kp = keygen(5, 2, 7);
  const std::uint64_t order = group_order(5, 2);
  // m = 0 encodes to (0,0,0,1,1), so c = b_3 + b_4
  CHECK(encrypt(kp.pub, 0) == (kp.pub.b[3] + kp.pub.b[4]) % order);
  CHECK(encrypt(kp.pub, 3) == encrypt(kp.pub, 3));
  CHECK(errc_of([&] { encrypt(kp.pub, binomial(5, 2)); }) ==
        Errc::MessageOutOfRange);

  PublicKey broken = kp.pub;
  broken.b.pop_back();
  CHECK(errc_of([&] { encrypt(broken, 0); }) == Errc::BadParameters);
}

TEST_CASE("encrypt/decrypt roundtrip") {
  for (const auto& [p, h, seed] :
       std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{
           {7, 4, 42}, {11, 5, 9}, {13, 5, 77}}) {
    const auto kp = keygen(p, h, seed);
    const BigInt count = binomial(p, h);
    SplitMix64 rng(seed * 1001);
    for (int round = 0; round < 40; ++round) {
      const BigInt m = BigInt(rng.bounded(count.convert_to<std::uint64_t>()));
      const std::uint64_t c = encrypt(kp.pub, m);
      CHECK(decrypt(kp.priv, c) == m);
      CHECK(decrypt(kp.priv, kp.pub, c) == m);
    }
    // the range endpoints
    CHECK(decrypt(kp.priv, encrypt(kp.pub, 0)) == 0);
    CHECK(decrypt(kp.priv, encrypt(kp.pub, count - 1)) == count - 1);
  }
}

TEST_CASE("tampered ciphertexts never crash") {
  const auto kp = keygen(7, 4, 42);
  const std::uint64_t order = 2400;
  const BigInt count = binomial(7, 4);
  CHECK(errc_of([&] { decrypt(kp.priv, order); }) ==
        Errc::MalformedCiphertext);
  CHECK(errc_of([&] { decrypt(kp.priv, order + 5); }) ==
        Errc::MalformedCiphertext);

  SplitMix64 rng(0x7a3);
  int malformed = 0, decoded = 0;
  for (int round = 0; round < 60; ++round) {
    const std::uint64_t c = rng.bounded(order);
    try {
      const BigInt m = decrypt(kp.priv, c);
      CHECK(m >= 0);
      CHECK(m < count);
      ++decoded;
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MalformedCiphertext);
      ++malformed;
    }
  }
  CHECK(malformed > 0);  // most random residues do not split
  (void)decoded;
}

TEST_CASE("decrypt cross-checks the public key") {
  const auto kp = keygen(7, 4, 42);
  const std::uint64_t c = encrypt(kp.pub, 5);
  CHECK(decrypt(kp.priv, kp.pub, c) == 5);
  PublicKey wrong = kp.pub;
  wrong.b[0] = (wrong.b[0] + 1) % 2400;
  CHECK(errc_of([&] { decrypt(kp.priv, wrong, c); }) == Errc::BadParameters);
}

TEST_SUITE_END();
