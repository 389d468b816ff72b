#include "doctest.h"
#include "kvsp/error.hpp"
#include "kvsp/theta.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace kvsp;

namespace {

using M4 = std::array<std::array<int, 4>, 4>;

M4 unpack(std::uint16_t bits) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = (bits >> (4 * i + j)) & 1;
  return m;
}

// M^T J M == J with J = [[0, I], [I, 0]], by explicit integer products.
bool symplectic_oracle(std::uint16_t bits) {
  const M4 m = unpack(bits);
  M4 j{};
  j[0][2] = j[1][3] = j[2][0] = j[3][1] = 1;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      int s = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += m[a][r] * j[a][b] * m[b][c];
      if (s % 2 != j[r][c]) return false;
    }
  return true;
}

Characteristic ch(int a1, int a2, int b1, int b2) {
  Characteristic c;
  c.a = {static_cast<std::uint8_t>(a1), static_cast<std::uint8_t>(a2)};
  c.b = {static_cast<std::uint8_t>(b1), static_cast<std::uint8_t>(b2)};
  return c;
}

}  // namespace

TEST_CASE("parity examples and counts") {
  CHECK(parity(ch(0, 0, 0, 0)) == 1);
  CHECK(parity(ch(1, 0, 1, 0)) == -1);
  CHECK(parity(ch(1, 1, 1, 1)) == 1);
  CHECK(parity(ch(1, 0, 0, 1)) == 1);
  const auto counts = parity_counts();
  CHECK(counts.even == 10);
  CHECK(counts.odd == 6);
  CHECK(all_characteristics().size() == 16);
  for (F2Vec v = 0; v < 16; ++v) CHECK(Characteristic::from_vec(v).to_vec() == v);
}

TEST_CASE("Sp4(F2) has order 720 and matches brute force") {
  const auto& g = sp4_group();
  CHECK(g.size() == 720);
  long brute = 0;
  for (unsigned bits = 0; bits < 65536; ++bits) brute += symplectic_oracle(static_cast<std::uint16_t>(bits));
  CHECK(brute == 720);
  std::set<std::uint16_t> elems;
  for (const auto& m : g) {
    CHECK(symplectic_oracle(m.bits()));
    elems.insert(m.bits());
  }
  CHECK(elems.size() == 720);
  CHECK(elems.count(SympMatrixF2::identity().bits()) == 1);
  CHECK(elems.count(SympMatrixF2::standard_j().bits()) == 1);
  CHECK_THROWS_AS(SympMatrixF2(0), Error);
}

TEST_CASE("symplectic form is preserved") {
  for (const auto& m : sp4_group())
    for (F2Vec x = 0; x < 16; ++x)
      for (F2Vec y = 0; y < 16; ++y) REQUIRE(symplectic_form(m.apply(x), m.apply(y)) == symplectic_form(x, y));
}

TEST_CASE("action on characteristics") {
  for (const auto& c : all_characteristics()) CHECK(act(SympMatrixF2::identity(), c) == c);
  const auto j = SympMatrixF2::standard_j();
  for (const auto& c : all_characteristics()) {
    const auto swapped = act(j, c);
    CHECK(swapped.a == c.b);
    CHECK(swapped.b == c.a);
  }
  const auto& g = sp4_group();
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& m = g[pick(rng)];
    const auto& n = g[pick(rng)];
    const auto c = Characteristic::from_vec(static_cast<F2Vec>(rng() % 16));
    CHECK(act(m * n, c) == act(m, act(n, c)));
    CHECK(parity(act(m, c)) == parity(c));
  }
}

TEST_CASE("orbits and stabilizers") {
  const auto orb = orbits();
  REQUIRE(orb.size() == 2);
  CHECK(orb[0].size() == 10);
  CHECK(orb[1].size() == 6);
  for (const auto& c : orb[0]) CHECK(parity(c) == 1);
  for (const auto& c : orb[1]) CHECK(parity(c) == -1);
  for (const auto& c : all_characteristics()) {
    const long s = stabilizer_order(c);
    CHECK(s == (parity(c) == 1 ? 72 : 120));
    CHECK(s * (parity(c) == 1 ? 10 : 6) == 720);
    CHECK(static_cast<long>(stabilizer(c).size()) == s);
  }
}

TEST_CASE("permutation representation on odd characteristics") {
  const auto& g = sp4_group();
  std::set<Perm6> image;
  long kernel = 0;
  const Perm6 id{0, 1, 2, 3, 4, 5};
  for (const auto& m : g) {
    const Perm6 p = perm_of(m);
    image.insert(p);
    if (p == id) ++kernel;
  }
  CHECK(image.size() == 720);
  CHECK(kernel == 1);

  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& m = g[pick(rng)];
    const auto& n = g[pick(rng)];
    const Perm6 pm = perm_of(m), pn = perm_of(n), pmn = perm_of(m * n);
    for (int i = 0; i < 6; ++i) CHECK(pmn[i] == pm[pn[i]]);
  }
}

TEST_CASE("odd stabilizer acts as S5 on the other letters") {
  const auto odd = odd_characteristics();
  REQUIRE(odd.size() == 6);
  for (int k = 0; k < 6; ++k) {
    std::set<Perm6> induced;
    for (const auto& m : stabilizer(odd[k])) {
      const Perm6 p = perm_of(m);
      CHECK(p[k] == k);
      induced.insert(p);
    }
    CHECK(induced.size() == 120);
  }
}

TEST_CASE("quadratic forms and Arf invariants") {
  const auto forms = quadratic_forms();
  CHECK(forms.size() == 16);
  int arf0 = 0, arf1 = 0;
  for (const auto& q : forms) {
    CHECK(q.polarizes_to_standard());
    (q.arf() == 0 ? arf0 : arf1) += 1;
  }
  CHECK(arf0 == 10);
  CHECK(arf1 == 6);

  std::set<QuadFormF2> from_chars;
  for (const auto& m : all_characteristics()) {
    const auto q = form_of(m);
    CHECK(q.arf() == (parity(m) == 1 ? 0 : 1));
    from_chars.insert(q);
    for (F2Vec x = 0; x < 16; ++x)
      for (F2Vec y = 0; y < 16; ++y)
        CHECK((q(x ^ y) ^ q(x) ^ q(y)) == symplectic_form(x, y));
  }
  CHECK(from_chars.size() == 16);
}

TEST_CASE("form assignment is equivariant") {
  long mismatches = 0;
  for (const auto& m : sp4_group())
    for (const auto& c : all_characteristics())
      if (!(form_of(act(m, c)) == pull_back(form_of(c), m))) ++mismatches;
  CHECK(mismatches == 0);
}

TEST_CASE("cover report") {
  const auto r = cover_report();
  CHECK(r.odd == 6);
  CHECK(r.even == 10);
  CHECK(r.level == 720);
}
