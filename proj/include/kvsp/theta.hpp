#pragma once

// Sp4(F2), half-integer characteristics and quadratic forms on F2^4.
//
// Vectors of F2^4 are 4-bit masks x = (a1, a2, b1, b2) with a1 in bit 0,
// a2 in bit 1, b1 in bit 2, b2 in bit 3. Matrices act on column vectors and
// split into 2x2 blocks [[A, B], [C, D]]. The symplectic form is
// <x, y> = a.b' + b.a' (mod 2).

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace kvsp {

using F2Vec = std::uint8_t;

int symplectic_form(F2Vec x, F2Vec y);

struct Characteristic {
  std::array<std::uint8_t, 2> a{};
  std::array<std::uint8_t, 2> b{};

  F2Vec to_vec() const;
  static Characteristic from_vec(F2Vec v);
  auto operator<=>(const Characteristic&) const = default;
};

using Block2 = std::array<std::array<std::uint8_t, 2>, 2>;

class SympMatrixF2 {
 public:
  // Throws InvalidArgument unless M^T J M = J over F2.
  explicit SympMatrixF2(std::uint16_t bits);
  static SympMatrixF2 identity();
  static SympMatrixF2 standard_j();
  static SympMatrixF2 transvection(F2Vec v);

  int at(int row, int col) const { return (bits_ >> (4 * row + col)) & 1; }
  std::uint16_t bits() const { return bits_; }
  Block2 block(int bi, int bj) const;
  Block2 A() const { return block(0, 0); }
  Block2 B() const { return block(0, 1); }
  Block2 C() const { return block(1, 0); }
  Block2 D() const { return block(1, 1); }

  F2Vec apply(F2Vec x) const;
  SympMatrixF2 transpose() const;
  SympMatrixF2 operator*(const SympMatrixF2& o) const;
  auto operator<=>(const SympMatrixF2&) const = default;

  static bool is_symplectic(std::uint16_t bits);

 private:
  struct Unchecked {};
  SympMatrixF2(std::uint16_t bits, Unchecked) : bits_(bits) {}
  std::uint16_t bits_;
};

// +1 for even, -1 for odd: (-1)^(a1 b1 + a2 b2).
int parity(const Characteristic& m);

std::vector<Characteristic> all_characteristics();

struct ParityCounts {
  int even = 0;
  int odd = 0;
};
ParityCounts parity_counts();

// The full group, generated from the 15 transvections by breadth-first closure.
const std::vector<SympMatrixF2>& sp4_group();

Characteristic act(const SympMatrixF2& m, const Characteristic& c);

std::vector<std::vector<Characteristic>> orbits();
long stabilizer_order(const Characteristic& m);
std::vector<SympMatrixF2> stabilizer(const Characteristic& m);

using Perm6 = std::array<int, 6>;
// The six odd characteristics in lexicographic order; letters of Perm6.
std::vector<Characteristic> odd_characteristics();
Perm6 perm_of(const SympMatrixF2& m);

struct QuadFormF2 {
  std::uint16_t values = 0;  // bit x holds q(x)

  int operator()(F2Vec x) const { return (values >> x) & 1; }
  int arf() const;
  bool polarizes_to_standard() const;
  auto operator<=>(const QuadFormF2&) const = default;
};

// Every function F2^4 -> F2 whose polar form is the standard one.
std::vector<QuadFormF2> quadratic_forms();
// q_m(x) = a(x).b(x) + <x, m>; Arf(q_m) equals the parity bit of m.
QuadFormF2 form_of(const Characteristic& m);
// (q o M^T)(x) = q(M^T x); form_of(act(M, m)) == pull_back(form_of(m), M).
QuadFormF2 pull_back(const QuadFormF2& q, const SympMatrixF2& m);

struct CoverDegrees {
  long odd = 0;
  long even = 0;
  long level = 0;
};
CoverDegrees cover_report();

}  // namespace kvsp
