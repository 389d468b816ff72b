#include "kvsp/theta.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "kvsp/error.hpp"

namespace kvsp {

namespace {

int bit(unsigned v, int i) { return (v >> i) & 1; }

std::uint16_t multiply_bits(std::uint16_t x, std::uint16_t y) {
  std::uint16_t r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s ^= bit(x, 4 * i + k) & bit(y, 4 * k + j);
      if (s) r |= static_cast<std::uint16_t>(1u << (4 * i + j));
    }
  return r;
}

std::uint16_t transpose_bits(std::uint16_t x) {
  std::uint16_t r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (bit(x, 4 * i + j)) r |= static_cast<std::uint16_t>(1u << (4 * j + i));
  return r;
}

constexpr std::uint16_t kJBits = (1u << 2) | (1u << 7) | (1u << 8) | (1u << 13);

}  // namespace

int symplectic_form(F2Vec x, F2Vec y) {
  return (bit(x, 0) & bit(y, 2)) ^ (bit(x, 1) & bit(y, 3)) ^ (bit(x, 2) & bit(y, 0)) ^
         (bit(x, 3) & bit(y, 1));
}

F2Vec Characteristic::to_vec() const {
  return static_cast<F2Vec>(a[0] | (a[1] << 1) | (b[0] << 2) | (b[1] << 3));
}

Characteristic Characteristic::from_vec(F2Vec v) {
  Characteristic c;
  c.a = {static_cast<std::uint8_t>(bit(v, 0)), static_cast<std::uint8_t>(bit(v, 1))};
  c.b = {static_cast<std::uint8_t>(bit(v, 2)), static_cast<std::uint8_t>(bit(v, 3))};
  return c;
}

bool SympMatrixF2::is_symplectic(std::uint16_t bits) {
  return multiply_bits(multiply_bits(transpose_bits(bits), kJBits), bits) == kJBits;
}

SympMatrixF2::SympMatrixF2(std::uint16_t bits) : bits_(bits) {
  if (!is_symplectic(bits)) throw Error(ErrorKind::InvalidArgument, "matrix is not symplectic over F2");
}

SympMatrixF2 SympMatrixF2::identity() {
  return SympMatrixF2((1u << 0) | (1u << 5) | (1u << 10) | (1u << 15), Unchecked{});
}

SympMatrixF2 SympMatrixF2::standard_j() { return SympMatrixF2(kJBits, Unchecked{}); }

SympMatrixF2 SympMatrixF2::transvection(F2Vec v) {
  // Column j is e_j + <e_j, v> v.
  std::uint16_t bits = 0;
  for (int j = 0; j < 4; ++j) {
    const F2Vec ej = static_cast<F2Vec>(1u << j);
    const F2Vec col = symplectic_form(ej, v) ? static_cast<F2Vec>(ej ^ v) : ej;
    for (int i = 0; i < 4; ++i)
      if (bit(col, i)) bits |= static_cast<std::uint16_t>(1u << (4 * i + j));
  }
  return SympMatrixF2(bits);
}

Block2 SympMatrixF2::block(int bi, int bj) const {
  Block2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = static_cast<std::uint8_t>(at(2 * bi + i, 2 * bj + j));
  return out;
}

F2Vec SympMatrixF2::apply(F2Vec x) const {
  F2Vec r = 0;
  for (int i = 0; i < 4; ++i) {
    int s = 0;
    for (int k = 0; k < 4; ++k) s ^= at(i, k) & bit(x, k);
    if (s) r |= static_cast<F2Vec>(1u << i);
  }
  return r;
}

SympMatrixF2 SympMatrixF2::transpose() const { return SympMatrixF2(transpose_bits(bits_), Unchecked{}); }

SympMatrixF2 SympMatrixF2::operator*(const SympMatrixF2& o) const {
  return SympMatrixF2(multiply_bits(bits_, o.bits_), Unchecked{});
}

int parity(const Characteristic& m) {
  return ((m.a[0] & m.b[0]) ^ (m.a[1] & m.b[1])) ? -1 : 1;
}

std::vector<Characteristic> all_characteristics() {
  std::vector<Characteristic> out;
  for (unsigned v = 0; v < 16; ++v) out.push_back(Characteristic::from_vec(static_cast<F2Vec>(v)));
  std::sort(out.begin(), out.end());
  return out;
}

ParityCounts parity_counts() {
  ParityCounts c;
  for (const auto& m : all_characteristics()) (parity(m) > 0 ? c.even : c.odd)++;
  return c;
}

const std::vector<SympMatrixF2>& sp4_group() {
  static const std::vector<SympMatrixF2> group = [] {
    std::vector<SympMatrixF2> gens;
    for (unsigned v = 1; v < 16; ++v) gens.push_back(SympMatrixF2::transvection(static_cast<F2Vec>(v)));
    std::set<SympMatrixF2> seen{SympMatrixF2::identity()};
    std::deque<SympMatrixF2> frontier{SympMatrixF2::identity()};
    while (!frontier.empty()) {
      const SympMatrixF2 g = frontier.front();
      frontier.pop_front();
      for (const auto& t : gens) {
        const SympMatrixF2 h = t * g;
        if (seen.insert(h).second) frontier.push_back(h);
      }
    }
    for (const auto& g : seen)
      if (!SympMatrixF2::is_symplectic(g.bits()))
        throw Error(ErrorKind::InvalidArgument, "closure produced a non-symplectic matrix");
    return std::vector<SympMatrixF2>(seen.begin(), seen.end());
  }();
  return group;
}

Characteristic act(const SympMatrixF2& m, const Characteristic& c) {
  const Block2 A = m.A(), B = m.B(), C = m.C(), D = m.D();
  Characteristic r;
  for (int i = 0; i < 2; ++i) {
    int na = 0, nb = 0, diag_cd = 0, diag_ab = 0;
    for (int k = 0; k < 2; ++k) {
      na ^= (D[i][k] & c.a[k]) ^ (C[i][k] & c.b[k]);
      nb ^= (B[i][k] & c.a[k]) ^ (A[i][k] & c.b[k]);
      diag_cd ^= C[i][k] & D[i][k];
      diag_ab ^= A[i][k] & B[i][k];
    }
    r.a[i] = static_cast<std::uint8_t>(na ^ diag_cd);
    r.b[i] = static_cast<std::uint8_t>(nb ^ diag_ab);
  }
  return r;
}

std::vector<std::vector<Characteristic>> orbits() {
  const auto& group = sp4_group();
  std::set<Characteristic> assigned;
  std::vector<std::vector<Characteristic>> out;
  for (const auto& m : all_characteristics()) {
    if (assigned.count(m)) continue;
    std::set<Characteristic> orbit;
    for (const auto& g : group) orbit.insert(act(g, m));
    assigned.insert(orbit.begin(), orbit.end());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
  return out;
}

std::vector<SympMatrixF2> stabilizer(const Characteristic& m) {
  std::vector<SympMatrixF2> out;
  for (const auto& g : sp4_group())
    if (act(g, m) == m) out.push_back(g);
  return out;
}

long stabilizer_order(const Characteristic& m) { return static_cast<long>(stabilizer(m).size()); }

std::vector<Characteristic> odd_characteristics() {
  std::vector<Characteristic> out;
  for (const auto& m : all_characteristics())
    if (parity(m) < 0) out.push_back(m);
  return out;
}

Perm6 perm_of(const SympMatrixF2& m) {
  static const std::vector<Characteristic> odd = odd_characteristics();
  Perm6 p{};
  for (int i = 0; i < 6; ++i) {
    const auto img = act(m, odd[i]);
    const auto it = std::find(odd.begin(), odd.end(), img);
    if (it == odd.end()) throw Error(ErrorKind::InvalidArgument, "action does not preserve odd characteristics");
    p[i] = static_cast<int>(it - odd.begin());
  }
  return p;
}

int QuadFormF2::arf() const {
  // Symplectic basis e1 = a1, f1 = b1, e2 = a2, f2 = b2.
  return ((*this)(0b0001) & (*this)(0b0100)) ^ ((*this)(0b0010) & (*this)(0b1000));
}

bool QuadFormF2::polarizes_to_standard() const {
  for (unsigned x = 0; x < 16; ++x)
    for (unsigned y = 0; y < 16; ++y) {
      const int lhs = (*this)(static_cast<F2Vec>(x ^ y)) ^ (*this)(static_cast<F2Vec>(x)) ^
                      (*this)(static_cast<F2Vec>(y));
      if (lhs != symplectic_form(static_cast<F2Vec>(x), static_cast<F2Vec>(y))) return false;
    }
  return true;
}

std::vector<QuadFormF2> quadratic_forms() {
  std::vector<QuadFormF2> out;
  for (unsigned v = 0; v < (1u << 16); ++v) {
    const QuadFormF2 q{static_cast<std::uint16_t>(v)};
    if (q.polarizes_to_standard()) out.push_back(q);
  }
  return out;
}

QuadFormF2 form_of(const Characteristic& m) {
  const F2Vec mv = m.to_vec();
  QuadFormF2 q;
  for (unsigned x = 0; x < 16; ++x) {
    const int base = (bit(x, 0) & bit(x, 2)) ^ (bit(x, 1) & bit(x, 3));
    if (base ^ symplectic_form(static_cast<F2Vec>(x), mv)) q.values |= static_cast<std::uint16_t>(1u << x);
  }
  return q;
}

QuadFormF2 pull_back(const QuadFormF2& q, const SympMatrixF2& m) {
  const SympMatrixF2 mt = m.transpose();
  QuadFormF2 r;
  for (unsigned x = 0; x < 16; ++x)
    if (q(mt.apply(static_cast<F2Vec>(x)))) r.values |= static_cast<std::uint16_t>(1u << x);
  return r;
}

CoverDegrees cover_report() {
  const long order = static_cast<long>(sp4_group().size());
  Characteristic even_m{}, odd_m{};
  odd_m.a = {1, 0};
  odd_m.b = {1, 0};
  return {order / stabilizer_order(odd_m), order / stabilizer_order(even_m), order};
}

}  // namespace kvsp
