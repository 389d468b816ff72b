#include "kvsp/covers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "kvsp/varieties.hpp"

namespace kvsp {

namespace {

void check_index(int i) {
  if (i < 0 || i >= 6) throw Error(ErrorKind::IndexError, "entry index " + std::to_string(i));
}

std::vector<std::array<int, 3>> triples_containing_zero() {
  std::vector<std::array<int, 3>> out;
  for (int a = 1; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) out.push_back({0, a, b});
  return out;
}

long count_prefix(const Decomposition& d, std::span<const int> prefix) {
  long n = 0;
  for (const auto& o : orderings(d))
    if (std::equal(prefix.begin(), prefix.end(), o.begin())) ++n;
  return n;
}

}  // namespace

Bipartition make_bipartition(const Decomposition& d, std::array<int, 3> block_a, std::array<int, 3> block_b) {
  std::sort(block_a.begin(), block_a.end());
  std::sort(block_b.begin(), block_b.end());
  std::set<int> all(block_a.begin(), block_a.end());
  all.insert(block_b.begin(), block_b.end());
  for (int i : all) check_index(i);
  if (all.size() != 6) throw Error(ErrorKind::InvalidArgument, "blocks must partition 0..5");
  if (block_b[0] < block_a[0]) std::swap(block_a, block_b);
  return {d, block_a, block_b};
}

void require_distinct(const Decomposition& d, double tol) {
  if (d.entries.size() != 6)
    throw Error(ErrorKind::EntryCount, "expected 6 entries, got " + std::to_string(d.entries.size()));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      if (same_point(d.entries[i].point, d.entries[j].point, tol))
        throw Error(ErrorKind::DuplicatePoints,
                    "entries " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

std::vector<Ordering> orderings(const Decomposition& d) {
  require_distinct(d);
  Ordering o;
  std::iota(o.begin(), o.end(), 0);
  std::vector<Ordering> out;
  do {
    out.push_back(o);
  } while (std::next_permutation(o.begin(), o.end()));
  return out;
}

long orderings_count(const Decomposition& d) { return static_cast<long>(orderings(d).size()); }

std::vector<PointedDecomposition> to_pointed(const Decomposition& d) {
  require_distinct(d);
  std::vector<PointedDecomposition> out;
  for (int i = 0; i < 6; ++i) out.push_back({d, i});
  return out;
}

std::vector<Bipartition> to_bipartitions(const Decomposition& d) {
  require_distinct(d);
  std::vector<Bipartition> out;
  for (const auto& a : triples_containing_zero()) {
    std::array<int, 3> b{};
    int k = 0;
    for (int i = 0; i < 6; ++i)
      if (std::find(a.begin(), a.end(), i) == a.end()) b[k++] = i;
    out.push_back(make_bipartition(d, a, b));
  }
  return out;
}

long f2_fiber_count(const Decomposition& d, int i, int j) {
  check_index(i);
  check_index(j);
  if (i == j) throw Error(ErrorKind::IndexError, "indices must be distinct");
  const std::array<int, 2> prefix{i, j};
  return count_prefix(d, prefix);
}

long f3_fiber_count(const Decomposition& d, int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i == j || i == k || j == k) throw Error(ErrorKind::IndexError, "indices must be distinct");
  const std::array<int, 3> prefix{i, j, k};
  return count_prefix(d, prefix);
}

bool same_pointed(const PointedDecomposition& a, const PointedDecomposition& b, double tol) {
  return same_point(a.base.entries.at(a.marked).point, b.base.entries.at(b.marked).point, tol) &&
         same_point_set(points_of(a.base), points_of(b.base), tol);
}

bool alpha_fiber_check(const Decomposition& d, int marked, double tol) {
  check_index(marked);
  require_distinct(d);
  const PointedDecomposition ref{d, marked};
  for (int j = 0; j < 6; ++j) {
    if (j == marked) continue;
    const Decomposition r = reconstruct(d.entries[marked].point, d.entries[j].point, tol);
    if (!same_pointed(ref, {r, 0})) return false;
  }
  return true;
}

PointedDecomposition vsp6_chart(const std::array<Complex, 3>& params, double tol) {
  const DualPoint l{params[0], params[1], Complex(1.0, 0.0)};
  const DualPoint m = parametrize_fiber(l, params[2], tol);
  return {reconstruct(l, m, tol), 0};
}

std::string canonical_key(const Decomposition& d, int digits) {
  const double scale = std::pow(10.0, digits);
  std::vector<std::array<long long, 6>> rows;
  for (const auto& e : d.entries) {
    const DualPoint p = normalized(e.point);
    std::array<long long, 6> r{};
    for (int i = 0; i < 3; ++i) {
      r[2 * i] = std::llround(p[i].real() * scale);
      r[2 * i + 1] = std::llround(p[i].imag() * scale);
    }
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "(";
    for (int i = 0; i < 6; ++i) os << (i ? "," : "") << r[i];
    os << ")";
  }
  return os.str();
}

DegreeTable degree_table(const Decomposition& d) {
  DegreeTable t;
  const auto ords = orderings(d);
  t.phi6 = static_cast<long>(ords.size());
  t.chi6_lower = static_cast<long>(to_pointed(d).size());
  const auto bips = to_bipartitions(d);
  t.chi6_upper = static_cast<long>(bips.size());

  // f2, f3 must be the same for every choice of leading indices.
  t.f2 = f2_fiber_count(d, 0, 1);
  t.f3 = f3_fiber_count(d, 0, 1, 2);
  bool uniform = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j && f2_fiber_count(d, i, j) != t.f2) uniform = false;

  // alpha: ordered pairs (marked, j) landing on the pointed object marked at 0.
  std::set<std::pair<int, int>> pairs;
  for (const auto& o : ords)
    if (o[0] == 0) pairs.insert({o[0], o[1]});
  t.alpha = static_cast<long>(pairs.size());

  std::set<std::array<int, 3>> triples;
  for (const auto& o : ords) triples.insert({o[0], o[1], o[2]});
  t.p3_to_vsp = static_cast<long>(triples.size());
  t.p3_to_p2 = static_cast<long>(std::count_if(triples.begin(), triples.end(), [](const auto& tr) {
    return tr[0] == 0 && tr[1] == 1;
  }));
  const Bipartition& b0 = bips.front();
  t.p3_to_vsp_upper = static_cast<long>(std::count_if(triples.begin(), triples.end(), [&](auto tr) {
    std::sort(tr.begin(), tr.end());
    return tr == b0.first || tr == b0.second;
  }));

  // Ordered refinements of one bipartition: orderings whose first three slots form a block.
  long refinements = 0;
  for (const auto& o : ords) {
    std::array<int, 3> head{o[0], o[1], o[2]};
    std::sort(head.begin(), head.end());
    if (head == b0.first || head == b0.second) ++refinements;
  }
  t.bookkeeping_ok = uniform && t.phi6 == t.chi6_lower * t.alpha * t.f2 &&
                     t.phi6 == t.chi6_upper * refinements && t.phi6 == t.p3_to_vsp * t.f3 &&
                     t.p3_to_vsp == t.chi6_upper * t.p3_to_vsp_upper;
  return t;
}

}  // namespace kvsp
