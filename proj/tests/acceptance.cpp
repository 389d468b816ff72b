// Acceptance checks, one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "kvsp/apolarity.hpp"
#include "kvsp/covers.hpp"
#include "kvsp/theta.hpp"
#include "kvsp/varieties.hpp"

#ifndef KVSP_CLI_PATH
#error "KVSP_CLI_PATH must point at the kvsp executable"
#endif

using namespace kvsp;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_ms, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_ms <= 0 || ms < limit_ms;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << "  (" << out.detail;
  line.precision(3);
  line << "; " << std::fixed << ms << " ms";
  if (limit_ms > 0) line << " / limit " << limit_ms << " ms";
  if (!in_time) line << ", over time";
  line << ")";
  std::cout << line.str() << std::endl;
}

double max_pairwise(const Decomposition& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.entries.size(); ++i)
    for (std::size_t j = i + 1; j < d.entries.size(); ++j)
      worst = std::max(worst, std::abs(klein_pair(normalized(d.entries[i].point), normalized(d.entries[j].point))));
  return worst;
}

Outcome klein_catalecticant() {
  const auto c = catalecticant4(klein_quartic<Rational>());
  Mat6<Rational> expected;
  for (auto& row : expected) row.fill(0);
  for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {2, 5}, {3, 4}, {4, 3}, {5, 2}}) expected[i][j] = 3;
  return {c == expected, "36 entries compared"};
}

Outcome discriminant_identity() {
  const RForm lhs = discriminant_sextic().scaled(4) + reference_sextic();
  return {lhs.is_zero(), lhs.is_zero() ? "4 det Q + sextic = 0" : "nonzero remainder " + to_string(lhs)};
}

Outcome convention_locks() {
  const RForm f4 = klein_quartic<Rational>();
  const Triple<RForm> l{RForm::variable(6, 0), RForm::variable(6, 1), RForm::variable(6, 2)};
  const Triple<RForm> m{RForm::variable(6, 3), RForm::variable(6, 4), RForm::variable(6, 5)};
  const RForm d = klein_pair(l, m);
  const bool omega = omega_matrix(f4, l, m) == d.scaled(3);
  const bool contraction = contraction_pair(f4, l, m) == d.scaled(12);
  const Triple<RForm> x{RForm::variable(3, 0), RForm::variable(3, 1), RForm::variable(3, 2)};
  const bool diagonal = klein_pair(x, x) == f4.scaled(2);
  std::ostringstream s;
  s << "omega=3D " << omega << ", contraction=12D " << contraction << ", D(L,L)=2F " << diagonal;
  return {omega && contraction && diagonal, s.str()};
}

Outcome reconstruction_suite() {
  int succeeded = 0, round_trip = 0;
  double worst_residual = 0.0, worst_pairwise = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    try {
      const auto s = sample_p2(seed);
      const Decomposition d = reconstruct(s.l, s.m);
      worst_residual = std::max(worst_residual, d.residual);
      worst_pairwise = std::max(worst_pairwise, max_pairwise(d));
      if (d.residual < 1e-8 && max_pairwise(d) < 1e-8) ++succeeded;
      const Decomposition again = reconstruct(d.entries[3].point, d.entries[5].point);
      if (same_point_set(points_of(again), points_of(d), 1e-6)) ++round_trip;
    } catch (const Error&) {
    }
  }
  std::ostringstream s;
  s << succeeded << "/100 within tolerance, round trip " << round_trip << "/100, max residual " << worst_residual
    << ", max |D| " << worst_pairwise;
  return {succeeded == 100 && round_trip >= 95, s.str()};
}

Outcome dimension_check() {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    try {
      const auto s = sample_p2(seed);
      if (tangent_nullity(reconstruct(s.l, s.m)) == 3) ++good;
    } catch (const Error&) {
    }
  }
  return {good >= 95, std::to_string(good) + "/100 with nullity 3"};
}

Outcome degree_five_check() {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    try {
      const auto s = sample_p2(seed);
      if (alpha_fiber_check(reconstruct(s.l, s.m), static_cast<int>(seed % 6))) ++good;
    } catch (const Error&) {
    }
  }
  return {good >= 95, std::to_string(good) + "/100 fibers recovered from all 5 partners"};
}

Outcome cover_combinatorics() {
  const auto s = sample_p2(0);
  const Decomposition d = reconstruct(s.l, s.m);
  const long ord = static_cast<long>(orderings(d).size());
  const long pointed = static_cast<long>(to_pointed(d).size());
  const long bip = static_cast<long>(to_bipartitions(d).size());
  const long f2 = f2_fiber_count(d, 0, 1), f3 = f3_fiber_count(d, 0, 1, 2);
  std::ostringstream o;
  o << ord << " / " << pointed << " / " << bip << " / " << f2 << " / " << f3;
  return {ord == 720 && pointed == 6 && bip == 10 && f2 == 24 && f3 == 6, o.str()};
}

Outcome symplectic_suite() {
  const auto& g = sp4_group();
  bool ok = g.size() == 720;
  const auto orb = orbits();
  ok = ok && orb.size() == 2 && orb[0].size() == 10 && orb[1].size() == 6;
  for (const auto& c : all_characteristics())
    ok = ok && stabilizer_order(c) == (parity(c) == 1 ? 72 : 120);
  long parity_pairs = 0;
  for (const auto& m : g)
    for (const auto& c : all_characteristics())
      if (parity(act(m, c)) == parity(c)) ++parity_pairs;
  ok = ok && parity_pairs == 720 * 16;
  std::set<Perm6> image;
  long kernel = 0;
  for (const auto& m : g) {
    const Perm6 p = perm_of(m);
    image.insert(p);
    if (p == Perm6{0, 1, 2, 3, 4, 5}) ++kernel;
  }
  ok = ok && image.size() == 720 && kernel == 1;
  int arf0 = 0, arf1 = 0;
  for (const auto& q : quadratic_forms()) (q.arf() == 0 ? arf0 : arf1) += 1;
  ok = ok && arf0 == 10 && arf1 == 6;
  long equivariant = 0;
  for (const auto& m : g)
    for (const auto& c : all_characteristics())
      if (form_of(act(m, c)) == pull_back(form_of(c), m)) ++equivariant;
  ok = ok && equivariant == 720 * 16;
  std::ostringstream s;
  s << "|G|=" << g.size() << ", orbits " << orb[0].size() << "+" << orb[1].size() << ", parity " << parity_pairs
    << "/11520, image " << image.size() << ", kernel " << kernel << ", Arf " << arf0 << "+" << arf1
    << ", equivariant " << equivariant << "/11520";
  return {ok, s.str()};
}

Outcome fiber_probe() {
  const auto r = g3_fiber_probe({1, 1, 1}, 50, 0);
  std::ostringstream s;
  s << r.samples << " points, rank " << r.min_rank << ".." << r.max_rank << ", max residual "
    << r.max_equation_residual;
  return {r.samples == 50 && r.failures == 0 && r.min_rank == 3 && r.max_rank == 3 &&
              r.max_equation_residual < 1e-9,
          s.str()};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

std::string fmt(Complex z) {
  char b[80];
  std::snprintf(b, sizeof b, "%.17g:%.17g", z.real(), z.imag());
  return b;
}

Outcome determinism() {
  const std::string cli = std::string("\"") + KVSP_CLI_PATH + "\"";
  const DualPoint m = parametrize_fiber({1, 1, 1}, Complex(0.25, 0.1));
  const std::string mtext = fmt(m[0]) + "," + fmt(m[1]) + "," + fmt(m[2]);
  const auto tmp = std::filesystem::temp_directory_path() / "kvsp_acceptance_decomposition.json";
  {
    std::ofstream f(tmp);
    f << capture(cli + " decompose --L 1,1,1 --M=" + mtext + " --seed 7");
  }
  const std::vector<std::string> commands{
      "decompose --L 1,1,1 --M=" + mtext + " --seed 7",
      "verify --in \"" + tmp.string() + "\" --seed 7",
      "sample --count 5 --seed 7",
      "discriminant --seed 7",
      "covers --seed 7",
      "orbits --seed 7",
      "chart --params 0.3,-0.7,0.45 --seed 7",
      "probe-fiber --L0 1,1,1 --count 20 --seed 7",
  };
  int identical = 0;
  std::string mismatched;
  for (const auto& c : commands) {
    const std::string a = capture(cli + " " + c + " 2>/dev/null");
    const std::string b = capture(cli + " " + c + " 2>/dev/null");
    if (!a.empty() && a == b)
      ++identical;
    else
      mismatched += " " + c.substr(0, c.find(' '));
  }
  std::filesystem::remove(tmp);
  std::string detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical";
  if (!mismatched.empty()) detail += ", differing:" + mismatched;
  return {identical == static_cast<int>(commands.size()), detail};
}

}  // namespace

int main() {
  criterion(1, "Klein catalecticant, exact", 1, klein_catalecticant);
  criterion(2, "discriminant identity, exact", 10, discriminant_identity);
  criterion(3, "convention locks, exact", 100, convention_locks);
  criterion(4, "reconstruction suite", 10000, reconstruction_suite);
  criterion(5, "dimension check", 5000, dimension_check);
  criterion(6, "degree-5 check", 30000, degree_five_check);
  criterion(7, "cover combinatorics, exact", 1000, cover_combinatorics);
  criterion(8, "symplectic suite, exhaustive", 5000, symplectic_suite);
  criterion(9, "fiber probe over (1,1,1)", 10000, fiber_probe);
  criterion(10, "CLI determinism", 0, determinism);
  std::cout << (failures == 0 ? "all 10 criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
