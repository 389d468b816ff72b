#include "kvsp/reports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kvsp/theta.hpp"

namespace kvsp {

using nlohmann::json;

namespace {

json base_document(Command c) {
  return json{{"schema_version", kSchemaVersion}, {"command", command_name(c)}};
}

double max_pairwise_klein(const Decomposition& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.entries.size(); ++i)
    for (std::size_t j = i + 1; j < d.entries.size(); ++j)
      worst = std::max(worst, std::abs(klein_pair(normalized(d.entries[i].point), normalized(d.entries[j].point))));
  return worst;
}

json degrees_json(const DegreeTable& t) {
  return json{{"phi6", t.phi6}, {"chi6_lower", t.chi6_lower}, {"chi6_upper", t.chi6_upper},
              {"f2", t.f2},     {"f3", t.f3},                 {"alpha", t.alpha}};
}

json diagram_entry(long value, long expected) {
  return json{{"value", value}, {"expected", expected}, {"status", "diagram-only"}};
}

json characteristic_json(const Characteristic& m) {
  return json::array({json::array({m.a[0], m.a[1]}), json::array({m.b[0], m.b[1]})});
}

RunResult run_decompose(const RunConfig& cfg) {
  const Decomposition d = reconstruct(*cfg.l, *cfg.m, cfg.tol);
  json doc = base_document(cfg.command);
  doc["input"] = {{"L", point_to_json(normalized(*cfg.l))}, {"M", point_to_json(normalized(*cfg.m))}};
  doc["decomposition"] = decomposition_to_json(d);
  doc["max_pairwise_klein"] = max_pairwise_klein(d);
  int nullity = -1;
  try {
    nullity = tangent_nullity(d);
  } catch (const Error&) {
  }
  doc["tangent_nullity"] = nullity;
  return {kExitOk, doc};
}

RunResult run_verify(const RunConfig& cfg) {
  std::ifstream in(cfg.input_path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + cfg.input_path);
  json input;
  try {
    input = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad JSON: ") + e.what());
  }
  const json& dj = input.contains("decomposition") ? input.at("decomposition") : input;
  const Decomposition d = decomposition_from_json(dj);
  const double residual = verify(d);
  const double pairwise = max_pairwise_klein(d);
  const bool residual_ok = residual < std::max(cfg.tol, 1e-8);
  const bool apolar_ok = pairwise < std::max(cfg.tol, 1e-8);
  json doc = base_document(cfg.command);
  doc["residual"] = residual;
  doc["max_pairwise_klein"] = pairwise;
  doc["checks"] = {{"residual", residual_ok}, {"pairwise_apolarity", apolar_ok}};
  doc["pass"] = residual_ok && apolar_ok;
  return {residual_ok && apolar_ok ? kExitOk : kExitInvariantViolation, doc};
}

RunResult run_sample(const RunConfig& cfg) {
  json p2 = json::array(), p3 = json::array();
  bool all_p2 = true, all_p3 = true;
  for (int i = 0; i < cfg.count; ++i) {
    const std::uint64_t item_seed = cfg.seed ^ static_cast<std::uint64_t>(i);
    const P2Sample a = sample_p2(item_seed);
    const P3Sample b = sample_p3(item_seed);
    const bool in_p2 = membership_p2(a.l, a.m, std::max(cfg.tol, 1e-8));
    const bool in_p3 = membership_p3(b.l, b.m, b.n, std::max(cfg.tol, 1e-8));
    all_p2 = all_p2 && in_p2;
    all_p3 = all_p3 && in_p3;
    p2.push_back({{"seed", item_seed}, {"L", point_to_json(a.l)}, {"M", point_to_json(a.m)}, {"member", in_p2}});
    p3.push_back({{"seed", item_seed},
                  {"L", point_to_json(b.l)},
                  {"M", point_to_json(b.m)},
                  {"N", point_to_json(b.n)},
                  {"member", in_p3}});
  }
  json doc = base_document(cfg.command);
  doc["seed"] = cfg.seed;
  doc["count"] = cfg.count;
  doc["p2"] = p2;
  doc["p3"] = p3;
  doc["checks"] = {{"p2_membership", all_p2}, {"p3_membership", all_p3}};
  doc["pass"] = all_p2 && all_p3;
  return {all_p2 && all_p3 ? kExitOk : kExitInvariantViolation, doc};
}

RunResult run_discriminant(const RunConfig& cfg) {
  const RForm det = discriminant_sextic();
  const RForm ref = reference_sextic();
  const bool identity = (det.scaled(Rational(4)) + ref).is_zero();
  const Triple<Rational> ones{1, 1, 1};
  json doc = base_document(cfg.command);
  doc["sextic"] = to_string(det);
  doc["reference"] = to_string(ref);
  doc["scalar"] = "-1/4";
  doc["identity"] = "4*det(Q) + reference = 0";
  doc["value_at_111"] = Rational(evaluate(det, ones)).get_str();
  doc["checks"] = {{"identity_holds", identity}};
  doc["pass"] = identity;
  return {identity ? kExitOk : kExitInvariantViolation, doc};
}

RunResult run_covers(const RunConfig& cfg) {
  const P2Sample s = sample_p2(cfg.seed);
  const Decomposition d = reconstruct(s.l, s.m, cfg.tol);
  const DegreeTable t = degree_table(d);
  const bool alpha_ok = alpha_fiber_check(d, 0, cfg.tol);

  Decomposition permuted = d;
  std::reverse(permuted.entries.begin(), permuted.entries.end());
  const bool key_ok = canonical_key(d) == canonical_key(permuted);

  json checks = {{"phi6", t.phi6 == 720}, {"chi6_lower", t.chi6_lower == 6}, {"chi6_upper", t.chi6_upper == 10},
                 {"f2", t.f2 == 24},      {"f3", t.f3 == 6},                 {"alpha", t.alpha == 5},
                 {"bookkeeping", t.bookkeeping_ok}, {"alpha_fiber_check", alpha_ok},
                 {"canonical_key_permutation", key_ok}};
  bool pass = true;
  for (const auto& [k, v] : checks.items()) pass = pass && v.get<bool>();

  json doc = base_document(cfg.command);
  doc["seed"] = cfg.seed;
  doc["degrees"] = degrees_json(t);
  doc["diagram_only"] = {{"p3_to_p2", diagram_entry(t.p3_to_p2, 4)},
                         {"p3_to_vsp", diagram_entry(t.p3_to_vsp, 120)},
                         {"p3_to_vsp_upper", diagram_entry(t.p3_to_vsp_upper, 12)}};
  doc["canonical_key"] = canonical_key(d);
  doc["checks"] = checks;
  doc["pass"] = pass;
  return {pass ? kExitOk : kExitInvariantViolation, doc};
}

RunResult run_orbits(const RunConfig& cfg) {
  const auto& group = sp4_group();
  const auto chars = all_characteristics();
  const auto orbs = orbits();
  std::vector<long> sizes;
  for (const auto& o : orbs) sizes.push_back(static_cast<long>(o.size()));

  bool parity_invariant = true;
  bool identity_law = true;
  for (const auto& m : chars) {
    identity_law = identity_law && act(SympMatrixF2::identity(), m) == m;
    for (const auto& g : group) parity_invariant = parity_invariant && parity(act(g, m)) == parity(m);
  }
  bool composition_law = true;
  for (const auto& g : group)
    for (const auto& h : group)
      for (const auto& m : chars)
        if (act(g * h, m) != act(g, act(h, m))) composition_law = false;

  Characteristic even_m{}, odd_m{};
  odd_m.a = {1, 0};
  odd_m.b = {1, 0};
  std::set<long> stab_even, stab_odd;
  for (const auto& m : chars) (parity(m) > 0 ? stab_even : stab_odd).insert(stabilizer_order(m));

  std::set<Perm6> image;
  long kernel = 0;
  bool homomorphism = true;
  const Perm6 id_perm{0, 1, 2, 3, 4, 5};
  for (const auto& g : group) {
    const Perm6 p = perm_of(g);
    image.insert(p);
    if (p == id_perm) ++kernel;
  }
  for (std::size_t i = 0; i < group.size(); i += 7)
    for (std::size_t j = 0; j < group.size(); j += 11) {
      const Perm6 pg = perm_of(group[i]), ph = perm_of(group[j]), pgh = perm_of(group[i] * group[j]);
      for (int k = 0; k < 6; ++k) homomorphism = homomorphism && pgh[k] == pg[ph[k]];
    }

  const auto forms = quadratic_forms();
  int arf0 = 0, arf1 = 0;
  for (const auto& q : forms) (q.arf() == 0 ? arf0 : arf1)++;
  bool equivariant = true;
  std::set<QuadFormF2> matched;
  for (const auto& m : chars) {
    const QuadFormF2 q = form_of(m);
    matched.insert(q);
    equivariant = equivariant && (q.arf() == 0) == (parity(m) > 0);
    for (const auto& g : group) equivariant = equivariant && form_of(act(g, m)) == pull_back(q, g);
  }
  const bool bijective = matched.size() == 16 && std::set<QuadFormF2>(forms.begin(), forms.end()) == matched;
  const CoverDegrees cd = cover_report();
  const ParityCounts pc = parity_counts();

  json checks = {{"group_order", group.size() == 720},
                 {"orbit_sizes", sizes == std::vector<long>{10, 6}},
                 {"parity_counts", pc.even == 10 && pc.odd == 6},
                 {"parity_invariant", parity_invariant},
                 {"action_identity", identity_law},
                 {"action_composition", composition_law},
                 {"stabilizers", stab_even == std::set<long>{72} && stab_odd == std::set<long>{120}},
                 {"perm_image", image.size() == 720},
                 {"perm_kernel_trivial", kernel == 1},
                 {"perm_homomorphism", homomorphism},
                 {"quadratic_forms", forms.size() == 16 && arf0 == 10 && arf1 == 6},
                 {"form_matching", bijective && equivariant},
                 {"cover_degrees", cd.odd == 6 && cd.even == 10 && cd.level == 720}};
  bool pass = true;
  for (const auto& [k, v] : checks.items()) pass = pass && v.get<bool>();

  json orbit_list = json::array();
  for (const auto& o : orbs) {
    json members = json::array();
    for (const auto& m : o) members.push_back(characteristic_json(m));
    orbit_list.push_back({{"size", o.size()}, {"parity", parity(o.front())}, {"members", members}});
  }
  json doc = base_document(cfg.command);
  doc["group_order"] = group.size();
  doc["orbit_sizes"] = sizes;
  doc["orbits"] = orbit_list;
  doc["parity_counts"] = {{"even", pc.even}, {"odd", pc.odd}};
  doc["stab_even"] = stabilizer_order(even_m);
  doc["stab_odd"] = stabilizer_order(odd_m);
  doc["perm_image_size"] = image.size();
  doc["quadratic_forms"] = {{"count", forms.size()}, {"arf0", arf0}, {"arf1", arf1}};
  doc["cover_degrees"] = {{"odd", cd.odd}, {"even", cd.even}, {"level", cd.level}};
  doc["checks"] = checks;
  doc["pass"] = pass;
  return {pass ? kExitOk : kExitInvariantViolation, doc};
}

RunResult run_chart(const RunConfig& cfg) {
  const PointedDecomposition pd = vsp6_chart(*cfg.params, cfg.tol);
  json params = json::array();
  for (const auto& p : *cfg.params) params.push_back(complex_to_json(p));
  json doc = base_document(cfg.command);
  doc["params"] = params;
  doc["marked"] = pd.marked;
  doc["decomposition"] = decomposition_to_json(pd.base);
  doc["canonical_key"] = canonical_key(pd.base);
  return {kExitOk, doc};
}

RunResult run_probe(const RunConfig& cfg) {
  const FiberProbeReport r = g3_fiber_probe(*cfg.l0, cfg.count, cfg.seed, cfg.tol);
  const bool residual_ok = r.max_equation_residual < 1e-9;
  const bool rank_ok = r.samples == r.requested && r.min_rank == 3;
  json doc = base_document(cfg.command);
  doc["seed"] = cfg.seed;
  doc["base"] = point_to_json(r.base);
  doc["requested"] = r.requested;
  doc["samples"] = r.samples;
  doc["failures"] = r.failures;
  doc["min_jacobian_rank"] = r.min_rank;
  doc["max_jacobian_rank"] = r.max_rank;
  doc["max_equation_residual"] = r.max_equation_residual;
  doc["min_condition_ratio"] = r.min_condition_ratio;
  doc["checks"] = {{"equations", residual_ok}, {"smooth_rank", rank_ok}};
  doc["pass"] = residual_ok && rank_ok;
  return {residual_ok && rank_ok ? kExitOk : kExitInvariantViolation, doc};
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::Decompose: return "decompose";
    case Command::Verify: return "verify";
    case Command::Sample: return "sample";
    case Command::Discriminant: return "discriminant";
    case Command::Covers: return "covers";
    case Command::Orbits: return "orbits";
    case Command::Chart: return "chart";
    case Command::ProbeFiber: return "probe-fiber";
  }
  return "unknown";
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  if (c.count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  switch (c.command) {
    case Command::Decompose:
      if (!c.l || !c.m) throw Error(ErrorKind::InvalidArgument, "decompose needs --L and --M");
      break;
    case Command::Verify:
      if (c.input_path.empty()) throw Error(ErrorKind::InvalidArgument, "verify needs --in");
      break;
    case Command::Chart:
      if (!c.params) throw Error(ErrorKind::InvalidArgument, "chart needs --params");
      break;
    case Command::ProbeFiber:
      if (!c.l0) throw Error(ErrorKind::InvalidArgument, "probe-fiber needs --L0");
      break;
    default:
      break;
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::InvalidArgument, "complex must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json point_to_json(const DualPoint& p) {
  const DualPoint n = normalized(p);
  return json::array({complex_to_json(n[0]), complex_to_json(n[1]), complex_to_json(n[2])});
}

DualPoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::InvalidArgument, "point must have 3 coordinates");
  return {complex_from_json(j.at(0)), complex_from_json(j.at(1)), complex_from_json(j.at(2))};
}

json form_to_json(const CForm& f) {
  json terms = json::array();
  bool rational = true;
  RForm exact(f.n_vars(), f.degree());
  for (const auto& [e, c] : f.terms()) {
    terms.push_back({{"exponent", e}, {"coefficient", complex_to_json(c)}});
    if (c.imag() != 0.0 || !std::isfinite(c.real())) {
      rational = false;
    } else {
      exact.add_term(e, Rational(c.real()));
    }
  }
  json j{{"n_vars", f.n_vars()}, {"degree", f.degree()}, {"terms", terms}};
  if (rational) j["text"] = to_string(exact);
  return j;
}

CForm form_from_json(const json& j) {
  try {
    CForm f(j.at("n_vars").get<int>(), j.at("degree").get<int>());
    for (const auto& t : j.at("terms"))
      f.add_term(t.at("exponent").get<Exponent>(), complex_from_json(t.at("coefficient")));
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad form JSON: ") + e.what());
  }
}

json decomposition_to_json(const Decomposition& d) {
  json entries = json::array();
  for (const auto& e : d.entries) {
    // Points are written normalized; lambda is rescaled to keep lambda * L^4 fixed.
    const DualPoint n = normalized(e.point);
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(e.point[i]) > std::abs(e.point[k])) k = i;
    const Complex s = e.point[k];
    entries.push_back({{"point", point_to_json(n)}, {"lambda", complex_to_json(e.lambda * s * s * s * s)}});
  }
  return json{{"target", form_to_json(d.target)}, {"entries", entries}, {"residual", d.residual}};
}

Decomposition decomposition_from_json(const json& j) {
  Decomposition d;
  try {
    d.target = form_from_json(j.at("target"));
    for (const auto& e : j.at("entries"))
      d.entries.push_back({point_from_json(e.at("point")), complex_from_json(e.at("lambda"))});
    if (j.contains("residual")) d.residual = j.at("residual").get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad decomposition JSON: ") + e.what());
  }
  return d;
}

DualPoint parse_triple(const std::string& text) {
  std::vector<Complex> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      std::size_t used = 0;
      const double re = std::stod(item.substr(0, colon), &used);
      double im = 0.0;
      if (colon != std::string::npos) im = std::stod(item.substr(colon + 1));
      vals.emplace_back(re, im);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "cannot parse number '" + item + "'");
    }
  }
  if (vals.size() != 3) throw Error(ErrorKind::InvalidArgument, "expected three comma-separated values");
  return {vals[0], vals[1], vals[2]};
}

RunResult run(const RunConfig& config) {
  try {
    validate(config);
    switch (config.command) {
      case Command::Decompose: return run_decompose(config);
      case Command::Verify: return run_verify(config);
      case Command::Sample: return run_sample(config);
      case Command::Discriminant: return run_discriminant(config);
      case Command::Covers: return run_covers(config);
      case Command::Orbits: return run_orbits(config);
      case Command::Chart: return run_chart(config);
      case Command::ProbeFiber: return run_probe(config);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown command");
  } catch (const Error& e) {
    json doc = base_document(config.command);
    doc["error"] = std::string(e.name());
    doc["message"] = e.what();
    const bool input = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::EntryCount ||
                       e.kind() == ErrorKind::IndexError;
    return {input ? kExitInputError : kExitNumericalFailure, doc};
  }
}

std::string render(const json& document) { return document.dump(2) + "\n"; }

}  // namespace kvsp
