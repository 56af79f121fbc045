#include "perverse/cli.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#ifndef PERVERSE_KIT_VERSION
#define PERVERSE_KIT_VERSION "0.0.0"
#endif

namespace perverse::cli {
namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 14> kKinds{{
    {Kind::grauert, "grauert"},
    {Kind::zariski, "zariski"},
    {Kind::fibration, "fibration"},
    {Kind::ic_stalk, "ic_stalk"},
    {Kind::gysin, "gysin"},
    {Kind::germ_decompose, "germ_decompose"},
    {Kind::germ_truncate, "germ_truncate"},
    {Kind::koszul, "koszul"},
    {Kind::hl_check, "hl_check"},
    {Kind::perverse_filtration, "perverse_filtration"},
    {Kind::limit_primitives, "limit_primitives"},
    {Kind::etal_decomposition, "etal_decomposition"},
    {Kind::motive, "motive"},
    {Kind::check_all, "check_all"},
}};

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::schema, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema(where, fmt::format("missing field \"{}\"", key));
  return *it;
}

const Json* optional_field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string join(const std::string& where, const std::string& key) { return where + "." + key; }

long long integer_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where, "expected an integer");
  return j.get<long long>();
}

int int_field(const Json& obj, const char* key, const std::string& where) {
  return static_cast<int>(integer_from_json(field(obj, key, where), join(where, key)));
}

Index count_from_json(const Json& j, const std::string& where) {
  const long long v = integer_from_json(j, where);
  if (v < 0) schema(where, "expected a nonnegative count");
  return static_cast<Index>(v);
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) schema(where, "expected a rational as a string or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

std::vector<Index> counts_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of counts");
  std::vector<Index> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(count_from_json(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

RationalVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of rationals");
  RationalVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rational_from_json(j[i], fmt::format("{}[{}]", where, i));
  return v;
}

/// An empty matrix takes the shape the context expects.
RationalMatrix fit(RationalMatrix m, Index rows, Index cols) {
  if (m.size() == 0 && rows * cols == 0) return RationalMatrix(rows, cols);
  return m;
}

std::vector<RationalMatrix> matrices_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of matrices");
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

std::map<int, Index> degree_map_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object of degree -> dimension");
  std::map<int, Index> out;
  for (const auto& [key, value] : j.items()) {
    int degree = 0;
    try {
      std::size_t used = 0;
      degree = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      schema(where, fmt::format("degree key \"{}\" is not an integer", key));
    }
    const Index d = count_from_json(value, join(where, key));
    if (d > 0) out[degree] = d;
  }
  return out;
}

Json degree_map_to_json(const std::map<int, Index>& m) {
  Json out = Json::object();
  for (const auto& [k, d] : m) out[std::to_string(k)] = d;
  return out;
}

Json signature_to_json(const Signature& s) {
  return {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
}

std::string dims_text(const std::vector<Index>& dims) {
  std::string out = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
  return out + ")";
}

std::string degree_map_text(const std::map<int, Index>& m) {
  if (m.empty()) return "0";
  std::string out;
  for (const auto& [k, d] : m) out += fmt::format("{}{}@{}", out.empty() ? "" : " ", d, k);
  return out;
}

ChainComplex formal_from_json(const Json& j, const std::string& where) {
  return ChainComplex::formal(int_field(j, "lo", where), counts_from_json(field(j, "dims", where), join(where, "dims")));
}

// Every handler appends verdicts and tables to the report.
struct Context {
  const Scenario& scenario;
  Report& report;

  void verdict(std::string id, Status status, std::string details = {}) {
    report.verdicts.push_back({std::move(id), status, std::move(details)});
  }
  void verdict(std::string id, bool ok, std::string details = {}) { verdict(std::move(id), status_of(ok), std::move(details)); }
  const Json& payload() const { return scenario.payload; }
  const Json* expect() const { return optional_field(scenario.payload, "expect", "payload"); }
};

void violations_verdict(Context& c, const std::vector<std::string>& v) {
  if (v.empty()) c.verdict("package.invariants", Status::pass);
  else c.verdict("package.invariants", Status::hypothesis_not_met, v.front());
  c.report.tables["violations"] = v;
}

void run_grauert(Context& c) {
  const Json& cc = field(c.payload(), "curve_config", "payload");
  const CurveConfig config{matrix_from_json(field(cc, "m", "payload.curve_config"), "payload.curve_config.m")};
  const auto g = grauert_check(config);
  c.verdict("grauert.negative_definite", g.verdict, std::string(to_string(g.form.verdict)));
  c.report.tables["grauert"] = {{"definiteness", std::string(to_string(g.form.verdict))},
                                {"signature", signature_to_json(g.form.signature)},
                                {"class_map_iso", g.class_map_iso}};
}

FiberCycle fiber_cycle_from_json(const Json& j, const std::string& where) {
  return {{matrix_from_json(field(j, "m", where), join(where, "m"))}, vector_from_json(field(j, "a", where), join(where, "a"))};
}

void run_zariski(Context& c) {
  const FiberCycle f = fiber_cycle_from_json(field(c.payload(), "fiber_cycle", "payload"), "payload.fiber_cycle");
  const auto z = zariski_check(f);
  c.verdict("zariski.quotient_negative_definite", z.verdict, std::string(to_string(z.quotient_form.verdict)));
  if (z.verdict == Status::pass) c.verdict("zariski.rank_cl", z.rank_cl + 1 == f.config.r(), fmt::format("rank_cl {}", z.rank_cl));
  c.report.tables["zariski"] = {{"rank_cl", z.rank_cl},
                                {"quotient", to_json(z.quotient)},
                                {"quotient_signature", signature_to_json(z.quotient_form.signature)}};
}

void run_fibration(Context& c) {
  const std::string where = "payload.fibration_germ";
  const Json& j = field(c.payload(), "fibration_germ", "payload");
  FibrationGerm g;
  if (const Json* t0 = optional_field(j, "t0", where)) g.t0 = count_from_json(*t0, join(where, "t0"));
  if (const Json* t2 = optional_field(j, "t2", where)) g.t2 = count_from_json(*t2, join(where, "t2"));
  g.monodromy = matrix_from_json(field(j, "monodromy", where), join(where, "monodromy"));
  g.special_fiber = fiber_cycle_from_json(field(j, "special_fiber", where), join(where, "special_fiber"));
  g.b1_special = count_from_json(field(j, "b1_special", where), join(where, "b1_special"));
  const auto d = fibration_decompose(g);
  c.verdict("fibration.decomposition", d.verdict,
            fmt::format("invariants {}, V dim {}, conserved {}", d.invariants, d.v_dim, d.conserved));
  Json summands = Json::array();
  for (const auto& s : d.summands) summands.push_back({{"name", s.name}, {"degree", s.degree}, {"dim", s.dim}});
  c.report.tables["fibration"] = {{"summands", summands}, {"invariants", d.invariants}, {"v_dim", d.v_dim}};
}

LinkCohomology link_from_json(const Json& j, const std::string& where) {
  return {int_field(j, "n", where), counts_from_json(field(j, "dims", where), join(where, "dims"))};
}

void ic_stalk_verdicts(Context& c, const LinkCohomology& link, const Json* expected) {
  const auto ic = Cohomology(ic_isolated(link)).dims();
  const auto rj = ChainComplex::formal(-link.n, link.dims);
  c.verdict("ic_stalk.truncation", ic == Cohomology(truncate(rj, TruncationMode::at_most, -1)).dims());
  if (expected) {
    const auto want = degree_map_from_json(*expected, "payload.expect.ic_stalk");
    c.verdict("ic_stalk.expected", ic == want, fmt::format("got {}, expected {}", degree_map_text(ic), degree_map_text(want)));
  }
  c.report.tables["ic_stalk"] = degree_map_to_json(ic);
}

void run_ic_stalk(Context& c) {
  const LinkCohomology link = link_from_json(field(c.payload(), "link", "payload"), "payload.link");
  const Json* e = c.expect();
  ic_stalk_verdicts(c, link, e ? optional_field(*e, "ic_stalk", "payload.expect") : nullptr);
}

void run_gysin(Context& c) {
  const auto base = counts_from_json(field(c.payload(), "base_dims", "payload"), "payload.base_dims");
  std::vector<RationalMatrix> euler;
  if (const Json* e = optional_field(c.payload(), "euler_maps", "payload")) {
    euler = matrices_from_json(*e, "payload.euler_maps");
    for (std::size_t k = 0; k < euler.size(); ++k) {
      const Index below = base[k];
      const Index above = k + 2 < base.size() ? base[k + 2] : 0;
      euler[k] = fit(euler[k], above, below);
    }
  }
  const auto dims = gysin_s1_bundle(base, euler);
  c.report.tables["gysin"] = dims;
  const Json* e = c.expect();
  if (e)
    if (const Json* want = optional_field(*e, "dims", "payload.expect")) {
      const auto w = counts_from_json(*want, "payload.expect.dims");
      c.verdict("gysin.expected", dims == w, fmt::format("got {}, expected {}", dims_text(dims), dims_text(w)));
    }
  if (const Json* n = optional_field(c.payload(), "n", "payload")) {
    const LinkCohomology link{static_cast<int>(integer_from_json(*n, "payload.n")), dims};
    ic_stalk_verdicts(c, link, e ? optional_field(*e, "ic_stalk", "payload.expect") : nullptr);
  }
}

void run_germ_decompose(Context& c) {
  const std::string where = "payload.surface_germ";
  const Json& j = field(c.payload(), "surface_germ", "payload");
  SurfaceGerm g{{matrix_from_json(field(j, "m", where), join(where, "m"))}, 0};
  if (const Json* b = optional_field(j, "b1D", where)) g.b1D = count_from_json(*b, join(where, "b1D"));
  const auto d = decompose_surface_germ(g);
  c.verdict("germ.split", d.split, d.split ? "IC_Y + H^2(D)_y[0]" : "the obstruction map to the link is nonzero");
  if (d.split) c.verdict("germ.conserved", d.conserved);
  c.verdict("germ.grauert_agrees", d.split == grauert_check(g.config).class_map_iso);
  c.report.tables["germ"] = {{"link", d.link.dims},
                             {"ic_stalk", degree_map_to_json(d.ic_stalk)},
                             {"skyscraper_dim", d.skyscraper_dim},
                             {"rational_homology_manifold", d.rational_homology_manifold}};
}

void run_germ_truncate(Context& c) {
  const std::string where = "payload.germ";
  const Json& j = field(c.payload(), "germ", "payload");
  const int n = int_field(j, "n", where);
  const ChainComplex stalk = formal_from_json(field(j, "stalk", where), join(where, "stalk"));
  const ChainComplex local = formal_from_json(field(j, "local", where), join(where, "local"));
  std::vector<RationalMatrix> rho;
  if (const Json* r = optional_field(j, "rho", where)) rho = matrices_from_json(*r, join(where, "rho"));
  if (!rho.empty() && rho.size() != static_cast<std::size_t>(local.hi() - local.lo() + 1))
    schema(join(where, "rho"), "expected one matrix per degree of the local complex");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const int k = local.lo() + static_cast<int>(i);
    rho[i] = fit(rho[i], stalk.dim(k), local.dim(k));
  }
  const GermDataset g = GermDataset::from_local_cohomology(
      n, rho.empty() ? ChainMap::zero(local, stalk) : ChainMap(local, stalk, rho));

  std::vector<int> levels{-1, 0};
  if (const Json* l = optional_field(c.payload(), "levels", "payload")) {
    if (!l->is_array()) schema("payload.levels", "expected an array of integers");
    levels.clear();
    for (std::size_t i = 0; i < l->size(); ++i) levels.push_back(static_cast<int>(integer_from_json((*l)[i], "payload.levels")));
  }
  Json table = Json::object();
  const Json* e = c.expect();
  for (int m : levels) {
    const auto dims = Cohomology(perverse_truncate_point_germ(g, m)).dims();
    table[std::to_string(m)] = degree_map_to_json(dims);
    if (e)
      if (const Json* want = optional_field(*e, std::to_string(m).c_str(), "payload.expect")) {
        const auto w = degree_map_from_json(*want, "payload.expect." + std::to_string(m));
        c.verdict(fmt::format("germ_truncate.level[{}]", m), dims == w,
                  fmt::format("got {}, expected {}", degree_map_text(dims), degree_map_text(w)));
      }
  }
  // The filtration by m is increasing and ends at the whole stalk.
  bool monotone = true;
  std::map<int, Index> previous;
  for (int m = -2 * n - 1; m <= 2 * n + 1; ++m) {
    auto now = Cohomology(perverse_truncate_point_germ(g, m)).dims();
    for (const auto& [k, d] : previous) monotone = monotone && now[k] >= d;
    previous = now;
  }
  c.verdict("germ_truncate.monotone", monotone);
  std::erase_if(previous, [](const auto& kv) { return kv.second == 0; });
  c.verdict("germ_truncate.exhaustive", previous == Cohomology(stalk).dims());
  c.report.tables["germ_truncate"] = table;
}

void run_koszul(Context& c) {
  const std::string where = "payload.torus_local_system";
  const Json& j = field(c.payload(), "torus_local_system", "payload");
  const TorusLocalSystem ls{matrix_from_json(field(j, "t1", where), join(where, "t1")),
                            matrix_from_json(field(j, "t2", where), join(where, "t2"))};
  const auto k = koszul_cohomology(ls);
  const auto stalk = ic_stalk_normal_crossing(ls);
  const auto oracle = ic_stalk_oracle(ls);
  c.verdict("koszul.oracle_agrees", stalk == oracle,
            fmt::format("({}, {}) vs oracle ({}, {})", stalk.degree_minus2, stalk.degree_minus1, oracle.degree_minus2,
                        oracle.degree_minus1));
  const std::vector<Index> h{k.h0, k.h1, k.h2};
  if (const Json* e = c.expect()) {
    if (const Json* want = optional_field(*e, "cohomology", "payload.expect")) {
      const auto w = counts_from_json(*want, "payload.expect.cohomology");
      c.verdict("koszul.cohomology_expected", h == w, fmt::format("got {}, expected {}", dims_text(h), dims_text(w)));
    }
    if (const Json* want = optional_field(*e, "ic_stalk", "payload.expect")) {
      const auto w = degree_map_from_json(*want, "payload.expect.ic_stalk");
      std::map<int, Index> got;
      if (stalk.degree_minus2) got[-2] = stalk.degree_minus2;
      if (stalk.degree_minus1) got[-1] = stalk.degree_minus1;
      c.verdict("koszul.ic_stalk_expected", got == w, fmt::format("got {}, expected {}", degree_map_text(got), degree_map_text(w)));
    }
  }
  c.report.tables["koszul"] = {{"cohomology", h},
                               {"ic_stalk", {{"-2", stalk.degree_minus2}, {"-1", stalk.degree_minus1}}}};
}

Operator operator_from_payload(const Json& p) {
  const Json* op = optional_field(p, "op", "payload");
  if (!op) return Operator::eta;
  if (*op == "eta") return Operator::eta;
  if (*op == "L") return Operator::L;
  schema("payload.op", "expected \"eta\" or \"L\"");
}

void run_hl_check(Context& c) {
  GradedPackage g;
  if (const Json* j = optional_field(c.payload(), "graded_package", "payload")) {
    g = graded_package_from_json(*j, "payload.graded_package");
    violations_verdict(c, package_violations(g));
  } else {
    const auto p = resolution3_from_json(field(c.payload(), "resolution3", "payload"), "payload.resolution3");
    violations_verdict(c, package_violations(p));
    g = central_row_package(p);
    c.report.tables["central_row_dims"] = g.dims;
  }
  const Operator op = operator_from_payload(c.payload());
  const auto hl = hard_lefschetz_check(g, op);
  Json steps = Json::array();
  std::string failing;
  for (const auto& s : hl.steps) {
    steps.push_back({{"i", s.i}, {"rank", s.rank}, {"source_dim", s.source_dim}, {"target_dim", s.target_dim}, {"iso", s.iso}});
    if (!s.iso && failing.empty()) failing = fmt::format("{}^{} is not an isomorphism", to_string(op), s.i);
  }
  c.verdict("hard_lefschetz", hl.verdict, failing);
  c.report.tables["hard_lefschetz"] = steps;
  if (hl.verdict != Status::pass) return;

  const auto d = primitive_decomposition(g, op);
  c.verdict("primitive.direct", d.direct);
  c.verdict("primitive.orthogonal", d.orthogonal);
  bool polarized = true;
  Json blocks = Json::array();
  for (const auto& b : d.polarization) {
    polarized = polarized && b.nondegenerate;
    Json entry{{"k", b.k}, {"dim", b.form.rows()}, {"nondegenerate", b.nondegenerate}};
    if (b.signature) entry["signature"] = signature_to_json(*b.signature);
    blocks.push_back(entry);
  }
  c.verdict("primitive.polarization_nondegenerate", polarized);
  std::vector<Index> dims;
  for (const auto& p : d.primitives) dims.push_back(p.dim());
  c.report.tables["primitive_dims"] = dims;
  c.report.tables["polarization"] = blocks;
}

void run_filtration3(Context& c, const ResolutionPackage3& p) {
  const auto f = perverse_filtration_3fold(p);
  violations_verdict(c, f.violations);
  c.verdict("perverse_filtration.deligne", f.verdict, f.deligne ? "eta_cap is invertible" : "eta_cap is singular");
  const auto forms = refined_form_graded_check(refined_blocks_3fold(p));
  c.verdict("refined_form.graded", forms.verdict);
  c.verdict("ih.self_dual", f.ih_self_dual);
  Json steps = Json::array();
  for (const auto& s : f.steps) steps.push_back({{"degree", s.degree}, {"level", s.level}, {"dim", s.space.dim()}});
  Json graded = Json::array();
  for (const auto& [key, dim] : f.graded) graded.push_back({{"degree", key.first}, {"level", key.second}, {"dim", dim}});
  Json summands = Json::array();
  for (const auto& s : f.summands) summands.push_back({{"perverse_degree", s.perverse_degree}, {"name", s.name}, {"dim", s.dim}});
  c.report.tables["filtration"] = steps;
  c.report.tables["graded"] = graded;
  c.report.tables["ih_dims"] = f.ih_dims;
  c.report.tables["summands"] = summands;
}

void h4_verdicts(Context& c, const ResolutionPackage4& p) {
  const auto d = h4_decomposition_4fold(p);
  c.verdict("h4.decomposition", d.verdict,
            fmt::format("dims {} + {} + {}", d.eta_classes.dim(), d.primitive_part.dim(), d.image_L.dim()));
  c.report.tables["h4_decomposition"] = {{"eta_classes", d.eta_classes.dim()},
                                         {"primitive_part", d.primitive_part.dim()},
                                         {"image_L", d.image_L.dim()},
                                         {"direct", d.direct},
                                         {"orthogonal", d.orthogonal}};
}

void run_perverse_filtration(Context& c) {
  if (const Json* j = optional_field(c.payload(), "resolution3", "payload")) {
    run_filtration3(c, resolution3_from_json(*j, "payload.resolution3"));
    return;
  }
  const auto p = resolution4_from_json(field(c.payload(), "resolution4", "payload"), "payload.resolution4");
  violations_verdict(c, package_violations(p));
  const auto e = excess_dimension_4fold(p);
  c.verdict("excess_dimension.equal", e.equal, fmt::format("{} vs {}", e.lhs, e.rhs));
  c.verdict("eta2_cap.negative_definite", e.eta2_cap_negative_definite);
  c.report.tables["excess_dimension"] = {{"lhs", e.lhs}, {"rhs", e.rhs}};
  h4_verdicts(c, p);
}

void run_limit_primitives(Context& c) {
  const int k = int_field(c.payload(), "degree", "payload");
  GradedPackage g;
  std::optional<ResolutionPackage4> four;
  if (const Json* j = optional_field(c.payload(), "graded_package", "payload")) {
    g = graded_package_from_json(*j, "payload.graded_package");
    violations_verdict(c, package_violations(g));
  } else {
    four = resolution4_from_json(field(c.payload(), "resolution4", "payload"), "payload.resolution4");
    g = four->g;
    violations_verdict(c, package_violations(*four));
  }
  const auto r = limit_primitives(g, k);
  c.verdict("limit.in_kernel_L", r.contained_in_kernel_L);
  c.verdict("limit.generic_dim", r.limit.dim() == r.generic_dim, fmt::format("limit dim {}, generic {}", r.limit.dim(), r.generic_dim));
  if (r.kernel_L.dim() == r.generic_dim) c.verdict("limit.equals_kernel_L", r.limit == r.kernel_L);
  if (four) {
    const Subspace eta_classes = Subspace::span(g.op(Operator::eta, k - 2) * four->c6);
    const Subspace expected =
        right_orthogonal(eta_classes, g.pairing[static_cast<std::size_t>(k)]).intersect(r.kernel_L);
    c.verdict("limit.matches_orthogonal", r.limit == expected, "(eta H_6(D))^perp cap ker L");
  }
  if (const Json* e = c.expect())
    if (const Json* want = optional_field(*e, "limit", "payload.expect")) {
      const RationalMatrix w = fit(matrix_from_json(*want, "payload.expect.limit"), g.dim(k), 0);
      c.verdict("limit.expected", r.limit == Subspace::span(w));
    }
  c.report.tables["limit"] = {{"basis", to_json(r.limit.basis())},
                              {"generic_dim", r.generic_dim},
                              {"kernel_L_dim", r.kernel_L.dim()}};
}

void run_etal(Context& c) {
  if (const Json* j = optional_field(c.payload(), "resolution4", "payload")) {
    const auto p = resolution4_from_json(*j, "payload.resolution4");
    violations_verdict(c, package_violations(p));
    h4_verdicts(c, p);
    return;
  }
  const auto b = bigraded_package_from_json(field(c.payload(), "bigraded_package", "payload"), "payload.bigraded_package");
  const auto d = eta_l_decomposition(b);
  c.verdict("etal.direct", d.direct);
  c.verdict("etal.orthogonal", d.orthogonal, fmt::format("{} off-diagonal blocks", d.off_diagonal.size()));
  bool nondegenerate = true;
  Json diagonal = Json::array();
  for (const auto& block : d.diagonal) {
    nondegenerate = nondegenerate && block.nondegenerate;
    Json entry{{"piece", block.piece}, {"nondegenerate", block.nondegenerate}};
    if (block.signature) entry["signature"] = signature_to_json(*block.signature);
    diagonal.push_back(entry);
  }
  c.verdict("etal.diagonal_nondegenerate", nondegenerate);
  Json primitives = Json::array();
  for (const auto& p : d.primitives) primitives.push_back({{"i", p.i}, {"j", p.j}, {"dim", p.space.dim()}});
  Json pieces = Json::array();
  for (const auto& p : d.pieces)
    pieces.push_back({{"i", p.i}, {"j", p.j}, {"p", p.p}, {"q", p.q}, {"l", p.at.l}, {"a", p.at.a}, {"dim", p.space.dim()}});
  c.report.tables["primitives"] = primitives;
  c.report.tables["pieces"] = pieces;
  c.report.tables["diagonal"] = diagonal;
}

void run_motive(Context& c) {
  const auto p = resolution3_from_json(field(c.payload(), "resolution3", "payload"), "payload.resolution3");
  ProjectorSet ps;
  try {
    ps = threefold_projectors(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::degenerate_pairing) throw;
    throw Error(ErrorCode::hypothesis, e.what());
  }
  const auto report = motive_report(ps, p);
  Json checks = Json::array();
  for (const auto& check : report.projector_checks) {
    c.verdict("projector." + check.id, check.holds);
    checks.push_back({{"id", check.id}, {"holds", check.holds}});
  }
  c.verdict("motive.ih_matches_filtration", report.ih_dims == report.filtration_ih,
            fmt::format("complement {} vs filtration {}", dims_text(report.ih_dims), dims_text(report.filtration_ih)));
  c.verdict("motive.self_dual", report.self_dual);
  c.report.tables["ih_dims"] = report.ih_dims;
  c.report.tables["projector_checks"] = checks;
  c.report.tables["caveats"] = report.caveats;
}

thread_local int nesting = 0;

void run_nested_check_all(Context& c) {
  const Json& dir = field(c.payload(), "directory", "payload");
  if (!dir.is_string()) schema("payload.directory", "expected a string");
  if (nesting >= 4) schema("payload.directory", "check_all scenarios nest too deeply");
  ++nesting;
  Report inner;
  try {
    inner = check_all(c.scenario.directory / dir.get<std::string>());
  } catch (...) {
    --nesting;
    throw;
  }
  --nesting;
  for (auto& v : inner.verdicts) c.report.verdicts.push_back(std::move(v));
  c.report.tables = inner.tables;
}

void dispatch(Context& c) {
  switch (c.scenario.kind) {
    case Kind::grauert: return run_grauert(c);
    case Kind::zariski: return run_zariski(c);
    case Kind::fibration: return run_fibration(c);
    case Kind::ic_stalk: return run_ic_stalk(c);
    case Kind::gysin: return run_gysin(c);
    case Kind::germ_decompose: return run_germ_decompose(c);
    case Kind::germ_truncate: return run_germ_truncate(c);
    case Kind::koszul: return run_koszul(c);
    case Kind::hl_check: return run_hl_check(c);
    case Kind::perverse_filtration: return run_perverse_filtration(c);
    case Kind::limit_primitives: return run_limit_primitives(c);
    case Kind::etal_decomposition: return run_etal(c);
    case Kind::motive: return run_motive(c);
    case Kind::check_all: return run_nested_check_all(c);
  }
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::invalid_map, "sha256: digest failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

}  // namespace

std::string_view to_string(Kind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  for (const auto& [k, n] : kKinds)
    if (n == normalized) return k;
  return std::nullopt;
}

RationalMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (j.is_object()) {
    const Index rows = count_from_json(field(j, "rows", where), join(where, "rows"));
    const Index cols = count_from_json(field(j, "cols", where), join(where, "cols"));
    RationalMatrix m = zeros<Rational>(rows, cols);
    if (const Json* e = optional_field(j, "entries", where)) {
      if (!e->is_array() || e->size() != static_cast<std::size_t>(rows * cols))
        schema(join(where, "entries"), "expected rows * cols entries in row-major order");
      for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < cols; ++k) {
          const auto at = static_cast<std::size_t>(i * cols + k);
          m(i, k) = rational_from_json((*e)[at], fmt::format("{}.entries[{}]", where, at));
        }
    }
    return m;
  }
  if (!j.is_array()) schema(where, "expected a matrix (array of rows or {rows, cols, entries})");
  const Index rows = static_cast<Index>(j.size());
  Index cols = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) schema(fmt::format("{}[{}]", where, i), "expected a row array");
    if (i == 0) cols = static_cast<Index>(j[i].size());
    else if (static_cast<Index>(j[i].size()) != cols) schema(fmt::format("{}[{}]", where, i), "rows differ in length");
  }
  RationalMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k)
      m(i, k) = rational_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                                   fmt::format("{}[{}][{}]", where, i, k));
  return m;
}

Json to_json(const RationalMatrix& m) {
  if (m.size() == 0) return {{"rows", m.rows()}, {"cols", m.cols()}};
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(perverse::to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

GradedPackage graded_package_from_json(const Json& j, const std::string& where) {
  GradedPackage g;
  g.n = int_field(j, "n", where);
  g.dims = counts_from_json(field(j, "dims", where), join(where, "dims"));
  g.eta = matrices_from_json(field(j, "eta", where), join(where, "eta"));
  g.L = matrices_from_json(field(j, "L", where), join(where, "L"));
  g.pairing = matrices_from_json(field(j, "pairing", where), join(where, "pairing"));
  for (std::size_t k = 0; k < g.eta.size(); ++k) g.eta[k] = fit(g.eta[k], g.dim(static_cast<int>(k) + 2), g.dim(static_cast<int>(k)));
  for (std::size_t k = 0; k < g.L.size(); ++k) g.L[k] = fit(g.L[k], g.dim(static_cast<int>(k) + 2), g.dim(static_cast<int>(k)));
  for (std::size_t k = 0; k < g.pairing.size(); ++k)
    g.pairing[k] = fit(g.pairing[k], g.dim(static_cast<int>(k)), g.dim(2 * g.n - static_cast<int>(k)));
  try {
    package_violations(g);
  } catch (const Error& e) {
    schema(where, e.what());
  }
  return g;
}

ResolutionPackage3 resolution3_from_json(const Json& j, const std::string& where) {
  ResolutionPackage3 p;
  p.g = graded_package_from_json(field(j, "package", where), join(where, "package"));
  p.eta_cap = matrix_from_json(field(j, "eta_cap", where), join(where, "eta_cap"));
  p.h3_pairing = matrix_from_json(field(j, "h3_pairing", where), join(where, "h3_pairing"));
  const Index h4 = p.eta_cap.rows();
  const Index h3 = p.h3_pairing.rows();
  p.c4 = fit(matrix_from_json(field(j, "c4", where), join(where, "c4")), p.g.dim(2), h4);
  p.r4 = fit(matrix_from_json(field(j, "r4", where), join(where, "r4")), h4, p.g.dim(4));
  p.c3 = fit(matrix_from_json(field(j, "c3", where), join(where, "c3")), p.g.dim(3), h3);
  try {
    package_violations(p);
  } catch (const Error& e) {
    schema(where, e.what());
  }
  return p;
}

ResolutionPackage4 resolution4_from_json(const Json& j, const std::string& where) {
  ResolutionPackage4 p;
  p.g = graded_package_from_json(field(j, "package", where), join(where, "package"));
  p.eta2_cap = matrix_from_json(field(j, "eta2_cap", where), join(where, "eta2_cap"));
  const Index h6 = p.eta2_cap.rows();
  p.c6 = fit(matrix_from_json(field(j, "c6", where), join(where, "c6")), p.g.dim(2), h6);
  auto optional_matrix = [&](const char* key) {
    const Json* m = optional_field(j, key, where);
    return m ? matrix_from_json(*m, join(where, key)) : RationalMatrix(0, 0);
  };
  p.c5 = fit(optional_matrix("c5"), p.g.dim(3), 0);
  p.r5 = optional_matrix("r5");
  p.r6 = optional_matrix("r6");
  try {
    package_violations(p);
  } catch (const Error& e) {
    schema(where, e.what());
  }
  return p;
}

BigradedPackage bigraded_package_from_json(const Json& j, const std::string& where) {
  BigradedPackage b;
  b.n = int_field(j, "n", where);
  const Json& spaces = field(j, "spaces", where);
  if (!spaces.is_array()) schema(join(where, "spaces"), "expected an array");
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const std::string at = fmt::format("{}.spaces[{}]", where, i);
    b.dims[{int_field(spaces[i], "l", at), int_field(spaces[i], "a", at)}] = count_from_json(field(spaces[i], "dim", at), join(at, "dim"));
  }
  auto maps = [&](const char* key, std::map<Bidegree, RationalMatrix>& into) {
    const Json* list = optional_field(j, key, where);
    if (!list) return;
    if (!list->is_array()) schema(join(where, key), "expected an array");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string at = fmt::format("{}.{}[{}]", where, key, i);
      const Json& entry = (*list)[i];
      into[{int_field(entry, "l", at), int_field(entry, "a", at)}] = matrix_from_json(field(entry, "matrix", at), join(at, "matrix"));
    }
  };
  maps("eta", b.eta);
  maps("L", b.L);
  maps("pairing", b.pairing);
  try {
    validate(b);
  } catch (const Error& e) {
    schema(where, e.what());
  }
  return b;
}

Scenario parse_scenario(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::parse, fmt::format("line {}, column {}: malformed JSON", line, column));
  }
  Scenario s;
  const Json& kind = field(j, "kind", "scenario");
  if (!kind.is_string()) schema("scenario.kind", "expected a string");
  const auto k = kind_from_string(kind.get<std::string>());
  if (!k) schema("scenario.kind", fmt::format("unknown kind \"{}\"", kind.get<std::string>()));
  s.kind = *k;
  const Json& meta = field(j, "meta", "scenario");
  const Json& name = field(meta, "name", "scenario.meta");
  if (!name.is_string()) schema("scenario.meta.name", "expected a string");
  s.name = name.get<std::string>();
  if (const Json* d = optional_field(meta, "description", "scenario.meta")) {
    if (!d->is_string()) schema("scenario.meta.description", "expected a string");
    s.description = d->get<std::string>();
  }
  if (const Json* e = optional_field(meta, "expect", "scenario.meta")) {
    if (!e->is_string() || (*e != "pass" && *e != "fail")) schema("scenario.meta.expect", "expected \"pass\" or \"fail\"");
    s.expect = e->get<std::string>();
  }
  s.payload = field(j, "payload", "scenario");
  if (!s.payload.is_object()) schema("scenario.payload", "expected an object");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot read {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  Scenario s = parse_scenario(text.str());
  s.directory = path.parent_path();
  return s;
}

Status Report::status() const {
  bool hypothesis = false;
  for (const auto& v : verdicts) {
    if (v.status == Status::fail) return Status::fail;
    hypothesis = hypothesis || v.status == Status::hypothesis_not_met;
  }
  return hypothesis ? Status::hypothesis_not_met : Status::pass;
}

namespace {

Json canonical_json(const Report& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"check_id", v.check_id}, {"status", std::string(to_string(v.status))}, {"details", v.details}});
  return {{"artifact", "perverse-kit"},
          {"version", PERVERSE_KIT_VERSION},
          {"scenario", r.scenario},
          {"kind", r.kind},
          {"status", std::string(to_string(r.status()))},
          {"verdicts", verdicts},
          {"tables", r.tables}};
}

}  // namespace

std::string Report::canonical() const { return canonical_json(*this).dump(); }

std::string Report::hash() const { return sha256_hex(canonical()); }

Json Report::to_json() const {
  Json j = canonical_json(*this);
  j["hash"] = hash();
  j["timing_ms"] = timing_ms;
  return j;
}

int exit_code(const Report& r, bool expect_fail) {
  switch (r.status()) {
    case Status::pass: return expect_fail ? 2 : 0;
    case Status::fail: return expect_fail ? 0 : 2;
    case Status::hypothesis_not_met: return 3;
  }
  return 2;
}

Report run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.scenario = s.name;
  r.kind = std::string(to_string(s.kind));
  Context c{s, r};
  try {
    dispatch(c);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::hypothesis) {
      r.verdicts.push_back({r.kind, Status::hypothesis_not_met, e.what()});
    } else if (e.code() == ErrorCode::parse || e.code() == ErrorCode::schema) {
      throw;
    } else {
      throw Error(ErrorCode::schema, fmt::format("payload rejected ({}): {}", to_string(e.code()), e.what()));
    }
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report check_all(const std::filesystem::path& directory, int threads) {
  const auto start = std::chrono::steady_clock::now();
  if (!std::filesystem::is_directory(directory))
    throw Error(ErrorCode::parse, fmt::format("{} is not a directory", directory.string()));
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  std::vector<Verdict> results(files.size());
  std::vector<std::string> hashes(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string name = files[i].filename().string();
      try {
        const Scenario s = load_scenario(files[i]);
        const Report r = run_scenario(s);
        const Status natural = r.status();
        Status status = natural;
        if (s.expect == "fail") status = natural == Status::fail ? Status::pass : Status::fail;
        hashes[i] = r.hash();
        results[i] = {name, status, fmt::format("{} {}{}", r.kind, to_string(natural), s.expect == "fail" ? " (expected fail)" : "")};
      } catch (const Error& e) {
        results[i] = {name, Status::fail, fmt::format("{} error: {}", to_string(e.code()), e.what())};
      } catch (const std::exception& e) {
        results[i] = {name, Status::fail, fmt::format("error: {}", e.what())};
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), std::max<std::size_t>(1, files.size()));
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  Report out;
  out.scenario = "check_all";
  out.kind = "check_all";
  out.verdicts = std::move(results);
  Json table = Json::array();
  for (std::size_t i = 0; i < files.size(); ++i)
    table.push_back({{"file", files[i].filename().string()}, {"hash", hashes[i]}});
  out.tables["files"] = table;
  out.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string render(const Report& r) {
  std::string out = fmt::format("{} [{}]\n", r.scenario, r.kind);
  std::size_t width = 0;
  for (const auto& v : r.verdicts) width = std::max(width, v.check_id.size());
  for (const auto& v : r.verdicts) {
    out += fmt::format("  {:<18} {:<{}}", to_string(v.status), v.check_id, width);
    if (!v.details.empty()) out += "  " + v.details;
    out += "\n";
  }
  for (const auto& [name, table] : r.tables.items()) out += fmt::format("  {}: {}\n", name, table.dump());
  out += fmt::format("status {}  hash {}  ({:.1f} ms)\n", to_string(r.status()), r.hash(), r.timing_ms);
  return out;
}

}  // namespace perverse::cli
