#include <CLI11.hpp>
#include <iostream>
#include <numeric>

#include "mackey/box.hpp"
#include "mackey/cyclic_derived.hpp"
#include "mackey/json_io.hpp"

using namespace mackey;
using io::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- output ----------------------------------------------------------------

void render_table(const json& j, std::ostream& os, const std::string& indent = "") {
  auto scalar_line = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const json& v) {
    for (auto& x : v)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      if (v.is_primitive() || (v.is_array() && flat(v))) {
        os << indent << k << ": " << (v.is_primitive() ? scalar_line(v) : v.dump()) << "\n";
      } else {
        os << indent << k << ":\n";
        render_table(v, os, indent + "  ");
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& v = j[i];
      if (v.is_primitive() || (v.is_array() && flat(v))) {
        os << indent << "- " << (v.is_primitive() ? scalar_line(v) : v.dump()) << "\n";
      } else {
        os << indent << "- [" << i << "]\n";
        render_table(v, os, indent + "  ");
      }
    }
  } else {
    os << indent << scalar_line(j) << "\n";
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "table")
    render_table(j, std::cout);
  else
    std::cout << j.dump(2) << "\n";
}

json integers(const std::vector<Integer>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(io::to_json(Scalar(x)));
  return a;
}

json scalars(const std::vector<Scalar>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(io::to_json(x));
  return a;
}

json strings(const std::vector<std::string>& v) { return json(v); }

// ---- argument helpers ---------------------------------------------------------

Group load_group(const std::string& arg) {
  if (arg.empty()) throw UsageError("--group is required");
  return io::group_from_json(io::load(arg), "");
}

Subgroup load_subgroup(const Group& G, const std::string& arg, const char* what) {
  if (arg.empty()) throw UsageError(std::string("--") + what + " is required");
  return io::subgroup_from_json(G, io::load(arg), "");
}

MackeyFunctor load_mackey(const std::string& arg, const Group* quotient = nullptr) {
  if (arg.empty()) throw UsageError("--mackey is required");
  json j = io::load(arg);
  if (quotient && j.is_object() && j.value("group", json()) == "quotient") {
    j["group"] = json{{"table", quotient->table()}};
  }
  return io::mackey_from_json(j, "");
}

BurnsideElement burnside_arg(const Group& G, const std::string& arg, const char* what) {
  if (arg.empty()) throw UsageError(std::string("--") + what + " is required");
  json j = io::load(arg);
  const int nc = G.lattice().class_count();
  if (j.is_number_integer()) {
    int c = j.get<int>();
    if (c < 0 || c >= nc) throw io::SchemaError("", "class index out of range");
    return burnside_basis(G, c);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != nc)
    throw io::SchemaError("", "expected " + std::to_string(nc) + " coordinates, one per conjugacy class");
  BurnsideElement a = burnside_zero(G);
  for (int c = 0; c < nc; ++c) {
    Scalar x = io::scalar_from_json(j[c], "/" + std::to_string(c));
    if (x.get_den() != 1) throw io::SchemaError("/" + std::to_string(c), "Burnside coordinates are integers");
    a.coords[c] = x.get_num();
  }
  return a;
}

json subgroup_list(const Group& G) {
  const auto& L = G.lattice();
  json subs = json::array();
  for (int h = 0; h < L.size(); ++h)
    subs.push_back(json{{"index", h},
                        {"elements", L.subgroup(h)},
                        {"order", L.order_of(h)},
                        {"class", L.class_of(h)},
                        {"normal", G.is_normal(L.subgroup(h))},
                        {"normalizer", L.subgroup(L.normalizer(h))}});
  return subs;
}

json class_list(const Group& G) {
  const auto& L = G.lattice();
  json cl = json::array();
  for (int c = 0; c < L.class_count(); ++c) cl.push_back(L.subgroup(L.class_rep(c)));
  return cl;
}

json values_summary(const MackeyFunctor& M) {
  json v = json::array();
  for (int h = 0; h < M.subgroup_count(); ++h)
    v.push_back(json{{"subgroup", M.lattice().subgroup(h)}, {"value", M.value(h).describe()}});
  return v;
}

std::pair<int, int> parse_window(const std::string& w) {
  auto colon = w.find(':', 1);
  if (colon == std::string::npos) throw UsageError("--window expects lo:hi");
  try {
    int lo = std::stoi(w.substr(0, colon)), hi = std::stoi(w.substr(colon + 1));
    if (lo > hi) throw UsageError("--window: lo exceeds hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--window expects integers lo:hi");
  }
}

TruncatedCompletedBurnside zhat_arg(const std::string& arg, int nmax, const Ring& R, const char* what) {
  if (arg.empty()) throw UsageError(std::string("--") + what + " is required");
  json j = io::load(arg);
  if (j.is_number_integer()) return TruncatedCompletedBurnside::basis(j.get<int>(), nmax, R);
  TruncatedCompletedBurnside a(nmax, R);
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      int n = 0;
      try {
        n = std::stoi(k);
      } catch (const std::logic_error&) {
        throw io::SchemaError("/" + k, "keys are orbit sizes");
      }
      a.set(n, io::scalar_from_json(v, "/" + k));
    }
    return a;
  }
  if (!j.is_array() || static_cast<int>(j.size()) > nmax)
    throw io::SchemaError("", "expected at most nmax coordinates or an object {n: coefficient}");
  for (std::size_t i = 0; i < j.size(); ++i) a.set(static_cast<int>(i) + 1, io::scalar_from_json(j[i], "/" + std::to_string(i)));
  return a;
}

// ---- selftest -------------------------------------------------------------------

json selftest() {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string err;
    try {
      ok = body();
    } catch (const std::exception& e) {
      err = e.what();
    }
    all = all && ok;
    json c{{"check", name}, {"ok", ok}};
    if (!err.empty()) c["error"] = err;
    checks.push_back(c);
  };
  const std::vector<std::pair<std::string, Group>> groups = {
      {"cyclic:2", Group::cyclic(2)}, {"cyclic:4", Group::cyclic(4)}, {"cyclic:6", Group::cyclic(6)},
      {"klein4", Group::klein_four()}, {"s3", Group::symmetric3()}, {"dihedral:8", Group::dihedral(8)}};
  for (auto& [name, G] : groups) {
    record("burnside products agree (" + name + ")", [&, G = G] {
      const int nc = G.lattice().class_count();
      for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b)
          if (multiply_geometric(burnside_basis(G, a), burnside_basis(G, b)) !=
              multiply_marks(burnside_basis(G, a), burnside_basis(G, b)))
            return false;
      return true;
    });
    record("burnside functor axioms (" + name + ")", [&, G = G] { return check_axioms(burnside_mackey(G, Ring::integers())).ok(); });
    record("fixed-point functor axioms (" + name + ")", [&, G = G] {
      return check_axioms(fixed_point_mackey(G, Ring::integers(), permutation_representation(orbit(G, {0})))).ok();
    });
  }
  record("phi of burnside is burnside of the quotient (cyclic:4)", [] {
    Group G = Group::cyclic(4);
    for (const Subgroup& N : {Subgroup{0, 2}, Subgroup{0, 1, 2, 3}})
      if (!burnside_phi_comparison(G, Ring::integers(), N).is_isomorphism()) return false;
    return true;
  });
  record("inflation adjunction (s3, order-3 subgroup)", [] {
    Group G = Group::symmetric3();
    Subgroup N = G.lattice().subgroup(G.lattice().whole());
    for (int h = 0; h < G.lattice().size(); ++h)
      if (G.lattice().order_of(h) == 3) N = G.lattice().subgroup(h);
    return adjunction_checks(burnside_mackey(G, Ring::integers()), N).ok();
  });
  record("box unit (cyclic:2)", [] {
    MackeyFunctor A = burnside_mackey(Group::cyclic(2), Ring::integers());
    return box_unit_map(A).is_isomorphism();
  });
  record("adapted candidate (cyclic:2, degree 4)", [] {
    Group G = Group::cyclic(2);
    return is_adapted(build_adapted_candidate(G, {0, 1}, 4), {0, 1}).ok();
  });
  record("tate of the trivial module (p = 2)", [] {
    auto t = tate_homology(sigma_trivial(2, Ring::integers()), -3, 3);
    for (auto& [n, h] : t.homology)
      if (h.invariants() != (n % 2 == 0 ? std::vector<Scalar>{2} : std::vector<Scalar>{})) return false;
    return true;
  });
  record("pair round trip (p = 3)", [] {
    MackeyFunctor A = burnside_mackey(Group::cyclic(3), Ring::integers());
    CyclicPair P = pair_from_mackey(A);
    return pair_from_mackey(mackey_from_pair(P)) == P;
  });
  record("witt ghost agreement (nmax 10)", [] { return witt_compare(10).ok(); });
  record("p-typical idempotents (p = 2, nmax 10)", [] { return check_idempotents(p_typical_idempotents(2, 10)).ok(); });
  record("burnside normal system (divisors of 6)", [] {
    return validate_normal_system(burnside_normal_system(Ring::integers(), divisors(6))).ok();
  });
  return json{{"ok", all}, {"checks", checks}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mackey-kit: exact computations with Mackey functors"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string format = "json";
  bool schema = false;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--schema", schema, "print the JSON input schemas");

  std::string group_arg, mackey_arg, normal_arg, subgroup_arg, a_arg, b_arg, gset_arg, in_arg, model, window = "-4:4",
                                                                                                     coeff = "trivial",
                                                                                                     resolution = "periodic";
  int dmax = 2, degree = 6, nmax = 12, p = 2, m = 1, length = 6;

  // group
  auto* grp = app.add_subcommand("group", "subgroup lattice and table of marks");
  grp->add_option("--group", group_arg, "group file, inline JSON or name")->required();

  // burnside
  auto* bur = app.add_subcommand("burnside", "Burnside ring computations");
  bur->require_subcommand(1);
  auto* bur_table = bur->add_subcommand("table", "table of marks");
  auto* bur_mul = bur->add_subcommand("multiply", "product of two elements, by both algorithms");
  auto* bur_marks = bur->add_subcommand("marks", "marks homomorphism of an element");
  auto* bur_der = bur->add_subcommand("derived", "H_i(W_H, Z) for each subgroup class");
  for (auto* s : {bur_table, bur_mul, bur_marks, bur_der}) s->add_option("--group", group_arg)->required();
  bur_mul->add_option("--a", a_arg, "coordinates per class, or a class index")->required();
  bur_mul->add_option("--b", b_arg)->required();
  bur_marks->add_option("--a", a_arg)->required();
  bur_der->add_option("--dmax", dmax)->check(CLI::Range(0, 6));

  // mackey
  auto* mac = app.add_subcommand("mackey", "Mackey functor operations");
  mac->require_subcommand(1);
  auto* mac_check = mac->add_subcommand("check", "verify the axioms");
  auto* mac_eval = mac->add_subcommand("eval", "value on a finite G-set");
  auto* mac_box = mac->add_subcommand("box", "box product");
  auto* mac_show = mac->add_subcommand("show", "serialize with all structure maps");
  for (auto* s : {mac_check, mac_eval, mac_show}) s->add_option("--in", mackey_arg, "Mackey functor")->required();
  mac_eval->add_option("--gset", gset_arg, "G-set")->required();
  mac_box->add_option("--a", a_arg)->required();
  mac_box->add_option("--b", b_arg)->required();

  // fixed points
  auto* phi = app.add_subcommand("phi", "geometric fixed points for a normal subgroup");
  auto* psi = app.add_subcommand("psi", "categorical fixed points (restriction to a subgroup)");
  auto* infl = app.add_subcommand("infl", "inflation from a quotient");
  for (auto* s : {phi, psi, infl}) {
    s->add_option("--mackey", mackey_arg)->required();
    s->add_option("--group", group_arg);
  }
  phi->add_option("--normal", normal_arg)->required();
  psi->add_option("--subgroup", subgroup_arg)->required();
  infl->add_option("--normal", normal_arg)->required();

  // simplicial
  auto* simp = app.add_subcommand("simp", "pointed simplicial G-sets");
  simp->require_subcommand(1);
  auto* simp_adapted = simp->add_subcommand("adapted", "check adaptedness to a normal subgroup");
  auto* simp_sphere = simp->add_subcommand("sphere", "homological sphere predicate");
  auto* simp_mh = simp->add_subcommand("mhomology", "homology with Mackey coefficients");
  for (auto* s : {simp_adapted, simp_sphere, simp_mh}) {
    s->add_option("--in", in_arg, "simplicial set file");
    s->add_option("--model", model, "adapted | one_plus | sign_circle | trivial_circle");
    s->add_option("--group", group_arg);
    s->add_option("--normal", normal_arg, "normal subgroup (adapted model and adaptedness)");
    s->add_option("--kernel", subgroup_arg, "index-2 subgroup for sign_circle");
    s->add_option("--degree", degree, "truncation degree")->check(CLI::Range(1, 12));
  }
  simp_mh->add_option("--mackey", mackey_arg)->required();
  simp_mh->add_option("--gset", gset_arg, "smash with S_+ first");
  simp_mh->add_option("--nmax", nmax, "top homological degree")->check(CLI::Range(0, 10));

  // tate
  auto* tate = app.add_subcommand("tate", "Tate homology of Z/p");
  tate->add_option("--p", p)->required();
  tate->add_option("--coeff", coeff)->check(CLI::IsMember({"trivial", "regular", "rational", "mod"}));
  tate->add_option("--window", window, "lo:hi");
  tate->add_option("--resolution", resolution)->check(CLI::IsMember({"periodic", "padded"}));
  tate->add_option("--length", length, "padded resolution length (default: long enough)");

  // zhat
  auto* zh = app.add_subcommand("zhat", "truncated completed Burnside ring of Z");
  zh->require_subcommand(1);
  auto* zh_mul = zh->add_subcommand("multiply", "product");
  auto* zh_marks = zh->add_subcommand("marks", "marks homomorphism");
  auto* zh_witt = zh->add_subcommand("witt", "Witt vector comparison");
  auto* zh_idem = zh->add_subcommand("idempotents", "p-typical idempotents");
  for (auto* s : {zh_mul, zh_marks, zh_witt, zh_idem}) {
    s->add_option("--nmax", nmax)->check(CLI::Range(1, 60));
    s->add_option("--p", p);
  }
  zh_mul->add_option("--a", a_arg, "coordinates, {n: c} or an orbit size")->required();
  zh_mul->add_option("--b", b_arg)->required();
  zh_marks->add_option("--a", a_arg)->required();

  // nsys
  auto* ns = app.add_subcommand("nsys", "normal systems over quotients of Z");
  ns->require_subcommand(1);
  auto* ns_val = ns->add_subcommand("validate", "isomorphisms and cocycle condition");
  auto* ns_lim = ns->add_subcommand("limit", "inflation limit at an orbit");
  auto* ns_dec = ns->add_subcommand("decompose", "p-typical decomposition of the limit");
  for (auto* s : {ns_val, ns_lim, ns_dec}) s->add_option("--in", in_arg, "normal system")->required();
  for (auto* s : {ns_lim, ns_dec}) s->add_option("--m", m, "orbit size");
  ns_dec->add_option("--p", p)->required();

  auto* self = app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (schema) {
      std::cout << json::parse(io::schemas()).dump(2) << "\n";
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }
    json out;
    if (grp->parsed()) {
      Group G = load_group(group_arg);
      out = json{{"order", G.order()},        {"abelian", G.is_abelian()}, {"subgroups", subgroup_list(G)},
                 {"classes", class_list(G)}, {"table_of_marks", io::to_json(table_of_marks(G))}};
    } else if (bur->parsed()) {
      Group G = load_group(group_arg);
      if (bur_table->parsed()) {
        out = json{{"classes", class_list(G)}, {"marks", io::to_json(table_of_marks(G))}};
      } else if (bur_mul->parsed()) {
        auto a = burnside_arg(G, a_arg, "a"), b = burnside_arg(G, b_arg, "b");
        auto x = multiply_geometric(a, b), y = multiply_marks(a, b);
        out = json{{"classes", class_list(G)}, {"product", integers(x.coords)}, {"algorithms_agree", x == y}};
      } else if (bur_marks->parsed()) {
        auto a = burnside_arg(G, a_arg, "a");
        out = json{{"classes", class_list(G)}, {"marks", integers(marks_hom(a))}};
      } else {
        auto d = derived_burnside_ranks(G, dmax);
        json rows = json::array();
        std::size_t rank0 = 0;
        for (std::size_t c = 0; c < d.size(); ++c) {
          json h = json::array();
          for (auto& x : d[c]) h.push_back(x.describe());
          rank0 += d[c][0].free_rank();
          rows.push_back(json{{"class", G.lattice().subgroup(G.lattice().class_rep(static_cast<int>(c)))}, {"homology", h}});
        }
        out = json{{"degree0_rank", rank0}, {"by_class", rows}};
      }
    } else if (mac->parsed()) {
      if (mac_check->parsed()) {
        MackeyFunctor M = load_mackey(mackey_arg);
        auto rep = check_axioms(M);
        out = json{{"ok", rep.ok()}, {"values", values_summary(M)}, {"violations", strings(rep.violations)}};
      } else if (mac_eval->parsed()) {
        MackeyFunctor M = load_mackey(mackey_arg);
        GSet S = io::gset_from_json(M.group(), io::load(gset_arg), "");
        out = io::to_json(evaluate(M, S));
      } else if (mac_show->parsed()) {
        out = io::to_json(load_mackey(mackey_arg));
      } else {
        MackeyFunctor A = load_mackey(a_arg), B = load_mackey(b_arg);
        MackeyFunctor P = box_product(A, B);
        out = io::to_json(P);
        out["summary"] = values_summary(P);
      }
    } else if (phi->parsed()) {
      MackeyFunctor M = load_mackey(mackey_arg);
      Subgroup N = load_subgroup(M.group(), normal_arg, "normal");
      auto gf = geometric_fixed_points_full(M, N);
      auto adj = adjunction_checks(M, N);
      out = io::to_json(gf.functor);
      out["summary"] = values_summary(gf.functor);
      out["quotient_elements"] = gf.ql.q.proj;
      out["adjunction"] = json{{"unit_is_morphism", adj.unit_is_morphism},
                               {"unit_surjective", adj.unit_surjective},
                               {"counit_is_morphism", adj.counit_is_morphism},
                               {"counit_iso", adj.counit_iso},
                               {"notes", strings(adj.notes)}};
    } else if (psi->parsed()) {
      MackeyFunctor M = load_mackey(mackey_arg);
      Subgroup H = load_subgroup(M.group(), subgroup_arg, "subgroup");
      MackeyFunctor P = categorical_fixed_points(M, H);
      out = io::to_json(P);
      out["summary"] = values_summary(P);
    } else if (infl->parsed()) {
      Group G = load_group(group_arg);
      Subgroup N = load_subgroup(G, normal_arg, "normal");
      if (!G.is_normal(N)) throw DomainError("infl: subgroup is not normal");
      Group Q = quotient_group(G, N).group;
      MackeyFunctor Mq = load_mackey(mackey_arg, &Q);
      MackeyFunctor I = inflation(Mq, G, N);
      MackeyFunctor back = geometric_fixed_points(I, N);
      out = io::to_json(I);
      out["summary"] = values_summary(I);
      out["axioms_ok"] = check_axioms(I).ok();
      out["phi_of_inflation"] = values_summary(back);
    } else if (simp->parsed()) {
      PointedSimplicialGSet X;
      Group G;
      if (!in_arg.empty()) {
        X = io::simplicial_from_json(io::load(in_arg));
        G = X.group();
      } else {
        G = load_group(group_arg);
        if (model.empty() || model == "adapted") {
          X = build_adapted_candidate(G, load_subgroup(G, normal_arg, "normal"), degree);
        } else if (model == "one_plus") {
          X = one_plus(G, degree);
        } else if (model == "trivial_circle") {
          X = trivial_circle(G, degree);
        } else if (model == "sign_circle") {
          Subgroup K = load_subgroup(G, subgroup_arg, "kernel");
          if (2 * static_cast<int>(K.size()) != G.order()) throw DomainError("sign_circle: kernel must have index 2");
          X = sign_circle(G, [K](int g) { return contains(K, g) ? 1 : -1; }, degree);
        } else {
          throw UsageError("--model must be adapted, one_plus, sign_circle or trivial_circle");
        }
      }
      if (simp_adapted->parsed()) {
        Subgroup N = load_subgroup(G, normal_arg, "normal");
        auto r = is_adapted(X, N);
        out = json{{"ok", r.ok()},
                   {"fixed_clause", r.fixed_clause},
                   {"acyclic_clause", r.acyclic_clause},
                   {"verified_through", r.verified_through},
                   {"failures", strings(r.failures)}};
      } else if (simp_sphere->parsed()) {
        auto r = is_homological_sphere(X);
        json e = json::array();
        for (auto& x : r.entries)
          e.push_back(json{{"subgroup", x.subgroup}, {"dimension", x.dimension}, {"detail", x.detail}});
        out = json{{"ok", r.ok()}, {"verified_through", r.verified_through}, {"entries", e}};
      } else {
        MackeyFunctor M = load_mackey(mackey_arg);
        if (!M.group().same_as(G)) throw DomainError("mhomology: functor and simplicial set have different groups");
        if (!gset_arg.empty()) X = smash(X, io::gset_from_json(G, io::load(gset_arg), ""));
        int top = std::min(nmax, X.degree() - 2);
        if (top < 0) throw DomainError("mhomology: truncation degree too small");
        auto h = mackey_homology(X, M, top);
        json a = json::array();
        for (std::size_t d = 0; d < h.size(); ++d) a.push_back(json{{"degree", d}, {"homology", h[d].describe()}});
        out = json{{"homology", a}};
      }
    } else if (tate->parsed()) {
      mackey::detail::check_prime(p);
      auto [lo, hi] = parse_window(window);
      SigmaComplex E = coeff == "trivial"    ? sigma_trivial(p, Ring::integers())
                       : coeff == "regular"  ? sigma_regular(p, Ring::integers())
                       : coeff == "rational" ? sigma_trivial(p, Ring::rationals())
                                             : sigma_trivial(p, Ring::integers_mod(p));
      TateResult t;
      if (resolution == "padded") {
        int need = std::max(hi - E.complex.lo(), E.complex.hi() - lo) + 4;
        t = tate_homology(E, lo, hi, padded_resolution(p, std::max(length, need), E.complex.ring()));
      } else {
        t = tate_homology(E, lo, hi);
      }
      json rows = json::array();
      for (auto& [n, h] : t.homology)
        rows.push_back(json{{"degree", n}, {"invariants", scalars(h.invariants())}, {"homology", h.describe()}});
      out = json{{"p", p}, {"coeff", coeff}, {"resolution", resolution}, {"resolution_length", t.resolution_length},
                 {"table", rows}};
    } else if (zh->parsed()) {
      Ring R = Ring::integers();
      if (zh_mul->parsed() || zh_marks->parsed()) {
        if (zh_mul->parsed()) {
          auto a = zhat_arg(a_arg, nmax, R, "a"), b = zhat_arg(b_arg, nmax, R, "b");
          auto c = a * b;
          out = json{{"nmax", nmax}, {"product", scalars(c.coords())}, {"text", c.str()}};
        } else {
          auto a = zhat_arg(a_arg, nmax, R, "a");
          out = json{{"nmax", nmax}, {"marks", scalars(marks_hom(a))}};
        }
      } else if (zh_witt->parsed()) {
        auto r = witt_compare(nmax);
        json ws = json::array();
        for (int n = 1; n <= nmax; ++n) ws.push_back(json{{"n", n}, {"ghost", integers(witt_ghost(verschiebung_one(n, nmax)))}});
        out = json{{"ok", r.ok()}, {"pairs_checked", r.pairs_checked}, {"failures", strings(r.failures)}, {"basis", ws}};
      } else {
        mackey::detail::check_prime(p);
        auto es = p_typical_idempotents(p, nmax);
        auto r = check_idempotents(es);
        json list = json::array();
        for (auto& e : es) list.push_back(json{{"n", e.n}, {"coords", scalars(e.value.coords())}});
        out = json{{"ok", r.ok()}, {"p", p}, {"nmax", nmax}, {"idempotents", list}, {"failures", strings(r.failures)}};
      }
    } else if (ns->parsed()) {
      TruncatedNormalSystem S = io::normal_system_from_json(io::load(in_arg));
      if (ns_val->parsed()) {
        auto r = validate_normal_system(S);
        out = json{{"ok", r.ok()}, {"index", S.index}, {"failures", strings(r.failures)}};
        if (!r.ok()) out["witness"] = json::array({r.witness.first, r.witness.second});
      } else if (ns_lim->parsed()) {
        auto lim = inflation_limit(S, m);
        out = json{{"m", m}, {"components", lim.components}, {"limit", io::to_json(lim.module)}};
      } else {
        auto dec = p_typical_decompose(S, p, m);
        json parts = json::array();
        for (auto& s : dec.summands) parts.push_back(json{{"n", s.n}, {"image", s.image.describe()}});
        out = json{{"ok", dec.ok()}, {"whole", dec.whole.describe()}, {"summands", parts}, {"failures", strings(dec.failures)}};
      }
    } else if (self->parsed()) {
      out = selftest();
      emit(out, format);
      return out["ok"].get<bool>() ? 0 : 1;
    }
    emit(out, format);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const io::SchemaError& e) {
    std::cout << json{{"error", "schema"}, {"path", e.path().empty() ? "/" : e.path()}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cout << json{{"error", "domain"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", "internal"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }
}
