#pragma once

// JSON formats for the command-line tool. Requires nlohmann/json.hpp on the
// include path; the rest of the library does not depend on it.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mackey/fixedpoints.hpp"
#include "mackey/profunctor.hpp"
#include "mackey/simplicial.hpp"

namespace mackey::io {

using json = nlohmann::ordered_json;

/// Input that does not match a documented format; `path` is a JSON pointer.
class SchemaError : public DomainError {
 public:
  SchemaError(std::string path, const std::string& msg)
      : DomainError("schema: " + (path.empty() ? std::string("/") : path) + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

constexpr int kFormatVersion = 1;

namespace detail {

inline std::string child(const std::string& p, const std::string& k) { return p + "/" + k; }
inline std::string child(const std::string& p, std::size_t i) { return p + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& k, const std::string& p) {
  if (!j.is_object()) throw SchemaError(p, "expected an object");
  auto it = j.find(k);
  if (it == j.end()) throw SchemaError(child(p, k), "missing field");
  return *it;
}

inline int as_int(const json& j, const std::string& p) {
  if (!j.is_number_integer()) throw SchemaError(p, "expected an integer");
  return j.get<int>();
}

inline std::vector<int> int_list(const json& j, const std::string& p) {
  if (!j.is_array()) throw SchemaError(p, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], child(p, i)));
  return out;
}

inline std::vector<std::vector<int>> int_table(const json& j, const std::string& p) {
  if (!j.is_array()) throw SchemaError(p, "expected an array of arrays");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_list(j[i], child(p, i)));
  return out;
}

}  // namespace detail

// ---- scalars and matrices -------------------------------------------------

inline json to_json(const Scalar& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return x.get_num().get_si();
  return x.get_str();
}

inline Scalar scalar_from_json(const json& j, const std::string& p) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    Scalar x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw SchemaError(p, "not a rational number");
    if (x.get_den() == 0) throw SchemaError(p, "zero denominator");
    x.canonicalize();
    return x;
  }
  throw SchemaError(p, "expected an integer or a rational string \"a/b\"");
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

/// Row-major matrix. `cols` < 0 infers the width from the first row.
inline Matrix matrix_from_json(const json& j, std::size_t rows, long cols, const std::string& p) {
  if (!j.is_array()) throw SchemaError(p, "expected a row-major array");
  if (j.size() != rows) throw SchemaError(p, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::size_t c = cols >= 0 ? static_cast<std::size_t>(cols) : (rows ? j[0].size() : 0);
  Matrix m(rows, c);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto rp = detail::child(p, i);
    if (!j[i].is_array() || j[i].size() != c)
      throw SchemaError(rp, "expected a row of length " + std::to_string(c));
    for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar_from_json(j[i][k], detail::child(rp, k));
  }
  return m;
}

// ---- rings, groups, subgroups, G-sets ---------------------------------------

inline Ring ring_from_string(const std::string& s, const std::string& p = "") {
  try {
    if (s == "Z") return Ring::integers();
    if (s == "Q") return Ring::rationals();
    if (s.rfind("Z/", 0) == 0) return Ring::integers_mod(std::stol(s.substr(2)));
    if (s.rfind("Z_(", 0) == 0 && s.back() == ')') return Ring::p_local(std::stol(s.substr(3, s.size() - 4)));
  } catch (const std::logic_error&) {
  }
  throw SchemaError(p, "unknown ring '" + s + "' (use Z, Q, Z/m or Z_(p))");
}

inline Ring ring_from_json(const json& j, const std::string& p) {
  if (!j.is_string()) throw SchemaError(p, "expected a ring name");
  return ring_from_string(j.get<std::string>(), p);
}

/// Named groups: cyclic:n, dihedral:n (order n), klein4, s3, trivial.
inline Group group_from_name(const std::string& s, const std::string& p = "") {
  auto num = [&](std::size_t at) {
    try {
      return std::stoi(s.substr(at));
    } catch (const std::logic_error&) {
      throw SchemaError(p, "bad group name '" + s + "'");
    }
  };
  if (s == "trivial") return Group();
  if (s == "klein4") return Group::klein_four();
  if (s == "s3") return Group::symmetric3();
  if (s.rfind("cyclic:", 0) == 0) {
    int n = num(7);
    if (n < 1) throw SchemaError(p, "cyclic order must be positive");
    return Group::cyclic(n);
  }
  if (s.rfind("dihedral:", 0) == 0) return Group::dihedral(num(9));
  throw SchemaError(p, "unknown group '" + s + "' (cyclic:n, dihedral:n, klein4, s3, trivial)");
}

inline Group group_from_json(const json& j, const std::string& p) {
  if (j.is_string()) return group_from_name(j.get<std::string>(), p);
  if (!j.is_object()) throw SchemaError(p, "expected a group object or name");
  if (j.contains("table")) {
    auto t = detail::int_table(j["table"], detail::child(p, "table"));
    if (j.contains("order") && detail::as_int(j["order"], detail::child(p, "order")) != static_cast<int>(t.size()))
      throw SchemaError(detail::child(p, "order"), "order does not match the table");
    return Group(t);
  }
  if (j.contains("perm_generators"))
    return Group::from_permutations(detail::int_table(j["perm_generators"], detail::child(p, "perm_generators")));
  if (j.contains("cyclic")) return Group::cyclic(detail::as_int(j["cyclic"], detail::child(p, "cyclic")));
  if (j.contains("dihedral")) return Group::dihedral(detail::as_int(j["dihedral"], detail::child(p, "dihedral")));
  if (j.contains("product")) {
    const auto& a = j["product"];
    if (!a.is_array() || a.empty()) throw SchemaError(detail::child(p, "product"), "expected a nonempty array of groups");
    Group G = group_from_json(a[0], detail::child(detail::child(p, "product"), 0));
    for (std::size_t i = 1; i < a.size(); ++i)
      G = Group::direct_product(G, group_from_json(a[i], detail::child(detail::child(p, "product"), i)));
    return G;
  }
  throw SchemaError(p, "group needs one of table, perm_generators, cyclic, dihedral, product");
}

inline json to_json(const Group& G) {
  return json{{"version", kFormatVersion}, {"order", G.order()}, {"table", G.table()}};
}

/// A subgroup as an element list (closed under the group law) or {"elements": [...]}.
inline Subgroup subgroup_from_json(const Group& G, const json& j, const std::string& p) {
  const json& e = j.is_object() ? detail::field(j, "elements", p) : j;
  const std::string ep = j.is_object() ? detail::child(p, "elements") : p;
  std::vector<int> xs = detail::int_list(e, ep);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] < 0 || xs[i] >= G.order()) throw SchemaError(detail::child(ep, i), "element out of range");
  Subgroup H = G.generate(xs);
  if (H.size() != std::set<int>(xs.begin(), xs.end()).size()) throw SchemaError(ep, "elements do not form a subgroup");
  return H;
}

inline GSet gset_from_json(const Group& G, const json& j, const std::string& p) {
  if (j.contains("orbits")) {
    const auto& o = j["orbits"];
    if (!o.is_array()) throw SchemaError(detail::child(p, "orbits"), "expected an array of subgroups");
    GSet S = GSet::empty(G);
    for (std::size_t i = 0; i < o.size(); ++i)
      S = disjoint_union(S, orbit(G, subgroup_from_json(G, o[i], detail::child(detail::child(p, "orbits"), i))));
    return S;
  }
  int n = detail::as_int(detail::field(j, "size", p), detail::child(p, "size"));
  auto a = detail::int_table(detail::field(j, "action", p), detail::child(p, "action"));
  if (static_cast<int>(a.size()) != G.order()) throw SchemaError(detail::child(p, "action"), "need one row per group element");
  for (std::size_t g = 0; g < a.size(); ++g)
    if (static_cast<int>(a[g].size()) != n) throw SchemaError(detail::child(detail::child(p, "action"), g), "row length differs from size");
  return GSet(G, n, a);
}

// ---- modules and Mackey functors --------------------------------------------

inline json to_json(const FPModule& M) {
  json inv = json::array();
  for (auto& d : M.invariants()) inv.push_back(to_json(d));
  return json{{"gens", M.gens()}, {"relations", to_json(M.relations())}, {"invariants", inv}, {"describe", M.describe()}};
}

inline FPModule module_from_json(const Ring& R, const json& j, const std::string& p) {
  if (j.contains("invariants") && !j.contains("gens")) {
    std::vector<Scalar> ds;
    const auto& a = j["invariants"];
    if (!a.is_array()) throw SchemaError(detail::child(p, "invariants"), "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) ds.push_back(scalar_from_json(a[i], detail::child(detail::child(p, "invariants"), i)));
    return FPModule::from_invariants(R, ds);
  }
  int n = detail::as_int(detail::field(j, "gens", p), detail::child(p, "gens"));
  if (n < 0) throw SchemaError(detail::child(p, "gens"), "negative generator count");
  Matrix rel(n, 0);
  if (j.contains("relations")) rel = matrix_from_json(j["relations"], n, -1, detail::child(p, "relations"));
  return FPModule(R, n, rel);
}

inline json to_json(const MackeyFunctor& M) {
  const auto& L = M.lattice();
  const Group& G = M.group();
  json subs = json::array(), vals = json::array(), res = json::array(), tr = json::array(), cj = json::array();
  for (int h = 0; h < L.size(); ++h) {
    subs.push_back(L.subgroup(h));
    json v = to_json(M.value(h));
    v["subgroup"] = L.subgroup(h);
    vals.push_back(v);
  }
  for (int h = 0; h < L.size(); ++h)
    for (int k = 0; k < L.size(); ++k) {
      if (h == k || !L.contains(h, k)) continue;
      res.push_back(json{{"from", L.subgroup(h)}, {"to", L.subgroup(k)}, {"matrix", to_json(M.res(h, k).matrix())}});
      tr.push_back(json{{"from", L.subgroup(k)}, {"to", L.subgroup(h)}, {"matrix", to_json(M.tr(h, k).matrix())}});
    }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < L.size(); ++h) {
      const Matrix& m = M.conj(g, h).matrix();
      if (L.conj(g, h) == h && m == Matrix::identity(M.value(h).gens())) continue;
      cj.push_back(json{{"g", g}, {"subgroup", L.subgroup(h)}, {"matrix", to_json(m)}});
    }
  return json{{"version", kFormatVersion}, {"group", to_json(G)}, {"ring", M.ring().name()}, {"subgroups", subs},
              {"values", vals}, {"res", res}, {"tr", tr}, {"conj", cj}};
}

/// A representation given as one matrix per group element.
inline std::vector<Matrix> representation_from_json(const Group& G, const json& j, const std::string& p) {
  if (!j.is_array() || static_cast<int>(j.size()) != G.order())
    throw SchemaError(p, "expected one matrix per group element");
  std::vector<Matrix> rho;
  for (std::size_t g = 0; g < j.size(); ++g) {
    const auto& mj = j[g];
    rho.push_back(matrix_from_json(mj, mj.is_array() ? mj.size() : 0, -1, detail::child(p, g)));
  }
  return rho;
}

inline MackeyFunctor mackey_from_json(const json& j, const std::string& p = "");

/// Builtins: burnside, zero, fixed_points (with "representation" or "gset").
inline MackeyFunctor builtin_mackey(const Group& G, const Ring& R, const json& j, const std::string& p) {
  const std::string kind = detail::field(j, "builtin", p).get<std::string>();
  if (kind == "burnside") return burnside_mackey(G, R);
  if (kind == "zero") return zero_mackey(G, R);
  if (kind == "fixed_points") {
    if (j.contains("representation"))
      return fixed_point_mackey(G, R, representation_from_json(G, j["representation"], detail::child(p, "representation")));
    if (j.contains("gset"))
      return fixed_point_mackey(G, R, permutation_representation(gset_from_json(G, j["gset"], detail::child(p, "gset"))));
    return fixed_point_mackey(G, R, trivial_representation(G));
  }
  throw SchemaError(detail::child(p, "builtin"), "unknown builtin '" + kind + "' (burnside, zero, fixed_points)");
}

inline MackeyFunctor mackey_from_json(const json& j, const std::string& p) {
  if (!j.is_object()) throw SchemaError(p, "expected a Mackey functor object");
  Group G = group_from_json(detail::field(j, "group", p), detail::child(p, "group"));
  Ring R = j.contains("ring") ? ring_from_json(j["ring"], detail::child(p, "ring")) : Ring::integers();
  if (j.contains("builtin")) return builtin_mackey(G, R, j, p);
  const auto& L = G.lattice();
  MackeyFunctor M(G, R);
  auto sub_index = [&](const json& s, const std::string& sp) {
    Subgroup H = subgroup_from_json(G, s, sp);
    return L.index_of(H);
  };
  const auto& vals = detail::field(j, "values", p);
  const std::string vp = detail::child(p, "values");
  if (!vals.is_array()) throw SchemaError(vp, "expected an array");
  std::vector<bool> seen(L.size(), false);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto ip = detail::child(vp, i);
    int h = sub_index(detail::field(vals[i], "subgroup", ip), detail::child(ip, "subgroup"));
    if (seen[h]) throw SchemaError(ip, "duplicate value for a subgroup");
    seen[h] = true;
    M.set_value(h, module_from_json(R, vals[i], ip));
  }
  auto maps = [&](const char* key, bool is_tr) {
    if (!j.contains(key)) return;
    const auto& a = j[key];
    const std::string ap = detail::child(p, key);
    if (!a.is_array()) throw SchemaError(ap, "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ip = detail::child(ap, i);
      int from = sub_index(detail::field(a[i], "from", ip), detail::child(ip, "from"));
      int to = sub_index(detail::field(a[i], "to", ip), detail::child(ip, "to"));
      int big = is_tr ? to : from, small = is_tr ? from : to;
      if (!L.contains(big, small)) throw SchemaError(ip, "maps go between a subgroup and one of its subgroups");
      Matrix m = matrix_from_json(detail::field(a[i], "matrix", ip), M.value(to).gens(), M.value(from).gens(),
                                  detail::child(ip, "matrix"));
      if (is_tr)
        M.set_tr(big, small, m);
      else
        M.set_res(big, small, m);
    }
  };
  maps("res", false);
  maps("tr", true);
  if (j.contains("conj")) {
    const auto& a = j["conj"];
    const std::string ap = detail::child(p, "conj");
    if (!a.is_array()) throw SchemaError(ap, "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ip = detail::child(ap, i);
      int g = detail::as_int(detail::field(a[i], "g", ip), detail::child(ip, "g"));
      if (g < 0 || g >= G.order()) throw SchemaError(detail::child(ip, "g"), "element out of range");
      int h = sub_index(detail::field(a[i], "subgroup", ip), detail::child(ip, "subgroup"));
      M.set_conj(g, h, matrix_from_json(detail::field(a[i], "matrix", ip), M.value(L.conj(g, h)).gens(),
                                        M.value(h).gens(), detail::child(ip, "matrix")));
    }
  }
  M.fill_defaults(true);
  if (!M.complete()) throw SchemaError(p, "missing structure maps (every res, tr and conj between distinct subgroups is required)");
  return M;
}

// ---- simplicial sets ----------------------------------------------------------

inline PointedSimplicialGSet simplicial_from_json(const json& j, const std::string& p = "") {
  Group G = group_from_json(detail::field(j, "group", p), detail::child(p, "group"));
  const auto& lv = detail::field(j, "levels", p);
  const std::string lp = detail::child(p, "levels");
  if (!lv.is_array() || lv.empty()) throw SchemaError(lp, "expected a nonempty array of levels");
  std::vector<SimplicialLevel> levels;
  for (std::size_t n = 0; n < lv.size(); ++n) {
    const auto np = detail::child(lp, n);
    SimplicialLevel l;
    l.size = detail::as_int(detail::field(lv[n], "size", np), detail::child(np, "size"));
    l.basepoint = detail::as_int(detail::field(lv[n], "basepoint", np), detail::child(np, "basepoint"));
    l.act = detail::int_table(detail::field(lv[n], "action", np), detail::child(np, "action"));
    if (lv[n].contains("faces")) l.faces = detail::int_table(lv[n]["faces"], detail::child(np, "faces"));
    if (lv[n].contains("degeneracies")) l.degens = detail::int_table(lv[n]["degeneracies"], detail::child(np, "degeneracies"));
    levels.push_back(std::move(l));
  }
  return PointedSimplicialGSet::from_tables(G, std::move(levels));
}

inline json to_json(const PointedSimplicialGSet& X, int D) {
  json levels = json::array();
  for (auto& l : X.tables(D))
    levels.push_back(json{{"size", l.size}, {"basepoint", l.basepoint}, {"action", l.act}, {"faces", l.faces},
                          {"degeneracies", l.degens}});
  return json{{"version", kFormatVersion}, {"group", to_json(X.group())}, {"levels", levels}};
}

// ---- normal systems -----------------------------------------------------------

/// {"builtin": "burnside", "ring": R, "index": [...]} or explicit functors and isos.
inline TruncatedNormalSystem normal_system_from_json(const json& j, const std::string& p = "") {
  Ring R = j.contains("ring") ? ring_from_json(j["ring"], detail::child(p, "ring")) : Ring::integers();
  std::vector<int> index = detail::int_list(detail::field(j, "index", p), detail::child(p, "index"));
  std::sort(index.begin(), index.end());
  for (int n : index)
    if (n < 1) throw SchemaError(detail::child(p, "index"), "indices are positive integers");
  if (j.contains("builtin")) {
    if (j["builtin"] != "burnside") throw SchemaError(detail::child(p, "builtin"), "only the burnside system is built in");
    return burnside_normal_system(R, index);
  }
  TruncatedNormalSystem S{R, index, {}, {}};
  const auto& fs = detail::field(j, "functors", p);
  const std::string fp = detail::child(p, "functors");
  for (int n : index) {
    const std::string key = std::to_string(n);
    if (!fs.contains(key)) throw SchemaError(detail::child(fp, key), "missing functor");
    json fj = fs[key];
    if (!fj.contains("group")) fj["group"] = json{{"cyclic", n}};
    if (!fj.contains("ring")) fj["ring"] = R.name();
    S.functor.emplace(n, mackey_from_json(fj, detail::child(fp, key)));
  }
  if (j.contains("isos")) {
    const auto& a = j["isos"];
    const std::string ap = detail::child(p, "isos");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ip = detail::child(ap, i);
      int n = detail::as_int(detail::field(a[i], "n", ip), detail::child(ip, "n"));
      int np = detail::as_int(detail::field(a[i], "np", ip), detail::child(ip, "np"));
      if (!S.functor.count(n) || !S.functor.count(np) || n % np != 0 || n == np)
        throw SchemaError(ip, "iso needs n' a proper divisor of n, both in the index set");
      const auto& lv = detail::field(a[i], "levels", ip);
      MackeyFunctor src = mackey::detail::phi_down(S.functor.at(n), n, np);
      const MackeyFunctor& tgt = S.functor.at(np);
      if (!lv.is_array() || static_cast<int>(lv.size()) != src.subgroup_count())
        throw SchemaError(detail::child(ip, "levels"), "expected one matrix per subgroup of Z/n'");
      std::vector<Matrix> mats;
      for (int h = 0; h < src.subgroup_count(); ++h)
        mats.push_back(matrix_from_json(lv[h], tgt.value(h).gens(), src.value(h).gens(),
                                        detail::child(detail::child(ip, "levels"), h)));
      S.iso[{n, np}] = mats;
    }
  }
  return S;
}

// ---- file helpers -------------------------------------------------------------

/// A file path, or inline JSON text when no such file exists.
inline json load(const std::string& arg) {
  std::ifstream in(arg);
  std::string text;
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    text = arg;
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    if (!in) return json(arg);  // bare word, e.g. a group name
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

inline const char* schemas() {
  return R"({
  "version": 1,
  "scalar": "integer, or string \"a/b\" for rationals",
  "matrix": "row-major array of rows of scalars; a map M -> N has gens(N) rows and gens(M) columns",
  "ring": "\"Z\" | \"Q\" | \"Z/m\" | \"Z_(p)\"",
  "group": [
    {"order": "n", "table": "n x n multiplication table on 0..n-1, identity 0"},
    {"perm_generators": "array of permutations as index arrays"},
    {"cyclic": "n"}, {"dihedral": "order"}, {"product": "[group, group, ...]"},
    "name: cyclic:n | dihedral:n | klein4 | s3 | trivial"
  ],
  "subgroup": "array of elements, or {\"elements\": [...]}",
  "gset": [
    {"size": "k", "action": "action[g][x] for every group element g"},
    {"orbits": "array of subgroups H, one orbit G/H each"}
  ],
  "module": [
    {"gens": "n", "relations": "n x r matrix whose columns are relations"},
    {"invariants": "array of ideal generators, 0 for a free summand"}
  ],
  "mackey": [
    {"group": "group", "ring": "ring", "values": "[{subgroup, gens, relations}]",
     "res": "[{from: H, to: K, matrix}] for K in H", "tr": "[{from: K, to: H, matrix}]",
     "conj": "[{g, subgroup: H, matrix: value(H) -> value(gHg^-1)}]; omitted conj maps between equal subgroups are identities"},
    {"group": "group", "ring": "ring", "builtin": "burnside | zero | fixed_points",
     "representation": "for fixed_points: one matrix per group element", "gset": "for fixed_points: permutation module"}
  ],
  "simplicial": {"group": "group", "levels": "[{size, basepoint, action[g][x], faces[i][x], degeneracies[j][x]}]"},
  "normal_system": [
    {"ring": "ring", "index": "divisor-closed positive integers", "builtin": "burnside"},
    {"ring": "ring", "index": "[...]", "functors": "{\"n\": mackey over cyclic n}",
     "isos": "[{n, np, levels: one matrix per subgroup of Z/np}]"}
  ]
})";
}

}  // namespace mackey::io
