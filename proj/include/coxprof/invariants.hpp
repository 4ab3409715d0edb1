#pragma once

// Group invariants read off the defining graph, each tagged with how far it
// is known to survive passage to the profinite completion.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "coxprof/classification.hpp"
#include "coxprof/graph.hpp"
#include "coxprof/topology.hpp"
#include "coxprof/types.hpp"

namespace coxprof {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  if (q == 0) return "0";
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// product decomposition

struct PartSplit {
  VertexSet vertices = 0;
  TypeList spherical;
  TypeList affine;
  VertexSet generic = 0;  // vertices of the generic part
};

inline PartSplit split_parts(const CoxeterGraph& g, VertexSet within) {
  PartSplit p;
  p.vertices = within;
  for (const auto& b : classify_blocks(g, within)) {
    if (b.type.finite())
      p.spherical.push_back(b.type);
    else if (b.type.affine())
      p.affine.push_back(b.type);
    else
      p.generic |= b.vertices;
  }
  std::sort(p.spherical.begin(), p.spherical.end());
  std::sort(p.affine.begin(), p.affine.end());
  return p;
}

/// W = W_sph x W_aff x W_gen over the Dynkin components of the whole vertex
/// set, plus the same split inside each component of the Coxeter graph when
/// the group is a free product.
struct Decomposition {
  PartSplit whole;
  std::vector<PartSplit> per_component;
  bool free_product = false;
};

inline Decomposition decompose(const CoxeterGraph& g) {
  Decomposition d;
  d.whole = split_parts(g, g.all());
  for (auto c : connected_components(g)) d.per_component.push_back(split_parts(g, c));
  d.free_product = d.per_component.size() >= 2;
  return d;
}

// ---------------------------------------------------------------------------
// visual properties

inline bool is_FA(const CoxeterGraph& g) { return is_complete(g); }

inline bool is_clique(const CoxeterGraph& g, VertexSet s) {
  for (auto u : members(s))
    if (!is_subset(s & ~singleton(u), g.neighbours(u))) return false;
  return true;
}

inline bool is_FC(const SphericalCensus& census) {
  const auto& g = census.graph();
  for (VertexSet s = 1; s < (VertexSet{1} << g.size()); ++s)
    if (!census.spherical(s) && is_clique(g, s)) return false;
  return true;
}

inline bool is_FC(const CoxeterGraph& g) { return is_FC(SphericalCensus(g)); }

/// Vertices outside s joined to every vertex of s by a label-2 edge.
inline VertexSet commutant(const CoxeterGraph& g, VertexSet s) {
  VertexSet c = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (contains(s, v)) continue;
    bool all = true;
    for (auto u : members(s))
      if (g.label(u, v) != 2) {
        all = false;
        break;
      }
    if (all) c |= singleton(v);
  }
  return c;
}

/// Some vertex set of size >= 3 is a single affine Dynkin component.
inline bool has_affine_parabolic_rank3(const SphericalCensus& census) {
  const auto& g = census.graph();
  for (VertexSet s = 1; s < (VertexSet{1} << g.size()); ++s) {
    if (set_size(s) < 3 || census.spherical(s)) continue;
    // Irreducible affine sets are minimally non-spherical.
    bool minimal = true;
    for (auto v : members(s))
      if (!census.spherical(s & ~singleton(v))) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    const auto comps = dynkin_components(g, s);
    if (comps.size() == 1 && census.type_of(s).affine()) return true;
  }
  return false;
}

/// Two infinite special parabolics on disjoint sets that commute elementwise.
inline bool has_commuting_infinite_pair(const SphericalCensus& census) {
  const auto& g = census.graph();
  for (VertexSet s = 1; s < (VertexSet{1} << g.size()); ++s) {
    if (census.spherical(s)) continue;
    const VertexSet c = commutant(g, s);
    if (c && !census.spherical(c)) return true;
  }
  return false;
}

inline bool is_hyperbolic(const SphericalCensus& census) {
  return !has_affine_parabolic_rank3(census) && !has_commuting_infinite_pair(census);
}

inline bool is_hyperbolic(const CoxeterGraph& g) { return is_hyperbolic(SphericalCensus(g)); }

enum class Ends { Zero, One, Two, Infinite };

inline std::string to_string(Ends e) {
  switch (e) {
    case Ends::Zero: return "0";
    case Ends::One: return "1";
    case Ends::Two: return "2";
    case Ends::Infinite: return "infinity";
  }
  return "?";
}

/// Some spherical set T (possibly empty) whose removal leaves at least two
/// components of the Coxeter graph.
inline bool has_separating_spherical_set(const SphericalCensus& census) {
  const auto& g = census.graph();
  const VertexSet all = g.all();
  for (auto t : census.spherical_masks()) {
    const VertexSet rest = all & ~t;
    if (rest && connected_components(g, rest).size() >= 2) return true;
  }
  return false;
}

inline bool is_finite_by_D_infinity(const Decomposition& d) {
  return d.whole.generic == 0 && d.whole.affine == TypeList{type::affine_A(1)};
}

inline Ends ends(const SphericalCensus& census, const Decomposition& d) {
  if (census.spherical(census.graph().all())) return Ends::Zero;
  if (is_finite_by_D_infinity(d)) return Ends::Two;
  if (has_separating_spherical_set(census)) return Ends::Infinite;
  return Ends::One;
}

inline Ends ends(const CoxeterGraph& g) { return ends(SphericalCensus(g), decompose(g)); }

inline bool is_virtually_free(const SphericalCensus& census) {
  return is_chordal(census.graph()) && is_FC(census);
}

inline bool is_virtually_free(const CoxeterGraph& g) { return is_virtually_free(SphericalCensus(g)); }

/// The induced subgraph on s is a single cycle of length >= 3.
inline bool induces_cycle(const CoxeterGraph& g, VertexSet s) {
  if (set_size(s) < 3) return false;
  for (auto v : members(s))
    if (set_size(g.neighbours(v) & s) != 2) return false;
  return connected_components(g, s).size() == 1;
}

/// A vertex set C inducing an infinite n-cycle with spherical complement
/// commuting elementwise with C.
inline std::optional<VertexSet> surface_cycle(const SphericalCensus& census) {
  const auto& g = census.graph();
  const VertexSet all = g.all();
  for (VertexSet c = 1; c <= all; ++c) {
    if (!induces_cycle(g, c) || census.spherical(c)) continue;
    const VertexSet rest = all & ~c;
    if (census.spherical(rest) && is_subset(rest, commutant(g, c))) return c;
  }
  return std::nullopt;
}

inline bool is_virtually_surface(const SphericalCensus& census) { return surface_cycle(census).has_value(); }
inline bool is_virtually_surface(const CoxeterGraph& g) { return is_virtually_surface(SphericalCensus(g)); }

inline bool is_virtually_abelian(const Decomposition& d) { return d.whole.generic == 0; }
inline bool is_virtually_abelian(const CoxeterGraph& g) { return is_virtually_abelian(decompose(g)); }

inline bool is_4k_plus_2(Label m) { return m >= 6 && m % 4 == 2; }

struct LabelFlags {
  bool odd = true;
  bool strongly_even = true;
  bool labels_div_4 = true;
  bool extra_large = true;
  bool has_4k_plus_2 = false;
  std::optional<Label> complete_equal;  // Γ complete with every label equal to this
};

inline LabelFlags label_flags(const CoxeterGraph& g) {
  LabelFlags f;
  std::optional<Label> common;
  bool uniform = true;
  for (const auto& e : g.edges()) {
    f.odd = f.odd && e.label % 2 == 1;
    f.strongly_even = f.strongly_even && (e.label == 2 || e.label % 4 == 0);
    f.labels_div_4 = f.labels_div_4 && e.label % 4 == 0;
    f.extra_large = f.extra_large && e.label >= 4;
    f.has_4k_plus_2 = f.has_4k_plus_2 || is_4k_plus_2(e.label);
    if (common && *common != e.label) uniform = false;
    common = e.label;
  }
  if (g.size() >= 2 && is_complete(g) && uniform) f.complete_equal = common;
  return f;
}

// ---------------------------------------------------------------------------
// Schur multiplier and Euler characteristic

struct SchurData {
  std::size_t a2 = 0;  // label-2 edges
  std::size_t nu = 0;
  std::size_t mu = 0;
  std::size_t xi = 0;
  long long multiplier_rank = 0;
};

namespace detail {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) c += find(i) == i ? 1 : 0;
    return c;
  }
  std::vector<std::size_t> parent;
};

}  // namespace detail

inline SchurData schur_data(const CoxeterGraph& g) {
  SchurData s;
  std::vector<Edge> two;
  for (const auto& e : g.edges()) {
    if (e.label == 2) two.push_back(e);
    if (e.label >= 3) ++s.mu;
  }
  s.a2 = two.size();
  // {v,w1} ~ {v,w2} whenever w1 w2 is an edge with odd label.
  detail::UnionFind pairs(two.size());
  for (std::size_t i = 0; i < two.size(); ++i)
    for (std::size_t j = i + 1; j < two.size(); ++j) {
      const auto& a = two[i];
      const auto& b = two[j];
      std::size_t w1 = 0, w2 = 0;
      if (a.u == b.u) w1 = a.v, w2 = b.v;
      else if (a.u == b.v) w1 = a.v, w2 = b.u;
      else if (a.v == b.u) w1 = a.u, w2 = b.v;
      else if (a.v == b.v) w1 = a.u, w2 = b.u;
      else continue;
      const Label m = g.label(w1, w2);
      if (m != kNoEdge && m % 2 == 1) pairs.unite(i, j);
    }
  s.nu = pairs.classes();
  detail::UnionFind verts(g.size());
  for (const auto& e : g.edges())
    if (e.label % 2 == 1) verts.unite(e.u, e.v);
  s.xi = verts.classes();
  s.multiplier_rank = static_cast<long long>(s.nu + s.mu + s.xi) - static_cast<long long>(g.size());
  return s;
}

/// chi(W) = sum over spherical T (including the empty set) of (-1)^|T| / |W_T|.
inline Rational euler_characteristic(const SphericalCensus& census) {
  Rational chi = 0;
  for (auto t : census.spherical_masks()) {
    const Rational term(BigInt(1), order_of_finite(census.types(t)));
    chi += set_size(t) % 2 == 0 ? term : Rational(-term);
  }
  return chi;
}

inline Rational euler_characteristic(const CoxeterGraph& g) { return euler_characteristic(SphericalCensus(g)); }

// ---------------------------------------------------------------------------
// the bundle

enum class Status { General, Conditional, IsoInvariantOnly };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::General: return "general";
    case Status::Conditional: return "conditional";
    case Status::IsoInvariantOnly: return "iso_invariant_only";
  }
  return "?";
}

struct InvariantVector {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  bool fa = false;
  bool fc = false;
  Ends ends = Ends::Zero;
  bool hyperbolic = false;
  bool virtually_free = false;
  bool virtually_surface = false;
  bool virtually_abelian = false;
  bool odd = false;
  Rational chi = 0;
  SchurData schur;
  TypeList spherical_part;
  TypeList affine_part;
  std::size_t generic_vertices = 0;
  std::vector<std::string> cf_max;         // maximal finite parabolics as abstract groups
  std::vector<std::string> cf_max_types;   // the same as Coxeter-type products
  std::vector<std::string> cf_max_meets;   // pairwise intersection pattern
  int pseudorank_bound = 0;
  bool extra_large = false;
  bool has_4k_plus_2 = false;
  bool strongly_even = false;
  bool labels_div_4 = false;
  std::optional<std::size_t> odd_cycle_rank;  // connected odd graphs only
  int vcd = 0;

  bool operator==(const InvariantVector&) const = default;
};

/// Intersection pattern of maximal finite parabolics, as sorted strings
/// "P & Q -> R" over unordered pairs that meet, with P, Q, R abstract-group
/// keys; independent of vertex names.
inline std::vector<std::string> meet_pattern(const CFMaxReport& r) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < r.entries.size(); ++i)
    for (std::size_t j = i + 1; j < r.entries.size(); ++j) {
      if (!r.meets[i][j]) continue;
      auto a = to_string(group_factors(r.entries[i].types));
      auto b = to_string(group_factors(r.entries[j].types));
      if (b < a) std::swap(a, b);
      out.push_back(a + " & " + b + " -> " + to_string(group_factors(r.intersections[i][j])));
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline InvariantVector invariant_vector(const CoxeterGraph& g) {
  const SphericalCensus census(g);
  const auto dec = decompose(g);
  const auto flags = label_flags(g);
  const auto cf = cf_max(census);

  InvariantVector iv;
  iv.vertices = g.size();
  iv.edges = g.edge_count();
  iv.components = connected_components(g).size();
  iv.fa = is_FA(g);
  iv.fc = is_FC(census);
  iv.ends = ends(census, dec);
  iv.hyperbolic = is_hyperbolic(census);
  iv.virtually_free = is_chordal(g) && iv.fc;
  iv.virtually_surface = is_virtually_surface(census);
  iv.virtually_abelian = is_virtually_abelian(dec);
  iv.odd = flags.odd;
  iv.chi = euler_characteristic(census);
  iv.schur = schur_data(g);
  iv.spherical_part = dec.whole.spherical;
  iv.affine_part = dec.whole.affine;
  iv.generic_vertices = static_cast<std::size_t>(set_size(dec.whole.generic));
  iv.cf_max = cf_max_groups(cf);
  iv.cf_max_types = cf_max_products(cf);
  iv.cf_max_meets = meet_pattern(cf);
  iv.pseudorank_bound = cf.pseudorank_bound;
  iv.extra_large = flags.extra_large;
  iv.has_4k_plus_2 = flags.has_4k_plus_2;
  iv.strongly_even = flags.strongly_even;
  iv.labels_div_4 = flags.labels_div_4;
  if (flags.odd && iv.components == 1) iv.odd_cycle_rank = cycle_rank(g);
  iv.vcd = vcd(census);
  return iv;
}

// ---------------------------------------------------------------------------
// field table: fixed order, shared by rendering, comparison and genus search

using ordered_json = nlohmann::ordered_json;

inline ordered_json types_json(const TypeList& t) {
  auto j = ordered_json::array();
  for (const auto& x : t) j.push_back(to_string(x));
  return j;
}

inline ordered_json ends_json(Ends e) {
  if (e == Ends::Infinite) return "infinity";
  return std::stoi(to_string(e));
}

struct Field {
  std::string name;
  Status status;
  ordered_json value;
  /// Value used for comparison (defaults to `value`).
  ordered_json key;
  std::string condition;  // for conditional fields
};

namespace detail {

inline bool hyperbolic_fc(const InvariantVector& v) { return v.hyperbolic && v.fc; }
inline bool xl_clean(const InvariantVector& v) { return v.extra_large && !v.has_4k_plus_2 && v.components == 1; }

}  // namespace detail

inline std::vector<Field> fields(const InvariantVector& v) {
  std::vector<Field> f;
  auto add = [&](std::string name, Status s, ordered_json value, std::string condition = {}) {
    f.push_back({std::move(name), s, value, value, std::move(condition)});
  };
  add("components", Status::IsoInvariantOnly, v.components);
  add("FA", Status::General, v.fa);
  add("FC", Status::General, v.fc);
  add("ends", Status::General, ends_json(v.ends));
  add("hyperbolic", Status::General, v.hyperbolic);
  add("virtually_free", Status::General, v.virtually_free);
  add("virtually_surface", Status::General, v.virtually_surface);
  add("virtually_abelian", Status::General, v.virtually_abelian);
  add("odd", Status::General, v.odd);
  add("chi", Status::General, to_string(v.chi));
  add("schur_rank", Status::General, v.schur.multiplier_rank);
  add("abelianization_rank", Status::General, v.schur.xi);
  add("spherical_part", Status::General, types_json(v.spherical_part));
  f.back().key = to_string(group_factors(v.spherical_part));
  add("affine_part", Status::General, types_json(v.affine_part));
  add("cf_max", Status::Conditional, v.cf_max, "both hyperbolic of FC type, or both connected extra large without labels 4k+2");
  add("extra_large", Status::Conditional, v.extra_large, "both connected, one extra large without labels 4k+2");
  add("odd_cycle_rank", Status::Conditional,
      v.odd_cycle_rank ? ordered_json(*v.odd_cycle_rank) : ordered_json(nullptr),
      "both connected odd, one with cycle rank <= 1");
  add("vcd", Status::IsoInvariantOnly, v.vcd);
  add("strongly_even", Status::IsoInvariantOnly, v.strongly_even);
  add("labels_div_4", Status::IsoInvariantOnly, v.labels_div_4);
  add("cf_max_intersections", Status::IsoInvariantOnly, v.cf_max_meets);
  return f;
}

/// Whether a conditional field may separate the two groups.
inline bool condition_holds(const std::string& name, const InvariantVector& a, const InvariantVector& b) {
  if (name == "cf_max")
    return (detail::hyperbolic_fc(a) && detail::hyperbolic_fc(b)) || (detail::xl_clean(a) && detail::xl_clean(b));
  if (name == "extra_large")
    return a.components == 1 && b.components == 1 && (detail::xl_clean(a) || detail::xl_clean(b));
  if (name == "odd_cycle_rank")
    return a.odd_cycle_rank && b.odd_cycle_rank && std::min(*a.odd_cycle_rank, *b.odd_cycle_rank) <= 1;
  return false;
}

/// Fields that may separate a and b: all general ones plus the conditional
/// ones whose condition holds.
inline bool counts(const Field& f, const InvariantVector& a, const InvariantVector& b) {
  if (f.status == Status::General) return true;
  if (f.status == Status::Conditional) return condition_holds(f.name, a, b);
  return false;
}

// ---------------------------------------------------------------------------
// JSON round trip (for the on-disk cache)

inline ordered_json to_json(const InvariantVector& v) {
  ordered_json j;
  j["vertices"] = v.vertices;
  j["edges"] = v.edges;
  j["components"] = v.components;
  j["FA"] = v.fa;
  j["FC"] = v.fc;
  j["ends"] = ends_json(v.ends);
  j["hyperbolic"] = v.hyperbolic;
  j["virtually_free"] = v.virtually_free;
  j["virtually_surface"] = v.virtually_surface;
  j["virtually_abelian"] = v.virtually_abelian;
  j["odd"] = v.odd;
  j["chi"] = to_string(v.chi);
  j["schur"] = {{"a2", v.schur.a2},
                {"nu", v.schur.nu},
                {"mu", v.schur.mu},
                {"xi", v.schur.xi},
                {"multiplier_rank", v.schur.multiplier_rank}};
  j["spherical_part"] = types_json(v.spherical_part);
  j["affine_part"] = types_json(v.affine_part);
  j["generic_vertices"] = v.generic_vertices;
  j["cf_max"] = v.cf_max;
  j["cf_max_types"] = v.cf_max_types;
  j["cf_max_intersections"] = v.cf_max_meets;
  j["pseudorank_bound"] = v.pseudorank_bound;
  j["extra_large"] = v.extra_large;
  j["has_4k_plus_2"] = v.has_4k_plus_2;
  j["strongly_even"] = v.strongly_even;
  j["labels_div_4"] = v.labels_div_4;
  j["odd_cycle_rank"] = v.odd_cycle_rank ? ordered_json(*v.odd_cycle_rank) : ordered_json(nullptr);
  j["vcd"] = v.vcd;
  return j;
}

inline TypeList types_from_json(const ordered_json& j) {
  TypeList t;
  for (const auto& s : j) t.push_back(parse_type(s.get<std::string>()));
  return t;
}

inline InvariantVector invariant_vector_from_json(const ordered_json& j) {
  InvariantVector v;
  v.vertices = j.at("vertices").get<std::size_t>();
  v.edges = j.at("edges").get<std::size_t>();
  v.components = j.at("components").get<std::size_t>();
  v.fa = j.at("FA").get<bool>();
  v.fc = j.at("FC").get<bool>();
  const auto& e = j.at("ends");
  v.ends = e.is_string() ? Ends::Infinite : std::array{Ends::Zero, Ends::One, Ends::Two}.at(e.get<std::size_t>());
  v.hyperbolic = j.at("hyperbolic").get<bool>();
  v.virtually_free = j.at("virtually_free").get<bool>();
  v.virtually_surface = j.at("virtually_surface").get<bool>();
  v.virtually_abelian = j.at("virtually_abelian").get<bool>();
  v.odd = j.at("odd").get<bool>();
  v.chi = parse_rational(j.at("chi").get<std::string>());
  const auto& s = j.at("schur");
  v.schur = {s.at("a2").get<std::size_t>(), s.at("nu").get<std::size_t>(), s.at("mu").get<std::size_t>(),
             s.at("xi").get<std::size_t>(), s.at("multiplier_rank").get<long long>()};
  v.spherical_part = types_from_json(j.at("spherical_part"));
  v.affine_part = types_from_json(j.at("affine_part"));
  v.generic_vertices = j.at("generic_vertices").get<std::size_t>();
  v.cf_max = j.at("cf_max").get<std::vector<std::string>>();
  v.cf_max_types = j.at("cf_max_types").get<std::vector<std::string>>();
  v.cf_max_meets = j.at("cf_max_intersections").get<std::vector<std::string>>();
  v.pseudorank_bound = j.at("pseudorank_bound").get<int>();
  v.extra_large = j.at("extra_large").get<bool>();
  v.has_4k_plus_2 = j.at("has_4k_plus_2").get<bool>();
  v.strongly_even = j.at("strongly_even").get<bool>();
  v.labels_div_4 = j.at("labels_div_4").get<bool>();
  if (!j.at("odd_cycle_rank").is_null()) v.odd_cycle_rank = j.at("odd_cycle_rank").get<std::size_t>();
  v.vcd = j.at("vcd").get<int>();
  return v;
}

}  // namespace coxprof
