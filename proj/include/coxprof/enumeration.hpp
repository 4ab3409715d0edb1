#pragma once

// Enumeration of Coxeter graphs up to isomorphism and desk-scale genus
// searches.
//
// Generation is orderly: a graph is kept iff its strict-lower-triangle
// label encoding is the least over all vertex orders.  The first k rows of
// such a minimal encoding are themselves minimal, so graphs are grown one
// vertex (one row) at a time and non-minimal prefixes are cut.  No set of
// seen graphs is needed and the output order is the lexicographic order of
// minimal encodings within each vertex count.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "coxprof/canonical.hpp"
#include "coxprof/graph.hpp"
#include "coxprof/invariants.hpp"
#include "coxprof/rigidity.hpp"

namespace coxprof {

struct EnumerationConfig {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 1;
  Label max_label = 2;
  bool connected_only = false;
  unsigned jobs = 1;
  /// Optional filter applied to every emitted graph.
  std::function<bool(const CoxeterGraph&)> predicate;
};

namespace detail {

/// Label matrix under construction; label 0 marks a non-edge.
struct Partial {
  std::size_t n = 0;
  std::vector<Label> m;  // kMaxScanVertices x kMaxScanVertices

  Partial() : m(kMaxScanVertices * kMaxScanVertices, kNoEdge) {}
  Label at(std::size_t i, std::size_t j) const { return m[i * kMaxScanVertices + j]; }
  void set(std::size_t i, std::size_t j, Label l) {
    m[i * kMaxScanVertices + j] = l;
    m[j * kMaxScanVertices + i] = l;
  }

  CoxeterGraph graph() const {
    auto g = CoxeterGraph::anonymous(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (at(i, j) != kNoEdge) g.set_edge(i, j, at(i, j));
    return g;
  }
};

/// Is the identity order's encoding minimal among all vertex orders?
class MinimalityTest {
 public:
  explicit MinimalityTest(const Partial& p) : p_(p), used_(p.n, false), order_() {}

  bool run() { return place(); }

 private:
  // Returns false as soon as some order beats the identity.
  bool place() {
    const std::size_t pos = order_.size();
    if (pos == p_.n) return true;
    for (std::size_t v = 0; v < p_.n; ++v) {
      if (used_[v]) continue;
      int cmp = 0;
      for (std::size_t j = 0; j < pos && cmp == 0; ++j) {
        const Label mine = p_.at(v, order_[j]);
        const Label ref = p_.at(pos, j);
        cmp = mine < ref ? -1 : (mine > ref ? 1 : 0);
      }
      if (cmp < 0) return false;
      if (cmp > 0) continue;
      used_[v] = true;
      order_.push_back(v);
      const bool ok = place();
      order_.pop_back();
      used_[v] = false;
      if (!ok) return false;
    }
    return true;
  }

  const Partial& p_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
};

inline bool is_minimal(const Partial& p) { return MinimalityTest(p).run(); }

inline std::vector<Label> label_options(Label d) {
  std::vector<Label> out{kNoEdge};
  for (Label l = 2; l <= d; ++l) out.push_back(l);
  return out;
}

/// Depth-first growth from `p` up to `target` vertices, calling `emit` on
/// each minimal graph of that size.  Returns false if `emit` asked to stop.
template <class Emit>
bool grow(Partial& p, std::size_t target, const std::vector<Label>& options, Emit& emit) {
  if (p.n == target) return emit(p);
  const std::size_t k = p.n;
  ++p.n;
  std::vector<std::size_t> digit(k, 0);
  bool keep_going = true;
  for (;;) {
    for (std::size_t j = 0; j < k; ++j) p.set(k, j, options[digit[j]]);
    if (is_minimal(p) && !grow(p, target, options, emit)) {
      keep_going = false;
      break;
    }
    // Next row in lexicographic order (position 0 most significant).
    std::size_t j = k;
    while (j > 0 && digit[j - 1] + 1 == options.size()) digit[--j] = 0;
    if (j == 0) break;
    ++digit[j - 1];
  }
  for (std::size_t j = 0; j < k; ++j) p.set(k, j, kNoEdge);
  --p.n;
  return keep_going;
}

/// Minimal graphs on `level` vertices: the shards handed to workers.
inline std::vector<Partial> seeds(std::size_t level, const std::vector<Label>& options) {
  std::vector<Partial> out;
  Partial p;
  auto collect = [&](const Partial& q) {
    out.push_back(q);
    return true;
  };
  grow(p, level, options, collect);
  return out;
}

}  // namespace detail

class EnumerationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void validate(const EnumerationConfig& cfg) {
  if (cfg.max_vertices < 1) throw EnumerationError("max_vertices must be at least 1");
  if (cfg.max_vertices > kMaxScanVertices) throw EnumerationError("max_vertices is too large");
  if (cfg.min_vertices < 1 || cfg.min_vertices > cfg.max_vertices)
    throw EnumerationError("min_vertices must lie in 1..max_vertices");
  if (cfg.max_label < 2) throw EnumerationError("max_label must be at least 2");
  if (cfg.max_label > kMaxLabel) throw EnumerationError("max_label is too large");
}

/// Runs `work(graph)` on one representative of each isomorphism class in
/// the configured range, in deterministic order.  With jobs > 1 the search
/// space is split by the minimal graph on the first three vertices; each
/// shard fills its own result slot and slots are replayed in order, so the
/// visiting order of `consume` is identical for every job count.
///
/// `work` runs on worker threads and must be thread-safe; `consume` runs on
/// the calling thread and may return false to stop.
template <class Result>
std::size_t enumerate_map(const EnumerationConfig& cfg, const std::function<Result(const CoxeterGraph&)>& work,
                          const std::function<bool(const CoxeterGraph&, Result&)>& consume) {
  validate(cfg);
  const auto options = detail::label_options(cfg.max_label);
  std::size_t emitted = 0;
  auto wanted = [&](const CoxeterGraph& g) {
    if (cfg.connected_only && !is_connected(g)) return false;
    return !cfg.predicate || cfg.predicate(g);
  };

  for (std::size_t n = cfg.min_vertices; n <= cfg.max_vertices; ++n) {
    if (cfg.jobs <= 1) {
      bool go = true;
      auto emit = [&](const detail::Partial& p) {
        auto g = p.graph();
        if (!wanted(g)) return true;
        ++emitted;
        Result r = work(g);
        go = consume(g, r);
        return go;
      };
      detail::Partial p;
      detail::grow(p, n, options, emit);
      if (!go) return emitted;
      continue;
    }

    const auto shards = detail::seeds(std::min<std::size_t>(n, 3), options);
    std::vector<std::vector<std::pair<CoxeterGraph, Result>>> slots(shards.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < shards.size();) {
        detail::Partial p = shards[i];
        auto emit = [&](const detail::Partial& q) {
          auto g = q.graph();
          if (wanted(g)) {
            Result r = work(g);
            slots[i].emplace_back(std::move(g), std::move(r));
          }
          return true;
        };
        detail::grow(p, n, options, emit);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < cfg.jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& slot : slots)
      for (auto& [g, r] : slot) {
        ++emitted;
        if (!consume(g, r)) return emitted;
      }
  }
  return emitted;
}

/// Streams one representative per isomorphism class; `sink` may return
/// false to stop.  Returns the number of graphs passed to `sink`.
inline std::size_t enumerate_graphs(const EnumerationConfig& cfg, const std::function<bool(const CoxeterGraph&)>& sink) {
  struct Unit {};
  return enumerate_map<Unit>(
      cfg, [](const CoxeterGraph&) { return Unit{}; }, [&](const CoxeterGraph& g, Unit&) { return sink(g); });
}

inline std::vector<CoxeterGraph> enumerate_graphs(const EnumerationConfig& cfg) {
  std::vector<CoxeterGraph> out;
  enumerate_graphs(cfg, [&](const CoxeterGraph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// on-disk cache: canonical key -> invariant vector

inline constexpr const char* kCacheVersion = "coxprof-invariants-1";

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class InvariantCache {
 public:
  /// Disabled cache: every lookup recomputes.
  InvariantCache() = default;
  explicit InvariantCache(std::filesystem::path root) : root_(std::move(root)) {}

  /// Root from the explicit directory, else $COXPROF_CACHE_DIR, else
  /// $HOME/.cache/coxprof; disabled when none is available.
  static InvariantCache resolve(const std::optional<std::string>& explicit_dir, bool disabled) {
    if (disabled) return {};
    if (explicit_dir && !explicit_dir->empty()) return InvariantCache(*explicit_dir);
    if (const char* env = std::getenv("COXPROF_CACHE_DIR"); env && *env) return InvariantCache(env);
    if (const char* home = std::getenv("HOME"); home && *home)
      return InvariantCache(std::filesystem::path(home) / ".cache" / "coxprof");
    return {};
  }

  bool enabled() const { return root_.has_value(); }
  const std::optional<std::filesystem::path>& root() const { return root_; }

  std::filesystem::path path_for(const std::string& canonical_key) const {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_key)));
    const std::string h(hex);
    return *root_ / "v1" / h.substr(0, 2) / h.substr(2, 2) / (h.substr(4) + ".json");
  }

  std::optional<InvariantVector> load(const std::string& canonical_key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(canonical_key));
    if (!in) return std::nullopt;
    try {
      const auto doc = nlohmann::ordered_json::parse(in);
      // Hash collisions and stale versions read as misses.
      if (doc.at("version") != kCacheVersion || doc.at("key") != to_hex(canonical_key)) return std::nullopt;
      return invariant_vector_from_json(doc.at("invariants"));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const std::string& canonical_key, const InvariantVector& iv) const {
    if (!enabled()) return;
    const auto target = path_for(canonical_key);
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) return;
    nlohmann::ordered_json doc;
    doc["version"] = kCacheVersion;
    doc["key"] = to_hex(canonical_key);
    doc["invariants"] = to_json(iv);
    static std::atomic<unsigned long long> counter{0};
    std::ostringstream tmpname;
    tmpname << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
            << "." << counter.fetch_add(1);
    const auto tmp = target.parent_path() / tmpname.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) return;
      out << doc.dump() << "\n";
      if (!out) return;
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

  InvariantVector get(const CoxeterGraph& g) const {
    if (!enabled()) return invariant_vector(g);
    const auto key = canonical_form(g);
    if (auto hit = load(key)) return *hit;
    auto iv = invariant_vector(g);
    store(key, iv);
    return iv;
  }

 private:
  std::optional<std::filesystem::path> root_;
};

// ---------------------------------------------------------------------------
// genus search

struct GenusCandidate {
  CoxeterGraph graph;
  std::string canonical_hex;
  std::size_t class_index = 0;
  bool is_target = false;
};

struct GenusClass {
  std::string normal_form_hex;
  CoxeterGraph normal_form;
  std::vector<std::size_t> members;  // indices into candidates
  bool contains_target = false;
};

enum class GenusVerdict { SingletonClass, FinitelyManyClasses, BoundExceeded };

inline const char* to_string(GenusVerdict v) {
  switch (v) {
    case GenusVerdict::SingletonClass: return "singleton_class";
    case GenusVerdict::FinitelyManyClasses: return "finitely_many_classes";
    case GenusVerdict::BoundExceeded: return "bound_exceeded";
  }
  return "?";
}

struct GenusOptions {
  std::size_t max_vertices = 4;
  Label max_label = 3;
  unsigned jobs = 1;
  /// Stop (verdict bound_exceeded) after examining this many graphs.
  std::size_t max_graphs = 5'000'000;
};

struct GenusReport {
  CoxeterGraph target;
  GenusOptions options;
  std::vector<GenusCandidate> candidates;
  std::vector<GenusClass> classes;
  std::size_t examined = 0;
  GenusVerdict verdict = GenusVerdict::SingletonClass;
  GenusBounds bounds;
  /// Vertex bound of the search, compared with the best proven bound.
  bool covers_proven_bound = false;
};

class GenusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whether `other` agrees with `target` on every field that may separate them.
inline bool matches(const InvariantVector& target, const InvariantVector& other) {
  const auto ft = fields(target);
  const auto fo = fields(other);
  for (std::size_t i = 0; i < ft.size(); ++i)
    if (counts(ft[i], target, other) && ft[i].key != fo[i].key) return false;
  return true;
}

inline GenusReport genus_search(const CoxeterGraph& target, const GenusOptions& opt,
                                const InvariantCache& cache = InvariantCache()) {
  if (target.empty()) throw GenusError("target graph has no vertices");
  if (target.size() > opt.max_vertices)
    throw GenusError("vertex bound " + std::to_string(opt.max_vertices) + " excludes the target (" +
                     std::to_string(target.size()) + " vertices)");
  if (target.max_label() > opt.max_label)
    throw GenusError("label bound " + std::to_string(opt.max_label) + " excludes the target's label " +
                     std::to_string(target.max_label()));

  GenusReport r;
  r.target = target;
  r.options = opt;
  const auto tiv = cache.get(target);
  r.bounds = genus_bounds(target, tiv, opt.max_label);
  r.covers_proven_bound =
      r.bounds.effective_bound && static_cast<long long>(opt.max_vertices) >= *r.bounds.effective_bound;
  const auto target_key = canonical_form(target);

  EnumerationConfig cfg;
  cfg.min_vertices = 1;
  cfg.max_vertices = opt.max_vertices;
  cfg.max_label = opt.max_label;
  cfg.jobs = opt.jobs;

  bool aborted = false;
  std::map<std::string, std::size_t> class_of_key;
  enumerate_map<std::optional<InvariantVector>>(
      cfg,
      [&](const CoxeterGraph& g) -> std::optional<InvariantVector> {
        // Cheap necessary conditions first.
        if (is_complete(g) != tiv.fa) return std::nullopt;
        auto iv = cache.get(g);
        if (!matches(tiv, iv)) return std::nullopt;
        return iv;
      },
      [&](const CoxeterGraph& g, std::optional<InvariantVector>& iv) {
        if (++r.examined > opt.max_graphs) {
          aborted = true;
          return false;
        }
        if (!iv) return true;
        GenusCandidate c;
        c.graph = g;
        const auto key = canonical_form(g);
        c.canonical_hex = to_hex(key);
        c.is_target = key == target_key;
        const auto nf = known_iso_normalize(g);
        const auto nf_key = canonical_form(nf);
        auto [it, fresh] = class_of_key.emplace(nf_key, r.classes.size());
        if (fresh) r.classes.push_back({to_hex(nf_key), canonical_graph(nf), {}, false});
        c.class_index = it->second;
        r.classes[c.class_index].members.push_back(r.candidates.size());
        if (c.is_target) r.classes[c.class_index].contains_target = true;
        r.candidates.push_back(std::move(c));
        return true;
      });

  if (aborted)
    r.verdict = GenusVerdict::BoundExceeded;
  else
    r.verdict = r.classes.size() == 1 ? GenusVerdict::SingletonClass : GenusVerdict::FinitelyManyClasses;
  return r;
}

}  // namespace coxprof
