#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>

#include "coxprof/enumeration.hpp"
#include "coxprof/io.hpp"
#include "support.hpp"

using namespace coxprof;
using testing_support::path;
using testing_support::star;

namespace {

EnumerationConfig config(std::size_t lo, std::size_t hi, Label d, bool connected = false, unsigned jobs = 1) {
  EnumerationConfig c;
  c.min_vertices = lo;
  c.max_vertices = hi;
  c.max_label = d;
  c.connected_only = connected;
  c.jobs = jobs;
  return c;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("coxprof-test-" + std::to_string(std::hash<std::string>{}(
                                  std::to_string(reinterpret_cast<std::uintptr_t>(this)) +
                                  std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()))));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST(Enumeration, SmallCounts) {
  EXPECT_EQ(enumerate_graphs(config(1, 1, 2)).size(), 1u);
  EXPECT_EQ(enumerate_graphs(config(2, 2, 3)).size(), 3u);
  const auto c = enumerate_graphs(config(3, 3, 2, true));
  ASSERT_EQ(c.size(), 2u);
  std::set<std::size_t> edges{c[0].edge_count(), c[1].edge_count()};
  EXPECT_EQ(edges, (std::set<std::size_t>{2, 3}));
}

// Oracle: brute force over all label assignments modulo vertex permutations.
TEST(Enumeration, CountsMatchBruteForce) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (Label d = 2; d <= (n <= 3 ? 5 : 3); ++d)
      for (bool conn : {false, true}) {
        const auto got = enumerate_graphs(config(n, n, d, conn));
        ASSERT_EQ(got.size(), testing_support::brute_class_count(n, d, conn)) << n << " " << d << " " << conn;
        std::set<std::vector<Label>> seen;
        for (const auto& g : got) {
          ASSERT_EQ(g.size(), n);
          ASSERT_LE(g.max_label(), d);
          if (conn) {
            ASSERT_TRUE(testing_support::connected_by_bfs(g));
          }
          ASSERT_TRUE(seen.insert(testing_support::brute_canonical(g)).second) << "duplicate class";
        }
      }
}

TEST(Enumeration, NoTwoOutputsIsomorphic) {
  const auto all = enumerate_graphs(config(1, 4, 3));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i].size() == all[j].size()) {
        ASSERT_FALSE(are_isomorphic(all[i], all[j]));
      }
}

TEST(Enumeration, DeterministicAndParallelSafe) {
  const auto one = enumerate_graphs(config(1, 5, 3, false, 1));
  const auto four = enumerate_graphs(config(1, 5, 3, false, 4));
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) ASSERT_EQ(one[i], four[i]);
  // Ordered by vertex count.
  for (std::size_t i = 1; i < one.size(); ++i) ASSERT_LE(one[i - 1].size(), one[i].size());
}

TEST(Enumeration, EarlyStop) {
  std::size_t seen = 0;
  enumerate_graphs(config(1, 4, 3), [&](const CoxeterGraph&) { return ++seen < 10; });
  EXPECT_EQ(seen, 10u);
}

TEST(Enumeration, RejectsBadConfig) {
  EXPECT_THROW(enumerate_graphs(config(1, 0, 3)), EnumerationError);
  EXPECT_THROW(enumerate_graphs(config(1, 3, 1)), EnumerationError);
  EXPECT_THROW(enumerate_graphs(config(3, 2, 3)), EnumerationError);
}

TEST(Enumeration, PredicateFilters) {
  auto cfg = config(1, 4, 3);
  cfg.predicate = [](const CoxeterGraph& g) { return is_complete(g); };
  for (const auto& g : enumerate_graphs(cfg)) EXPECT_TRUE(is_complete(g));
}

TEST(Genus, MuhlherrPair) {
  GenusOptions opt;
  opt.max_vertices = 4;
  opt.max_label = 3;
  const auto r = genus_search(path({3, 3, 3}), opt);
  ASSERT_EQ(r.candidates.size(), 2u);
  EXPECT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.verdict, GenusVerdict::SingletonClass);
  bool has_path = false, has_star = false;
  for (const auto& c : r.candidates) {
    has_path = has_path || are_isomorphic(c.graph, path({3, 3, 3})).has_value();
    has_star = has_star || are_isomorphic(c.graph, star({3, 3, 3})).has_value();
  }
  EXPECT_TRUE(has_path);
  EXPECT_TRUE(has_star);
}

TEST(Genus, TriangleAndEdge) {
  GenusOptions opt;
  opt.max_vertices = 3;
  opt.max_label = 7;
  const auto t = genus_search(triangle(2, 3, 7), opt);
  EXPECT_EQ(t.verdict, GenusVerdict::SingletonClass);
  ASSERT_EQ(t.candidates.size(), 1u);
  EXPECT_TRUE(t.candidates[0].is_target);

  opt.max_label = 4;
  const auto e = genus_search(testing_support::make(2, {{0, 1, 4}}), opt);
  ASSERT_EQ(e.candidates.size(), 1u);
  EXPECT_EQ(e.verdict, GenusVerdict::SingletonClass);
}

TEST(Genus, TargetAlwaysPresentAndBoundsChecked) {
  GenusOptions opt;
  opt.max_vertices = 3;
  opt.max_label = 4;
  testing_support::for_each_labelling(3, 4, [&](const CoxeterGraph& g) {
    const auto r = genus_search(g, opt);
    bool found = false;
    for (const auto& c : r.candidates) found = found || c.is_target;
    ASSERT_TRUE(found) << render_text(g);
    for (const auto& cl : r.classes)
      if (cl.contains_target) return;
    FAIL() << "target class missing";
  });
  EXPECT_THROW(genus_search(path({3, 3, 3}), opt), GenusError);
  opt.max_vertices = 4;
  opt.max_label = 2;
  EXPECT_THROW(genus_search(path({3, 3, 3}), opt), GenusError);
}

// Monotonicity: dropping filters never shrinks the candidate set.  Matching
// on a prefix of the fields is a weaker filter than matching on all of them.
TEST(Genus, FewerFiltersNeverShrink) {
  const auto target = path({3, 3, 3});
  const auto tiv = invariant_vector(target);
  const auto ft = fields(tiv);
  std::vector<std::size_t> sizes;
  for (std::size_t keep = 0; keep <= ft.size(); ++keep) {
    std::size_t count = 0;
    enumerate_graphs(config(1, 4, 3), [&](const CoxeterGraph& g) {
      const auto iv = invariant_vector(g);
      const auto fo = fields(iv);
      bool ok = true;
      for (std::size_t i = 0; i < keep && ok; ++i)
        if (counts(ft[i], tiv, iv) && ft[i].key != fo[i].key) ok = false;
      count += ok ? 1 : 0;
      return true;
    });
    sizes.push_back(count);
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) EXPECT_LE(sizes[i], sizes[i - 1]);
  EXPECT_EQ(sizes.back(), 2u);
}

TEST(Genus, BoundExceeded) {
  GenusOptions opt;
  opt.max_vertices = 4;
  opt.max_label = 3;
  opt.max_graphs = 5;
  EXPECT_EQ(genus_search(path({3, 3, 3}), opt).verdict, GenusVerdict::BoundExceeded);
}

TEST(Cache, RoundTripAndLayout) {
  TempDir dir;
  const InvariantCache cache(dir.path);
  const auto g = triangle(2, 3, 7);
  const auto key = canonical_form(g);
  EXPECT_FALSE(cache.load(key));
  const auto first = cache.get(g);
  const auto file = cache.path_for(key);
  ASSERT_TRUE(std::filesystem::exists(file));
  EXPECT_EQ(file.parent_path().parent_path().parent_path(), dir.path / "v1");
  const auto loaded = cache.load(key);
  ASSERT_TRUE(loaded);
  EXPECT_EQ(to_json(*loaded).dump(), to_json(first).dump());
  // An isomorphic copy hits the same entry.
  EXPECT_EQ(cache.path_for(canonical_form(triangle(7, 2, 3))), file);
}

TEST(Cache, CorruptEntriesAreMisses) {
  TempDir dir;
  const InvariantCache cache(dir.path);
  const auto g = path({3, 4});
  const auto key = canonical_form(g);
  cache.get(g);
  std::ofstream(cache.path_for(key), std::ios::trunc) << "{ not json";
  EXPECT_FALSE(cache.load(key));
  EXPECT_EQ(to_json(cache.get(g)).dump(), to_json(invariant_vector(g)).dump());
}

TEST(Cache, Resolution) {
  EXPECT_FALSE(InvariantCache::resolve(std::string("/tmp/x"), true).enabled());
  EXPECT_EQ(*InvariantCache::resolve(std::string("/tmp/x"), false).root(), std::filesystem::path("/tmp/x"));
  ::setenv("COXPROF_CACHE_DIR", "/tmp/from-env", 1);
  EXPECT_EQ(*InvariantCache::resolve(std::nullopt, false).root(), std::filesystem::path("/tmp/from-env"));
  ::unsetenv("COXPROF_CACHE_DIR");
}

TEST(Cache, GenusSearchSameWithAndWithoutCache) {
  TempDir dir;
  GenusOptions opt;
  opt.max_vertices = 4;
  opt.max_label = 3;
  const auto cold = genus_search(path({3, 3, 3}), opt, InvariantCache(dir.path));
  const auto warm = genus_search(path({3, 3, 3}), opt, InvariantCache(dir.path));
  const auto none = genus_search(path({3, 3, 3}), opt);
  ASSERT_EQ(cold.candidates.size(), none.candidates.size());
  ASSERT_EQ(warm.candidates.size(), none.candidates.size());
  for (std::size_t i = 0; i < none.candidates.size(); ++i) {
    EXPECT_EQ(cold.candidates[i].canonical_hex, none.candidates[i].canonical_hex);
    EXPECT_EQ(warm.candidates[i].canonical_hex, none.candidates[i].canonical_hex);
  }
}
