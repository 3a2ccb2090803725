#include "ucoh/locale.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace ucoh;

namespace {

std::vector<LocalePtr> sample_locales() {
  return {make_euclidean(1),   make_euclidean(2),    make_n_neighbor(1, 2), make_n_neighbor(2, 2),
          make_triangular(),   make_hexagonal(),     make_free_group(2),
          make_product({make_euclidean(1), make_euclidean(1)}),
          make_region(make_euclidean(2), "cross"), make_region(make_euclidean(2), "half-plane-axis")};
}

}  // namespace

TEST_CASE("distances on the square lattice") {
  const auto z2 = make_euclidean(2);
  CHECK(distance(*z2, {0, 0}, {2, 3}) == 5);
  CHECK(distance(*z2, {4, -1}, {4, -1}) == 0);
  CHECK_THROWS_AS(distance(*z2, {0}, {1, 1}), Error);
}

TEST_CASE("hexagonal neighbors are at distance one") {
  const auto hex = make_hexagonal();
  const Vertex o = hex->origin();
  const auto nbrs = hex->neighbors(o);
  CHECK(nbrs.size() == 3);
  for (const auto& y : nbrs) CHECK(bfs_distance(*hex, o, y) == 1);
}

TEST_CASE("adjacency is symmetric and loop-free") {
  for (const auto& loc : sample_locales()) {
    CAPTURE(loc->kind());
    for (const auto& x : ball_vertices(*loc, loc->origin(), 2)) {
      for (const auto& y : loc->neighbors(x)) {
        CHECK(y != x);
        const auto back = loc->neighbors(y);
        CHECK(std::find(back.begin(), back.end(), x) != back.end());
      }
    }
  }
}

TEST_CASE("closed-form distances agree with breadth-first search") {
  std::mt19937 rng(11);
  for (const auto& loc : sample_locales()) {
    CAPTURE(loc->kind());
    const auto pool = ball_vertices(*loc, loc->origin(), 3);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 25; ++trial) {
      const auto& x = pool[pick(rng)];
      const auto& y = pool[pick(rng)];
      CHECK(distance(*loc, x, y) == bfs_distance(*loc, x, y));
    }
  }
}

TEST_CASE("ball sizes") {
  for (long r = 0; r <= 4; ++r) CHECK(ball_vertices(*make_euclidean(2), {0, 0}, r).size() == 2 * r * r + 2 * r + 1);
  CHECK(ball_vertices(*make_free_group(2), {}, 2).size() == 17);
}

TEST_CASE("windows carry symmetric induced edges") {
  const Window w = box(make_euclidean(2), {0, 0}, {2, 1});
  CHECK(w.size() == 6);
  CHECK(w.edges().size() == 14);
  for (std::size_t e = 0; e < w.edges().size(); ++e) {
    const auto& ed = w.edges()[e];
    const auto& rev = w.edges()[static_cast<std::size_t>(ed.reverse)];
    CHECK(rev.o == ed.t);
    CHECK(rev.t == ed.o);
    CHECK(rev.reverse == static_cast<int>(e));
  }
}

TEST_CASE("group actions are free automorphisms") {
  for (const auto& loc : {make_euclidean(2), make_hexagonal(), make_free_group(2)}) {
    CAPTURE(loc->kind());
    const auto action = loc->default_action();
    REQUIRE(action);
    for (int j = 0; j < action->rank(); ++j) {
      const auto g = action->generator(j);
      for (const auto& x : ball_vertices(*loc, loc->origin(), 2)) {
        CHECK(action->apply(g, x) != x);
        CHECK(action->apply(action->inverse(g), action->apply(g, x)) == x);
        auto image_nbrs = loc->neighbors(action->apply(g, x));
        for (const auto& y : loc->neighbors(x)) {
          const auto gy = action->apply(g, y);
          CHECK(std::find(image_nbrs.begin(), image_nbrs.end(), gy) != image_nbrs.end());
        }
      }
    }
  }
}

TEST_CASE("translates of a fundamental domain tile a box") {
  const auto hex = make_hexagonal();
  const Window w = box(hex, {-1, -1}, {1, 1});
  const auto tiles = orbit_decompose(w, *hex->default_action(), {{0, 0, 0}, {0, 0, 1}});
  CHECK(tiles.size() == 9);
  for (const auto& t : tiles) CHECK_FALSE(t.partial);
  CHECK_THROWS_AS(orbit_decompose(w, *hex->default_action(), {{0, 0, 0}}), Error);
}

TEST_CASE("transferability catalog") {
  CHECK(classify_transferability(*make_euclidean(1)).result == Transferability::weakly_not_transferable);
  CHECK(classify_transferability(*make_euclidean(2)).result == Transferability::strongly_transferable);
  CHECK(classify_transferability(*make_euclidean(3)).result == Transferability::strongly_transferable);
  CHECK(classify_transferability(*make_free_group(2)).result == Transferability::transferable);
  CHECK(classify_transferability(*make_region(make_euclidean(2), "cross")).result == Transferability::transferable);
}

TEST_CASE("transferability probes agree with the catalog on small cases") {
  CHECK(classify_transferability(*make_euclidean(1), {}, true).result == Transferability::weakly_not_transferable);
  CHECK(classify_transferability(*make_euclidean(2), {}, true).result == Transferability::strongly_transferable);
  const auto finite = make_finite_sublocale(make_euclidean(1), {{0}, {1}, {2}});
  CHECK(classify_transferability(*finite).result == Transferability::unknown);
}
