#include <doctest.h>

#include <algorithm>

#include "bei/constructors.hpp"

using namespace bei;

namespace {

const Graph c4 = Graph::from_edges({{1, 2}, {2, 3}, {3, 4}, {1, 4}});
const Graph k2 = Graph::from_edges({{1, 2}});

}  // namespace

TEST_CASE("whiskers") {
  CHECK(add_whisker(Graph({1}, {}), 1) == k2);
  const auto triangle = Graph::from_edges({{1, 2}, {1, 3}, {2, 3}});
  const auto paw = add_whisker(triangle, 1);
  CHECK(paw == Graph::from_edges({{1, 2}, {1, 3}, {2, 3}, {1, 4}}));
  CHECK_THROWS_AS(add_whisker(triangle, 9), GraphError);

  auto decorated = star_product(3, 3, 3);
  for (Vertex v : {2, 3, 5, 6}) decorated = add_whisker(decorated, v);
  CHECK(decorated == whiskered_star_product(3, 3, 3));
}

TEST_CASE("block with whiskers") {
  const auto p3 = Graph::from_edges({{1, 2}, {2, 3}});
  CHECK(block_with_whiskers(p3, {1, 2}, {2}) == Graph::from_edges({{1, 2}, {2, 4}}));
  CHECK(block_with_whiskers(p3, {1, 2}, {}) == p3);
  CHECK(block_with_whiskers(p3, {1, 2}) == Graph::from_edges({{1, 2}, {2, 4}}));
  CHECK_THROWS_AS(block_with_whiskers(p3, {1, 3}, {}), GraphError);
  CHECK_THROWS_AS(block_with_whiskers(p3, {1, 2}, {1}), GraphError);

  const auto& fig5 = corpus_graph("fig5");
  const VertexSet b3{5, 6, 7, 8, 9, 10, 13};
  const auto bar = block_with_whiskers(fig5, b3);
  CHECK(are_isomorphic(bar, corpus_graph("fig3")));
  CHECK(block_with_whiskers(fig5, b3, {}) == fig5);
  // Whiskers at 5 and 13 only: the branch through 10 stays attached.
  const auto partial = block_with_whiskers(fig5, b3, {5, 13});
  CHECK(partial.has_vertex(11));
  CHECK_FALSE(partial.has_vertex(2));
  CHECK(partial.neighbors(26) == VertexSet{5});
  CHECK(partial.neighbors(27) == VertexSet{13});

  for (const auto& block : blocks(fig5).blocks) {
    const auto whiskered = block_with_whiskers(fig5, block);
    const auto d = blocks(whiskered);
    CHECK(std::find(d.blocks.begin(), d.blocks.end(), block) != d.blocks.end());
    for (const auto& other : d.blocks) {
      if (other != block) CHECK(other.size() == 2);
    }
  }
}

TEST_CASE("star products") {
  CHECK(star_product(2, 2, 2) == Graph::from_edges({{1, 2}, {3, 4}, {1, 3}, {2, 4}}));
  CHECK(are_isomorphic(star_product(2, 2, 2), c4));
  CHECK(star_product(1, 1, 1) == k2);
  CHECK_THROWS_AS(star_product(3, 2, 3), GraphError);
  CHECK_THROWS_AS(star_product(3, 3, 0), GraphError);
  CHECK(star_product(3, 3, 3).order() == 6);
  CHECK(star_product(3, 3, 3).size() == 9);

  for (auto [m, n, r] : {std::tuple{3, 2, 2}, {4, 3, 1}, {5, 3, 3}, {2, 2, 1}}) {
    const auto swapped = relabel(star_product(m, n, r), [m = m, n = n](Vertex v) {
      return v <= m ? n + v : v - m;
    });
    CHECK(swapped == star_product(n, m, r));
  }
}

TEST_CASE("whiskered star products") {
  CHECK(whiskered_star_product(2, 2, 2) ==
        Graph::from_edges({{1, 2}, {3, 4}, {1, 3}, {2, 4}, {2, 5}, {4, 6}}));
  CHECK(whiskered_star_product(1, 1, 1) == k2);
  CHECK(are_isomorphic(whiskered_star_product(3, 3, 3), corpus_graph("fig4")));
  CHECK(whiskered_star_product(3, 3, 3).order() == 10);

  for (auto [m, n, r] : {std::tuple{3, 3, 3}, {4, 3, 3}, {5, 4, 2}, {5, 5, 5}}) {
    const auto g = whiskered_star_product(m, n, r);
    const auto cuts = cut_vertices(g);
    for (Vertex f = m + n + 1; f <= g.max_label(); ++f) CHECK(is_free_vertex(g, f));
    for (int i = 2; i <= r; ++i) {
      CHECK(contains(cuts, i));
      CHECK(contains(cuts, m + i));
    }
    CHECK(cuts.size() == static_cast<std::size_t>(2 * (r - 1)));
  }
}

TEST_CASE("gluing") {
  const auto glued = glue(k2, 2, Graph::from_edges({{10, 11}}), 10);
  CHECK(glued == Graph::from_edges({{1, 2}, {2, 11}}));
  CHECK_THROWS_AS(glue(k2, 2, Graph::from_edges({{1, 5}}), 5), GraphError);
  CHECK_THROWS_AS(glue(k2, 3, k2, 1), GraphError);

  const auto& fig3 = corpus_graph("fig3");
  for (auto v : fig3.vertices()) {
    const auto whisker = Graph::from_edges({{100, fig3.max_label() + 1}});
    CHECK(glue(fig3, v, whisker, 100) == add_whisker(fig3, v));
  }

  // G \ {9} glued at 3 to H \ {6} at its vertex 4 gives the 12-vertex F.
  const auto& g = corpus_graph("fig1a_G");
  const auto h = shift_labels(delete_vertex(corpus_graph("fig1b_H"), 6), 20);
  const auto f = glue(delete_vertex(g, 9), 3, h, 24);
  CHECK(f.order() == 12);
  CHECK(are_isomorphic(f, corpus_graph("fig2b_F")));

  const auto a = Graph::from_edges({{1, 2}, {2, 3}});
  const auto b = Graph::from_edges({{10, 11}, {11, 12}, {10, 12}});
  const auto c = Graph::from_edges({{20, 21}});
  CHECK(glue(glue(a, 1, b, 10), 3, c, 20) == glue(glue(a, 3, c, 20), 1, b, 10));
}

TEST_CASE("splitting at a cut vertex") {
  const auto bowtie = Graph::from_edges({{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
  const auto parts = split_at(bowtie, 3);
  REQUIRE(parts);
  CHECK(parts->first == Graph::from_edges({{1, 2}, {1, 3}, {2, 3}}));
  CHECK(parts->second == Graph::from_edges({{3, 4}, {3, 5}, {4, 5}}));
  CHECK_FALSE(split_at(bowtie, 1));
  CHECK_FALSE(split_at(Graph::from_edges({{1, 2}, {1, 3}, {1, 4}}), 1));
}

TEST_CASE("corpus") {
  struct Shape {
    const char* name;
    std::size_t n, m;
  };
  for (auto [name, n, m] : {Shape{"fig1a_G", 9, 12}, Shape{"fig1b_H", 6, 6}, Shape{"fig2a_L", 12, 16},
                            Shape{"fig2b_F", 12, 16}, Shape{"fig3", 10, 15}, Shape{"fig4", 10, 13},
                            Shape{"fig5", 25, 38}}) {
    INFO(name);
    CHECK(corpus_graph(name).order() == n);
    CHECK(corpus_graph(name).size() == m);
    CHECK(is_connected(corpus_graph(name)));
  }
  CHECK(reference_corpus().size() == 7);
  CHECK(corpus_graph("fig3") ==
        Graph::from_edges({{1, 2}, {1, 5}, {1, 4}, {1, 8}, {2, 3}, {2, 4}, {2, 7}, {2, 9}, {3, 5},
                           {3, 6}, {3, 7}, {3, 10}, {4, 5}, {5, 7}, {6, 7}}));
  CHECK(corpus_graph("fig1b_H") ==
        Graph::from_edges({{1, 2}, {1, 4}, {2, 3}, {3, 4}, {3, 5}, {4, 6}}));
  CHECK_THROWS_AS(corpus_graph("fig6"), GraphError);
}

TEST_CASE("recipes replay") {
  using R = ConstructionRecipe;
  CHECK(R::corpus("fig3").build() == corpus_graph("fig3"));
  CHECK(R::star(3, 3, 3, true).build() == whiskered_star_product(3, 3, 3));
  CHECK(R::star(4, 2, 2, false).build() == star_product(4, 2, 2));
  CHECK(R::whisker(R::corpus("fig3"), 4).build() == add_whisker(corpus_graph("fig3"), 4));
  const VertexSet b3{5, 6, 7, 8, 9, 10, 13};
  CHECK(R::block_whiskers(R::corpus("fig5"), b3, {5, 10, 13}).build() ==
        block_with_whiskers(corpus_graph("fig5"), b3));
  const auto colliding = R::glue(R::star(2, 2, 2, false), 1, R::corpus("fig1b_H"), 4);
  CHECK_THROWS_AS(colliding.build(), GraphError);
  const auto glued = R::glue(R::corpus("fig3"), 4, R::whisker(R::star(1, 1, 1, false), 1), 1);
  CHECK_THROWS_AS(glued.build(), GraphError);
  const auto nested = R::whisker(R::whisker(R::star(2, 2, 2, false), 1), 5);
  const auto first = nested.build();
  CHECK(first == nested.build());
  CHECK(first == Graph::from_edges({{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 5}, {5, 6}}));
}
