// Copyright 2026 The tnsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace tnsprep {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids.
class Region {
 public:
  Region() = default;
  /// Sorts and deduplicates.
  Region(std::vector<Vertex> vertices);  // NOLINT: implicit by design of call sites
  Region(std::initializer_list<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  bool contains(Vertex v) const;
  /// Position of v inside the region (0 = most significant qubit), or -1.
  int position(Vertex v) const;
  bool is_subset_of(const Region& other) const;
  bool intersects(const Region& other) const;

  Region unite(const Region& other) const;
  Region intersect(const Region& other) const;
  Region minus(const Region& other) const;

  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::vector<Vertex> vertices_;
};

/// Undirected simple graph on vertices 0..N-1. Immutable after construction.
class Graph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// out-of-range endpoints. Edges are stored with first < second.
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const;
  int degree_bound() const { return degree_bound_; }
  bool has_edge(Vertex a, Vertex b) const;
  void check_vertex(Vertex v) const;

  /// Shortest-path length, or nullopt when i and j lie in different components.
  std::optional<int> distance(Vertex i, Vertex j) const;
  /// BFS distances from source; -1 marks unreachable vertices.
  std::vector<int> distances_from(Vertex source) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  int degree_bound_ = 0;
};

/// min over centers i in V of max over j in region of d(i, j). Throws
/// std::invalid_argument for an empty region or a region spanning components.
int radius(const Graph& g, const Region& region);

/// All vertices within distance <= r of j, sorted.
Region ball(const Graph& g, Vertex j, int r);

namespace lattices {
Graph path(int length);
Graph cycle(int length);
/// Vertex id of site (x, y) is y * lx + x.
Graph grid(int lx, int ly, bool periodic);
}  // namespace lattices

}  // namespace tnsprep
