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

#include "tnsprep/lattice.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace tnsprep {

Region::Region(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

Region::Region(std::initializer_list<Vertex> vertices) : Region(std::vector<Vertex>(vertices)) {}

bool Region::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int Region::position(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return -1;
  return static_cast<int>(it - vertices_.begin());
}

bool Region::is_subset_of(const Region& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

bool Region::intersects(const Region& other) const {
  auto a = vertices_.begin();
  auto b = other.vertices_.begin();
  while (a != vertices_.end() && b != other.vertices_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

Region Region::unite(const Region& other) const {
  std::vector<Vertex> out;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                 other.vertices_.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Region Region::intersect(const Region& other) const {
  std::vector<Vertex> out;
  std::set_intersection(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                        other.vertices_.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Region Region::minus(const Region& other) const {
  std::vector<Vertex> out;
  std::set_difference(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                      other.vertices_.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (vertex_count <= 0) throw std::invalid_argument("graph needs at least one vertex");
  adjacency_.resize(n_);
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
    Edge e = a < b ? Edge{a, b} : Edge{b, a};
    if (!seen.insert(e).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ")");
    edges_.push_back(e);
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    degree_bound_ = std::max(degree_bound_, static_cast<int>(adj.size()));
  }
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("invalid vertex id " + std::to_string(v));
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::vector<int> Graph::distances_from(Vertex source) const {
  check_vertex(source);
  std::vector<int> dist(n_, -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adjacency_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<int> Graph::distance(Vertex i, Vertex j) const {
  check_vertex(j);
  int d = distances_from(i)[j];
  if (d < 0) return std::nullopt;
  return d;
}

int radius(const Graph& g, const Region& region) {
  if (region.empty()) throw std::invalid_argument("radius of an empty region");
  for (Vertex v : region) g.check_vertex(v);
  int best = -1;
  for (Vertex center = 0; center < g.vertex_count(); ++center) {
    auto dist = g.distances_from(center);
    int ecc = 0;
    bool reachable = true;
    for (Vertex v : region) {
      if (dist[v] < 0) { reachable = false; break; }
      ecc = std::max(ecc, dist[v]);
    }
    if (reachable && (best < 0 || ecc < best)) best = ecc;
  }
  if (best < 0) throw std::invalid_argument("region spans disconnected components");
  return best;
}

Region ball(const Graph& g, Vertex j, int r) {
  if (r < 0) throw std::invalid_argument("ball radius must be non-negative");
  auto dist = g.distances_from(j);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (dist[v] >= 0 && dist[v] <= r) out.push_back(v);
  return Region(std::move(out));
}

namespace lattices {

Graph path(int length) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i + 1 < length; ++i) e.emplace_back(i, i + 1);
  return Graph(length, std::move(e));
}

Graph cycle(int length) {
  if (length < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Graph::Edge> e;
  for (int i = 0; i < length; ++i) e.emplace_back(i, (i + 1) % length);
  return Graph(length, std::move(e));
}

Graph grid(int lx, int ly, bool periodic) {
  if (lx <= 0 || ly <= 0) throw std::invalid_argument("grid dimensions must be positive");
  std::set<Graph::Edge> e;
  auto id = [lx](int x, int y) { return y * lx + x; };
  auto add = [&](int a, int b) {
    if (a != b) e.insert(a < b ? Graph::Edge{a, b} : Graph::Edge{b, a});
  };
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      if (x + 1 < lx) add(id(x, y), id(x + 1, y));
      else if (periodic && lx > 2) add(id(x, y), id(0, y));
      if (y + 1 < ly) add(id(x, y), id(x, y + 1));
      else if (periodic && ly > 2) add(id(x, y), id(x, 0));
    }
  }
  return Graph(lx * ly, std::vector<Graph::Edge>(e.begin(), e.end()));
}

}  // namespace lattices
}  // namespace tnsprep
