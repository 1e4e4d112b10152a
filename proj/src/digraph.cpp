#include "kinv/digraph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace kinv {

const char* to_string(TrivialNoReason r) {
  return r == TrivialNoReason::SelfLoop ? "self-loop" : "digon";
}

OrientedGraph OrientedGraph::from_arcs(std::vector<Vertex> vertices,
                                       const std::vector<Arc>& arcs) {
  OrientedGraph g;
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw std::invalid_argument("duplicate vertex id");
  g.verts_ = std::move(vertices);
  g.index_.reserve(g.verts_.size());
  for (int i = 0; i < g.order(); ++i) g.index_[g.verts_[i]] = i;
  g.out_.resize(g.verts_.size());
  g.in_.resize(g.verts_.size());
  for (const auto& [u, v] : arcs) {
    auto iu = g.index_.find(u), iv = g.index_.find(v);
    if (iu == g.index_.end() || iv == g.index_.end())
      throw std::invalid_argument("arc endpoint is not a vertex of the graph");
    if (u == v) throw std::invalid_argument("self-loop");
    if (g.arc_pack_.count(g.pack(iv->second, iu->second)))
      throw std::invalid_argument("opposite arc pair");
    if (!g.arc_pack_.insert(g.pack(iu->second, iv->second)).second)
      throw std::invalid_argument("duplicate arc");
    g.out_[iu->second].push_back(v);
    g.in_[iv->second].push_back(u);
  }
  for (auto& nb : g.out_) std::sort(nb.begin(), nb.end());
  for (auto& nb : g.in_) std::sort(nb.begin(), nb.end());
  return g;
}

bool OrientedGraph::has_arc(Vertex u, Vertex v) const {
  auto iu = index_.find(u), iv = index_.find(v);
  if (iu == index_.end() || iv == index_.end()) return false;
  return arc_pack_.count(pack(iu->second, iv->second)) != 0;
}

const std::vector<Vertex>& OrientedGraph::out_neighbors(Vertex v) const {
  return out_[static_cast<std::size_t>(local_index(v))];
}

const std::vector<Vertex>& OrientedGraph::in_neighbors(Vertex v) const {
  return in_[static_cast<std::size_t>(local_index(v))];
}

int OrientedGraph::local_index(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw std::out_of_range("vertex not in graph");
  return it->second;
}

std::vector<Arc> OrientedGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_pack_.size());
  for (Vertex u : verts_)
    for (Vertex v : out_neighbors(u)) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Arc> OrientedGraph::underlying_edges() const {
  std::vector<Arc> out;
  out.reserve(arc_pack_.size());
  for (const auto& [u, v] : arcs())
    out.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(out.begin(), out.end());
  return out;
}

Normalized normalize(const RawDigraph& raw) {
  Normalized res;
  std::set<Arc> seen;
  std::vector<Arc> kept;
  for (const auto& [u, v] : raw.arcs) {
    if (u < 1 || u > raw.n || v < 1 || v > raw.n)
      throw std::invalid_argument("arc endpoint out of range");
    if (u == v) {
      res.trivial_no = TrivialNoReason::SelfLoop;
      return res;
    }
    if (seen.count({v, u})) {
      res.trivial_no = TrivialNoReason::Digon;
      return res;
    }
    if (seen.insert({u, v}).second) kept.emplace_back(u - 1, v - 1);
  }
  std::vector<Vertex> verts(static_cast<std::size_t>(raw.n));
  for (int i = 0; i < raw.n; ++i) verts[static_cast<std::size_t>(i)] = i;
  res.graph = OrientedGraph::from_arcs(std::move(verts), kept);
  return res;
}

AcyclicityCheck is_acyclic(const OrientedGraph& d) {
  const int n = d.order();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    indeg[static_cast<std::size_t>(i)] =
        static_cast<int>(d.in_neighbors(d.vertex_at(i)).size());

  // Kahn's algorithm; the ready set is kept sorted so the emitted
  // topological order is deterministic.
  std::set<int> ready;
  for (int i = 0; i < n; ++i)
    if (indeg[static_cast<std::size_t>(i)] == 0) ready.insert(i);

  AcyclicityCheck res;
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  auto deg = indeg;
  while (!ready.empty()) {
    int i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(d.vertex_at(i));
    for (Vertex w : d.out_neighbors(d.vertex_at(i))) {
      int j = d.local_index(w);
      if (--deg[static_cast<std::size_t>(j)] == 0) ready.insert(j);
    }
  }
  if (static_cast<int>(order.size()) == n) {
    res.order = std::move(order);
    return res;
  }

  // Trace a directed cycle via DFS: the first back edge closes one.
  std::vector<int> color(static_cast<std::size_t>(n), 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> path;
  std::vector<std::size_t> next_out(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n && res.cycle.empty(); ++s) {
    if (color[static_cast<std::size_t>(s)] != 0) continue;
    path.assign(1, s);
    color[static_cast<std::size_t>(s)] = 1;
    while (!path.empty() && res.cycle.empty()) {
      const int u = path.back();
      const auto& outs = d.out_neighbors(d.vertex_at(u));
      if (next_out[static_cast<std::size_t>(u)] == outs.size()) {
        color[static_cast<std::size_t>(u)] = 2;
        path.pop_back();
        continue;
      }
      const int w = d.local_index(outs[next_out[static_cast<std::size_t>(u)]++]);
      if (color[static_cast<std::size_t>(w)] == 1) {
        auto at = std::find(path.begin(), path.end(), w);
        for (auto it = at; it != path.end(); ++it) res.cycle.push_back(d.vertex_at(*it));
      } else if (color[static_cast<std::size_t>(w)] == 0) {
        color[static_cast<std::size_t>(w)] = 1;
        path.push_back(w);
      }
    }
  }
  return res;
}

OrientedGraph induced_subgraph(const OrientedGraph& d, const std::vector<Vertex>& s) {
  std::vector<Vertex> verts = s;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (Vertex v : verts)
    if (!d.has_vertex(v)) throw std::out_of_range("induced_subgraph: vertex not in graph");
  std::vector<Arc> arcs;
  for (Vertex u : verts)
    for (Vertex v : d.out_neighbors(u))
      if (std::binary_search(verts.begin(), verts.end(), v)) arcs.emplace_back(u, v);
  return OrientedGraph::from_arcs(std::move(verts), arcs);
}

std::vector<Arc> reachable_pairs(const OrientedGraph& d, const std::vector<Vertex>& s) {
  std::vector<Vertex> sel = s;
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  const int n = d.order();
  std::vector<Arc> out;
  std::vector<char> seen(static_cast<std::size_t>(n));
  std::vector<int> stack;
  for (Vertex src : sel) {
    std::fill(seen.begin(), seen.end(), 0);
    // paths of length >= 1: seed with out-neighbors, not with src
    for (Vertex w : d.out_neighbors(src)) {
      int j = d.local_index(w);
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        stack.push_back(j);
      }
    }
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (Vertex w : d.out_neighbors(d.vertex_at(i))) {
        int j = d.local_index(w);
        if (!seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          stack.push_back(j);
        }
      }
    }
    for (Vertex dst : sel)
      if (dst != src && seen[static_cast<std::size_t>(d.local_index(dst))])
        out.emplace_back(src, dst);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Hopcroft-Tarjan biconnected components on the underlying undirected graph.
struct BccState {
  const OrientedGraph* g;
  std::vector<std::vector<int>> adj;  // undirected, local indices, sorted
  std::vector<int> disc, low;
  std::vector<std::pair<int, int>> edge_stack;
  std::vector<std::vector<Vertex>> blocks;
  int timer = 0;

  void dfs(int u, int parent_edge_to) {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (disc[static_cast<std::size_t>(v)] == -1) {
        edge_stack.emplace_back(u, v);
        dfs(v, u);
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)]) {
          std::set<int> members;
          while (true) {
            auto [a, b] = edge_stack.back();
            edge_stack.pop_back();
            members.insert(a);
            members.insert(b);
            if (a == u && b == v) break;
          }
          std::vector<Vertex> blk;
          for (int i : members) blk.push_back(g->vertex_at(i));
          blocks.push_back(std::move(blk));
        }
      } else if (v != parent_edge_to && disc[static_cast<std::size_t>(v)] < disc[static_cast<std::size_t>(u)]) {
        edge_stack.emplace_back(u, v);
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(v)]);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<Vertex>> biconnected_components(const OrientedGraph& d) {
  const int n = d.order();
  BccState st;
  st.g = &d;
  st.adj.resize(static_cast<std::size_t>(n));
  for (const auto& [u, v] : d.underlying_edges()) {
    st.adj[static_cast<std::size_t>(d.local_index(u))].push_back(d.local_index(v));
    st.adj[static_cast<std::size_t>(d.local_index(v))].push_back(d.local_index(u));
  }
  for (auto& a : st.adj) std::sort(a.begin(), a.end());
  st.disc.assign(static_cast<std::size_t>(n), -1);
  st.low.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (st.disc[static_cast<std::size_t>(i)] != -1) continue;
    if (st.adj[static_cast<std::size_t>(i)].empty()) {
      st.disc[static_cast<std::size_t>(i)] = st.timer++;
      st.blocks.push_back({d.vertex_at(i)});
      continue;
    }
    st.dfs(i, -1);
  }
  return st.blocks;
}

ShapeReport classify(const OrientedGraph& d) {
  ShapeReport rep;
  const int n = d.order();

  // weakly connected components, ascending start vertex
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<Vertex> comp;
    std::vector<int> stack{i};
    seen[static_cast<std::size_t>(i)] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(d.vertex_at(u));
      auto visit = [&](Vertex w) {
        int j = d.local_index(w);
        if (!seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          stack.push_back(j);
        }
      };
      for (Vertex w : d.out_neighbors(d.vertex_at(u))) visit(w);
      for (Vertex w : d.in_neighbors(d.vertex_at(u))) visit(w);
    }
    std::sort(comp.begin(), comp.end());
    rep.components.push_back(std::move(comp));
  }

  // On an oriented graph, |arcs| = n(n-1)/2 already forces one arc per pair
  // (and connectivity).
  rep.is_tournament =
      d.arc_count() == static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2;

  rep.is_block_graph = true;
  for (const auto& blk : biconnected_components(d)) {
    const std::size_t m = blk.size();
    std::size_t edges = 0;
    for (Vertex u : blk)
      for (Vertex v : blk)
        if (u < v && (d.has_arc(u, v) || d.has_arc(v, u))) ++edges;
    if (edges != m * (m - 1) / 2) {
      rep.is_block_graph = false;
      break;
    }
  }
  return rep;
}

}  // namespace kinv
