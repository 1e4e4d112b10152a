#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace kinv {

using Vertex = int;
using Arc = std::pair<Vertex, Vertex>;

// Input digraph as read from an instance, before normalization. May contain
// self-loops, opposite arc pairs and duplicates; arc order follows the input.
struct RawDigraph {
  int n = 0;
  std::vector<Arc> arcs;
};

enum class TrivialNoReason { SelfLoop, Digon };

const char* to_string(TrivialNoReason r);

// Simple oriented graph over an explicit vertex set: no self-loops, no
// opposite arc pairs, no duplicate arcs. Vertices keep their original ids so
// induced subgraphs remain addressable by identity. Immutable once built.
class OrientedGraph {
 public:
  OrientedGraph() = default;

  // `vertices` need not be sorted; arcs must connect listed vertices and
  // satisfy the invariants above (throws std::invalid_argument otherwise).
  static OrientedGraph from_arcs(std::vector<Vertex> vertices,
                                 const std::vector<Arc>& arcs);

  int order() const { return static_cast<int>(verts_.size()); }
  std::size_t arc_count() const { return arc_pack_.size(); }
  const std::vector<Vertex>& vertices() const { return verts_; }

  bool has_vertex(Vertex v) const { return index_.count(v) != 0; }
  bool has_arc(Vertex u, Vertex v) const;

  const std::vector<Vertex>& out_neighbors(Vertex v) const;
  const std::vector<Vertex>& in_neighbors(Vertex v) const;

  std::vector<Arc> arcs() const;              // sorted by (tail, head)
  std::vector<Arc> underlying_edges() const;  // unordered pairs, u < v, sorted

  // Local index of a vertex in vertices() (which is sorted ascending).
  int local_index(Vertex v) const;
  Vertex vertex_at(int i) const { return verts_[static_cast<std::size_t>(i)]; }

  bool operator==(const OrientedGraph& o) const {
    return verts_ == o.verts_ && arc_pack_ == o.arc_pack_;
  }

 private:
  std::uint64_t pack(int iu, int iv) const {
    return (static_cast<std::uint64_t>(iu) << 32) | static_cast<std::uint32_t>(iv);
  }

  std::vector<Vertex> verts_;  // sorted ascending
  std::unordered_map<Vertex, int> index_;
  std::unordered_set<std::uint64_t> arc_pack_;  // packed local index pairs
  std::vector<std::vector<Vertex>> out_, in_;   // by local index, sorted
};

struct Normalized {
  std::optional<OrientedGraph> graph;          // set unless trivially no
  std::optional<TrivialNoReason> trivial_no;
};

// Self-loop or opposite pair => trivial no-instance; parallel arcs collapse.
Normalized normalize(const RawDigraph& raw);

struct AcyclicityCheck {
  std::optional<std::vector<Vertex>> order;  // a topological order iff DAG
  std::vector<Vertex> cycle;                 // a directed cycle otherwise
  bool is_dag() const { return order.has_value(); }
};

AcyclicityCheck is_acyclic(const OrientedGraph& d);

// Subgraph induced by s; vertex identities preserved.
OrientedGraph induced_subgraph(const OrientedGraph& d, const std::vector<Vertex>& s);

// Ordered pairs (u,v), u != v, over s such that v is reachable from u by a
// directed path of length >= 1 in the whole of d (paths may leave s).
std::vector<Arc> reachable_pairs(const OrientedGraph& d, const std::vector<Vertex>& s);

// Vertex sets of the biconnected components of the underlying undirected
// graph; bridges give 2-vertex blocks, isolated vertices singleton blocks.
std::vector<std::vector<Vertex>> biconnected_components(const OrientedGraph& d);

struct ShapeReport {
  bool is_tournament = false;
  bool is_block_graph = false;
  std::vector<std::vector<Vertex>> components;  // partition of the vertex set
  // Filled lazily by callers that run the decomposition heuristic.
  std::optional<int> underlying_treewidth_upper_bound;
};

ShapeReport classify(const OrientedGraph& d);

}  // namespace kinv
