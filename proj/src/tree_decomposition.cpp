#include "kinv/tree_decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "kinv/instance_io.hpp"

namespace kinv {

namespace {

// Builds the decomposition induced by an elimination order: the bag of v is
// {v} plus its neighbors in the partially eliminated fill graph; each bag
// hangs off the bag of the first neighbor eliminated after v. Forest roots
// (vertices eliminated with no remaining neighbors) are chained afterwards.
TreeDecomposition from_elimination_order(const OrientedGraph& g,
                                         const std::vector<Vertex>& order) {
  const int n = g.order();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.underlying_edges()) {
    adj[static_cast<std::size_t>(g.local_index(u))].insert(g.local_index(v));
    adj[static_cast<std::size_t>(g.local_index(v))].insert(g.local_index(u));
  }
  std::vector<int> elim_pos(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p)
    elim_pos[static_cast<std::size_t>(g.local_index(order[static_cast<std::size_t>(p)]))] = p;

  TreeDecomposition td;
  td.bags.resize(static_cast<std::size_t>(n));
  std::vector<int> roots;
  for (int p = 0; p < n; ++p) {
    const int u = g.local_index(order[static_cast<std::size_t>(p)]);
    std::vector<int> nbrs(adj[static_cast<std::size_t>(u)].begin(),
                          adj[static_cast<std::size_t>(u)].end());
    std::vector<Vertex> bag{g.vertex_at(u)};
    for (int w : nbrs) bag.push_back(g.vertex_at(w));
    std::sort(bag.begin(), bag.end());
    td.bags[static_cast<std::size_t>(p)] = std::move(bag);

    if (nbrs.empty()) {
      roots.push_back(p);
    } else {
      // fill the neighborhood into a clique, remove u
      for (std::size_t a = 0; a < nbrs.size(); ++a)
        for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
          adj[static_cast<std::size_t>(nbrs[a])].insert(nbrs[b]);
          adj[static_cast<std::size_t>(nbrs[b])].insert(nbrs[a]);
        }
      int next = -1, best = n + 1;
      for (int w : nbrs) {
        int pos = elim_pos[static_cast<std::size_t>(w)];
        if (pos > p && pos < best) {
          best = pos;
          next = pos;
        }
        adj[static_cast<std::size_t>(w)].erase(u);
      }
      td.edges.emplace_back(p, next);
    }
  }
  for (std::size_t r = 1; r < roots.size(); ++r)
    td.edges.emplace_back(roots[r - 1], roots[r]);
  if (n == 0) td.bags.push_back({});
  return td;
}

}  // namespace

TreeDecomposition compute_tree_decomposition(const OrientedGraph& g) {
  const int n = g.order();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.underlying_edges()) {
    adj[static_cast<std::size_t>(g.local_index(u))].insert(g.local_index(v));
    adj[static_cast<std::size_t>(g.local_index(v))].insert(g.local_index(u));
  }
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    long long pick_fill = -1;
    std::size_t pick_deg = 0;
    for (int u = 0; u < n; ++u) {
      if (gone[static_cast<std::size_t>(u)]) continue;
      const auto& nb = adj[static_cast<std::size_t>(u)];
      long long fill = 0;
      for (auto it = nb.begin(); it != nb.end(); ++it) {
        auto jt = it;
        for (++jt; jt != nb.end(); ++jt)
          if (!adj[static_cast<std::size_t>(*it)].count(*jt)) ++fill;
      }
      if (pick == -1 || fill < pick_fill ||
          (fill == pick_fill && nb.size() < pick_deg)) {
        pick = u;
        pick_fill = fill;
        pick_deg = nb.size();
      }
    }
    order.push_back(g.vertex_at(pick));
    std::vector<int> nbrs(adj[static_cast<std::size_t>(pick)].begin(),
                          adj[static_cast<std::size_t>(pick)].end());
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        adj[static_cast<std::size_t>(nbrs[a])].insert(nbrs[b]);
        adj[static_cast<std::size_t>(nbrs[b])].insert(nbrs[a]);
      }
    for (int w : nbrs) adj[static_cast<std::size_t>(w)].erase(pick);
    adj[static_cast<std::size_t>(pick)].clear();
    gone[static_cast<std::size_t>(pick)] = 1;
  }
  return from_elimination_order(g, order);
}

TreeDecomposition exact_tree_decomposition(const OrientedGraph& g) {
  const int n = g.order();
  if (n > 20) throw std::invalid_argument("exact decomposition limited to n <= 20");
  if (n == 0) return compute_tree_decomposition(g);

  std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.underlying_edges()) {
    nb[static_cast<std::size_t>(g.local_index(u))] |= std::uint32_t{1} << g.local_index(v);
    nb[static_cast<std::size_t>(g.local_index(v))] |= std::uint32_t{1} << g.local_index(u);
  }

  // Degree of v once the vertex set `elim` has been eliminated: neighbors of
  // v reachable through eliminated vertices only.
  auto elim_degree = [&](std::uint32_t elim, int v) {
    std::uint32_t seen = std::uint32_t{1} << v;
    std::uint32_t frontier = std::uint32_t{1} << v;
    std::uint32_t out = 0;
    while (frontier) {
      int u = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      std::uint32_t fresh = nb[static_cast<std::size_t>(u)] & ~seen;
      seen |= fresh;
      out |= fresh & ~elim;
      frontier |= fresh & elim;
    }
    return __builtin_popcount(out);
  };

  const std::uint32_t full = (n == 32) ? ~std::uint32_t{0}
                                       : (std::uint32_t{1} << n) - 1;
  std::vector<int> f(std::size_t{1} << n, 0);
  std::vector<int> choice(std::size_t{1} << n, -1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n + 1, best_v = -1;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = __builtin_ctz(rest);
      std::uint32_t prev = s & ~(std::uint32_t{1} << v);
      int cost = std::max(f[prev], elim_degree(prev, v));
      if (cost < best) {
        best = cost;
        best_v = v;
      }
    }
    f[s] = best;
    choice[s] = best_v;
  }

  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::uint32_t s = full;
  for (int p = n - 1; p >= 0; --p) {
    int v = choice[s];
    order[static_cast<std::size_t>(p)] = g.vertex_at(v);
    s &= ~(std::uint32_t{1} << v);
  }
  return from_elimination_order(g, order);
}

bool validate_tree_decomposition(const OrientedGraph& g, const TreeDecomposition& td,
                                 std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int m = static_cast<int>(td.bags.size());
  if (m == 0) return fail("no bags");
  for (const auto& [a, b] : td.edges)
    if (a < 0 || a >= m || b < 0 || b >= m || a == b)
      return fail("bad tree edge");
  if (static_cast<int>(td.edges.size()) != m - 1) return fail("edge count is not bags-1");
  std::vector<std::vector<int>> tadj(static_cast<std::size_t>(m));
  for (const auto& [a, b] : td.edges) {
    tadj[static_cast<std::size_t>(a)].push_back(b);
    tadj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++cnt;
    for (int w : tadj[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  if (cnt != m) return fail("tree is disconnected");

  for (const auto& bag : td.bags)
    for (Vertex v : bag)
      if (!g.has_vertex(v))
        return fail("bag vertex " + std::to_string(v) + " is not in the graph");
  for (Vertex v : g.vertices()) {
    bool covered = false;
    for (const auto& bag : td.bags)
      if (std::binary_search(bag.begin(), bag.end(), v)) {
        covered = true;
        break;
      }
    if (!covered) return fail("vertex " + std::to_string(v) + " in no bag");
  }
  for (const auto& [u, v] : g.underlying_edges()) {
    bool covered = false;
    for (const auto& bag : td.bags)
      if (std::binary_search(bag.begin(), bag.end(), u) &&
          std::binary_search(bag.begin(), bag.end(), v)) {
        covered = true;
        break;
      }
    if (!covered)
      return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} in no bag");
  }
  for (Vertex v : g.vertices()) {
    // bags containing v must induce a connected subtree
    std::vector<int> holders;
    for (int b = 0; b < m; ++b)
      if (std::binary_search(td.bags[static_cast<std::size_t>(b)].begin(),
                             td.bags[static_cast<std::size_t>(b)].end(), v))
        holders.push_back(b);
    if (holders.empty()) continue;
    std::set<int> holder_set(holders.begin(), holders.end());
    std::vector<int> st{holders[0]};
    std::set<int> vis{holders[0]};
    while (!st.empty()) {
      int u = st.back();
      st.pop_back();
      for (int w : tadj[static_cast<std::size_t>(u)])
        if (holder_set.count(w) && !vis.count(w)) {
          vis.insert(w);
          st.push_back(w);
        }
    }
    if (vis.size() != holder_set.size())
      return fail("occurrence subtree of vertex " + std::to_string(v) + " is disconnected");
  }
  return true;
}

std::vector<std::vector<Vertex>> NiceTreeDecomposition::subtree_vertices() const {
  std::vector<std::vector<Vertex>> vt(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::set<Vertex> acc(nodes[i].bag.begin(), nodes[i].bag.end());
    if (nodes[i].child1 >= 0) {
      const auto& c = vt[static_cast<std::size_t>(nodes[i].child1)];
      acc.insert(c.begin(), c.end());
    }
    if (nodes[i].child2 >= 0) {
      const auto& c = vt[static_cast<std::size_t>(nodes[i].child2)];
      acc.insert(c.begin(), c.end());
    }
    vt[i].assign(acc.begin(), acc.end());
  }
  return vt;
}

namespace {

struct NicifyBuilder {
  NiceTreeDecomposition out;
  using Kind = NiceTreeDecomposition::Kind;

  int add(Kind kind, std::vector<Vertex> bag, int c1 = -1, int c2 = -1,
          Vertex special = -1) {
    NiceTreeDecomposition::Node nd;
    nd.kind = kind;
    nd.bag = std::move(bag);
    nd.child1 = c1;
    nd.child2 = c2;
    nd.special = special;
    out.nodes.push_back(std::move(nd));
    return static_cast<int>(out.nodes.size()) - 1;
  }

  // Leaf chain: empty bag, then introduce target vertices ascending.
  int build_leaf_chain(const std::vector<Vertex>& target) {
    int cur = add(Kind::Leaf, {});
    std::vector<Vertex> bag;
    for (Vertex v : target) {
      bag.push_back(v);
      cur = add(Kind::Introduce, bag, cur, -1, v);
    }
    return cur;
  }

  // Morphs the chain top (with bag `from`) into bag `to`: forgets then
  // introduces, each in ascending vertex order.
  int morph(int node, std::vector<Vertex> from, const std::vector<Vertex>& to) {
    for (Vertex v : std::vector<Vertex>(from)) {
      if (std::binary_search(to.begin(), to.end(), v)) continue;
      from.erase(std::find(from.begin(), from.end(), v));
      node = add(Kind::Forget, from, node, -1, v);
    }
    for (Vertex v : to) {
      if (std::binary_search(from.begin(), from.end(), v)) continue;
      from.insert(std::upper_bound(from.begin(), from.end(), v), v);
      node = add(Kind::Introduce, from, node, -1, v);
    }
    return node;
  }
};

}  // namespace

NiceTreeDecomposition nicify(const TreeDecomposition& td) {
  const int m = static_cast<int>(td.bags.size());
  if (m == 0) throw std::invalid_argument("nicify: empty decomposition");
  std::vector<std::vector<int>> tadj(static_cast<std::size_t>(m));
  for (const auto& [a, b] : td.edges) {
    if (a < 0 || a >= m || b < 0 || b >= m)
      throw std::invalid_argument("nicify: bad tree edge");
    tadj[static_cast<std::size_t>(a)].push_back(b);
    tadj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& a : tadj) std::sort(a.begin(), a.end());

  NicifyBuilder nb;
  // iterative post-order from bag 0
  std::function<int(int, int)> build = [&](int t, int parent) -> int {
    std::vector<int> tops;
    for (int c : tadj[static_cast<std::size_t>(t)]) {
      if (c == parent) continue;
      int sub = build(c, t);
      tops.push_back(nb.morph(sub, td.bags[static_cast<std::size_t>(c)],
                              td.bags[static_cast<std::size_t>(t)]));
    }
    if (tops.empty()) return nb.build_leaf_chain(td.bags[static_cast<std::size_t>(t)]);
    int cur = tops[0];
    for (std::size_t i = 1; i < tops.size(); ++i)
      cur = nb.add(NiceTreeDecomposition::Kind::Join, td.bags[static_cast<std::size_t>(t)],
                   cur, tops[i]);
    return cur;
  };
  int top = build(0, -1);
  top = nb.morph(top, td.bags[0], {});
  nb.out.root = top;
  return nb.out;
}

bool validate_nice(const OrientedGraph& g, const NiceTreeDecomposition& ntd,
                   std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  using Kind = NiceTreeDecomposition::Kind;
  const int m = static_cast<int>(ntd.nodes.size());
  if (m == 0 || ntd.root != m - 1) return fail("root must be the last node");
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    const auto& nd = ntd.nodes[static_cast<std::size_t>(i)];
    if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) return fail("unsorted bag");
    auto child_ok = [&](int c) { return c >= 0 && c < i && !used[static_cast<std::size_t>(c)]; };
    switch (nd.kind) {
      case Kind::Leaf:
        if (!nd.bag.empty()) return fail("leaf bag not empty");
        if (nd.child1 != -1 || nd.child2 != -1) return fail("leaf with children");
        break;
      case Kind::Introduce:
      case Kind::Forget: {
        if (!child_ok(nd.child1) || nd.child2 != -1) return fail("bad unary child");
        used[static_cast<std::size_t>(nd.child1)] = 1;
        const auto& cb = ntd.nodes[static_cast<std::size_t>(nd.child1)].bag;
        std::vector<Vertex> small = nd.kind == Kind::Introduce ? cb : nd.bag;
        std::vector<Vertex> big = nd.kind == Kind::Introduce ? nd.bag : cb;
        if (big.size() != small.size() + 1) return fail("introduce/forget bag size");
        std::vector<Vertex> diff;
        std::set_difference(big.begin(), big.end(), small.begin(), small.end(),
                            std::back_inserter(diff));
        if (diff.size() != 1 || diff[0] != nd.special)
          return fail("introduce/forget vertex mismatch");
        break;
      }
      case Kind::Join: {
        if (!child_ok(nd.child1)) return fail("bad join child1");
        used[static_cast<std::size_t>(nd.child1)] = 1;
        if (!child_ok(nd.child2)) return fail("bad join child2");
        used[static_cast<std::size_t>(nd.child2)] = 1;
        if (ntd.nodes[static_cast<std::size_t>(nd.child1)].bag != nd.bag ||
            ntd.nodes[static_cast<std::size_t>(nd.child2)].bag != nd.bag)
          return fail("join children bags differ");
        break;
      }
    }
  }
  if (!ntd.nodes[static_cast<std::size_t>(ntd.root)].bag.empty())
    return fail("root bag not empty");
  for (int i = 0; i < m - 1; ++i)
    if (!used[static_cast<std::size_t>(i)]) return fail("dangling node");

  // the expansion is itself a tree decomposition
  TreeDecomposition td;
  for (const auto& nd : ntd.nodes) td.bags.push_back(nd.bag);
  for (int i = 0; i < m; ++i) {
    const auto& nd = ntd.nodes[static_cast<std::size_t>(i)];
    if (nd.child1 >= 0) td.edges.emplace_back(nd.child1, i);
    if (nd.child2 >= 0) td.edges.emplace_back(nd.child2, i);
  }
  std::string sub_why;
  if (!validate_tree_decomposition(g, td, &sub_why)) return fail(sub_why);
  return true;
}

TreeDecomposition parse_tree_decomposition(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::map<int, std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream tok(raw);
    std::string kind;
    if (!(tok >> kind)) continue;
    if (kind[0] == '#') continue;
    if (kind == "b") {
      int id;
      if (!(tok >> id) || id < 1) throw ParseError(line_no, 1, "bad bag id");
      if (bags.count(id - 1)) throw ParseError(line_no, 1, "duplicate bag id");
      std::vector<Vertex> bag;
      long long v;
      while (tok >> v) {
        if (v < 1) throw ParseError(line_no, 1, "vertex index out of range");
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      if (!tok.eof()) throw ParseError(line_no, 1, "bad vertex token");
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      bags[id - 1] = std::move(bag);
    } else if (kind == "e") {
      int a, b;
      if (!(tok >> a >> b) || a < 1 || b < 1)
        throw ParseError(line_no, 1, "bad tree edge");
      edges.emplace_back(a - 1, b - 1);
    } else {
      throw ParseError(line_no, 1, "unknown line kind '" + kind + "'");
    }
  }
  TreeDecomposition td;
  if (bags.empty()) throw ParseError(line_no + 1, 1, "no bags");
  int expect = 0;
  for (const auto& [id, bag] : bags) {
    if (id != expect++) throw ParseError(line_no + 1, 1, "bag ids must be 1..m");
    td.bags.push_back(bag);
  }
  td.edges = std::move(edges);
  return td;
}

TreeDecomposition parse_tree_decomposition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open decomposition file: " + path);
  return parse_tree_decomposition(in);
}

std::string format_tree_decomposition(const TreeDecomposition& td) {
  std::ostringstream out;
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << " " << v + 1;
    out << "\n";
  }
  for (const auto& [a, b] : td.edges) out << "e " << a + 1 << " " << b + 1 << "\n";
  return out.str();
}

}  // namespace kinv
