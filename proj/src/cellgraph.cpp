#include "tqft/cellgraph.hpp"

#include <algorithm>
#include <numeric>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

CellGraph::CellGraph(std::vector<int> degrees, std::vector<int> partner)
    : degrees_(std::move(degrees)), partner_(std::move(partner)) {
  int total = 0;
  for (int d : degrees_) {
    if (d < 0) throw Error("vertex degree must be non-negative");
    offset_.push_back(total);
    total += d;
  }
  if (static_cast<int>(partner_.size()) != total) throw Error("matching does not cover all half-edges");
  for (int i = 0; i < total; ++i) {
    const int p = partner_[i];
    if (p < 0 || p >= total || p == i || partner_[p] != i)
      throw Error("matching is not a perfect pairing of half-edges");
  }
}

CellGraph::CellGraph(std::vector<int> degrees,
                     const std::vector<std::pair<HalfEdge, HalfEdge>>& matching)
    : degrees_(std::move(degrees)) {
  int total = 0;
  for (int d : degrees_) {
    if (d < 0) throw Error("vertex degree must be non-negative");
    offset_.push_back(total);
    total += d;
  }
  partner_.assign(static_cast<std::size_t>(total), -1);
  auto check = [&](HalfEdge h) {
    if (h.vertex < 0 || h.vertex >= num_vertices() || h.slot < 0 || h.slot >= degrees_[h.vertex])
      throw Error("half-edge out of range");
    return flat(h);
  };
  for (const auto& [a, b] : matching) {
    const int x = check(a), y = check(b);
    if (x == y || partner_[x] >= 0 || partner_[y] >= 0)
      throw Error("matching is not a perfect pairing of half-edges");
    partner_[x] = y;
    partner_[y] = x;
  }
  for (int p : partner_)
    if (p < 0) throw Error("matching does not cover all half-edges");
}

HalfEdge CellGraph::unflat(int i) const {
  // The last vertex whose offset is <= i; empty vertices never qualify.
  int v = static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), i) - offset_.begin()) - 1;
  return {v, i - offset_[v]};
}

HalfEdge CellGraph::partner(HalfEdge h) const { return unflat(partner_[flat(h)]); }

int CellGraph::num_faces() const {
  const int total = static_cast<int>(partner_.size());
  std::vector<char> seen(static_cast<std::size_t>(total), 0);
  int faces = 0;
  for (int i = 0; i < total; ++i) {
    if (seen[i]) continue;
    ++faces;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      HalfEdge h = unflat(partner_[j]);  // alpha, then rotate at the far end
      j = offset_[h.vertex] + (h.slot + 1) % degrees_[h.vertex];
    }
  }
  for (int d : degrees_)
    if (d == 0) ++faces;
  return faces;
}

bool CellGraph::connected() const {
  const int n = num_vertices();
  if (n == 0) return false;
  UnionFind uf(n);
  for (int i = 0; i < static_cast<int>(partner_.size()); ++i)
    uf.unite(unflat(i).vertex, unflat(partner_[i]).vertex);
  for (int v = 1; v < n; ++v)
    if (uf.find(v) != uf.find(0)) return false;
  return true;
}

int CellGraph::genus() const {
  if (!connected()) throw Error("genus requires a connected cell graph");
  const int chi = num_vertices() - num_edges() + num_faces();
  if ((2 - chi) % 2 != 0 || chi > 2) throw Error("malformed ribbon structure: non-integral genus");
  return (2 - chi) / 2;
}

std::vector<std::pair<HalfEdge, HalfEdge>> CellGraph::edges() const {
  std::vector<std::pair<HalfEdge, HalfEdge>> out;
  for (int i = 0; i < static_cast<int>(partner_.size()); ++i)
    if (i < partner_[i]) out.emplace_back(unflat(i), unflat(partner_[i]));
  return out;
}

namespace {

// Builds a graph from per-vertex lists of old flat half-edge ids.
CellGraph rebuild(const std::vector<std::vector<int>>& rot, const std::vector<int>& old_partner) {
  std::vector<int> degrees;
  std::map<int, int> renumber;
  int next = 0;
  for (const auto& r : rot) {
    degrees.push_back(static_cast<int>(r.size()));
    for (int x : r) renumber[x] = next++;
  }
  std::vector<int> partner(static_cast<std::size_t>(next));
  for (const auto& [old_id, new_id] : renumber) partner[new_id] = renumber.at(old_partner[old_id]);
  return CellGraph(std::move(degrees), std::move(partner));
}

std::vector<int> flat_partners(const CellGraph& g) {
  std::vector<int> offs;
  int total = 0;
  for (int d : g.degrees()) {
    offs.push_back(total);
    total += d;
  }
  std::vector<int> p(static_cast<std::size_t>(total));
  for (const auto& [a, b] : g.edges()) {
    p[offs[a.vertex] + a.slot] = offs[b.vertex] + b.slot;
    p[offs[b.vertex] + b.slot] = offs[a.vertex] + a.slot;
  }
  return p;
}

}  // namespace

Contraction contract(const CellGraph& g, HalfEdge h) {
  const int n = g.num_vertices();
  if (h.vertex < 0 || h.vertex >= n || h.slot < 0 || h.slot >= g.degrees()[h.vertex])
    throw Error("half-edge out of range");
  const HalfEdge p = g.partner(h);
  const auto partner = flat_partners(g);
  std::vector<int> offs;
  int total = 0;
  for (int d : g.degrees()) {
    offs.push_back(total);
    total += d;
  }
  auto id = [&](int v, int s) { return offs[v] + s; };
  // Half-edges of vertex v in cyclic order starting just after slot `from`, stopping before `to`.
  auto arc = [&](int v, int from, int to) {
    std::vector<int> out;
    const int d = g.degrees()[v];
    for (int s = (from + 1) % d; s != to; s = (s + 1) % d) out.push_back(id(v, s));
    return out;
  };
  auto full = [&](int u) {
    std::vector<int> out;
    for (int s = 0; s < g.degrees()[u]; ++s) out.push_back(id(u, s));
    return out;
  };
  const int v = h.vertex;
  std::vector<std::vector<int>> rot;
  std::vector<int> origin;
  if (p.vertex != v) {
    const int w = p.vertex;
    for (int u = 0; u < n; ++u) {
      if (u == w) continue;
      if (u == v) {
        auto merged = arc(v, h.slot, h.slot);
        auto tail = arc(w, p.slot, p.slot);
        merged.insert(merged.end(), tail.begin(), tail.end());
        rot.push_back(std::move(merged));
      } else {
        rot.push_back(full(u));
      }
      origin.push_back(u);
    }
    return {Contraction::Join, rebuild(rot, partner), {}, origin};
  }
  for (int u = 0; u < n; ++u) {
    if (u == v) {
      rot.push_back(arc(v, h.slot, p.slot));
    } else {
      rot.push_back(full(u));
    }
    origin.push_back(u);
  }
  rot.push_back(arc(v, p.slot, h.slot));
  origin.push_back(v);
  CellGraph ng = rebuild(rot, partner);
  if (ng.connected()) return {Contraction::LoopConnected, ng, {}, origin};

  // Split into the component of the first copy of v and the rest.
  const int m = ng.num_vertices();
  UnionFind uf(m);
  for (const auto& [a, b] : ng.edges()) uf.unite(a.vertex, b.vertex);
  std::vector<std::vector<int>> rot1, rot2;
  for (int u = 0; u < m; ++u) (uf.find(u) == uf.find(v) ? rot1 : rot2).push_back(rot[u]);
  return {Contraction::LoopSplit, ng, {rebuild(rot1, partner), rebuild(rot2, partner)}, origin};
}

namespace {

struct EcaContext {
  AlgebraPtr A;
  bool all_orders;
};

std::vector<ScalarFunctional> eca_rec(const CellGraph& g, const EcaContext& ctx);

// Lifts functionals of the contracted graph back to g.
std::vector<ScalarFunctional> combine(const CellGraph& g, HalfEdge h, const EcaContext& ctx) {
  const int n = g.num_vertices();
  const int v = h.vertex;
  Contraction c = contract(g, h);
  std::vector<ScalarFunctional> out;
  if (c.kind == Contraction::Join) {
    const int w = g.partner(h).vertex;
    const int merged = static_cast<int>(std::find(c.origin.begin(), c.origin.end(), v) - c.origin.begin());
    std::vector<int> order{merged};  // slots of the contracted graph: merged first
    std::vector<int> lift{v, w};     // old vertices in m_star output order
    for (int k = 0; k < static_cast<int>(c.origin.size()); ++k)
      if (k != merged) {
        order.push_back(k);
        lift.push_back(c.origin[k]);
      }
    for (const auto& f : eca_rec(c.graph, ctx)) {
      auto lifted = m_star(f.permuted(inverse_perm(order)), 1);
      out.push_back(lifted.permuted(inverse_perm(lift)));
    }
    return out;
  }
  std::vector<int> rest;
  for (int u = 0; u < n; ++u)
    if (u != v) rest.push_back(u);
  std::vector<int> lift{v};
  lift.insert(lift.end(), rest.begin(), rest.end());
  if (c.kind == Contraction::LoopConnected) {
    // New vertices: old order with v's first copy in place, second copy last.
    std::vector<int> order{v, n};
    for (int u : rest) order.push_back(u);
    for (const auto& f : eca_rec(c.graph, ctx)) {
      auto lifted = delta_star(f.permuted(inverse_perm(order)));
      out.push_back(lifted.permuted(inverse_perm(lift)));
    }
    return out;
  }
  // Split: part 0 holds the first copy of v; both parts list vertices in new-graph order.
  const int m = c.graph.num_vertices();
  UnionFind uf(m);
  for (const auto& [a, b] : c.graph.edges()) uf.unite(a.vertex, b.vertex);
  std::vector<int> first;  // positions within `rest` that go to part 0
  std::vector<int> order1, order2;
  int i1 = 0, i2 = 0;
  int pos1_v = -1, pos2_v = -1;
  for (int u = 0; u < m; ++u) {
    const bool in1 = uf.find(u) == uf.find(v);
    const int local = in1 ? i1++ : i2++;
    if (u == v) pos1_v = local;
    if (u == n) pos2_v = local;
  }
  order1.push_back(pos1_v);
  order2.push_back(pos2_v);
  i1 = 0;
  i2 = 0;
  for (int u = 0; u < m; ++u) {
    const bool in1 = uf.find(u) == uf.find(v);
    const int local = in1 ? i1++ : i2++;
    if (u == v || u == n) continue;
    const int pos = static_cast<int>(std::find(rest.begin(), rest.end(), u) - rest.begin());
    if (in1) {
      order1.push_back(local);
      first.push_back(pos);
    } else {
      order2.push_back(local);
    }
  }
  auto r1 = eca_rec(c.parts[0], ctx);
  auto r2 = eca_rec(c.parts[1], ctx);
  for (const auto& f1 : r1)
    for (const auto& f2 : r2) {
      auto lifted = delta_star_split(f1.permuted(inverse_perm(order1)),
                                     f2.permuted(inverse_perm(order2)), first);
      out.push_back(lifted.permuted(inverse_perm(lift)));
      if (!ctx.all_orders) return out;
    }
  return out;
}

std::vector<ScalarFunctional> eca_rec(const CellGraph& g, const EcaContext& ctx) {
  if (g.num_edges() == 0) {
    if (g.num_vertices() != 1) throw Error("edge contraction requires a connected cell graph");
    return {omega_functional(ctx.A, 0, 1)};
  }
  if (!ctx.all_orders) {
    int v = 0;
    while (g.degrees()[v] == 0) ++v;
    return combine(g, {v, 0}, ctx);
  }
  std::vector<ScalarFunctional> out;
  for (const auto& e : g.edges()) {
    auto r = combine(g, e.first, ctx);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

ScalarFunctional eca_functional(const CellGraph& g, const AlgebraPtr& A) {
  if (!g.connected()) throw Error("edge contraction requires a connected cell graph");
  return eca_rec(g, {A, false}).front();
}

Rational eca_evaluate(const CellGraph& g, const AlgebraPtr& A, const std::vector<Element>& vs) {
  return eca_functional(g, A).evaluate(vs);
}

std::vector<ScalarFunctional> eca_all_orders(const CellGraph& g, const AlgebraPtr& A) {
  if (!g.connected()) throw Error("edge contraction requires a connected cell graph");
  return eca_rec(g, {A, true});
}

void for_each_matching(const std::vector<int>& degrees,
                       const std::function<void(const CellGraph&)>& fn) {
  const int total = std::accumulate(degrees.begin(), degrees.end(), 0);
  if (total % 2 != 0) return;
  std::vector<int> partner(static_cast<std::size_t>(total), -1);
  std::function<void()> rec = [&]() {
    int i = 0;
    while (i < total && partner[i] >= 0) ++i;
    if (i == total) {
      CellGraph g(degrees, partner);
      if (g.connected()) fn(g);
      return;
    }
    for (int j = i + 1; j < total; ++j) {
      if (partner[j] >= 0) continue;
      partner[i] = j;
      partner[j] = i;
      rec();
      partner[i] = partner[j] = -1;
    }
  };
  rec();
}

ArrowedCensus arrowed_census(const std::vector<int>& mu, int max_half_edges) {
  ArrowedCensus census;
  for (int m : mu)
    if (m < 0) throw Error("degrees must be non-negative");
  const int n = static_cast<int>(mu.size());
  const int total = std::accumulate(mu.begin(), mu.end(), 0);
  if (total > max_half_edges)
    throw BudgetError("matching enumeration over " + std::to_string(total) +
                      " half-edges exceeds the budget of " + std::to_string(max_half_edges));
  if (n == 0 || total % 2 != 0) return census;
  if (total == 0) {
    // Isolated vertices only: connected (genus 0) exactly when there is one.
    census.total = 1;
    if (n == 1)
      census.by_genus[0] = 1;
    else
      census.disconnected = 1;
    return census;
  }
  // Flat arrays: vertex of each half-edge and the next half-edge around its vertex.
  std::vector<int> vert, next;
  for (int v = 0, base = 0; v < n; base += mu[v], ++v)
    for (int s = 0; s < mu[v]; ++s) {
      vert.push_back(v);
      next.push_back(base + (s + 1) % mu[v]);
    }
  const int zero_vertices = static_cast<int>(std::count(mu.begin(), mu.end(), 0));
  std::vector<int> partner(static_cast<std::size_t>(total), -1);
  std::vector<char> seen(static_cast<std::size_t>(total));
  std::vector<int> parent(static_cast<std::size_t>(n));
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::function<void()> rec = [&]() {
    int i = 0;
    while (i < total && partner[i] >= 0) ++i;
    if (i == total) {
      ++census.total;
      std::iota(parent.begin(), parent.end(), 0);
      int comps = n;
      for (int x = 0; x < total; ++x) {
        int a = find(vert[x]), b = find(vert[partner[x]]);
        if (a != b) {
          parent[a] = b;
          --comps;
        }
      }
      if (comps != 1) {
        ++census.disconnected;
        return;
      }
      std::fill(seen.begin(), seen.end(), 0);
      int faces = 0;
      for (int x = 0; x < total; ++x) {
        if (seen[x]) continue;
        ++faces;
        for (int y = x; !seen[y]; y = next[partner[y]]) seen[y] = 1;
      }
      const int chi = n - total / 2 + faces + zero_vertices;
      ++census.by_genus[(2 - chi) / 2];
      return;
    }
    for (int j = i + 1; j < total; ++j) {
      if (partner[j] >= 0) continue;
      partner[i] = j;
      partner[j] = i;
      rec();
      partner[i] = partner[j] = -1;
    }
  };
  rec();
  return census;
}

Integer count_arrowed_graphs(int g, const std::vector<int>& mu, int max_half_edges) {
  const int total = std::accumulate(mu.begin(), mu.end(), 0);
  if (total % 2 != 0) return 0;
  auto census = arrowed_census(mu, max_half_edges);
  auto it = census.by_genus.find(g);
  return it == census.by_genus.end() ? Integer(0) : it->second;
}

namespace {

// A ribbon graph with unlabeled faces: face perimeters as edge multiplicities.
struct LatticeTopology {
  int aut;
  int edges;
  std::vector<std::vector<int>> faces;
};

const std::vector<LatticeTopology>& lattice_catalog(int g, int n) {
  static const std::vector<LatticeTopology> genus0_three{
      // theta: two trivalent vertices, each face bounded by two of the three edges
      {6, 3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}},
      // dumbbell: two loops joined by a bridge; the outer face runs the bridge twice
      {2, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}},
      // figure eight: one 4-valent vertex with two nested-free loops
      {2, 2, {{1, 0}, {0, 1}, {1, 1}}},
  };
  static const std::vector<LatticeTopology> genus1_one{
      // theta on the torus: one face running every edge twice
      {6, 3, {{2, 2, 2}}},
      // figure eight on the torus: one 4-valent vertex, crossing loops
      {4, 2, {{2, 2}}},
  };
  static const std::vector<LatticeTopology> none;
  if (g == 0 && n == 3) return genus0_three;
  if (g == 1 && n == 1) return genus1_one;
  return none;
}

}  // namespace

Rational count_lattice_points(int g, const std::vector<int>& mu) {
  const int n = static_cast<int>(mu.size());
  if (2 * g - 2 + n > 2 || lattice_catalog(g, n).empty())
    throw BudgetError("lattice-point catalogue only covers types (0,3) and (1,1)");
  for (int m : mu)
    if (m < 1 || m > 12) throw BudgetError("lattice-point oracle needs 1 <= mu_i <= 12");
  const int bound = *std::max_element(mu.begin(), mu.end());
  Rational total = 0;
  for (const auto& topo : lattice_catalog(g, n)) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
    Integer hits = 0;
    do {
      // Face labels[f] gets perimeter mu[labels[f]]; count edge-length vectors.
      std::vector<int> len(static_cast<std::size_t>(topo.edges), 1);
      for (;;) {
        bool ok = true;
        for (int f = 0; f < n && ok; ++f) {
          int per = 0;
          for (int e = 0; e < topo.edges; ++e) per += topo.faces[f][e] * len[e];
          ok = per == mu[labels[f]];
        }
        if (ok) ++hits;
        int p = topo.edges - 1;
        while (p >= 0 && ++len[p] > bound) len[p--] = 1;
        if (p < 0) break;
      }
    } while (std::next_permutation(labels.begin(), labels.end()));
    total += Rational(hits) / topo.aut;
  }
  return total;
}

nlohmann::json to_json(const CellGraph& g) {
  nlohmann::json m = nlohmann::json::array();
  for (const auto& [a, b] : g.edges())
    m.push_back({{a.vertex, a.slot}, {b.vertex, b.slot}});
  return {{"degrees", g.degrees()}, {"matching", m}};
}

CellGraph cell_graph_from_json(const nlohmann::json& j) {
  auto degrees = j.at("degrees").get<std::vector<int>>();
  std::vector<std::pair<HalfEdge, HalfEdge>> matching;
  for (const auto& e : j.at("matching")) {
    auto a = e.at(0).get<std::vector<int>>();
    auto b = e.at(1).get<std::vector<int>>();
    if (a.size() != 2 || b.size() != 2) throw Error("half-edge must be [vertex, slot]");
    matching.push_back({{a[0], a[1]}, {b[0], b[1]}});
  }
  return CellGraph(std::move(degrees), matching);
}

}  // namespace tqft
