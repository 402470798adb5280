#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tqft/functional.hpp"

namespace tqft {

struct HalfEdge {
  int vertex;
  int slot;  // position in the vertex's cyclic order; 0 carries the arrow
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Ribbon graph with labeled vertices. Half-edges at vertex v are numbered
/// 0..deg(v)-1 in cyclic order; `matching` pairs them into edges.
class CellGraph {
 public:
  CellGraph(std::vector<int> degrees, const std::vector<std::pair<HalfEdge, HalfEdge>>& matching);
  /// From a flat partner array over half-edges numbered vertex by vertex.
  CellGraph(std::vector<int> degrees, std::vector<int> partner);

  int num_vertices() const { return static_cast<int>(degrees_.size()); }
  int num_edges() const { return static_cast<int>(partner_.size()) / 2; }
  const std::vector<int>& degrees() const { return degrees_; }
  HalfEdge partner(HalfEdge h) const;

  int num_faces() const;
  bool connected() const;
  /// From V - E + F = 2 - 2g. Requires a connected graph.
  int genus() const;

  std::vector<std::pair<HalfEdge, HalfEdge>> edges() const;

 private:
  int flat(HalfEdge h) const { return offset_[h.vertex] + h.slot; }
  HalfEdge unflat(int i) const;

  std::vector<int> degrees_;
  std::vector<int> offset_;
  std::vector<int> partner_;
};

/// Omega(gamma) as a functional on A^{(x)n}, computed by contracting edges:
/// ECA1 for edges between distinct vertices, ECA2 for loops (connected or
/// split form), ECA0 for a lone vertex. Always contracts the half-edge at
/// slot 0 of the lowest vertex that has edges.
ScalarFunctional eca_functional(const CellGraph& g, const AlgebraPtr& A);
Rational eca_evaluate(const CellGraph& g, const AlgebraPtr& A, const std::vector<Element>& vs);

/// Results of every possible sequence of contractions (each edge may be
/// contracted first, recursively). All entries agree for a sound algebra.
std::vector<ScalarFunctional> eca_all_orders(const CellGraph& g, const AlgebraPtr& A);

/// The graph after contracting the edge through half-edge h, together with
/// how its vertices relate to the old ones. Exposed for testing.
struct Contraction {
  enum Kind { Join, LoopConnected, LoopSplit } kind;
  CellGraph graph;
  std::vector<CellGraph> parts;  // for LoopSplit: the two components
  std::vector<int> origin;       // old vertex of each new vertex (LoopConnected: v twice)
};
Contraction contract(const CellGraph& g, HalfEdge h);

/// Number of matchings of half-edges with the given degrees (one arrow per
/// vertex at slot 0) that give a connected graph of genus g.
Integer count_arrowed_graphs(int g, const std::vector<int>& mu, int max_half_edges = 16);

/// Connected-graph counts by genus for one degree profile, plus the number
/// of disconnected matchings.
struct ArrowedCensus {
  std::map<int, Integer> by_genus;
  Integer disconnected = 0;
  Integer total = 0;
};
ArrowedCensus arrowed_census(const std::vector<int>& mu, int max_half_edges = 16);

/// Calls fn for every connected cell graph with the given degrees.
void for_each_matching(const std::vector<int>& degrees,
                       const std::function<void(const CellGraph&)>& fn);

/// Lattice-point count N_{g,n}(mu): sum over ribbon graphs with n labeled
/// faces of (number of positive integer edge lengths giving face perimeters
/// mu) / |Aut|. Only the types (0,3) and (1,1) are catalogued.
Rational count_lattice_points(int g, const std::vector<int>& mu);

nlohmann::json to_json(const CellGraph& g);
CellGraph cell_graph_from_json(const nlohmann::json& j);

}  // namespace tqft
