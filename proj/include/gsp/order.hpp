// Graph reduction orders: the abstract interface and the node-count
// instance. A reduction order is well-founded, closed under embeddings,
// substitutions and isomorphisms, and total on ground graphs.
#pragma once

#include <functional>
#include <string>

#include "gsp/graph.hpp"

namespace gsp {

enum class OrderVerdict { StrictlyGreater, StrictlyLess, Equivalent, Incomparable };

std::string to_string(OrderVerdict v);

struct GraphOrder {
  std::string name;
  std::function<OrderVerdict(const Graph&, const Graph&)> compare;

  bool greater(const Graph& g, const Graph& h) const {
    return compare(g, h) == OrderVerdict::StrictlyGreater;
  }
  bool greater_equal(const Graph& g, const Graph& h) const {
    OrderVerdict v = compare(g, h);
    return v == OrderVerdict::StrictlyGreater || v == OrderVerdict::Equivalent;
  }

  static const GraphOrder& node_count();
};

OrderVerdict compare_node_count(const Graph& g, const Graph& h);

}  // namespace gsp
