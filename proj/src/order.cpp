#include "gsp/order.hpp"

namespace gsp {

std::string to_string(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::StrictlyGreater: return "StrictlyGreater";
    case OrderVerdict::StrictlyLess: return "StrictlyLess";
    case OrderVerdict::Equivalent: return "Equivalent";
    case OrderVerdict::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

OrderVerdict compare_node_count(const Graph& g, const Graph& h) {
  if (g.node_count() > h.node_count()) return OrderVerdict::StrictlyGreater;
  if (g.node_count() < h.node_count()) return OrderVerdict::StrictlyLess;
  return OrderVerdict::Equivalent;
}

const GraphOrder& GraphOrder::node_count() {
  static const GraphOrder instance{"node-count", compare_node_count};
  return instance;
}

}  // namespace gsp
