#include "algc/arrangement.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace algc {

Arrangement Arrangement::from_sequence(const WeightedGraph& g,
                                       std::vector<NodeId> seq) {
  if (seq.size() != g.n()) throw std::invalid_argument("sequence size mismatch");
  Arrangement a;
  a.seq = std::move(seq);
  a.rank.assign(g.n(), UINT32_MAX);
  for (uint32_t r = 0; r < a.seq.size(); ++r) {
    if (a.rank[a.seq[r]] != UINT32_MAX)
      throw std::invalid_argument("sequence is not a permutation");
    a.rank[a.seq[r]] = r;
  }
  a.recompute_positions(g);
  return a;
}

Arrangement Arrangement::identity(const WeightedGraph& g) {
  std::vector<NodeId> seq(g.n());
  for (NodeId i = 0; i < g.n(); ++i) seq[i] = i;
  return from_sequence(g, std::move(seq));
}

void Arrangement::recompute_positions(const WeightedGraph& g) {
  pos.assign(g.n(), 0.0);
  double prefix = 0.0;
  for (NodeId node : seq) {
    const double v = g.volume(node);
    pos[node] = prefix + 0.5 * v;
    prefix += v;
  }
}

double psum_cost(const WeightedGraph& g, const Arrangement& a, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
  double acc = 0.0;
  if (p == 1) {
    for (const Edge& e : g.edges()) acc += e.w * std::fabs(a.pos[e.u] - a.pos[e.v]);
  } else {
    for (const Edge& e : g.edges()) {
      const double d = a.pos[e.u] - a.pos[e.v];
      acc += e.w * d * d;
    }
  }
  return acc;
}

void write_ordering(std::ostream& out, const Arrangement& a, double cost) {
  for (NodeId i = 0; i < a.rank.size(); ++i)
    out << i << ' ' << (a.rank[i] + 1) << '\n';
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), cost);
  (void)ec;
  out << "cost " << std::string_view(buf, p - buf) << '\n';
}

}  // namespace algc
