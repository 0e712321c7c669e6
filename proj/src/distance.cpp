#include "algc/distance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "algc/kernels.hpp"

namespace algc {

double edge_algebraic_distance(const TestVectorSet& tv, NodeId i, NodeId j,
                               DistanceKind kind) {
  const auto& kr = kernels::ops();
  if (kind == DistanceKind::max_norm)
    return kr.maxabs_diff(tv.lane(i), tv.lane(j), tv.k());
  return kr.sumsq_diff(tv.lane(i), tv.lane(j), tv.k());
}

double classical_coupling(const WeightedGraph& g, NodeId i, NodeId j) {
  const double w = g.edge_weight(i, j);
  const double denom = std::max(g.weighted_degree(i), g.weighted_degree(j));
  return denom > 0.0 ? w / denom : 0.0;
}

namespace {

double pinf_objective(const TestVectorSet& tv, NodeId i, NodeId j, double eta) {
  const double inv = 1.0 / eta;
  const double* a = tv.lane(i);
  const double* b = tv.lane(j);
  double m = 0.0;
  for (uint32_t k = 0; k < tv.k(); ++k)
    m = std::max(m, std::fabs(eta * a[k] - inv * b[k]));
  return m;
}

}  // namespace

double general_algebraic_distance(const TestVectorSet& tv, NodeId i, NodeId j,
                                  PNorm p) {
  const auto& kr = kernels::ops();
  const double sii = kr.dot(tv.lane(i), tv.lane(i), tv.k());
  const double sjj = kr.dot(tv.lane(j), tv.lane(j), tv.k());
  if (sii == 0.0 || sjj == 0.0) return std::sqrt(sii + sjj);

  if (p == PNorm::p2) {
    const double sij = kr.dot(tv.lane(i), tv.lane(j), tv.k());
    const double v = 2.0 * std::sqrt(sii * sjj) - 2.0 * sij;
    return std::sqrt(std::max(v, 0.0));
  }

  // golden-section search over t = log(eta); the max-norm objective is
  // unimodal in t on generic data
  const double inv_phi = 0.6180339887498949;
  double lo = std::log(1e-6), hi = std::log(1e6);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = pinf_objective(tv, i, j, std::exp(x1));
  double f2 = pinf_objective(tv, i, j, std::exp(x2));
  for (int it = 0; it < 200; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = pinf_objective(tv, i, j, std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = pinf_objective(tv, i, j, std::exp(x2));
    }
  }
  return std::min(f1, f2);
}

SetDistanceResult algebraic_distance_to_set(const TestVectorSet& tv, NodeId i,
                                            std::span<const NodeId> set) {
  if (set.empty()) throw std::invalid_argument("interpolation set is empty");
  if (set.size() > tv.k())
    throw std::invalid_argument("underdetermined interpolation: |S| > K");
  for (NodeId s : set)
    if (s == i) throw std::invalid_argument("node i must not be in S");

  constexpr double kRidge = 1e-10;
  const size_t m = set.size();
  const auto& kr = kernels::ops();

  // normal equations (G + lambda I) c = g
  std::vector<double> gram(m * m);
  std::vector<double> rhs(m);
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = a; b < m; ++b) {
      const double v = kr.dot(tv.lane(set[a]), tv.lane(set[b]), tv.k());
      gram[a * m + b] = v;
      gram[b * m + a] = v;
    }
    gram[a * m + a] += kRidge;
    rhs[a] = kr.dot(tv.lane(set[a]), tv.lane(i), tv.k());
  }

  // Cholesky; the ridge keeps the matrix positive definite
  std::vector<double> chol(gram);
  for (size_t c = 0; c < m; ++c) {
    for (size_t r = c; r < m; ++r) {
      double sum = chol[r * m + c];
      for (size_t k = 0; k < c; ++k) sum -= chol[r * m + k] * chol[c * m + k];
      if (r == c) {
        chol[c * m + c] = std::sqrt(std::max(sum, kRidge * 1e-3));
      } else {
        chol[r * m + c] = sum / chol[c * m + c];
      }
    }
  }
  std::vector<double> y(m), coeff(m);
  for (size_t r = 0; r < m; ++r) {
    double sum = rhs[r];
    for (size_t k = 0; k < r; ++k) sum -= chol[r * m + k] * y[k];
    y[r] = sum / chol[r * m + r];
  }
  for (size_t r = m; r-- > 0;) {
    double sum = y[r];
    for (size_t k = r + 1; k < m; ++k) sum -= chol[k * m + r] * coeff[k];
    coeff[r] = sum / chol[r * m + r];
  }

  double dev_sq = 0.0;
  for (uint32_t k = 0; k < tv.k(); ++k) {
    double resid = tv.value(i, k);
    for (size_t a = 0; a < m; ++a) resid -= coeff[a] * tv.value(set[a], k);
    dev_sq += resid * resid;
  }
  return {std::sqrt(dev_sq), std::move(coeff)};
}

CouplingTable build_coupling_table(const WeightedGraph& g,
                                   const TestVectorSet& tv, DistanceKind kind) {
  if (tv.graph_fingerprint() != g.fingerprint())
    throw std::invalid_argument("test vectors were not computed on this graph");
  CouplingTable t;
  t.kind = kind;
  t.distance.resize(g.m());
  t.coupling.resize(g.m());
  t.classical.resize(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edges()[e];
    const double d = edge_algebraic_distance(tv, ed.u, ed.v, kind);
    t.distance[e] = d;
    t.coupling[e] = 1.0 / std::max(d, CouplingTable::kDistanceFloor);
    t.classical[e] =
        ed.w / std::max(g.weighted_degree(ed.u), g.weighted_degree(ed.v));
  }
  return t;
}

void CouplingTable::write_csv(std::ostream& out, const WeightedGraph& g) const {
  out << "i,j,w,d,c,classical\n";
  char buf[64];
  auto put = [&](double v) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out << std::string_view(buf, p - buf);
  };
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edges()[e];
    out << ed.u << ',' << ed.v << ',';
    put(ed.w);
    out << ',';
    put(distance[e]);
    out << ',';
    put(coupling[e]);
    out << ',';
    put(classical[e]);
    out << '\n';
  }
}

}  // namespace algc
