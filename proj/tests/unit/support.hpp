#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls the library routine it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "bipexp/graph.hpp"
#include "bipexp/potential.hpp"

namespace testsupport {

using bipexp::BipartiteGraph;
using bipexp::Edge;
using bipexp::Index;

// Toy graph, 0-based: k1-i1, k2-i2, k2-i3, k3-i3, k4-i1, k4-i4, k4-i5.
inline BipartiteGraph toy_graph() {
  const std::vector<Edge> edges{{0, 0}, {1, 1}, {1, 2}, {2, 2}, {3, 0}, {3, 3}, {3, 4}};
  return BipartiteGraph::build(4, 5, edges);
}

inline std::vector<std::set<Index>> neighbor_sets(const BipartiteGraph& g) {
  std::vector<std::set<Index>> out(g.n());
  for (const Edge& e : g.edges()) out[e.outcome].insert(e.intervention);
  return out;
}

inline std::size_t intersection_size(const std::set<Index>& a, const std::set<Index>& b) {
  std::size_t c = 0;
  for (Index k : a) c += b.count(k);
  return c;
}

inline std::size_t union_size(const std::set<Index>& a, const std::set<Index>& b) {
  return a.size() + b.size() - intersection_size(a, b);
}

struct DenseLambda {
  Eigen::MatrixXd treated, control, cross;
};

inline DenseLambda dense_lambda(const BipartiteGraph& g, double p) {
  const auto nb = neighbor_sets(g);
  const auto n = static_cast<Eigen::Index>(g.n());
  DenseLambda L{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double theta = static_cast<double>(intersection_size(nb[i], nb[j]));
      if (theta == 0.0) continue;
      L.treated(i, j) = std::pow(p, -theta) - 1.0;
      L.control(i, j) = std::pow(1.0 - p, -theta) - 1.0;
      L.cross(i, j) = 1.0;
    }
  }
  return L;
}

inline Eigen::VectorXd centered(const Eigen::VectorXd& v) { return v.array() - v.mean(); }

// n^-2 (Y1'L1 Y1 + Y0'L0 Y0 + 2 Y1'Lc Y0) with dense matrices.
struct DenseVariance {
  double v_n, v1, v0;
};

inline DenseVariance dense_variance(const DenseLambda& L, const Eigen::VectorXd& y1, const Eigen::VectorXd& y0) {
  const Eigen::VectorXd a = centered(y1), b = centered(y0);
  const double n2 = static_cast<double>(a.size()) * static_cast<double>(a.size());
  DenseVariance v{};
  v.v1 = a.dot(L.treated * a) / n2;
  v.v0 = b.dot(L.control * b) / n2;
  v.v_n = v.v1 + v.v0 + 2.0 * a.dot(L.cross * b) / n2;
  return v;
}

// Exposure indicators computed from neighbor sets.
inline void exposure(const std::vector<std::set<Index>>& nb, const std::vector<std::uint8_t>& z,
                     std::vector<int>& t, std::vector<int>& c) {
  t.assign(nb.size(), 1);
  c.assign(nb.size(), 1);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (Index k : nb[i]) {
      if (z[k]) c[i] = 0;
      else t[i] = 0;
    }
  }
}

// Plain loop over all 2^m assignments.
inline void enumerate(std::size_t m, double p, const std::function<void(const std::vector<std::uint8_t>&, double)>& f) {
  std::vector<std::uint8_t> z(m);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    double prob = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      z[k] = static_cast<std::uint8_t>((bits >> k) & 1u);
      prob *= z[k] ? p : 1.0 - p;
    }
    f(z, prob);
  }
}

struct Instance {
  BipartiteGraph graph;
  bipexp::PotentialTable pt;
  Eigen::MatrixXd x;  // column-centered
  double p;
};

// Random graph with every outcome unit connected, m and n drawn from the
// given ranges, random outcomes and d covariates correlated with them.
inline Instance random_instance(std::mt19937_64& gen, std::size_t m_max, std::size_t n_max, std::size_t d = 2,
                                std::size_t max_deg = 3) {
  std::uniform_int_distribution<std::size_t> m_dist(2, m_max), n_dist(2, n_max);
  const std::size_t m = m_dist(gen), n = n_dist(gen);
  std::uniform_int_distribution<std::size_t> deg_dist(1, std::min(max_deg, m));
  std::uniform_int_distribution<Index> k_dist(0, static_cast<Index>(m - 1));
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    std::set<Index> ks;
    const std::size_t deg = deg_dist(gen);
    while (ks.size() < deg) ks.insert(k_dist(gen));
    for (Index k : ks) edges.push_back({k, i});
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> pu(0.2, 0.8);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd x(nn, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = normal(gen);
  x = x.rowwise() - x.colwise().mean();
  bipexp::PotentialTable pt;
  pt.y1.resize(nn);
  pt.y0.resize(nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    const double signal = d > 0 ? x.row(i).sum() : 0.0;
    pt.y1(i) = 1.0 + signal + normal(gen);
    pt.y0(i) = 0.5 * signal + normal(gen);
  }
  return Instance{BipartiteGraph::build(m, n, edges), std::move(pt), std::move(x), pu(gen)};
}

}  // namespace testsupport
