#include "hypersw/trees.hpp"

#include <cmath>

namespace hypersw {

namespace {
constexpr long long kMaxTreeNodes = 1'000'000;
}

Tree balanced_tree(int r, int h) {
  if (r < 2) throw std::domain_error("balanced_tree: branching factor must be >= 2");
  if (h < 1) throw std::domain_error("balanced_tree: depth must be >= 1");
  long long count = 1, level = 1;
  for (int k = 0; k < h; ++k) {
    level *= r;
    count += level;
    if (count > kMaxTreeNodes) {
      throw std::domain_error("balanced_tree: more than 1e6 nodes");
    }
  }
  Tree t;
  t.branching = r;
  t.depth = h;
  const int n = static_cast<int>(count);
  t.parent.assign(n, -1);
  t.children.resize(n);
  // Breadth-first ids: children of node i are r*i+1 ... r*i+r.
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= r; ++k) {
      const long long c = static_cast<long long>(i) * r + k;
      if (c >= n) break;
      t.parent[c] = i;
      t.children[i].push_back(static_cast<int>(c));
    }
  }
  return t;
}

TreeEmbedding sarkar_embed(const Tree& t, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::domain_error("sarkar_embed: tau must lie in (0, 1)");
  }
  const int n = t.size();
  if (n < 1) throw std::domain_error("sarkar_embed: empty tree");
  const double ell = 2.0 * std::atanh(tau);
  const double rho = tau;  // tanh(ell / 2)

  TreeEmbedding e;
  e.coords = Matrix::Zero(n, 2);
  e.parent = t.parent;
  e.tau = tau;
  e.edge_length = ell;

  // Root children spread uniformly on the circle of radius rho.
  {
    const int deg = static_cast<int>(t.children[0].size());
    for (int k = 0; k < deg; ++k) {
      const double ang = 2.0 * M_PI * k / deg;
      e.coords.row(t.children[0][k]) << rho * std::cos(ang), rho * std::sin(ang);
    }
  }
  // Each further node: move it to the origin, note the parent's image angle,
  // place the children at equal separations 2*pi/(c+1) filling the circle
  // away from the parent, move everything back.
  for (int u = 1; u < n; ++u) {
    const int c = static_cast<int>(t.children[u].size());
    if (c == 0) continue;
    const Vector zu = e.coords.row(u).transpose();
    const Vector q = mobius_add(-zu, e.coords.row(t.parent[u]).transpose());
    const double theta_p = std::atan2(q[1], q[0]);
    for (int j = 1; j <= c; ++j) {
      const double ang = theta_p + 2.0 * M_PI * j / (c + 1);
      Vector local(2);
      local << rho * std::cos(ang), rho * std::sin(ang);
      e.coords.row(t.children[u][j - 1]) = mobius_add(zu, local).transpose();
    }
  }
  return e;
}

DiscreteMeasure embedding_to_measure(const TreeEmbedding& e) {
  if (e.size() < 1) throw std::domain_error("embedding_to_measure: empty embedding");
  return make_uniform_measure(Model::Poincare, e.coords);
}

}  // namespace hypersw
