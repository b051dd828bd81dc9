#pragma once

#include "hypersw/sliced.hpp"

#include <vector>

namespace hypersw {

// Balanced rooted tree: every internal node has exactly `branching` children
// down to `depth`. Nodes are numbered in breadth-first order, root = 0.
struct Tree {
  int branching = 2;
  int depth = 1;
  std::vector<int> parent;                 // parent[0] == -1
  std::vector<std::vector<int>> children;
  int size() const { return static_cast<int>(parent.size()); }
};

Tree balanced_tree(int r, int h);

// Planar embedding of a tree in the unit disk. Every edge has hyperbolic
// length edge_length = 2 atanh(tau), so a depth-1 child of the root sits at
// Euclidean radius tau.
struct TreeEmbedding {
  Matrix coords;  // n x 2 ball coordinates, row per node
  std::vector<int> parent;
  double tau = 0.0;
  double edge_length = 0.0;
  int size() const { return static_cast<int>(coords.rows()); }
};

// Recursive construction: each node is translated to the origin, its children
// are spread at equal angles around the reflected parent direction at radius
// tanh(edge_length / 2), and translated back.
TreeEmbedding sarkar_embed(const Tree& t, double tau);

// Uniform measure over the embedded node locations (ball model).
DiscreteMeasure embedding_to_measure(const TreeEmbedding& e);

}  // namespace hypersw
