#pragma once

#include <cstdint>
#include <vector>

#include "jmpt/types.hpp"

namespace jmpt {

enum class TreeKind { max_tree, min_tree };
enum class Connectivity { four = 4, eight = 8 };

// One node of a component tree. `pixels` holds the node's proper pixels
// (flat indices r*width+c whose gray value equals `level`); the node's full
// region is the union of its subtree's pixel sets.
struct TreeNode {
  int parent = 0;           // index into ComponentTree::nodes; root points to itself
  std::uint8_t level = 0;
  bool removed = false;     // set by filter_tree
  std::vector<int> pixels;
};

// Canonical component tree over the upper (max) or lower (min) level sets of
// a gray image. Node indices are topological: parent < child.
struct ComponentTree {
  TreeKind kind = TreeKind::max_tree;
  Connectivity connectivity = Connectivity::four;
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  int root = 0;
  std::vector<TreeNode> nodes;
  std::vector<int> pixel_to_node;  // owning node per flat pixel index
};

ComponentTree build_max_tree(const GrayImage& img,
                             Connectivity connectivity = Connectivity::four);
ComponentTree build_min_tree(const GrayImage& img,
                             Connectivity connectivity = Connectivity::four);

enum class Attribute { area, height, volume, diagonal, std_dev };

// Per-node attribute values, each evaluated over the node's full region (the
// level-set component rooted there), not just its proper pixels.
struct AttributeTable {
  std::vector<std::int64_t> area;
  std::vector<int> height;
  std::vector<std::int64_t> volume;
  std::vector<double> diagonal;
  std::vector<double> std_dev;

  double value(Attribute attribute, int node) const;
};

AttributeTable compute_attributes(const ComponentTree& tree);

// prune: a failing node takes its whole subtree with it (used for the
// increasing attributes). direct: every node is judged on its own value
// (used for the non-increasing std attribute).
enum class FilterRule { prune, direct };

// Removal flags for filtering the tree at threshold `threshold`: node i is
// marked when its attribute value is < threshold (never the root). The flags
// are pass-local so many filters can share one tree.
std::vector<char> filter_flags(const ComponentTree& tree,
                               const AttributeTable& attributes,
                               Attribute attribute, double threshold,
                               FilterRule rule);

// Copy of the tree with `removed` set per filter_flags.
ComponentTree filter_tree(const ComponentTree& tree,
                          const AttributeTable& attributes,
                          Attribute attribute, double threshold,
                          FilterRule rule);

// Every pixel takes the level of its nearest preserved ancestor (itself when
// preserved). The root is never removed, so the result is total.
Image reconstruct(const ComponentTree& tree);
Image reconstruct(const ComponentTree& tree, const std::vector<char>& removed);

}  // namespace jmpt
