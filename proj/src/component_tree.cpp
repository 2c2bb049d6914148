#include "jmpt/component_tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace jmpt {
namespace {

// Union-find max-tree construction (Berger-style): process pixels from the
// extreme level inward, merge already-processed neighbors, then canonicalize
// so every parent pointer lands on its node's canonical pixel. The min-tree
// is the same algorithm with the processing order reversed.

int find_root(std::vector<int>& zpar, int p) {
  while (zpar[p] != p) {
    zpar[p] = zpar[zpar[p]];
    p = zpar[p];
  }
  return p;
}

std::vector<std::pair<int, int>> neighbor_offsets(Connectivity connectivity) {
  std::vector<std::pair<int, int>> offsets = {
      {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  if (connectivity == Connectivity::eight) {
    offsets.insert(offsets.end(), {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
  }
  return offsets;
}

ComponentTree build_tree(const GrayImage& img, TreeKind kind,
                         Connectivity connectivity) {
  const Eigen::Index h = img.rows();
  const Eigen::Index w = img.cols();
  if (h < 1 || w < 1) {
    throw DataError("component tree needs a non-empty image");
  }
  const int n = static_cast<int>(h * w);
  const auto level = [&](int p) -> int {
    return img(p / w, p % w);
  };

  // Counting sort by level; within a level, row-major order. For a max-tree
  // the highest level is processed first, for a min-tree the lowest.
  std::vector<int> order(n);
  {
    std::array<int, 257> starts{};
    for (int p = 0; p < n; ++p) ++starts[level(p) + 1];
    for (int v = 0; v < 256; ++v) starts[v + 1] += starts[v];
    std::vector<int> ascending(n);
    std::array<int, 257> cursor = starts;
    for (int p = 0; p < n; ++p) ascending[cursor[level(p)]++] = p;
    if (kind == TreeKind::max_tree) {
      // Level blocks reversed, row-major order kept inside each block.
      int out = 0;
      for (int v = 255; v >= 0; --v) {
        for (int idx = starts[v]; idx < starts[v + 1]; ++idx) {
          order[out++] = ascending[idx];
        }
      }
    } else {
      order = ascending;
    }
  }

  const auto offsets = neighbor_offsets(connectivity);
  std::vector<int> parent(n);
  std::vector<int> zpar(n);
  std::vector<char> processed(n, 0);

  for (int idx = 0; idx < n; ++idx) {
    const int p = order[idx];
    parent[p] = p;
    zpar[p] = p;
    const int pr = p / static_cast<int>(w);
    const int pc = p % static_cast<int>(w);
    for (const auto& [dr, dc] : offsets) {
      const int nr = pr + dr;
      const int nc = pc + dc;
      if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
      const int q = nr * static_cast<int>(w) + nc;
      if (!processed[q]) continue;
      const int r = find_root(zpar, q);
      if (r != p) {
        parent[r] = p;
        zpar[r] = p;
      }
    }
    processed[p] = 1;
  }

  // Canonicalization: walk pixels from the root level outward so parent
  // pointers collapse onto each node's first-processed (canonical) pixel.
  for (int idx = n - 1; idx >= 0; --idx) {
    const int p = order[idx];
    const int q = parent[p];
    if (level(parent[q]) == level(q)) parent[p] = parent[q];
  }

  ComponentTree tree;
  tree.kind = kind;
  tree.connectivity = connectivity;
  tree.height = h;
  tree.width = w;
  tree.pixel_to_node.assign(n, -1);

  const auto canonical = [&](int p) {
    return parent[p] == p || level(parent[p]) != level(p);
  };

  // Node ids in reverse processing order: the root's canonical pixel comes
  // first and parents always precede children (levels are strictly ordered
  // along any branch).
  std::vector<int> node_of_pixel(n, -1);
  for (int idx = n - 1; idx >= 0; --idx) {
    const int p = order[idx];
    if (!canonical(p)) continue;
    node_of_pixel[p] = static_cast<int>(tree.nodes.size());
    TreeNode node;
    node.level = static_cast<std::uint8_t>(level(p));
    tree.nodes.push_back(node);
  }
  for (int idx = n - 1; idx >= 0; --idx) {
    const int p = order[idx];
    const int canon = canonical(p) ? p : parent[p];
    const int node_id = node_of_pixel[canon];
    tree.pixel_to_node[p] = node_id;
    tree.nodes[node_id].pixels.push_back(p);
    if (canonical(p)) {
      const int parent_canon = (parent[p] == p) ? p : parent[p];
      tree.nodes[node_id].parent = node_of_pixel[parent_canon];
    }
  }
  tree.root = 0;
  return tree;
}

}  // namespace

ComponentTree build_max_tree(const GrayImage& img, Connectivity connectivity) {
  return build_tree(img, TreeKind::max_tree, connectivity);
}

ComponentTree build_min_tree(const GrayImage& img, Connectivity connectivity) {
  return build_tree(img, TreeKind::min_tree, connectivity);
}

double AttributeTable::value(Attribute attribute, int node) const {
  switch (attribute) {
    case Attribute::area:
      return static_cast<double>(area[node]);
    case Attribute::height:
      return static_cast<double>(height[node]);
    case Attribute::volume:
      return static_cast<double>(volume[node]);
    case Attribute::diagonal:
      return diagonal[node];
    case Attribute::std_dev:
      return std_dev[node];
  }
  throw std::invalid_argument("unknown attribute");
}

AttributeTable compute_attributes(const ComponentTree& tree) {
  const int n = static_cast<int>(tree.nodes.size());
  std::vector<std::int64_t> area(n, 0), sum(n, 0), sum_sq(n, 0);
  std::vector<int> min_level(n, 256), max_level(n, -1);
  std::vector<int> rmin(n), rmax(n), cmin(n), cmax(n);

  for (int i = 0; i < n; ++i) {
    const TreeNode& node = tree.nodes[i];
    const std::int64_t cnt = static_cast<std::int64_t>(node.pixels.size());
    const std::int64_t lvl = node.level;
    area[i] = cnt;
    sum[i] = cnt * lvl;
    sum_sq[i] = cnt * lvl * lvl;
    min_level[i] = max_level[i] = node.level;
    rmin[i] = cmin[i] = std::numeric_limits<int>::max();
    rmax[i] = cmax[i] = -1;
    for (const int p : node.pixels) {
      const int r = p / static_cast<int>(tree.width);
      const int c = p % static_cast<int>(tree.width);
      rmin[i] = std::min(rmin[i], r);
      rmax[i] = std::max(rmax[i], r);
      cmin[i] = std::min(cmin[i], c);
      cmax[i] = std::max(cmax[i], c);
    }
  }
  // Children accumulate into parents; node ids are topological so a reverse
  // scan visits every child before its parent.
  for (int i = n - 1; i > 0; --i) {
    const int up = tree.nodes[i].parent;
    area[up] += area[i];
    sum[up] += sum[i];
    sum_sq[up] += sum_sq[i];
    min_level[up] = std::min(min_level[up], min_level[i]);
    max_level[up] = std::max(max_level[up], max_level[i]);
    rmin[up] = std::min(rmin[up], rmin[i]);
    rmax[up] = std::max(rmax[up], rmax[i]);
    cmin[up] = std::min(cmin[up], cmin[i]);
    cmax[up] = std::max(cmax[up], cmax[i]);
  }

  AttributeTable table;
  table.area = area;
  table.height.resize(n);
  table.volume.resize(n);
  table.diagonal.resize(n);
  table.std_dev.resize(n);
  for (int i = 0; i < n; ++i) {
    table.height[i] = max_level[i] - min_level[i];
    // Volume sums (max g - g) over the region with g = +f on max-trees and
    // g = -f on min-trees.
    table.volume[i] = tree.kind == TreeKind::max_tree
                          ? area[i] * max_level[i] - sum[i]
                          : sum[i] - area[i] * min_level[i];
    const double dr = rmax[i] - rmin[i];
    const double dc = cmax[i] - cmin[i];
    table.diagonal[i] = std::sqrt(dr * dr + dc * dc);
    // Exact integer moments keep the variance reproducible to the last bit.
    const double var =
        double(area[i] * sum_sq[i] - sum[i] * sum[i]) / double(area[i]) /
        double(area[i]);
    table.std_dev[i] = std::sqrt(std::max(0.0, var));
  }
  return table;
}

std::vector<char> filter_flags(const ComponentTree& tree,
                               const AttributeTable& attributes,
                               Attribute attribute, double threshold,
                               FilterRule rule) {
  const int n = static_cast<int>(tree.nodes.size());
  std::vector<char> removed(n, 0);
  for (int i = 0; i < n; ++i) {
    if (i == tree.root) continue;
    const bool fails = attributes.value(attribute, i) < threshold;
    if (rule == FilterRule::prune) {
      removed[i] = fails || removed[tree.nodes[i].parent];
    } else {
      removed[i] = fails;
    }
  }
  return removed;
}

ComponentTree filter_tree(const ComponentTree& tree,
                          const AttributeTable& attributes,
                          Attribute attribute, double threshold,
                          FilterRule rule) {
  const std::vector<char> removed =
      filter_flags(tree, attributes, attribute, threshold, rule);
  ComponentTree out = tree;
  for (std::size_t i = 0; i < removed.size(); ++i) {
    out.nodes[i].removed = static_cast<bool>(removed[i]);
  }
  return out;
}

Image reconstruct(const ComponentTree& tree,
                  const std::vector<char>& removed) {
  const int n = static_cast<int>(tree.nodes.size());
  if (static_cast<int>(removed.size()) != n) {
    throw std::invalid_argument("removal flags do not match the tree");
  }
  // Nearest preserved ancestor per node, resolved in one topological scan.
  std::vector<std::uint8_t> resolved(n);
  for (int i = 0; i < n; ++i) {
    if (i == tree.root || !removed[i]) {
      resolved[i] = tree.nodes[i].level;
    } else {
      resolved[i] = resolved[tree.nodes[i].parent];
    }
  }
  Image out(tree.height, tree.width);
  for (Eigen::Index p = 0; p < tree.height * tree.width; ++p) {
    out(p / tree.width, p % tree.width) =
        static_cast<double>(resolved[tree.pixel_to_node[p]]);
  }
  return out;
}

Image reconstruct(const ComponentTree& tree) {
  std::vector<char> removed(tree.nodes.size(), 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    removed[i] = tree.nodes[i].removed;
  }
  return reconstruct(tree, removed);
}

}  // namespace jmpt
