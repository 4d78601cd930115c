/*
 * Copyright 2026 The ADS Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ads/neighbour_index.h"

#include <algorithm>
#include <limits>

namespace ads {

namespace {
constexpr size_t kLeafSize = 16;
}  // namespace

NeighbourIndex::NeighbourIndex(InputSpace space) : space_(std::move(space)) {
  for (size_t i = 0; i < space_.size(); ++i) {
    if (space_.attribute(i).is_continuous()) continuous_.push_back(i);
  }
}

void NeighbourIndex::Append(const Instance& x) {
  points_.push_back(x);
  std::vector<size_t> ids = {points_.size() - 1};
  while (!trees_.empty() && trees_.back().ids.size() == ids.size()) {
    ids.insert(ids.end(), trees_.back().ids.begin(), trees_.back().ids.end());
    trees_.pop_back();
  }
  trees_.push_back(Build(std::move(ids)));
}

NeighbourIndex::Tree NeighbourIndex::Build(std::vector<size_t> ids) const {
  Tree tree;
  tree.ids = std::move(ids);
  tree.nodes.reserve(2 * tree.ids.size() / kLeafSize + 1);
  BuildNode(tree, 0, tree.ids.size());
  return tree;
}

size_t NeighbourIndex::BuildNode(Tree& tree, size_t begin, size_t end) const {
  const size_t index = tree.nodes.size();
  tree.nodes.emplace_back();
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo.assign(space_.size(), 0.0);
  node.hi.assign(space_.size(), 0.0);
  for (const size_t a : continuous_) {
    node.lo[a] = std::numeric_limits<double>::infinity();
    node.hi[a] = -std::numeric_limits<double>::infinity();
    for (size_t k = begin; k < end; ++k) {
      const double v = points_[tree.ids[k]].values[a];
      node.lo[a] = std::min(node.lo[a], v);
      node.hi[a] = std::max(node.hi[a], v);
    }
  }

  // Split the widest continuous attribute, relative to its range.
  size_t split = space_.size();
  double widest = 0.0;
  for (const size_t a : continuous_) {
    const double spread = (node.hi[a] - node.lo[a]) / space_.attribute(a).range();
    if (spread > widest) {
      widest = spread;
      split = a;
    }
  }
  if (end - begin > kLeafSize && split < space_.size()) {
    const size_t middle = begin + (end - begin) / 2;
    std::nth_element(tree.ids.begin() + begin, tree.ids.begin() + middle,
                     tree.ids.begin() + end, [&](size_t x, size_t y) {
                       return points_[x].values[split] <
                              points_[y].values[split];
                     });
    node.left = BuildNode(tree, begin, middle);
    node.right = BuildNode(tree, middle, end);
  }
  tree.nodes[index] = std::move(node);
  return index;
}

double NeighbourIndex::LowerBound(const Node& node,
                                  const Instance& query) const {
  // Same summation order as InstanceDistance with every term replaced by a
  // smaller or equal one, so the bound holds in floating point.
  double total = 0.0;
  for (const size_t a : continuous_) {
    const double q = query.values[a];
    double gap = 0.0;
    if (q < node.lo[a]) {
      gap = node.lo[a] - q;
    } else if (q > node.hi[a]) {
      gap = q - node.hi[a];
    }
    total += std::min(1.0, gap / space_.attribute(a).range());
  }
  return total / static_cast<double>(space_.size());
}

bool NeighbourIndex::MayCover(const Node& node, const Rule& rule) const {
  for (const Condition& c : rule.conditions()) {
    if (!c.is_interval()) continue;
    const size_t a = c.attribute();
    if (node.hi[a] < c.interval().lo || node.lo[a] > c.interval().hi) {
      return false;
    }
  }
  return true;
}

double NeighbourIndex::NearestCovered(const Instance& query, const Rule& rule,
                                      double floor) const {
  double nearest = std::numeric_limits<double>::infinity();
  std::vector<size_t> stack;
  for (const Tree& tree : trees_) {
    stack.assign(1, 0);
    while (!stack.empty()) {
      const Node& node = tree.nodes[stack.back()];
      stack.pop_back();
      if (!MayCover(node, rule) || LowerBound(node, query) >= nearest) continue;
      if (node.left == 0) {
        for (size_t k = node.begin; k < node.end; ++k) {
          const Instance& x = points_[tree.ids[k]];
          if (!rule.Covers(x)) continue;
          nearest = std::min(nearest, InstanceDistance(query, x, space_));
          if (nearest <= floor) return nearest;
        }
        continue;
      }
      // Visit the nearer child first.
      const double l = LowerBound(tree.nodes[node.left], query);
      const double r = LowerBound(tree.nodes[node.right], query);
      if (l <= r) {
        stack.push_back(node.right);
        stack.push_back(node.left);
      } else {
        stack.push_back(node.left);
        stack.push_back(node.right);
      }
    }
  }
  return nearest;
}

}  // namespace ads
