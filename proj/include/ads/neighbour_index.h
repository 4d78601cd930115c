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

#ifndef ADS_NEIGHBOUR_INDEX_H_
#define ADS_NEIGHBOUR_INDEX_H_

#include <cstddef>
#include <vector>

#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

// Append-only index for nearest-neighbour queries under InstanceDistance,
// restricted to the points covered by a rule. Points live in a logarithmic
// number of static kd-trees of power-of-two sizes; an append merges equal
// sizes. Trees split on continuous attributes only.
class NeighbourIndex {
 public:
  explicit NeighbourIndex(InputSpace space);

  void Append(const Instance& x);
  size_t size() const { return points_.size(); }

  // Distance from `query` to the nearest indexed point covered by `rule`,
  // +inf if there is none. The search stops as soon as it finds a distance
  // <= `floor` and then returns that distance, so results above `floor` are
  // exact.
  double NearestCovered(const Instance& query, const Rule& rule,
                        double floor) const;

 private:
  struct Node {
    size_t begin = 0;  // into Tree::ids
    size_t end = 0;
    // Children; 0 for a leaf (the root is never a child).
    size_t left = 0;
    size_t right = 0;
    // Bounding box, one entry per attribute; unused for categorical ones.
    std::vector<double> lo;
    std::vector<double> hi;
  };
  struct Tree {
    std::vector<size_t> ids;
    std::vector<Node> nodes;
  };

  Tree Build(std::vector<size_t> ids) const;
  size_t BuildNode(Tree& tree, size_t begin, size_t end) const;
  // Lower bound on the distance from `query` to any point inside `node`.
  double LowerBound(const Node& node, const Instance& query) const;
  // False if no point in `node` can satisfy the interval conditions.
  bool MayCover(const Node& node, const Rule& rule) const;

  InputSpace space_;
  std::vector<size_t> continuous_;
  std::vector<Instance> points_;
  std::vector<Tree> trees_;  // strictly decreasing sizes
};

}  // namespace ads

#endif  // ADS_NEIGHBOUR_INDEX_H_
