// Copyright 2026 The netctl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netctl/paths.hpp"

#include <algorithm>
#include <string>

#include "netctl/error.hpp"

namespace netctl {
namespace {

class PathSearch {
 public:
  PathSearch(const Network& net, NodeIndex destination, std::size_t max_paths)
      : net_(net),
        destination_(destination),
        max_paths_(max_paths),
        out_edges_(net.nodes.size()),
        on_path_(net.nodes.size(), false) {
    for (EdgeIndex e = 0; e < net.edges.size(); ++e) {
      out_edges_[net.edges[e].tail].push_back(e);
    }
  }

  std::vector<Path> Run(NodeIndex origin) {
    on_path_[origin] = true;
    Visit(origin);
    return std::move(found_);
  }

 private:
  void Visit(NodeIndex node) {
    if (node == destination_) {
      if (found_.size() == max_paths_) {
        throw Error(ErrorCode::kTooManyPaths,
                    "more than " + std::to_string(max_paths_) +
                        " simple paths between '" + net_.nodes[current_origin()] +
                        "' and '" + net_.nodes[destination_] + "'");
      }
      found_.push_back(stack_);
      return;
    }
    for (EdgeIndex e : out_edges_[node]) {
      const NodeIndex next = net_.edges[e].head;
      if (on_path_[next]) continue;
      on_path_[next] = true;
      stack_.push_back(e);
      Visit(next);
      stack_.pop_back();
      on_path_[next] = false;
    }
  }

  NodeIndex current_origin() const {
    return stack_.empty() ? destination_ : net_.edges[stack_.front()].tail;
  }

  const Network& net_;
  NodeIndex destination_;
  std::size_t max_paths_;
  std::vector<std::vector<EdgeIndex>> out_edges_;
  std::vector<bool> on_path_;
  Path stack_;
  std::vector<Path> found_;
};

}  // namespace

std::vector<Path> EnumeratePaths(const Network& network, NodeIndex origin,
                                 NodeIndex destination, std::size_t max_paths) {
  if (origin >= network.nodes.size() || destination >= network.nodes.size()) {
    throw Error(ErrorCode::kInvalidArgument, "origin or destination is not a node");
  }
  if (origin == destination) {
    throw Error(ErrorCode::kInvalidArgument, "origin and destination coincide");
  }
  for (const Edge& edge : network.edges) {
    if (edge.tail >= network.nodes.size() || edge.head >= network.nodes.size()) {
      throw Error(ErrorCode::kInvalidArgument, "edge '" + edge.id +
                                                   "' references a missing node");
    }
  }
  std::vector<Path> paths = PathSearch(network, destination, max_paths).Run(origin);
  if (paths.empty()) {
    throw Error(ErrorCode::kNoPath, "no path from '" + network.nodes[origin] +
                                        "' to '" + network.nodes[destination] + "'");
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

double PathSum(const Path& path, const std::vector<double>& per_edge) {
  double sum = 0.0;
  for (EdgeIndex e : path) sum += per_edge[e];
  return sum;
}

}  // namespace netctl
