// Copyright 2026 The LossProbe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOSSPROBE_ORACLES_PROPERTY_TREE_H_
#define LOSSPROBE_ORACLES_PROPERTY_TREE_H_

#include <optional>
#include <string>
#include <vector>

namespace lossprobe::oracles {

// One view record. The field set is exactly what the hierarchy dump
// exposes; `index` is the node's position among its siblings and only
// drives canonical ordering.
struct PropertyNode {
  std::optional<std::string> content_description;
  std::optional<std::string> resource_id;
  std::optional<std::string> text;
  bool visible = true;
  bool checkable = false;
  bool checked = false;
  bool selected = false;
  std::string size;  // "W*H"
  int child_count = 0;
  std::vector<PropertyNode> children;
  int index = 0;

  bool operator==(const PropertyNode&) const = default;
};

struct PropertyTree {
  PropertyNode root;

  bool operator==(const PropertyTree&) const = default;
};

// Canonical structured-text form: JSON objects with the field names above
// in sorted key order, two-space indentation, trailing newline.
std::string SerializePropertyTree(const PropertyTree& tree);
PropertyTree ParsePropertyTree(const std::string& text);

}  // namespace lossprobe::oracles

#endif  // LOSSPROBE_ORACLES_PROPERTY_TREE_H_
