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

#include "lossprobe/oracles/property_tree.h"

#include "json.hpp"
#include "lossprobe/common/error.h"

namespace lossprobe::oracles {
namespace {

using nlohmann::json;

json OptionalString(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

json ToJson(const PropertyNode& n) {
  json j;  // std::map-backed object: keys serialize in sorted order
  j["content_description"] = OptionalString(n.content_description);
  j["resource_id"] = OptionalString(n.resource_id);
  j["text"] = OptionalString(n.text);
  j["visible"] = n.visible;
  j["checkable"] = n.checkable;
  j["checked"] = n.checked;
  j["selected"] = n.selected;
  j["size"] = n.size;
  j["child_count"] = n.child_count;
  json children = json::array();
  for (const auto& c : n.children) children.push_back(ToJson(c));
  j["children"] = std::move(children);
  return j;
}

std::optional<std::string> ReadOptional(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<std::string>();
}

PropertyNode FromJson(const json& j, int index) {
  PropertyNode n;
  n.content_description = ReadOptional(j, "content_description");
  n.resource_id = ReadOptional(j, "resource_id");
  n.text = ReadOptional(j, "text");
  n.visible = j.at("visible").get<bool>();
  n.checkable = j.at("checkable").get<bool>();
  n.checked = j.at("checked").get<bool>();
  n.selected = j.at("selected").get<bool>();
  n.size = j.at("size").get<std::string>();
  n.child_count = j.at("child_count").get<int>();
  n.index = index;
  int i = 0;
  for (const auto& c : j.at("children")) n.children.push_back(FromJson(c, i++));
  return n;
}

}  // namespace

std::string SerializePropertyTree(const PropertyTree& tree) {
  return ToJson(tree.root).dump(2) + "\n";
}

PropertyTree ParsePropertyTree(const std::string& text) {
  try {
    return PropertyTree{FromJson(json::parse(text), 0)};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("property tree: ") + e.what());
  }
}

}  // namespace lossprobe::oracles
