#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace motionclass {

using Json = nlohmann::ordered_json;

/// Throws if `object` carries a key outside `allowed`. `context` names the section in the message.
inline void reject_unknown_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                                std::string_view context) {
  if (!object.is_object()) throw std::invalid_argument(std::string(context) + ": expected a JSON object");
  for (const auto& item : object.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) throw std::invalid_argument(std::string(context) + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
void read_optional(const Json& object, const char* key, T& target) {
  if (auto it = object.find(key); it != object.end()) target = it->template get<T>();
}

}  // namespace motionclass
