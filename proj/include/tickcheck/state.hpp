#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tickcheck/time_value.hpp"
#include "tickcheck/value.hpp"

namespace tickcheck {

struct ObjectInstance {
  std::string oid;
  std::string cls;
  /// In class declaration order.
  std::vector<std::pair<std::string, AttrValue>> attrs;

  const AttrValue* find(std::string_view attr) const;
  AttrValue* find(std::string_view attr);
  const AttrValue& at(std::string_view attr) const;

  void encode(std::string& out) const;
};

struct MessageInstance {
  std::string name;
  std::vector<AttrValue> args;
  TimeValue delay;

  bool deliverable() const { return delay.is_zero(); }
  void encode(std::string& out) const;
};

/// Multiset of objects and messages in canonical order: objects by oid,
/// messages by their encoding. Element order therefore never depends on
/// how the configuration was built.
class Configuration {
 public:
  Configuration() = default;

  /// Throws IntegrityError if the oid is already present.
  void add_object(ObjectInstance object);
  void add_message(MessageInstance message);

  const std::vector<ObjectInstance>& objects() const { return objects_; }
  const std::vector<MessageInstance>& messages() const { return messages_; }
  std::size_t size() const { return objects_.size() + messages_.size(); }
  bool empty() const { return objects_.empty() && messages_.empty(); }

  const ObjectInstance* find_object(std::string_view oid) const;
  /// Attribute updates only; the oid must not change.
  ObjectInstance& object_at(std::size_t index) { return objects_[index]; }
  void remove_object(std::string_view oid);
  /// Indices refer to messages(); duplicates are ignored.
  void remove_messages(std::vector<std::size_t> indices);
  void replace_messages(std::vector<MessageInstance> messages);

  /// Canonical byte form; equal multisets give equal keys.
  std::string key() const;

  /// Multiset union. Throws IntegrityError on an oid clash.
  static Configuration merge(const Configuration& a, const Configuration& b);

  friend bool operator==(const Configuration& a, const Configuration& b) { return a.key() == b.key(); }

 private:
  void sort_messages();

  std::vector<ObjectInstance> objects_;
  std::vector<MessageInstance> messages_;
};

struct GlobalState {
  Configuration config;
  /// Path bookkeeping only; not part of state identity.
  TimeValue elapsed;
};

/// Ground proposition instance, e.g. `pedLightGreen(NS)`.
struct Proposition {
  std::string name;
  std::vector<AttrValue> args;

  std::string str() const;
  friend bool operator==(const Proposition& a, const Proposition& b) { return a.str() == b.str(); }
  friend bool operator<(const Proposition& a, const Proposition& b) { return a.str() < b.str(); }
};

}  // namespace tickcheck
