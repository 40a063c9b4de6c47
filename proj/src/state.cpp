#include "tickcheck/state.hpp"

#include <algorithm>

#include "tickcheck/errors.hpp"

namespace tickcheck {

const AttrValue* ObjectInstance::find(std::string_view attr) const {
  for (const auto& [name, value] : attrs) {
    if (name == attr) return &value;
  }
  return nullptr;
}

AttrValue* ObjectInstance::find(std::string_view attr) {
  for (auto& [name, value] : attrs) {
    if (name == attr) return &value;
  }
  return nullptr;
}

const AttrValue& ObjectInstance::at(std::string_view attr) const {
  if (const auto* v = find(attr)) return *v;
  throw EvalError("object " + oid + " of class " + cls + " has no attribute '" + std::string(attr) + "'");
}

void ObjectInstance::encode(std::string& out) const {
  out += '<';
  out += oid;
  out += ':';
  out += cls;
  out += '|';
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (i) out += ',';
    out += attrs[i].first;
    out += '=';
    attrs[i].second.encode(out);
  }
  out += '>';
}

void MessageInstance::encode(std::string& out) const {
  out += name;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    args[i].encode(out);
  }
  out += ")@";
  out += delay.str();
}

void Configuration::add_object(ObjectInstance object) {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), object.oid,
                             [](const ObjectInstance& o, const std::string& oid) { return o.oid < oid; });
  if (it != objects_.end() && it->oid == object.oid) {
    throw IntegrityError("duplicate object identifier '" + object.oid + "'");
  }
  objects_.insert(it, std::move(object));
}

void Configuration::add_message(MessageInstance message) {
  std::string key;
  message.encode(key);
  auto it = std::lower_bound(messages_.begin(), messages_.end(), key, [](const MessageInstance& m, const std::string& k) {
    std::string mk;
    m.encode(mk);
    return mk < k;
  });
  messages_.insert(it, std::move(message));
}

const ObjectInstance* Configuration::find_object(std::string_view oid) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), oid,
                             [](const ObjectInstance& o, std::string_view id) { return o.oid < id; });
  if (it != objects_.end() && it->oid == oid) return &*it;
  return nullptr;
}

void Configuration::remove_object(std::string_view oid) {
  auto it = std::find_if(objects_.begin(), objects_.end(), [&](const ObjectInstance& o) { return o.oid == oid; });
  if (it == objects_.end()) throw IntegrityError("no object '" + std::string(oid) + "' to remove");
  objects_.erase(it);
}

void Configuration::remove_messages(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    messages_.erase(messages_.begin() + static_cast<std::ptrdiff_t>(*it));
  }
}

void Configuration::replace_messages(std::vector<MessageInstance> messages) {
  messages_ = std::move(messages);
  sort_messages();
}

void Configuration::sort_messages() {
  std::vector<std::pair<std::string, MessageInstance>> keyed;
  keyed.reserve(messages_.size());
  for (auto& m : messages_) {
    std::string k;
    m.encode(k);
    keyed.emplace_back(std::move(k), std::move(m));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  messages_.clear();
  for (auto& [k, m] : keyed) messages_.push_back(std::move(m));
}

std::string Configuration::key() const {
  std::string out;
  out.reserve(64 * size());
  for (const auto& o : objects_) o.encode(out);
  out += '#';
  for (const auto& m : messages_) {
    m.encode(out);
    out += ';';
  }
  return out;
}

Configuration Configuration::merge(const Configuration& a, const Configuration& b) {
  Configuration out = a;
  for (const auto& o : b.objects_) out.add_object(o);
  std::vector<MessageInstance> msgs = a.messages_;
  msgs.insert(msgs.end(), b.messages_.begin(), b.messages_.end());
  out.replace_messages(std::move(msgs));
  return out;
}

std::string Proposition::str() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].str();
  }
  return out + ")";
}

}  // namespace tickcheck
