#include "tickcheck/model.hpp"

namespace tickcheck {

const AttrDecl* ClassDecl::find(const std::string& attr) const {
  for (const auto& a : attrs) {
    if (a.name == attr) return &a;
  }
  return nullptr;
}

const ClassDecl* Model::find_class(const std::string& name) const {
  for (const auto& c : classes) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const MsgDecl* Model::find_message(const std::string& name) const {
  for (const auto& m : messages) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const EnumDecl* Model::find_enum(const std::string& name) const {
  for (const auto& e : enums) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const PropDecl* Model::find_prop(const std::string& name) const {
  for (const auto& p : props) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<std::pair<const EnumDecl*, const EnumVariant*>> Model::find_variant(const std::string& variant) const {
  for (const auto& e : enums) {
    for (const auto& v : e.variants) {
      if (v.name == variant) return std::make_pair(&e, &v);
    }
  }
  return std::nullopt;
}

const Configuration& Model::init(const std::string& name) const {
  auto it = init_configs.find(name);
  if (it == init_configs.end()) throw ModelError({Diagnostic{Diagnostic::Kind::Declaration, {}, "no initial state named '" + name + "'"}});
  return it->second;
}

}  // namespace tickcheck
