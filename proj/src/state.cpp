#include "trend/state.hpp"

#include <algorithm>

#include "json.hpp"

namespace trend {

namespace {

template <typename T>
const std::set<T>& ext_at(const std::map<std::string, std::vector<std::set<T>>>& m,
                          const std::string& name, int t, int horizon) {
  static const std::set<T> empty;
  if (t < 0 || t >= horizon) return empty;
  auto it = m.find(name);
  if (it == m.end() || t >= static_cast<int>(it->second.size())) return empty;
  return it->second[static_cast<std::size_t>(t)];
}

template <typename T>
void put_at(std::map<std::string, std::vector<std::set<T>>>& m,
            const std::string& name, int t, int horizon, T element) {
  auto& per_t = m[name];
  if (per_t.size() < static_cast<std::size_t>(horizon))
    per_t.resize(static_cast<std::size_t>(horizon));
  if (t >= 0 && t < horizon) per_t[static_cast<std::size_t>(t)].insert(std::move(element));
}

}  // namespace

bool TemporalState::in_class(const std::string& cls, int t,
                             const ObjectId& o) const {
  return class_ext(cls, t).count(o) > 0;
}
bool TemporalState::in_rel(const std::string& rel, int t,
                           const Tuple& r) const {
  return rel_ext(rel, t).count(r) > 0;
}
bool TemporalState::in_attr(const std::string& attr, int t,
                            const AttrPair& a) const {
  return attr_ext(attr, t).count(a) > 0;
}

const std::set<ObjectId>& TemporalState::class_ext(const std::string& cls,
                                                   int t) const {
  return ext_at(classes, cls, t, horizon);
}
const std::set<Tuple>& TemporalState::rel_ext(const std::string& rel,
                                              int t) const {
  return ext_at(relationships, rel, t, horizon);
}
const std::set<AttrPair>& TemporalState::attr_ext(const std::string& attr,
                                                  int t) const {
  return ext_at(attributes, attr, t, horizon);
}

void TemporalState::put_class(const std::string& cls, int t,
                              const ObjectId& o) {
  put_at(classes, cls, t, horizon, o);
}
void TemporalState::put_rel(const std::string& rel, int t, Tuple r) {
  put_at(relationships, rel, t, horizon, std::move(r));
}
void TemporalState::put_attr(const std::string& attr, int t, AttrPair a) {
  put_at(attributes, attr, t, horizon, std::move(a));
}

void ensure_well_formed(const Schema& schema, const TemporalState& state) {
  auto fail = [](const std::string& msg) {
    throw Error("ill-formed-state", msg);
  };
  if (state.horizon < 1) fail("horizon must be positive");
  std::set<ObjectId> objects(state.objects.begin(), state.objects.end());
  std::set<Value> values;
  for (const auto& [dom, vals] : state.domains)
    for (const auto& v : vals) {
      if (objects.count(v))
        fail("'" + v + "' is both an object and a domain value");
      values.insert(v);
    }
  auto window = [&](std::size_t n, const std::string& name) {
    if (n > static_cast<std::size_t>(state.horizon))
      fail("extension of '" + name + "' runs past the horizon");
  };
  for (const auto& [cls, per_t] : state.classes) {
    if (!schema.find_class(cls)) fail("undeclared class '" + cls + "'");
    window(per_t.size(), cls);
    for (const auto& ext : per_t)
      for (const auto& o : ext)
        if (!objects.count(o))
          fail("object '" + o + "' in '" + cls + "' is not declared");
  }
  for (const auto& [rel, per_t] : state.relationships) {
    const RelDecl* decl = schema.find_relationship(rel);
    if (!decl) fail("undeclared relationship '" + rel + "'");
    window(per_t.size(), rel);
    for (const auto& ext : per_t)
      for (const auto& tuple : ext) {
        if (tuple.size() != decl->arity())
          fail("tuple arity in '" + rel + "' does not match its roles");
        for (const auto& o : tuple)
          if (!objects.count(o))
            fail("object '" + o + "' in '" + rel + "' is not declared");
      }
  }
  for (const auto& [qualified, per_t] : state.attributes) {
    const AttrDecl* attr = schema.find_attribute(qualified);
    if (!attr) fail("undeclared attribute '" + qualified + "'");
    window(per_t.size(), qualified);
    auto dom = state.domains.find(attr->domain);
    for (const auto& ext : per_t)
      for (const auto& [o, v] : ext) {
        if (!objects.count(o))
          fail("object '" + o + "' in '" + qualified + "' is not declared");
        bool known = dom != state.domains.end() &&
                     std::find(dom->second.begin(), dom->second.end(), v) !=
                         dom->second.end();
        if (!known)
          fail("value '" + v + "' of '" + qualified +
               "' is outside domain '" + attr->domain + "'");
      }
  }
}

TemporalState parse_state_json(const std::string& text, const Schema& schema) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ill-formed-state", std::string("bad JSON: ") + e.what());
  }
  auto fail = [](const std::string& msg) {
    throw Error("ill-formed-state", msg);
  };
  TemporalState state;
  if (!j.contains("horizon") || !j["horizon"].is_number_integer())
    fail("missing integer field 'horizon'");
  state.horizon = j["horizon"].get<int>();
  if (j.contains("objects"))
    for (const auto& o : j["objects"]) state.objects.push_back(o.get<std::string>());
  if (j.contains("domains"))
    for (auto it = j["domains"].begin(); it != j["domains"].end(); ++it)
      for (const auto& v : it.value())
        state.domains[it.key()].push_back(v.get<std::string>());

  auto time_key = [&](const std::string& key) {
    int t = -1;
    try {
      t = std::stoi(key);
    } catch (...) {
      fail("time key '" + key + "' is not a number");
    }
    if (t < 0 || t >= state.horizon)
      fail("time key '" + key + "' is outside 0.." +
           std::to_string(state.horizon - 1));
    return t;
  };

  if (j.contains("classes"))
    for (auto it = j["classes"].begin(); it != j["classes"].end(); ++it)
      for (auto ts = it.value().begin(); ts != it.value().end(); ++ts) {
        int t = time_key(ts.key());
        for (const auto& o : ts.value())
          state.put_class(it.key(), t, o.get<std::string>());
      }
  if (j.contains("relationships"))
    for (auto it = j["relationships"].begin(); it != j["relationships"].end();
         ++it) {
      const RelDecl* decl = schema.find_relationship(it.key());
      if (!decl) fail("undeclared relationship '" + it.key() + "'");
      for (auto ts = it.value().begin(); ts != it.value().end(); ++ts) {
        int t = time_key(ts.key());
        for (const auto& entry : ts.value()) {
          Tuple tuple(decl->arity());
          if (!entry.is_object() || entry.size() != decl->arity())
            fail("tuple of '" + it.key() +
                 "' must map each declared role to an object");
          for (auto role = entry.begin(); role != entry.end(); ++role) {
            auto pos = decl->role_position(role.key());
            if (!pos)
              fail("tuple of '" + it.key() + "' names unknown role '" +
                   role.key() + "'");
            tuple[*pos] = role.value().get<std::string>();
          }
          state.put_rel(it.key(), t, std::move(tuple));
        }
      }
    }
  if (j.contains("attributes"))
    for (auto it = j["attributes"].begin(); it != j["attributes"].end(); ++it)
      for (auto ts = it.value().begin(); ts != it.value().end(); ++ts) {
        int t = time_key(ts.key());
        for (const auto& pair : ts.value()) {
          if (!pair.is_array() || pair.size() != 2)
            fail("attribute entries are [object, value] pairs");
          state.put_attr(it.key(), t,
                         {pair[0].get<std::string>(), pair[1].get<std::string>()});
        }
      }
  ensure_well_formed(schema, state);
  return state;
}

std::string state_to_json(const TemporalState& state, const Schema& schema) {
  nlohmann::json j;
  j["horizon"] = state.horizon;
  j["objects"] = state.objects;
  j["domains"] = nlohmann::json::object();
  for (const auto& [dom, vals] : state.domains) j["domains"][dom] = vals;
  j["classes"] = nlohmann::json::object();
  for (const auto& [cls, per_t] : state.classes) {
    nlohmann::json entry = nlohmann::json::object();
    for (std::size_t t = 0; t < per_t.size(); ++t)
      if (!per_t[t].empty())
        entry[std::to_string(t)] = per_t[t];
    if (!entry.empty()) j["classes"][cls] = std::move(entry);
  }
  j["relationships"] = nlohmann::json::object();
  for (const auto& [rel, per_t] : state.relationships) {
    const RelDecl* decl = schema.find_relationship(rel);
    nlohmann::json entry = nlohmann::json::object();
    for (std::size_t t = 0; t < per_t.size(); ++t) {
      if (per_t[t].empty()) continue;
      nlohmann::json tuples = nlohmann::json::array();
      for (const auto& tuple : per_t[t]) {
        nlohmann::json labelled = nlohmann::json::object();
        for (std::size_t i = 0; i < tuple.size(); ++i)
          labelled[decl ? decl->roles[i].name : std::to_string(i)] = tuple[i];
        tuples.push_back(std::move(labelled));
      }
      entry[std::to_string(t)] = std::move(tuples);
    }
    if (!entry.empty()) j["relationships"][rel] = std::move(entry);
  }
  j["attributes"] = nlohmann::json::object();
  for (const auto& [attr, per_t] : state.attributes) {
    nlohmann::json entry = nlohmann::json::object();
    for (std::size_t t = 0; t < per_t.size(); ++t) {
      if (per_t[t].empty()) continue;
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& [o, v] : per_t[t])
        pairs.push_back(nlohmann::json::array({o, v}));
      entry[std::to_string(t)] = std::move(pairs);
    }
    if (!entry.empty()) j["attributes"][attr] = std::move(entry);
  }
  return j.dump(2) + "\n";
}

}  // namespace trend
