#include "fibrato/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fibrato/errors.hpp"

namespace fibrato {

using json = nlohmann::ordered_json;

std::string kind_name(DocumentKind k) {
  switch (k) {
  case DocumentKind::Category:
    return "category";
  case DocumentKind::Group:
    return "group";
  case DocumentKind::Action:
    return "action";
  case DocumentKind::CatValuedAction:
    return "cat_valued_action";
  case DocumentKind::SetValuedAction:
    return "set_valued_action";
  case DocumentKind::Hierarchy:
    return "hierarchy";
  case DocumentKind::Klein:
    return "klein";
  case DocumentKind::GroupoidGeometry:
    return "groupoid_geometry";
  }
  return "?";
}

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &msg) {
  throw Error("SchemaError", path + ": " + msg);
}

const json &field(const json &j, const std::string &key,
                  const std::string &path) {
  if (!j.is_object() || !j.contains(key))
    schema_error(path + "." + key, "missing field");
  return j.at(key);
}

std::string as_string(const json &j, const std::string &path) {
  if (!j.is_string())
    schema_error(path, "expected a string");
  return j.get<std::string>();
}

void require_validated(const ValidationReport &report) {
  if (!report.ok)
    throw Error("ValidationError", report.summary());
}

FinCat json_to_category(const json &j, const std::string &path) {
  FinCat c;
  const json &objs = field(j, "objects", path);
  if (!objs.is_array())
    schema_error(path + ".objects", "expected an array");
  std::set<std::string> object_names;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string name =
        as_string(objs[i], path + ".objects[" + std::to_string(i) + "]");
    if (!object_names.insert(name).second)
      schema_error(path + ".objects[" + std::to_string(i) + "]",
                   "duplicate object " + name);
    c.objects.push_back(std::move(name));
  }

  const json &mors = field(j, "morphisms", path);
  if (!mors.is_array())
    schema_error(path + ".morphisms", "expected an array");
  std::set<std::string> morphism_names;
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::string mpath = path + ".morphisms[" + std::to_string(i) + "]";
    const json &m = mors[i];
    MorphismDecl d;
    d.name = as_string(field(m, "name", mpath), mpath + ".name");
    d.src = as_string(field(m, "src", mpath), mpath + ".src");
    d.tgt = as_string(field(m, "tgt", mpath), mpath + ".tgt");
    if (!morphism_names.insert(d.name).second)
      schema_error(mpath + ".name", "duplicate morphism " + d.name);
    if (object_names.count(d.src) == 0)
      schema_error(mpath + ".src", "unknown object " + d.src);
    if (object_names.count(d.tgt) == 0)
      schema_error(mpath + ".tgt", "unknown object " + d.tgt);
    c.morphisms.push_back(std::move(d));
  }

  const json &ids = field(j, "identities", path);
  if (!ids.is_object())
    schema_error(path + ".identities", "expected an object");
  for (const auto &[obj, id] : ids.items()) {
    if (object_names.count(obj) == 0)
      schema_error(path + ".identities." + obj, "unknown object");
    std::string id_name = as_string(id, path + ".identities." + obj);
    if (morphism_names.count(id_name) == 0)
      schema_error(path + ".identities." + obj,
                   "unknown morphism " + id_name);
    c.identity[obj] = std::move(id_name);
  }

  if (j.contains("compose")) {
    const json &comp = j.at("compose");
    if (!comp.is_array())
      schema_error(path + ".compose", "expected an array");
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const std::string cpath = path + ".compose[" + std::to_string(i) + "]";
      const json &entry = comp[i];
      if (!entry.is_array() || entry.size() != 3)
        schema_error(cpath, "expected [g, f, gf]");
      std::string g = as_string(entry[0], cpath + "[0]");
      std::string f = as_string(entry[1], cpath + "[1]");
      std::string gf = as_string(entry[2], cpath + "[2]");
      for (const auto &name : {g, f, gf}) {
        if (morphism_names.count(name) == 0)
          schema_error(cpath, "unknown morphism " + name);
      }
      c.compose[{g, f}] = gf;
    }
  }

  // Identity-involving entries may be omitted in files; they are forced by
  // the unit laws, so fill them in before validation.
  for (const auto &m : c.morphisms) {
    auto id_src = c.identity.find(m.src);
    auto id_tgt = c.identity.find(m.tgt);
    if (id_src != c.identity.end())
      c.compose.insert({{m.name, id_src->second}, m.name});
    if (id_tgt != c.identity.end())
      c.compose.insert({{id_tgt->second, m.name}, m.name});
  }
  return c;
}

PermGroup json_to_group(const json &j, const std::string &path) {
  const json &deg = field(j, "degree", path);
  if (!deg.is_number_unsigned())
    schema_error(path + ".degree", "expected a non-negative integer");
  std::size_t degree = deg.get<std::size_t>();
  const json &gens = field(j, "generators", path);
  if (!gens.is_object())
    schema_error(path + ".generators", "expected an object");
  std::vector<std::pair<std::string, Perm>> generators;
  for (const auto &[name, imgs] : gens.items()) {
    const std::string gpath = path + ".generators." + name;
    if (!imgs.is_array() || imgs.size() != degree)
      schema_error(gpath, "expected an array of length degree");
    std::vector<std::size_t> one_line;
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      if (!imgs[i].is_number_unsigned())
        schema_error(gpath + "[" + std::to_string(i) + "]",
                     "expected a positive integer");
      one_line.push_back(imgs[i].get<std::size_t>());
    }
    try {
      generators.push_back({name, Perm(one_line)});
    } catch (const Error &e) {
      schema_error(gpath, e.what());
    }
  }
  PermGroup g = close_generators(degree, std::move(generators));
  require_validated(check_group(g));
  return g;
}

GroupAction json_to_action(const json &j, const std::string &path) {
  GroupAction a;
  a.group = json_to_group(field(j, "group", path), path + ".group");
  const json &carrier = field(j, "carrier", path);
  if (!carrier.is_array())
    schema_error(path + ".carrier", "expected an array");
  std::set<std::string> points;
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    std::string p =
        as_string(carrier[i], path + ".carrier[" + std::to_string(i) + "]");
    points.insert(p);
    a.carrier.push_back(std::move(p));
  }
  std::set<std::string> element_names;
  for (const auto &e : a.group.elements)
    element_names.insert(e.name);
  const json &table = field(j, "table", path);
  if (!table.is_array())
    schema_error(path + ".table", "expected an array");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string tpath = path + ".table[" + std::to_string(i) + "]";
    const json &entry = table[i];
    if (!entry.is_array() || entry.size() != 3)
      schema_error(tpath, "expected [g, x, y]");
    std::string g = as_string(entry[0], tpath + "[0]");
    std::string x = as_string(entry[1], tpath + "[1]");
    std::string y = as_string(entry[2], tpath + "[2]");
    if (element_names.count(g) == 0)
      schema_error(tpath + "[0]", "unknown group element " + g);
    if (points.count(x) == 0)
      schema_error(tpath + "[1]", "unknown point " + x);
    if (points.count(y) == 0)
      schema_error(tpath + "[2]", "unknown point " + y);
    a.table[{g, x}] = y;
  }
  return a;
}

std::map<std::string, std::string>
json_to_string_map(const json &j, const std::string &path) {
  if (!j.is_object())
    schema_error(path, "expected an object");
  std::map<std::string, std::string> out;
  for (const auto &[k, v] : j.items())
    out[k] = as_string(v, path + "." + k);
  return out;
}

SetValuedAction json_to_set_valued(const json &j, const std::string &path) {
  SetValuedAction a;
  a.base = json_to_category(field(j, "base", path), path + ".base");
  require_validated(check_category(a.base));
  const json &fibers = field(j, "fibers", path);
  if (!fibers.is_object())
    schema_error(path + ".fibers", "expected an object");
  for (const auto &[obj, arr] : fibers.items()) {
    if (!a.base.has_object(obj))
      schema_error(path + ".fibers." + obj, "unknown base object");
    if (!arr.is_array())
      schema_error(path + ".fibers." + obj, "expected an array");
    std::vector<std::string> elems;
    for (std::size_t i = 0; i < arr.size(); ++i)
      elems.push_back(as_string(
          arr[i], path + ".fibers." + obj + "[" + std::to_string(i) + "]"));
    a.fiber[obj] = std::move(elems);
  }
  const json &act = field(j, "act", path);
  if (!act.is_object())
    schema_error(path + ".act", "expected an object");
  for (const auto &[mor, fn] : act.items()) {
    if (a.base.morphism(mor) == nullptr)
      schema_error(path + ".act." + mor, "unknown base morphism");
    a.act[mor] = json_to_string_map(fn, path + ".act." + mor);
  }
  return a;
}

FinFunctor json_to_functor_maps(const json &j, const std::string &path) {
  FinFunctor f;
  f.object_map = json_to_string_map(field(j, "objects", path), path + ".objects");
  f.morphism_map =
      json_to_string_map(field(j, "morphisms", path), path + ".morphisms");
  return f;
}

CatValuedAction json_to_cat_valued(const json &j, const std::string &path) {
  CatValuedAction a;
  a.base = json_to_category(field(j, "base", path), path + ".base");
  require_validated(check_category(a.base));
  const json &fibers = field(j, "fibers", path);
  if (!fibers.is_object())
    schema_error(path + ".fibers", "expected an object");
  for (const auto &[obj, cat] : fibers.items()) {
    if (!a.base.has_object(obj))
      schema_error(path + ".fibers." + obj, "unknown base object");
    FinCat fib = json_to_category(cat, path + ".fibers." + obj);
    require_validated(check_category(fib));
    a.fiber[obj] = std::move(fib);
  }
  const json &act = field(j, "act", path);
  if (!act.is_object())
    schema_error(path + ".act", "expected an object");
  for (const auto &[mor, fn] : act.items()) {
    const MorphismDecl *m = a.base.morphism(mor);
    if (m == nullptr)
      schema_error(path + ".act." + mor, "unknown base morphism");
    FinFunctor f = json_to_functor_maps(fn, path + ".act." + mor);
    f.dom = a.fiber.at(m->src);
    f.cod = a.fiber.at(m->tgt);
    a.act[mor] = std::move(f);
  }
  return a;
}

HierarchySpec json_to_hierarchy(const json &j, const std::string &path) {
  HierarchySpec spec;
  spec.outer_base =
      json_to_category(field(j, "outer_base", path), path + ".outer_base");
  require_validated(check_category(spec.outer_base));
  const json &inner = field(j, "inner", path);
  if (!inner.is_object())
    schema_error(path + ".inner", "expected an object");
  for (const auto &[obj, act] : inner.items()) {
    if (!spec.outer_base.has_object(obj))
      schema_error(path + ".inner." + obj, "unknown outer object");
    spec.inner[obj] = json_to_set_valued(act, path + ".inner." + obj);
  }
  const json &outer_act = field(j, "outer_act", path);
  if (!outer_act.is_object())
    schema_error(path + ".outer_act", "expected an object");
  for (const auto &[mor, fn] : outer_act.items()) {
    if (spec.outer_base.morphism(mor) == nullptr)
      schema_error(path + ".outer_act." + mor, "unknown outer morphism");
    spec.outer_act[mor] = json_to_functor_maps(fn, path + ".outer_act." + mor);
  }
  // Give the functors their real endpoints so the spec round-trips whole.
  for (auto &[mor, f] : spec.outer_act) {
    const MorphismDecl *m = spec.outer_base.morphism(mor);
    auto src = spec.inner.find(m->src);
    auto tgt = spec.inner.find(m->tgt);
    if (src == spec.inner.end() || tgt == spec.inner.end())
      schema_error(path + ".inner", "missing inner action for " + mor);
    f.dom = inner_completion(src->second);
    f.cod = inner_completion(tgt->second);
  }
  return spec;
}

KleinPair json_to_klein(const json &j, const std::string &path) {
  KleinPair k;
  k.g = json_to_group(field(j, "group", path), path + ".group");
  const json &sub = field(j, "subgroup", path);
  if (!sub.is_object())
    schema_error(path + ".subgroup", "expected an object of generators");
  std::vector<std::pair<std::string, Perm>> gens;
  for (const auto &[name, imgs] : sub.items()) {
    const std::string gpath = path + ".subgroup." + name;
    if (!imgs.is_array() || imgs.size() != k.g.degree)
      schema_error(gpath, "expected an array of length degree");
    std::vector<std::size_t> one_line;
    for (const auto &v : imgs) {
      if (!v.is_number_unsigned())
        schema_error(gpath, "expected positive integers");
      one_line.push_back(v.get<std::size_t>());
    }
    try {
      gens.push_back({name, Perm(one_line)});
    } catch (const Error &e) {
      schema_error(gpath, e.what());
    }
  }
  k.h = close_generators(k.g.degree, std::move(gens));
  auto report = check_klein_pair(k);
  if (!report.ok)
    throw Error("NotASubgroup", report.summary());
  return k;
}

GroupoidGeometry json_to_geometry(const json &j, const std::string &path) {
  GroupoidGeometry gg;
  gg.g = json_to_category(field(j, "groupoid", path), path + ".groupoid");
  require_validated(check_category(gg.g));
  const json &wide = field(j, "wide_subgroupoid", path);
  if (!wide.is_array())
    schema_error(path + ".wide_subgroupoid", "expected an array");
  std::set<std::string> chosen;
  gg.b.objects = gg.g.objects;
  gg.b.identity = gg.g.identity;
  for (std::size_t i = 0; i < wide.size(); ++i) {
    std::string name = as_string(
        wide[i], path + ".wide_subgroupoid[" + std::to_string(i) + "]");
    const MorphismDecl *m = gg.g.morphism(name);
    if (m == nullptr)
      schema_error(path + ".wide_subgroupoid[" + std::to_string(i) + "]",
                   "unknown morphism " + name);
    if (chosen.insert(name).second)
      gg.b.morphisms.push_back(*m);
  }
  for (const auto &[pair, gf] : gg.g.compose) {
    if (chosen.count(pair.first) && chosen.count(pair.second) &&
        chosen.count(gf))
      gg.b.compose[pair] = gf;
  }
  auto report = check_wide_subgroupoid(gg);
  if (!report.ok)
    throw Error("NotWideSubgroupoid", report.summary());
  return gg;
}

json category_to_json(const FinCat &c) {
  json j = json::object();
  j["objects"] = c.objects;
  json mors = json::array();
  for (const auto &m : c.morphisms)
    mors.push_back({{"name", m.name}, {"src", m.src}, {"tgt", m.tgt}});
  j["morphisms"] = std::move(mors);
  json ids = json::object();
  for (const auto &[obj, id] : c.identity)
    ids[obj] = id;
  j["identities"] = std::move(ids);
  json comp = json::array();
  for (const auto &[pair, gf] : c.compose) {
    if (c.is_identity(pair.first) || c.is_identity(pair.second))
      continue;
    comp.push_back({pair.first, pair.second, gf});
  }
  j["compose"] = std::move(comp);
  return j;
}

json group_to_json(const PermGroup &g) {
  json j = json::object();
  j["degree"] = g.degree;
  json gens = json::object();
  for (const auto &[name, perm] : g.generators)
    gens[name] = perm.images();
  j["generators"] = std::move(gens);
  return j;
}

json string_map_to_json(const std::map<std::string, std::string> &m) {
  json j = json::object();
  for (const auto &[k, v] : m)
    j[k] = v;
  return j;
}

json set_valued_to_json(const SetValuedAction &a) {
  json j = json::object();
  j["base"] = category_to_json(a.base);
  json fibers = json::object();
  for (const auto &[obj, elems] : a.fiber)
    fibers[obj] = elems;
  j["fibers"] = std::move(fibers);
  json act = json::object();
  for (const auto &[mor, fn] : a.act)
    act[mor] = string_map_to_json(fn);
  j["act"] = std::move(act);
  return j;
}

json functor_maps_to_json(const FinFunctor &f) {
  json j = json::object();
  j["objects"] = string_map_to_json(f.object_map);
  j["morphisms"] = string_map_to_json(f.morphism_map);
  return j;
}

json cat_valued_to_json(const CatValuedAction &a) {
  json j = json::object();
  j["base"] = category_to_json(a.base);
  json fibers = json::object();
  for (const auto &[obj, cat] : a.fiber)
    fibers[obj] = category_to_json(cat);
  j["fibers"] = std::move(fibers);
  json act = json::object();
  for (const auto &[mor, fn] : a.act)
    act[mor] = functor_maps_to_json(fn);
  j["act"] = std::move(act);
  return j;
}

json action_to_json(const GroupAction &a) {
  json j = json::object();
  j["group"] = group_to_json(a.group);
  j["carrier"] = a.carrier;
  json table = json::array();
  for (const auto &[key, y] : a.table)
    table.push_back({key.first, key.second, y});
  j["table"] = std::move(table);
  return j;
}

json hierarchy_to_json(const HierarchySpec &spec) {
  json j = json::object();
  j["outer_base"] = category_to_json(spec.outer_base);
  json inner = json::object();
  for (const auto &[obj, act] : spec.inner)
    inner[obj] = set_valued_to_json(act);
  j["inner"] = std::move(inner);
  json outer_act = json::object();
  for (const auto &[mor, fn] : spec.outer_act)
    outer_act[mor] = functor_maps_to_json(fn);
  j["outer_act"] = std::move(outer_act);
  return j;
}

json klein_to_json(const KleinPair &k) {
  json j = json::object();
  j["group"] = group_to_json(k.g);
  json sub = json::object();
  for (const auto &[name, perm] : k.h.generators)
    sub[name] = perm.images();
  j["subgroup"] = std::move(sub);
  return j;
}

json geometry_to_json(const GroupoidGeometry &gg) {
  json j = json::object();
  j["groupoid"] = category_to_json(gg.g);
  json wide = json::array();
  for (const auto &m : gg.b.morphisms)
    wide.push_back(m.name);
  j["wide_subgroupoid"] = std::move(wide);
  return j;
}

} // namespace

Document parse(const std::string &text, InputFormat format) {
  if (format == InputFormat::Dsl)
    return parse(dsl_to_json(text), InputFormat::Json);

  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error("SyntaxError", e.what());
  }
  if (!j.is_object())
    schema_error("$", "expected a JSON object");
  std::string kind = as_string(field(j, "kind", "$"), "$.kind");

  Document doc;
  if (kind == "category") {
    doc.kind = DocumentKind::Category;
    FinCat c = json_to_category(j, "$");
    require_validated(check_category(c));
    doc.payload = std::move(c);
  } else if (kind == "group") {
    doc.kind = DocumentKind::Group;
    doc.payload = json_to_group(j, "$");
  } else if (kind == "action") {
    doc.kind = DocumentKind::Action;
    GroupAction a = json_to_action(j, "$");
    require_validated(check_action(a));
    doc.payload = std::move(a);
  } else if (kind == "set_valued_action") {
    doc.kind = DocumentKind::SetValuedAction;
    SetValuedAction a = json_to_set_valued(j, "$");
    require_validated(check_set_valued_action(a));
    doc.payload = std::move(a);
  } else if (kind == "cat_valued_action") {
    doc.kind = DocumentKind::CatValuedAction;
    CatValuedAction a = json_to_cat_valued(j, "$");
    require_validated(check_cat_valued_action(a));
    doc.payload = std::move(a);
  } else if (kind == "hierarchy") {
    doc.kind = DocumentKind::Hierarchy;
    HierarchySpec spec = json_to_hierarchy(j, "$");
    build_hierarchy(spec); // full validation of both levels
    doc.payload = std::move(spec);
  } else if (kind == "klein") {
    doc.kind = DocumentKind::Klein;
    doc.payload = json_to_klein(j, "$");
  } else if (kind == "groupoid_geometry") {
    doc.kind = DocumentKind::GroupoidGeometry;
    doc.payload = json_to_geometry(j, "$");
  } else {
    schema_error("$.kind", "unknown document kind " + kind);
  }
  return doc;
}

std::string serialize(const Document &doc) {
  json j = json::object();
  j["kind"] = kind_name(doc.kind);
  json payload;
  switch (doc.kind) {
  case DocumentKind::Category:
    payload = category_to_json(std::get<FinCat>(doc.payload));
    break;
  case DocumentKind::Group:
    payload = group_to_json(std::get<PermGroup>(doc.payload));
    break;
  case DocumentKind::Action:
    payload = action_to_json(std::get<GroupAction>(doc.payload));
    break;
  case DocumentKind::CatValuedAction:
    payload = cat_valued_to_json(std::get<CatValuedAction>(doc.payload));
    break;
  case DocumentKind::SetValuedAction:
    payload = set_valued_to_json(std::get<SetValuedAction>(doc.payload));
    break;
  case DocumentKind::Hierarchy:
    payload = hierarchy_to_json(std::get<HierarchySpec>(doc.payload));
    break;
  case DocumentKind::Klein:
    payload = klein_to_json(std::get<KleinPair>(doc.payload));
    break;
  case DocumentKind::GroupoidGeometry:
    payload = geometry_to_json(std::get<GroupoidGeometry>(doc.payload));
    break;
  }
  for (auto &[key, value] : payload.items())
    j[key] = std::move(value);
  return j.dump(2) + "\n";
}

} // namespace fibrato
