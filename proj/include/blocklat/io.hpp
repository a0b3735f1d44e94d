#pragma once

// JSON reading and writing for groups, partitions, posets, GWP specs and reports.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockstruct.hpp"
#include "error.hpp"
#include "groupprops.hpp"
#include "gwp.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "poset.hpp"

namespace blocklat {

using Json = nlohmann::ordered_json;

/// Malformed input file.
class ParseError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(what + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::size_t as_size(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(what + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<Point> as_points(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of points");
  std::vector<Point> out;
  for (const auto& v : j) {
    const auto x = as_size(v, what);
    if (x > std::numeric_limits<Point>::max()) throw ParseError(what + ": point out of range");
    out.push_back(static_cast<Point>(x));
  }
  return out;
}

inline std::vector<Permutation> as_permutations(const Json& j, std::size_t degree, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of image arrays");
  std::vector<Permutation> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    auto im = as_points(j[k], what);
    if (im.size() != degree)
      throw ParseError(what + ": generator " + std::to_string(k) + " has " + std::to_string(im.size()) +
                       " images for degree " + std::to_string(degree));
    try {
      out.emplace_back(std::move(im));
    } catch (const InvalidArgument& e) {
      throw ParseError(what + ": generator " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace detail

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

/// {"name", "degree", "generators"}; with "subgroup_generators" the result is the action on the
/// cosets of that subgroup.
inline PermGroup group_from_json(const Json& j, std::size_t element_cap = Limits::from_environment().elements) {
  const std::string name = j.is_object() && j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  const std::string what = name.empty() ? "group" : "group " + name;
  const std::size_t degree = detail::as_size(detail::field(j, "degree", what), what);
  auto gens = detail::as_permutations(detail::field(j, "generators", what), degree, what);
  PermGroup g(degree, std::move(gens), name, element_cap);
  if (j.contains("subgroup_generators")) {
    auto sub = detail::as_permutations(j["subgroup_generators"], degree, what + " subgroup");
    try {
      g = coset_action(g, sub).group.with_name(name).with_cap(element_cap);
    } catch (const InvalidArgument& e) {
      throw ParseError(what + ": " + e.what());
    }
  }
  return g;
}

inline Json group_to_json(const PermGroup& g) {
  Json gens = Json::array();
  for (const auto& s : g.generators()) gens.push_back(s.images());
  return Json{{"name", g.name()}, {"degree", g.degree()}, {"generators", gens}};
}

inline PermGroup load_group(const std::filesystem::path& path,
                            std::size_t element_cap = Limits::from_environment().elements) {
  try {
    return group_from_json(read_json_file(path), element_cap);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// {"degree", "blocks"}, or a bare array of blocks when the degree is known.
inline Partition partition_from_json(const Json& j, std::optional<std::size_t> degree = std::nullopt) {
  const Json* blocks = &j;
  if (j.is_object()) {
    degree = detail::as_size(detail::field(j, "degree", "partition"), "partition");
    blocks = &detail::field(j, "blocks", "partition");
  }
  if (!degree) throw ParseError("partition: missing \"degree\"");
  if (!blocks->is_array()) throw ParseError("partition: expected an array of blocks");
  std::vector<std::vector<Point>> bs;
  for (const auto& b : *blocks) bs.push_back(detail::as_points(b, "partition"));
  try {
    return Partition::from_blocks(*degree, bs);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("partition: ") + e.what());
  }
}

inline Json partition_to_json(const Partition& p) {
  return Json{{"degree", p.degree()}, {"blocks", p.blocks()}};
}

/// {"degree", "partitions": [...]}.
inline std::vector<Partition> partitions_from_json(const Json& j, std::size_t& degree) {
  degree = detail::as_size(detail::field(j, "degree", "partition family"), "partition family");
  const auto& ps = detail::field(j, "partitions", "partition family");
  if (!ps.is_array()) throw ParseError("partition family: expected an array");
  std::vector<Partition> out;
  for (const auto& p : ps) {
    out.push_back(partition_from_json(p, degree));
    if (out.back().degree() != degree) throw ParseError("partition family: degree mismatch");
  }
  return out;
}

/// {"elements": [...], "covers": [[lower, upper], ...]}.
inline Poset poset_from_json(const Json& j) {
  const auto& els = detail::field(j, "elements", "poset");
  if (!els.is_array()) throw ParseError("poset: \"elements\" must be an array");
  std::vector<std::string> labels;
  for (const auto& e : els) {
    if (!e.is_string()) throw ParseError("poset: element names must be strings");
    labels.push_back(e.get<std::string>());
  }
  auto index = [&](const Json& e) {
    if (!e.is_string()) throw ParseError("poset: cover entries must be element names");
    const auto it = std::find(labels.begin(), labels.end(), e.get<std::string>());
    if (it == labels.end()) throw ParseError("poset: unknown element " + e.get<std::string>());
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  if (j.contains("covers")) {
    if (!j["covers"].is_array()) throw ParseError("poset: \"covers\" must be an array");
    for (const auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2) throw ParseError("poset: each cover is a pair");
      covers.emplace_back(index(c[0]), index(c[1]));
    }
  }
  try {
    return Poset::from_covers(labels.size(), covers, labels);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("poset: ") + e.what());
  }
}

inline Json poset_to_json(const Poset& p) {
  Json covers = Json::array();
  for (auto [a, b] : p.covers()) covers.push_back({p.label(a), p.label(b)});
  return Json{{"elements", p.labels()}, {"covers", covers}};
}

/// {"poset": poset or path, "components": {"m1": group or path, ...}}; paths are relative to `base`.
inline GwpSpec gwp_spec_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto resolve = [&](const Json& v) { return v.is_string() ? read_json_file(base / v.get<std::string>()) : v; };
  const Poset poset = poset_from_json(resolve(detail::field(j, "poset", "gwp spec")));
  const auto& comps = detail::field(j, "components", "gwp spec");
  if (!comps.is_object()) throw ParseError("gwp spec: \"components\" must be an object keyed by element");
  std::vector<PermGroup> groups;
  for (const auto& label : poset.labels()) {
    if (!comps.contains(label)) throw ParseError("gwp spec: no component for " + label);
    auto g = group_from_json(resolve(comps[label]));
    groups.push_back(g.name().empty() ? g.with_name(label) : g);
  }
  if (comps.size() != poset.size()) throw ParseError("gwp spec: components name unknown elements");
  return GwpSpec(poset, std::move(groups));
}

inline Json gwp_spec_to_json(const GwpSpec& s) {
  Json comps = Json::object();
  for (std::size_t i = 0; i < s.size(); ++i) comps[s.poset().label(i)] = group_to_json(s.component(i));
  return Json{{"poset", poset_to_json(s.poset())}, {"components", comps}};
}

/// Element dump: per node, the table of permutation images indexed by ancestor tuple.
inline Json gwp_element_to_json(const GwpSpec& s, const GwpElement& f) {
  Json out = Json::object();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Json t = Json::array();
    for (const auto& p : f.tables[i]) t.push_back(p.images());
    out[s.poset().label(i)] = t;
  }
  return out;
}

namespace detail {
inline Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }
}  // namespace detail

inline Json report_to_json(const PropertyReport& r) {
  Json lattice = Json::array();
  for (const auto& p : r.lattice) lattice.push_back(p.shape());
  Json witnesses = Json::object();
  if (r.ob_witness)
    witnesses["ob"] = {partition_to_json(r.ob_witness->first), partition_to_json(r.ob_witness->second)};
  if (r.preprimitive_witness) witnesses["preprimitive"] = partition_to_json(*r.preprimitive_witness);
  if (r.quasiprimitive_witness) witnesses["quasiprimitive"] = r.quasiprimitive_witness->images();
  return Json{{"name", r.name},
              {"degree", r.degree},
              {"order", r.order},
              {"transitive", r.transitive},
              {"primitive", detail::optional_bool(r.primitive)},
              {"quasiprimitive", detail::optional_bool(r.quasiprimitive)},
              {"preprimitive", detail::optional_bool(r.preprimitive)},
              {"ob", detail::optional_bool(r.ob)},
              {"pb", detail::optional_bool(r.pb)},
              {"stratifiable", detail::optional_bool(r.stratifiable)},
              {"distributive", detail::optional_bool(r.distributive)},
              {"modular", detail::optional_bool(r.modular)},
              {"witnesses", witnesses},
              {"lattice_size", r.lattice_size},
              {"lattice", lattice}};
}

/// Survey manifest: {"degree": n, "groups": [path or group, ...], "catalog": path,
/// "expected": {"transitive": t, "ob": o, "preprimitive": p}}. A catalog file is an array of groups
/// or an object with a "groups" array.
struct CatalogEntry {
  std::string source;
  Json group;
};

struct CatalogManifest {
  std::optional<std::size_t> degree;
  std::vector<CatalogEntry> entries;
  std::optional<std::size_t> expected_transitive, expected_ob, expected_preprimitive;
};

inline CatalogManifest load_manifest(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  const auto base = path.parent_path();
  CatalogManifest m;
  auto add_catalog = [&](const Json& cat, const std::string& source) {
    const Json& list = cat.is_object() ? detail::field(cat, "groups", source) : cat;
    if (!list.is_array()) throw ParseError(source + ": expected an array of groups");
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k].is_string()) {
        const auto p = base / list[k].get<std::string>();
        m.entries.push_back({p.string(), read_json_file(p)});
      } else {
        m.entries.push_back({source + "[" + std::to_string(k) + "]", list[k]});
      }
    }
  };
  if (j.is_array()) {
    add_catalog(j, path.string());
    return m;
  }
  if (j.contains("degree")) m.degree = detail::as_size(j["degree"], path.string());
  if (j.contains("groups")) add_catalog(j["groups"], path.string());
  if (j.contains("catalog")) {
    const auto p = base / detail::field(j, "catalog", path.string()).get<std::string>();
    add_catalog(read_json_file(p), p.string());
  }
  if (j.contains("expected")) {
    const auto& e = j["expected"];
    if (e.contains("transitive")) m.expected_transitive = detail::as_size(e["transitive"], "expected");
    if (e.contains("ob")) m.expected_ob = detail::as_size(e["ob"], "expected");
    if (e.contains("preprimitive")) m.expected_preprimitive = detail::as_size(e["preprimitive"], "expected");
  }
  return m;
}

}  // namespace blocklat
