// blocklat: command-line front end.
//
// Exit codes: 0 ok, 1 assertion or theorem violation, 2 parse error, 3 cap exceeded.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "blocklat/blocklat.hpp"
#include "blocklat/io.hpp"

namespace fs = std::filesystem;
using namespace blocklat;

namespace {

enum Exit : int { ok = 0, violation = 1, parse_error = 2, cap_exceeded = 3 };

struct Options {
  std::size_t cap_elements = 0;
  std::size_t cap_degree = Limits{}.points;
  unsigned jobs = 1;
  std::vector<std::string> asserts;
};

/// Thrown for findings that should end with exit status 1 after the report is printed.
struct Violation : Error {
  using Error::Error;
};

std::size_t element_cap(const Options& o) { return o.cap_elements ? o.cap_elements : Limits::from_environment().elements; }

PermGroup read_group(const fs::path& path, const Options& o) {
  PermGroup g = load_group(path, element_cap(o));
  if (g.degree() > o.cap_degree) throw CapExceeded("degree " + std::to_string(g.degree()), o.cap_degree);
  return g;
}

/// Compares each key=value against the top-level report fields; values are parsed as JSON.
int check_asserts(const Json& report, const std::vector<std::string>& asserts) {
  int status = Exit::ok;
  for (const auto& a : asserts) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw ParseError("--assert expects key=value, got " + a);
    const std::string key = a.substr(0, eq), text = a.substr(eq + 1);
    Json expected;
    try {
      expected = Json::parse(text);
    } catch (const Json::exception&) {
      expected = text;
    }
    if (!report.is_object() || !report.contains(key)) {
      std::cerr << "assertion failed: no field " << key << "\n";
      status = Exit::violation;
    } else if (report[key] != expected) {
      std::cerr << "assertion failed: " << key << " is " << report[key].dump() << ", expected " << expected.dump()
                << "\n";
      status = Exit::violation;
    }
  }
  return status;
}

int emit(const Json& report, const Options& o, bool violated = false) {
  std::cout << report.dump(2) << "\n";
  const int a = check_asserts(report, o.asserts);
  return violated ? Exit::violation : a;
}

int cmd_analyze(const fs::path& file, const Options& o) {
  const auto g = read_group(file, o);
  Json r = report_to_json(analyze(g));
  return emit(r, o);
}

int cmd_lattice(const fs::path& file, bool dot, const Options& o) {
  const auto g = read_group(file, o);
  const auto l = invariant_partitions(g);
  if (dot) {
    std::cout << to_dot(l.lattice(), g.name().empty() ? "lattice" : g.name());
    return check_asserts(Json{{"lattice_size", l.size()}}, o.asserts);
  }
  Json parts = Json::array();
  for (const auto& p : l.lattice().elements()) parts.push_back(partition_to_json(p));
  Json covers = Json::array();
  for (auto [lo, hi] : l.lattice().hasse()) covers.push_back({lo, hi});
  Json r{{"name", g.name()}, {"degree", g.degree()}, {"lattice_size", l.size()}, {"partitions", parts},
         {"covers", covers}};
  if (l.size() <= lattice_law_cap) {
    r["modular"] = is_modular(l);
    r["distributive"] = is_distributive(l);
    if (const auto w = find_forbidden_sublattice(l.lattice().tables())) {
      Json els = Json::array();
      for (auto e : w->elements) els.push_back(l[e].shape());
      r["forbidden_sublattice"] = {{"kind", w->kind == ForbiddenKind::pentagon ? "P5" : "N3"}, {"elements", els}};
    }
  }
  return emit(r, o);
}

int cmd_scheme(const fs::path& file, bool matrix, const Options& o) {
  std::size_t degree = 0;
  const auto parts = partitions_from_json(read_json_file(file), degree);
  if (degree > o.cap_degree) throw CapExceeded("degree " + std::to_string(degree), o.cap_degree);
  const auto v = validate_obs(degree, parts);
  if (!v.ok()) {
    Json r{{"obs", false}, {"violation", v.violation->message}, {"lattice_size", v.lattice.size()}};
    return emit(r, o, true);
  }
  const auto d = derive_scheme(*v.obs);
  const auto check = check_scheme(d.scheme);
  if (!check.ok) throw Violation("derived scheme fails verification: " + check.violation);
  if (matrix) {
    std::cout << to_matrix_text(d.scheme);
    return check_asserts(Json{{"classes", d.scheme.classes}}, o.asserts);
  }
  Json r{{"obs", true},
         {"lattice_size", v.obs->size()},
         {"distributive", is_pbs(*v.obs)},
         {"classes", d.scheme.classes},
         {"nondiagonal_classes", d.scheme.nondiagonal_classes()},
         {"class_sizes", d.scheme.class_sizes()},
         {"empty_strata", d.empty_strata.size()},
         {"verified", true}};
  return emit(r, o);
}

int cmd_gwp(const std::string& sub, const fs::path& file, const std::optional<std::string>& node, const Options& o) {
  const GwpSpec spec = gwp_spec_from_json(read_json_file(file), file.parent_path());
  if (spec.degree() > o.cap_degree) throw CapExceeded("degree " + std::to_string(spec.degree()), o.cap_degree);
  const auto& poset = spec.poset();
  if (sub == "build") {
    const auto g = gwp_generators(spec, file.stem().string(), element_cap(o));
    const auto expected = spec.expected_order();
    Json gens = Json::array();
    for (const auto& s : g.generators()) gens.push_back(s.images());
    Json r{{"degree", g.degree()}, {"generator_count", g.generators().size()}};
    r["expected_order"] = expected ? Json(*expected) : Json(nullptr);
    r["order"] = g.order();
    r["generators"] = gens;
    return emit(r, o, expected && *expected != g.order());
  }
  if (sub == "check-sdp") {
    Json reports = Json::array();
    bool bad = false;
    for (std::size_t p = 0; p < spec.size(); ++p) {
      if (!poset.is_minimal(p) || (node && poset.label(p) != *node)) continue;
      const auto s = semidirect_decomposition(spec, p);
      bad = bad || !s.ok();
      auto classes = [](const Partition& c) { return c.blocks(); };
      reports.push_back(Json{{"node", poset.label(p)},
                             {"kernel_order", s.kernel.order()},
                             {"expected_kernel_order", s.expected_kernel_order},
                             {"induced_order", s.induced.order()},
                             {"induced_matches_subspec", s.induced_matches},
                             {"classes", classes(s.classes)},
                             {"brute_force_classes", classes(s.brute_classes)},
                             {"classes_match", s.classes_match},
                             {"literal_classes", classes(s.literal_classes)},
                             {"literal_reading_matches", s.literal_matches},
                             {"ok", s.ok()}});
    }
    if (reports.empty()) throw ParseError("no minimal node" + (node ? " named " + *node : std::string()));
    return emit(Json{{"pass", !bad}, {"nodes", reports}}, o, bad);
  }
  if (sub == "check-linext") {
    const auto r = check_linear_extensions(spec);
    Json exts = Json::array();
    for (const auto& e : r.extensions) {
      Json labels = Json::array();
      for (auto i : e) labels.push_back(poset.label(i));
      exts.push_back(labels);
    }
    Json out{{"pass", r.equal},
             {"extensions", exts},
             {"extension_orders", r.extension_orders},
             {"intersection_order", r.intersection_order},
             {"gwp_order", r.gwp_order}};
    return emit(out, o, !r.equal);
  }
  if (sub == "check-pb") {
    const auto r = check_pb_theorem(spec);
    Json obstruction = nullptr;
    if (r.obstruction) obstruction = {poset.label(r.obstruction->first), poset.label(r.obstruction->second)};
    Json out{{"obstruction", obstruction},         {"pb", r.pb},
             {"invariant_count", r.invariant_count}, {"downset_count", r.downset_count},
             {"consistent", r.consistent}};
    return emit(out, o, !r.consistent);
  }
  throw ParseError("unknown gwp subcommand " + sub);
}

int cmd_embed(const fs::path& file, const std::optional<fs::path>& lattice_file, const Options& o) {
  const auto g = read_group(file, o);
  EmbeddingReport r;
  try {
    if (lattice_file) {
      std::size_t degree = 0;
      const auto parts = partitions_from_json(read_json_file(*lattice_file), degree);
      if (degree != g.degree()) throw ParseError("lattice degree does not match the group");
      r = verify_embedding(g, close(degree, parts));
    } else {
      r = verify_embedding(g);
    }
  } catch (const InvalidArgument& e) {
    std::cout << Json{{"verdict", false}, {"reason", e.what()}}.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return Exit::violation;
  }
  Json nodes = Json::array();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const auto& d = r.nodes[i];
    nodes.push_back(Json{{"label", r.ji.label(i)},
                         {"family_size", d.family.size()},
                         {"psi_in_family", d.psi_in_family},
                         {"gstar_degree", d.gstar.degree()},
                         {"gstar_order", d.gstar.order()},
                         {"naive_order", d.naive.order()}});
  }
  Json comps = Json::array();
  for (const auto& d : r.nodes) comps.push_back(d.gstar.order());
  Json out{{"verdict", r.verdict},
           {"message", r.message},
           {"ji_poset", poset_to_json(r.ji)},
           {"nodes", nodes},
           {"component_orders", comps},
           {"bijective", r.bijective},
           {"membership", r.member},
           {"naive_verdict", r.naive_verdict},
           {"naive_membership", r.naive_member},
           {"group_order", r.group_order}};
  out["gwp_order"] = r.gwp_order ? Json(*r.gwp_order) : Json(nullptr);
  return emit(out, o, !r.verdict);
}

struct SurveyRow {
  std::string source, name;
  std::size_t degree = 0;
  bool transitive = false;
  std::optional<bool> ob, preprimitive;
  std::string error;
  int status = Exit::ok;
};

SurveyRow survey_one(const CatalogEntry& e, const Options& o) {
  SurveyRow row;
  row.source = e.source;
  try {
    const auto g = group_from_json(e.group, element_cap(o));
    row.name = g.name();
    row.degree = g.degree();
    if (g.degree() > o.cap_degree) throw CapExceeded("degree " + std::to_string(g.degree()), o.cap_degree);
    row.transitive = is_transitive(g);
    if (row.transitive) {
      const auto l = invariant_partitions(g);
      row.ob = is_ob(l);
      row.preprimitive = is_preprimitive(l);
    }
  } catch (const ParseError& ex) {
    row.error = e.source + ": " + ex.what();
    row.status = Exit::parse_error;
  } catch (const CapExceeded& ex) {
    row.error = e.source + ": " + ex.what();
    row.status = Exit::cap_exceeded;
  } catch (const Error& ex) {
    row.error = e.source + ": " + ex.what();
    row.status = Exit::parse_error;
  }
  return row;
}

int cmd_survey(const fs::path& file, const std::optional<fs::path>& csv, const Options& o) {
  const auto m = load_manifest(file);
  std::vector<SurveyRow> rows(m.entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = survey_one(m.entries[i], o);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, o.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = Exit::ok;
  std::size_t transitive = 0, ob = 0, pre = 0;
  Json errors = Json::array();
  for (const auto& r : rows) {
    if (r.status != Exit::ok) {
      errors.push_back(r.error);
      std::cerr << r.error << "\n";
      // A parse error outranks a cap overflow.
      status = status == Exit::parse_error ? status : r.status;
      continue;
    }
    if (m.degree && r.degree != *m.degree) {
      errors.push_back(r.source + ": degree " + std::to_string(r.degree) + " differs from the manifest");
      status = Exit::parse_error;
    }
    transitive += r.transitive;
    ob += r.ob.value_or(false);
    pre += r.preprimitive.value_or(false);
  }
  if (csv) {
    std::ofstream out(*csv);
    out << "source,name,degree,transitive,ob,preprimitive\n";
    auto b = [](const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; };
    for (const auto& r : rows)
      out << r.source << ',' << r.name << ',' << r.degree << ',' << r.transitive << ',' << b(r.ob) << ','
          << b(r.preprimitive) << '\n';
  }
  Json out{{"groups", rows.size()}, {"transitive", transitive}, {"ob", ob}, {"preprimitive", pre}};
  if (m.degree) out["degree"] = *m.degree;
  bool mismatch = false;
  Json expected = Json::object();
  if (m.expected_transitive) expected["transitive"] = *m.expected_transitive, mismatch |= *m.expected_transitive != transitive;
  if (m.expected_ob) expected["ob"] = *m.expected_ob, mismatch |= *m.expected_ob != ob;
  if (m.expected_preprimitive)
    expected["preprimitive"] = *m.expected_preprimitive, mismatch |= *m.expected_preprimitive != pre;
  if (!expected.empty()) {
    out["expected"] = expected;
    out["match"] = !mismatch;
  }
  if (!errors.empty()) out["errors"] = errors;
  if (status != Exit::ok) {
    std::cout << out.dump(2) << "\n";
    return status;
  }
  return emit(out, o, mismatch);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant partition lattices, block structures and generalised wreath products"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--cap-elements", o.cap_elements, "Element cap for group enumeration (default 2000000)");
  app.add_option("--cap-degree", o.cap_degree, "Largest accepted degree")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads for survey")->capture_default_str();
  app.add_option("--assert", o.asserts, "key=value checked against the report; mismatch exits 1");

  std::string file, sub;
  std::optional<std::string> node;
  std::optional<std::string> extra;
  bool dot = false, matrix = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "Property report of a group");
  analyze_cmd->add_option("group", file, "Group file")->required();

  auto* lattice_cmd = app.add_subcommand("lattice", "Lattice of invariant partitions");
  lattice_cmd->add_option("group", file, "Group file")->required();
  lattice_cmd->add_flag("--dot", dot, "Emit the Hasse diagram as DOT");

  auto* scheme_cmd = app.add_subcommand("scheme", "Association scheme of an orthogonal block structure");
  scheme_cmd->add_option("obs", file, "Partition family file")->required();
  scheme_cmd->add_flag("--matrix", matrix, "Emit the class matrix as text");

  auto* gwp_cmd = app.add_subcommand("gwp", "Generalised wreath products");
  gwp_cmd->add_option("action", sub, "build, check-sdp, check-linext or check-pb")
      ->required()
      ->check(CLI::IsMember({"build", "check-sdp", "check-linext", "check-pb"}));
  gwp_cmd->add_option("spec", file, "GWP spec file")->required();
  gwp_cmd->add_option("--node", node, "Minimal node for check-sdp (default: all)");

  auto* embed_cmd = app.add_subcommand("embed", "Embedding into the GWP over the join-indecomposables");
  embed_cmd->add_option("group", file, "Group file")->required();
  embed_cmd->add_option("--lattice", extra, "Invariant poset block structure to use instead of the full lattice");

  auto* survey_cmd = app.add_subcommand("survey", "Counts over a catalog manifest");
  survey_cmd->add_option("manifest", file, "Manifest file")->required();
  survey_cmd->add_option("--csv", extra, "Per-group CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::parse_error;
  }

  try {
    auto path = [](const std::optional<std::string>& s) {
      return s ? std::optional<fs::path>(*s) : std::optional<fs::path>();
    };
    if (*analyze_cmd) return cmd_analyze(file, o);
    if (*lattice_cmd) return cmd_lattice(file, dot, o);
    if (*scheme_cmd) return cmd_scheme(file, matrix, o);
    if (*gwp_cmd) return cmd_gwp(sub, file, node, o);
    if (*embed_cmd) return cmd_embed(file, path(extra), o);
    if (*survey_cmd) return cmd_survey(file, path(extra), o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return Exit::parse_error;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return Exit::cap_exceeded;
  } catch (const Violation& e) {
    std::cerr << e.what() << "\n";
    return Exit::violation;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return Exit::parse_error;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::violation;
  }
  return Exit::ok;
}
