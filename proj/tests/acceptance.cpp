// Acceptance runner: one PASS/FAIL/SKIP line per criterion.
//
// Usage: acceptance [--known-fail N]... [--catalogs DIR]
// Exits 0 iff the failing criteria are exactly the ones listed with --known-fail.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blocklat/blocklat.hpp"
#include "blocklat/io.hpp"
#include "fixtures.hpp"

using namespace blocklat;
namespace gr = blocklat::groups;
namespace fs = std::filesystem;

namespace {

const PermGroup c2 = gr::cyclic(2), c3 = gr::cyclic(3), s3 = gr::symmetric(3);

/// Collects failed checks for one criterion; the criterion passes when none fail.
class Check {
public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void info(const std::string& line) { info_.push_back(line); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return info_; }

private:
  std::vector<std::string> failures_, info_;
};

/// Thrown to report a criterion as skipped.
struct Skip {
  std::string reason;
};

std::string str(std::size_t v) { return std::to_string(v); }

bool uniform_shape(const Partition& p, std::size_t parts, std::size_t size) {
  if (p.block_count() != parts) return false;
  for (std::size_t k = 0; k < parts; ++k)
    if (p.block(k).size() != size) return false;
  return true;
}

void criterion_regular_order8(Check& c) {
  for (const auto& g : gr::regular_order8()) {
    const bool expected = g.name() != "D8_regular";
    const bool got = is_ob(g);
    c.info(g.name() + " ob=" + (got ? "true" : "false"));
    c.expect(got == expected, g.name() + ": is_ob mismatch");
  }
}

void criterion_quasihamiltonian(Check& c) {
  const auto q8 = gr::quaternion_regular();
  const auto q8q8 = direct_product(q8, q8);
  c.expect(q8q8.degree() == 64 && q8q8.order() == 64, "Q8xQ8 is not regular of degree 64");
  const bool qh8 = is_quasihamiltonian(q8), qh64 = is_quasihamiltonian(q8q8);
  c.expect(qh8, "Q8 should be quasi-hamiltonian");
  c.expect(!qh64, "Q8xQ8 should not be quasi-hamiltonian");
  c.expect(is_ob(q8) == qh8, "Q8: is_ob disagrees with quasi-hamiltonian test");
  c.expect(is_ob(q8q8) == qh64, "Q8xQ8: is_ob disagrees with quasi-hamiltonian test");
}

void criterion_a5_on15(Check& c) {
  const auto g = gr::a5_on15().group;
  const auto l = invariant_partitions(g);
  c.expect(l.size() == 3, "lattice has " + str(l.size()) + " elements");
  if (l.size() == 3) {
    std::size_t middle = 0;
    for (std::size_t i = 0; i < 3; ++i)
      if (!l[i].is_discrete() && !l[i].is_universal()) middle += uniform_shape(l[i], 5, 3);
    c.expect(middle == 1, "middle element is not a 5x3 partition");
  }
  c.expect(is_quasiprimitive(g), "not quasiprimitive");
  c.expect(!is_preprimitive(l), "pre-primitive");
  c.expect(is_ob(l), "not OB");
}

void criterion_flags(Check& c) {
  const auto gl = invariant_partitions(gr::gl32_flags().group);
  c.expect(gl.size() == 4, "GL(3,2) flags: lattice has " + str(gl.size()) + " elements");
  c.expect(is_distributive(gl), "GL(3,2) flags: lattice not distributive");
  c.expect(!is_ob(gl), "GL(3,2) flags: OB");

  auto pentagon_report = [&](const PermGroup& g, const std::string& name, bool required) {
    const auto l = invariant_partitions(g);
    const bool modular = is_modular(l);
    const auto w = find_forbidden_sublattice(l.lattice().tables());
    const bool p5 = w && w->kind == ForbiddenKind::pentagon;
    c.info(name + ": lattice size " + str(l.size()) + ", modular " + (modular ? "true" : "false") +
           ", P5 witness " + (p5 ? "yes" : "no"));
    if (!required) return;
    c.expect(l.size() == 5, name + ": lattice is not the pentagon (" + str(l.size()) + " elements)");
    c.expect(!modular, name + ": lattice is modular");
    c.expect(p5, name + ": no P5 witness");
  };
  pentagon_report(gr::affine_flags_order2(), "affine flags q=2", true);
  pentagon_report(gr::affine_flags(3), "affine flags q=3", false);
}

void criterion_latin_squares(Check& c) {
  const auto with_letters = association_scheme(validate_obs(4, latin_square_partitions(2, 1)).value());
  const auto without = association_scheme(validate_obs(4, latin_square_partitions(2, 0)).value());
  c.expect(schemes_equal(with_letters, without), "q=2 schemes differ");
  c.expect(with_letters.nondiagonal_classes() == 3, "q=2: " + str(with_letters.nondiagonal_classes()) + " classes");
  for (std::size_t q : {2u, 3u}) {
    const auto complete = derive_scheme(validate_obs(q * q, latin_square_partitions(q, q - 1)).value());
    const auto& l = complete.scheme;
    c.expect(l.nondiagonal_classes() == q + 1, "q=" + str(q) + ": " + str(l.nondiagonal_classes()) + " classes");
    c.expect(verify_scheme(l), "q=" + str(q) + ": scheme fails verification");
    const auto obs = validate_obs(q * q, latin_square_partitions(q, q - 1)).value();
    const auto top = obs.lattice().top();
    const auto& empty = complete.empty_strata;
    c.expect(std::find(empty.begin(), empty.end(), top) != empty.end(), "q=" + str(q) + ": S_U nonempty");
    const auto omitted = derive_scheme(validate_obs(q * q, latin_square_partitions(q, q - 2)).value());
    const auto otop = validate_obs(q * q, latin_square_partitions(q, q - 2)).value().lattice().top();
    c.expect(std::find(omitted.empty_strata.begin(), omitted.empty_strata.end(), otop) == omitted.empty_strata.end(),
             "q=" + str(q) + ": S_U empty after omitting a square");
  }
}

void criterion_degenerations(Check& c) {
  const auto a = gwp_generators(fixture::antichain({c2, c2}));
  const auto ch = gwp_generators(fixture::chain({c2, c2}));
  c.expect(a.order() == 4 && a.degree() == 4, "antichain order " + str(a.order()));
  c.expect(same_group(a, direct_product(c2, c2)), "antichain differs from the direct product");
  c.expect(ch.order() == 8, "chain order " + str(ch.order()));
  c.expect(same_group(ch, wreath_product(c2, c2)), "chain differs from the wreath product");
}

void criterion_primitive_components(Check& c) {
  const auto cc = gwp_properties(fixture::antichain({c2, c2}));
  c.expect(cc.report.preprimitive == true, "C2,C2: not pre-primitive");
  c.expect(cc.report.ob == true, "C2,C2: not OB");
  c.expect(cc.report.pb == false && !cc.pb, "C2,C2: PB");
  c.expect(cc.invariant_count == 5 && cc.downset_count == 4,
           "C2,C2: " + str(cc.invariant_count) + " invariant vs " + str(cc.downset_count) + " down-sets");
  const auto c23 = gwp_properties(fixture::antichain({c2, c3}));
  c.expect(c23.pb && c23.report.pb == true, "C2,C3: not PB");
  c.expect(c23.invariant_count == 4, "C2,C3: count " + str(c23.invariant_count));

  const std::vector<PermGroup> pool{c2, c3, s3};
  std::size_t checked = 0, disagreements = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& poset : fixture::all_posets(n)) {
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        std::vector<PermGroup> comps;
        for (auto k : pick) comps.push_back(pool[k]);
        const GwpSpec spec(poset, comps);
        const auto r = check_pb_theorem(spec);
        disagreements += !r.consistent;
        ++checked;
        std::size_t i = 0;
        for (; i < n && ++pick[i] == pool.size(); ++i) pick[i] = 0;
        if (i == n) break;
      }
    }
  c.info("pb_obstruction checked on " + str(checked) + " specs");
  c.expect(disagreements == 0, str(disagreements) + " specs where pb_obstruction disagrees with enumeration");
}

void criterion_semidirect(Check& c) {
  const auto spec = fixture::v_c2();
  for (std::size_t p : {0u, 1u}) {
    const auto r = semidirect_decomposition(spec, p);
    const std::string node = spec.poset().label(p);
    c.expect(r.kernel.order() == 4, node + ": |N| = " + str(r.kernel.order()));
    c.expect(r.induced_matches, node + ": H differs from the sub-spec GWP");
    c.expect(r.classes_match, node + ": classes differ from brute force");
    bool same_top = true;
    for (std::size_t k = 0; k < r.pi.block_count(); ++k)
      for (std::size_t l = 0; l < r.pi.block_count(); ++l) {
        const auto a = r.pi.block(k).front(), b = r.pi.block(l).front();
        same_top &= r.classes.same_block(static_cast<Point>(k), static_cast<Point>(l)) ==
                    (spec.radix().digit(a, 2) == spec.radix().digit(b, 2));
      }
    c.expect(same_top, node + ": classes are not 'same top coordinate'");
  }
  const std::vector<std::pair<std::string, GwpSpec>> others{{"2-chain", fixture::chain({c2, c2})},
                                                            {"2-antichain", fixture::antichain({c2, c2})},
                                                            {"3-antichain", fixture::antichain({c2, c2, c2})}};
  for (const auto& [name, s] : others)
    for (std::size_t p = 0; p < s.size(); ++p) {
      if (!s.poset().is_minimal(p)) continue;
      const auto r = semidirect_decomposition(s, p);
      c.expect(r.ok(), name + " node " + s.poset().label(p) + ": three-way agreement fails");
      if (!r.literal_matches) c.info(name + " node " + s.poset().label(p) + ": literal reading differs from brute force");
    }
}

void criterion_linear_extensions(Check& c) {
  const auto r = check_linear_extensions(fixture::v_c2());
  c.expect(r.extension_orders == std::vector<std::size_t>{128, 128}, "extension orders differ from 128,128");
  c.expect(r.intersection_order == 32 && r.gwp_order == 32 && r.equal,
           "intersection " + str(r.intersection_order) + " vs GWP " + str(r.gwp_order));
  const auto up = fixture::chain({c2, c2});
  const auto down = GwpSpec(Poset::from_covers(2, {{1, 0}}), {c2, c2});
  const auto o = gwp_intersection(up, down);
  c.expect(o.intersection_order == 4 && o.equal, "opposite chains intersect in order " + str(o.intersection_order));
}

void criterion_embedding(Check& c) {
  const auto d4 = verify_embedding(gr::dihedral(4));
  c.expect(d4.verdict, "D4: " + d4.message);
  c.expect(d4.gwp_order == std::optional<std::size_t>{8} && d4.group_order == 8, "D4: orders differ from 8");
  c.expect(d4.spec && same_group(gwp_generators(*d4.spec), wreath_product(c2, c2)), "D4: spec is not C2 wr C2");

  const auto s6 = verify_embedding(gr::s6_square36());
  bool naive120 = s6.naive_spec.has_value(), star720 = s6.spec.has_value();
  if (s6.naive_spec)
    for (const auto& g : s6.naive_spec->components()) naive120 &= g.order() == 120;
  if (s6.spec)
    for (const auto& g : s6.spec->components()) star720 &= g.order() == 720;
  c.expect(naive120, "S6: naive components are not of order 120");
  c.expect(star720, "S6: G* components are not of order 720");
  c.expect(!s6.naive_verdict, "S6: naive membership passes");
  bool all = !s6.member.empty();
  for (bool m : s6.member) all &= m;
  c.expect(all && s6.verdict, "S6: a generator fails G* membership");
}

std::vector<PermGroup> implication_fixtures() {
  std::vector<PermGroup> out{c3,
                             s3,
                             gr::cyclic(4),
                             gr::dihedral(4),
                             gr::symmetric(4),
                             gr::alternating(4),
                             gr::affine_line(5, 2),
                             gr::cyclic(6),
                             gr::dihedral(6),
                             gr::affine_line(7, 3),
                             gr::gl32_points(),
                             wreath_product(c2, c2),
                             wreath_product(c2, c3),
                             wreath_product(c3, c2),
                             direct_product(c3, c3),
                             gr::cyclic(9),
                             wreath_product(s3, c2),
                             gr::affine_flags_order2(),
                             gr::cyclic(12),
                             gr::a5_on15().group,
                             gr::modular16_regular(),
                             gr::frobenius21_regular(),
                             gr::gl32_flags().group,
                             regular_action(gr::symmetric(4)),
                             gr::affine_flags(3),
                             gr::s6_square36(),
                             direct_product(gr::quaternion_regular(), gr::quaternion_regular()),
                             gwp_generators(fixture::v_c2()),
                             gwp_generators(fixture::antichain({c2, c2})),
                             gwp_generators(fixture::antichain({c2, c3}))};
  for (const auto& g : gr::regular_order8()) out.push_back(g);
  return out;
}

void criterion_implications(Check& c) {
  const auto fixtures = implication_fixtures();
  std::size_t pairs = 0, closures = 0, min_degree = 1000, max_degree = 0;
  for (const auto& g : fixtures) {
    const std::string n = g.name().empty() ? "degree " + str(g.degree()) : g.name();
    min_degree = std::min(min_degree, g.degree());
    max_degree = std::max(max_degree, g.degree());
    const auto r = analyze(g);
    c.expect(r.transitive, n + ": not transitive");
    if (!r.transitive) continue;
    auto t = [](const std::optional<bool>& b) { return b.value_or(false); };
    if (t(r.primitive)) c.expect(t(r.quasiprimitive) && t(r.preprimitive), n + ": primitive but not quasi/pre-primitive");
    if (t(r.preprimitive)) c.expect(t(r.ob), n + ": pre-primitive but not OB");
    if (t(r.stratifiable)) c.expect(t(r.ob), n + ": stratifiable but not OB");
    if (t(r.pb)) c.expect(t(r.ob), n + ": PB but not OB");
    if (t(r.distributive)) c.expect(t(r.modular), n + ": distributive but not modular");
    if (t(r.ob)) c.expect(!r.modular || *r.modular, n + ": commuting lattice but not modular");

    const auto l = invariant_partitions(g);
    for (std::size_t a = 0; a < l.size(); ++a)
      for (std::size_t b = a + 1; b < l.size(); ++b) {
        const bool base = commute_invariant(l[a], l[b]);
        const bool general = commutes(l[a], l[b]);
        const bool subgroups = subgroups_commute_via_partitions(g, l[a], l[b]).subgroups_permute;
        c.expect(base == general && general == subgroups, n + ": commuting tests disagree on a pair");
        ++pairs;
      }
    if (g.degree() <= 12) {
      c.expect(is_ob(l) == is_ob(two_closure(g)), n + ": OB differs from OB of the 2-closure");
      ++closures;
    }
  }
  c.expect(fixtures.size() >= 15, "fewer than 15 fixtures");
  c.info(str(fixtures.size()) + " fixtures of degree " + str(min_degree) + " to " + str(max_degree) + ", " +
         str(pairs) + " partition pairs, " + str(closures) + " 2-closures");
}

void criterion_survey(Check& c, const fs::path& dir) {
  struct Row {
    std::size_t degree, transitive, ob, preprimitive;
  };
  const std::vector<Row> table{{10, 45, 44, 42}, {14, 63, 62, 59}};
  for (const auto& row : table) {
    const auto path = dir / ("degree" + str(row.degree) + ".json");
    if (!fs::exists(path)) throw Skip{"catalog " + path.string() + " not present"};
  }
  for (const auto& row : table) {
    const auto m = load_manifest(dir / ("degree" + str(row.degree) + ".json"));
    std::size_t transitive = 0, ob = 0, pre = 0;
    for (const auto& e : m.entries) {
      const auto g = group_from_json(e.group);
      c.expect(g.degree() == row.degree, e.source + ": degree " + str(g.degree()));
      if (!is_transitive(g)) continue;
      ++transitive;
      const auto l = invariant_partitions(g);
      ob += is_ob(l);
      pre += is_preprimitive(l);
    }
    const std::string got = str(transitive) + "/" + str(ob) + "/" + str(pre);
    const std::string want = str(row.transitive) + "/" + str(row.ob) + "/" + str(row.preprimitive);
    c.info("degree " + str(row.degree) + ": " + got);
    c.expect(got == want, "degree " + str(row.degree) + ": " + got + ", expected " + want);
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  fs::path catalogs = BLOCKLAT_DATA_DIR "/catalogs";
  if (const char* env = std::getenv("BLOCKLAT_CATALOG_DIR")) catalogs = env;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--known-fail" && i + 1 < argc) {
      known.insert(std::stoi(argv[++i]));
    } else if (a == "--catalogs" && i + 1 < argc) {
      catalogs = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--known-fail N]... [--catalogs DIR]\n";
      return 2;
    }
  }

  struct Criterion {
    std::string name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"regular order-8 groups", criterion_regular_order8},
      {"quasi-hamiltonian cross-check", criterion_quasihamiltonian},
      {"A5 on 15 points", criterion_a5_on15},
      {"flag actions", criterion_flags},
      {"Latin-square schemes", criterion_latin_squares},
      {"GWP degenerations", criterion_degenerations},
      {"GWPs of primitive components", criterion_primitive_components},
      {"semidirect decomposition", criterion_semidirect},
      {"linear extensions", criterion_linear_extensions},
      {"embedding", criterion_embedding},
      {"implication suite", criterion_implications},
      {"catalog survey", [&](Check& c) { criterion_survey(c, catalogs); }}};

  std::set<int> failed;
  int passed = 0, skipped = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Check c;
    std::string status;
    std::string skip_reason;
    try {
      criteria[i].run(c);
      status = c.ok() ? "PASS" : "FAIL";
    } catch (const Skip& s) {
      status = "SKIP";
      skip_reason = s.reason;
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
      status = "FAIL";
    }
    std::cout << status << " " << id << " " << criteria[i].name;
    if (status == "SKIP") std::cout << " (catalogs absent: " << skip_reason << ")";
    std::cout << "\n";
    for (const auto& f : c.failures()) std::cout << "    fail: " << f << "\n";
    for (const auto& n : c.notes()) std::cout << "    info: " << n << "\n";
    if (status == "PASS") ++passed;
    if (status == "SKIP") ++skipped;
    if (status == "FAIL") failed.insert(id);
  }
  std::cout << passed << " passed, " << failed.size() << " failed, " << skipped << " skipped\n";
  if (failed != known) {
    std::cout << "failing criteria differ from the expected set\n";
    return 1;
  }
  return 0;
}
