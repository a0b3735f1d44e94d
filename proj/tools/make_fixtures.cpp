// Writes the JSON fixtures under the directory given as the only argument.

#include <filesystem>
#include <iostream>

#include "blocklat/blocklat.hpp"
#include "blocklat/io.hpp"

namespace fs = std::filesystem;
using namespace blocklat;

namespace {

Json coset_group(const std::string& name, const PermGroup& g, const std::vector<Permutation>& sub) {
  Json j = group_to_json(g);
  j["name"] = name;
  Json s = Json::array();
  for (const auto& h : sub) s.push_back(h.images());
  j["subgroup_generators"] = s;
  return j;
}

Json partitions(std::size_t degree, const std::vector<Partition>& ps) {
  Json list = Json::array();
  for (const auto& p : ps) list.push_back(p.blocks());
  return Json{{"degree", degree}, {"partitions", list}};
}

Json gwp(const Poset& p, const std::vector<std::string>& component_files) {
  Json comps = Json::object();
  for (std::size_t i = 0; i < p.size(); ++i) comps[p.label(i)] = "../groups/" + component_files[i];
  return Json{{"poset", poset_to_json(p)}, {"components", comps}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <data-dir>\n";
    return 2;
  }
  const fs::path root = argv[1];
  for (const char* d : {"groups", "gwp", "obs", "manifests"}) fs::create_directories(root / d);
  auto group = [&](const std::string& file, const PermGroup& g) {
    write_json_file(root / "groups" / (file + ".json"), group_to_json(g.with_name(file)));
  };

  using namespace groups;
  group("c2", cyclic(2));
  group("c3", cyclic(3));
  group("s3", symmetric(3));
  group("c6_regular", cyclic(6));
  group("d4_blocks4", dihedral(4));
  group("s6_square36", s6_square36());
  group("gl32_flags21", gl32_flags().group);
  group("affine_flags12", affine_flags_order2());
  group("affine_flags_q3", affine_flags(3));
  const auto a5 = alternating(5);
  write_json_file(root / "groups" / "a5_on15.json",
                  coset_group("a5_on15", a5,
                              {Permutation::from_cycles(5, {{0, 1}, {2, 3}}), Permutation::from_cycles(5, {{0, 2}, {1, 3}})}));

  Json regular = Json::array();
  for (const auto& g : regular_order8()) {
    const std::string file = "regular8_" + g.name();
    group(file, g);
    regular.push_back("../groups/" + file + ".json");
  }
  write_json_file(root / "groups" / "d4_regular8.json", group_to_json(regular_order8().back().with_name("d4_regular8")));
  write_json_file(root / "manifests" / "regular8.json",
                  Json{{"degree", 8}, {"groups", regular}, {"expected", {{"transitive", 5}, {"ob", 4}, {"preprimitive", 4}}}});

  write_json_file(root / "manifests" / "broken_entry.json",
                  Json{{"degree", 8}, {"groups", {regular[0], Json{{"name", "broken"}, {"degree", 8}}}}});

  const auto v = Poset::from_covers(3, {{0, 2}, {1, 2}});
  write_json_file(root / "gwp" / "v_poset_c2.json", gwp(v, {"c2.json", "c2.json", "c2.json"}));
  write_json_file(root / "gwp" / "antichain_c2c2.json", gwp(Poset::antichain(2), {"c2.json", "c2.json"}));
  write_json_file(root / "gwp" / "antichain_c2c3.json", gwp(Poset::antichain(2), {"c2.json", "c3.json"}));
  write_json_file(root / "gwp" / "chain_c2c2.json", gwp(Poset::chain(2), {"c2.json", "c2.json"}));
  write_json_file(root / "gwp" / "chain_c2s3c2.json", gwp(Poset::chain(3), {"c2.json", "s3.json", "c2.json"}));

  write_json_file(root / "obs" / "latin_q2_full.json", partitions(4, latin_square_partitions(2, 1)));
  write_json_file(root / "obs" / "latin_q2_rows_columns.json", partitions(4, latin_square_partitions(2, 0)));
  write_json_file(root / "obs" / "latin_q3_full.json", partitions(9, latin_square_partitions(3, 2)));
  write_json_file(root / "obs" / "latin_q3_one_square.json", partitions(9, latin_square_partitions(3, 1)));
  const MixedRadix grid({3, 4});
  write_json_file(root / "obs" / "grid_3x4.json",
                  partitions(12, {coordinate_partition(grid, {0}), coordinate_partition(grid, {1})}));
  // Two uniform partitions that do not commute: not an orthogonal block structure.
  write_json_file(root / "obs" / "not_obs.json",
                  partitions(6, {Partition(std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2}),
                                 Partition(std::vector<std::uint32_t>{0, 1, 1, 2, 2, 0})}));
  std::cout << "fixtures written to " << root << "\n";
  return 0;
}
