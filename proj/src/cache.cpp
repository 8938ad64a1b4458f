#include "lcsq/cache.hpp"

#include <sys/resource.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace lcsq {

using nlohmann::json;

ComputationKey ComputationKey::for_table(const AlgebraPresentation& pres, int i,
                                         int bound) {
  ComputationKey key;
  key.ring = pres.ring.name();
  key.gens = pres.gens;
  for (const Element& f : pres.relations) key.relations.push_back(render_element(f));
  std::sort(key.relations.begin(), key.relations.end());
  key.lcs_index = i;
  key.max_degree = bound;
  return key;
}

std::string ComputationKey::canonical() const {
  std::ostringstream os;
  os << "ring=" << ring << "|gens=" << gens << "|relations=";
  for (std::size_t i = 0; i < relations.size(); ++i) os << (i ? "," : "") << relations[i];
  os << "|i=" << lcs_index << "|max_degree=" << max_degree;
  return os.str();
}

std::string ComputationKey::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : canonical()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json table_json(const BigradedTable& t) {
  json cells = json::array();
  for (const auto& [d, cell] : t.cells) {
    json torsion = json::array();
    for (const Int& f : cell.torsion) torsion.push_back(f.get_str());
    cells.push_back({{"degree", d.deg}, {"rank", cell.rank}, {"torsion", torsion}});
  }
  json rels = json::array();
  for (const Element& f : t.pres.relations) rels.push_back(render_element(f));
  return json{{"ring", t.pres.ring.name()},
              {"gens", t.pres.gens},
              {"relations", rels},
              {"i", t.lcs_index},
              {"max_degree", t.max_total_degree},
              {"warnings", t.warnings},
              {"cells", cells}};
}

BigradedTable table_from(const json& j) {
  BigradedTable t;
  t.pres.gens = j.at("gens").get<int>();
  t.pres.ring = Ring::parse(j.at("ring").get<std::string>());
  for (const auto& r : j.at("relations"))
    t.pres.relations.push_back(parse_element(r.get<std::string>(), t.pres.gens));
  t.lcs_index = j.at("i").get<int>();
  t.max_total_degree = j.at("max_degree").get<int>();
  if (j.contains("warnings")) t.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& c : j.at("cells")) {
    MultiDegree d(c.at("degree").get<std::vector<int>>());
    TableCell cell;
    cell.rank = c.at("rank").get<long>();
    for (const auto& f : c.at("torsion")) cell.torsion.emplace_back(f.get<std::string>());
    t.cells.emplace(std::move(d), std::move(cell));
  }
  return t;
}

}  // namespace

std::string table_to_json(const BigradedTable& table) {
  return table_json(table).dump(2);
}

BigradedTable table_from_json(const std::string& json_text) {
  return table_from(json::parse(json_text));
}

std::optional<CacheRecord> cache_get(const std::filesystem::path& dir,
                                     const ComputationKey& key) {
  std::filesystem::path file = dir / (key.hash() + ".json");
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    CacheRecord rec;
    rec.key.ring = j.at("key").at("ring").get<std::string>();
    rec.key.gens = j.at("key").at("gens").get<int>();
    rec.key.relations = j.at("key").at("relations").get<std::vector<std::string>>();
    rec.key.lcs_index = j.at("key").at("i").get<int>();
    rec.key.max_degree = j.at("key").at("max_degree").get<int>();
    rec.key.version = j.at("key").at("version").get<std::string>();
    if (rec.key.canonical() != key.canonical()) return std::nullopt;
    if (rec.key.version != key.version) return std::nullopt;  // stale engine
    rec.wall_seconds = j.at("wall_seconds").get<double>();
    rec.peak_memory_mb = j.at("peak_memory_mb").get<double>();
    rec.table = table_from(j.at("table"));
    return rec;
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache file " << file << ": " << e.what()
              << "\n";
    return std::nullopt;
  }
}

void cache_put(const std::filesystem::path& dir, const CacheRecord& record) {
  std::filesystem::create_directories(dir);
  json j{{"key",
          {{"ring", record.key.ring},
           {"gens", record.key.gens},
           {"relations", record.key.relations},
           {"i", record.key.lcs_index},
           {"max_degree", record.key.max_degree},
           {"version", record.key.version}}},
         {"wall_seconds", record.wall_seconds},
         {"peak_memory_mb", record.peak_memory_mb},
         {"table", table_json(record.table)}};
  std::filesystem::path file = dir / (record.key.hash() + ".json");
  std::filesystem::path tmp =
      dir / (record.key.hash() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, file);
}

double peak_memory_mb() {
  struct rusage ru;
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<double>(ru.ru_maxrss) / 1024.0;
}

}  // namespace lcsq
