#include "ktensor/tensor_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace ktensor {

using nlohmann::ordered_json;

std::string tensor_to_text(const SymTensor& k) {
  ordered_json j;
  j["dim"] = k.dim();
  j["degree"] = k.degree();
  ordered_json entries = ordered_json::array();
  const auto& tab = k.table();
  for (std::size_t r = 0; r < k.size(); ++r) {
    const double v = k[r];
    if (!std::isfinite(v)) throw ConfigError("tensor literal: non-finite component");
    if (v == 0.0 && !std::signbit(v)) continue;
    ordered_json idx = ordered_json::array();
    for (int i : tab.tuple(r)) idx.push_back(i + 1);
    entries.push_back({{"index", idx}, {"value", v}});
  }
  j["entries"] = entries;
  return j.dump(2);
}

SymTensor tensor_from_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("tensor literal: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("degree"))
    throw ConfigError("tensor literal: expected object with dim and degree");
  if (!j["dim"].is_number_integer() || !j["degree"].is_number_integer())
    throw ConfigError("tensor literal: dim and degree must be integers");
  const int n = j["dim"].get<int>();
  const int p = j["degree"].get<int>();
  if (n < 2) throw ConfigError("tensor literal: dim must be >= 2");
  if (p < 0) throw ConfigError("tensor literal: degree must be >= 0");
  SymTensor k(n, p);
  std::vector<bool> seen(k.size(), false);
  if (!j.contains("entries")) return k;
  if (!j["entries"].is_array()) throw ConfigError("tensor literal: entries must be an array");
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("index") || !e.contains("value") || !e["index"].is_array() ||
        !e["value"].is_number())
      throw ConfigError("tensor literal: malformed entry");
    std::vector<int> idx;
    for (const auto& i : e["index"]) {
      if (!i.is_number_integer()) throw ConfigError("tensor literal: index entries must be integers");
      const int v = i.get<int>();
      if (v < 1 || v > n) throw ConfigError("tensor literal: index out of range");
      if (!idx.empty() && v - 1 < idx.back()) throw ConfigError("tensor literal: index must be non-decreasing");
      idx.push_back(v - 1);
    }
    if (static_cast<int>(idx.size()) != p) throw ConfigError("tensor literal: index length differs from degree");
    const double v = e["value"].get<double>();
    if (!std::isfinite(v)) throw ConfigError("tensor literal: non-finite value");
    const std::size_t r = k.table().rank_sorted(idx);
    if (seen[r]) throw ConfigError("tensor literal: duplicate index");
    seen[r] = true;
    k[r] = v;
  }
  return k;
}

SymTensor load_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tensor file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tensor_from_text(ss.str());
}

void save_tensor_file(const std::string& path, const SymTensor& k) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write tensor file: " + path);
  out << tensor_to_text(k) << "\n";
}

}  // namespace ktensor
