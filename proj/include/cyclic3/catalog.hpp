#pragma once

// Text persistence for field catalogs: one record per line as key=value
// pairs, preceded by '#' header lines.

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cyclic3/classify.hpp"
#include "cyclic3/numtheory.hpp"

namespace cyclic3 {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCatalogKeys[] = {"e3", "d1", "d2", "D", "conductor", "discriminant", "A", "B", "canonical"};

inline void write_record(std::ostream& os, const FieldRecord& r) {
  os << "e3=" << r.label.e3 << " d1=" << r.label.d1 << " d2=" << r.label.d2 << " D=" << r.D
     << " conductor=" << r.conductor << " discriminant=" << r.discriminant << " A=" << r.polyA << " B=" << r.polyB
     << " canonical=" << (r.canonical ? 1 : 0) << "\n";
}

/// Header comment lines, then one line per record.
inline void write_catalog(std::ostream& os, const std::vector<FieldRecord>& records,
                          const std::vector<std::string>& header = {}) {
  os << "# cyclic3 field catalog\n";
  for (const std::string& h : header) os << "# " << h << "\n";
  os << "# count=" << records.size() << "\n";
  for (const FieldRecord& r : records) write_record(os, r);
}

inline FieldRecord parse_record(const std::string& line) {
  std::map<std::string, i64> kv;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw CatalogError("catalog: malformed token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    try {
      std::size_t used = 0;
      const i64 v = std::stoll(tok.substr(eq + 1), &used);
      if (used != tok.size() - eq - 1) throw std::invalid_argument(tok);
      if (!kv.emplace(key, v).second) throw CatalogError("catalog: duplicate key '" + key + "'");
    } catch (const std::logic_error&) {
      throw CatalogError("catalog: bad value in '" + tok + "'");
    }
  }
  for (const char* k : kCatalogKeys) {
    if (kv.find(k) == kv.end()) throw CatalogError(std::string("catalog: missing key '") + k + "'");
  }
  if (kv.size() != std::size(kCatalogKeys)) throw CatalogError("catalog: unknown key in '" + line + "'");
  FieldRecord r;
  r.label = {static_cast<int>(kv["e3"]), kv["d1"], kv["d2"]};
  r.D = kv["D"];
  r.conductor = kv["conductor"];
  r.discriminant = kv["discriminant"];
  r.polyA = kv["A"];
  r.polyB = kv["B"];
  r.canonical = kv["canonical"] != 0;
  try {
    validate(r.label);
  } catch (const LabelError& e) {
    throw CatalogError(std::string("catalog: ") + e.what());
  }
  if (r.D != r.label.D()) throw CatalogError("catalog: D does not match the label");
  return r;
}

inline std::vector<FieldRecord> parse_catalog(std::istream& is) {
  std::vector<FieldRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_record(line));
  }
  return out;
}

}  // namespace cyclic3
