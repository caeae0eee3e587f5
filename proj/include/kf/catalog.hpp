#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kf/io.hpp"

namespace kf {

// Expected value of one named check. source is "published", "derived" or "trivial".
struct Fixture {
  std::string check;
  Json expected;
  std::string source;
};

struct CatalogEntry {
  std::string name;
  std::string note;
  std::optional<BraidWord> braid;
  std::optional<PlanarDiagram> diagram;
  std::optional<TemplateSpec> tmpl;
  // Convention toggle: every diagram derived from this entry is mirrored.
  bool mirror = false;
  std::vector<Fixture> fixtures;

  bool has_diagram() const { return braid || diagram; }
  // Braid closure or PD code, named after the entry, mirrored when the entry says so.
  PlanarDiagram knot_diagram() const;
};

const std::vector<CatalogEntry>& builtin_catalog();

// Reads *.json documents (one entry or {"entries": [...]}) and text files whose lines are
// "NAME PD-code" with the code as [[a,b,c,d],...] or PD[X[a,b,c,d],...]. Lines starting with # are skipped.
std::vector<CatalogEntry> load_catalog_dir(const std::string& dir);
CatalogEntry catalog_entry_from_json(const Json& j);

// Built-ins first, then the directory named by KF_CATALOG_DIR.
CatalogEntry find_catalog_entry(const std::string& name);

}  // namespace kf
