#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "enumkg/cli/commands.hpp"

#ifndef ENUMKG_FIXTURE_DIR
#error "ENUMKG_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixture {

namespace fs = std::filesystem;

inline fs::path dir() { return fs::path(ENUMKG_FIXTURE_DIR); }
inline fs::path path(const std::string& name) { return dir() / name; }

inline enumkg::cli::BuildConfig config(const fs::path& output = {}) {
  enumkg::cli::BuildConfig c;
  c.attack_path = path("attack_fixture.json");
  c.capec_path = path("capec_fixture.xml");
  c.cwe_path = path("cwe_fixture.xml");
  c.output_path = output;
  return c;
}

// The closed fixture graph, built once per process.
inline const enumkg::KnowledgeGraph& graph() {
  static const enumkg::KnowledgeGraph g = enumkg::cli::build_from_files(config()).graph;
  return g;
}

// Values derived by tests/oracle/fixture_oracle.py.
inline const nlohmann::json& expected() {
  static const nlohmann::json j = nlohmann::json::parse(enumkg::cli::read_file(path("expected.json")));
  return j;
}

inline enumkg::modeler::Diagram diagram(const std::string& name) {
  return enumkg::modeler::parse_diagram(enumkg::cli::read_file(path(name)));
}

// Fresh scratch directory removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() /
            ("enumkg-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

}  // namespace fixture
