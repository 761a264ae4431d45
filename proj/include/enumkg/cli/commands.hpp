#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "enumkg/graph/build.hpp"
#include "enumkg/graph/closure.hpp"
#include "enumkg/graph/snapshot.hpp"
#include "enumkg/ingest/attack_stix.hpp"
#include "enumkg/ingest/capec_xml.hpp"
#include "enumkg/ingest/cwe_xml.hpp"
#include "enumkg/ingest/report_json.hpp"
#include "enumkg/modeler/annotate.hpp"
#include "enumkg/modeler/diagram.hpp"
#include "enumkg/query/query.hpp"

namespace enumkg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kInputParseFailure = 1,
  kUnknownId = 2,
  kIoFailure = 3,
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ConsistencyError*>(&e))
    return kInputParseFailure;
  if (dynamic_cast<const NotFoundError*>(&e) || dynamic_cast<const InvalidArgument*>(&e))
    return kUnknownId;
  if (dynamic_cast<const IoError*>(&e)) return kIoFailure;
  return kInputParseFailure;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Staged write: content goes to a sibling temp file which is renamed into
// place by commit(). Nothing is left behind if commit() is never called.
class StagedFile {
public:
  StagedFile(fs::path target, const std::string& content)
      : target_(std::move(target)), temp_(target_.string() + ".tmp") {
    std::ofstream out(temp_, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + temp_.string());
    out << content;
    out.close();
    if (!out) throw IoError("cannot write " + temp_.string());
  }
  StagedFile(const StagedFile&) = delete;
  StagedFile& operator=(const StagedFile&) = delete;
  ~StagedFile() {
    if (!committed_) {
      std::error_code ec;
      fs::remove(temp_, ec);
    }
  }

  void commit() {
    std::error_code ec;
    fs::rename(temp_, target_, ec);
    if (ec) throw IoError("cannot move " + temp_.string() + " to " + target_.string());
    committed_ = true;
  }

private:
  fs::path target_;
  fs::path temp_;
  bool committed_ = false;
};

inline void write_file(const fs::path& path, const std::string& content) {
  StagedFile staged(path, content);
  staged.commit();
}

struct BuildConfig {
  fs::path attack_path;
  fs::path capec_path;
  fs::path cwe_path;
  fs::path output_path;
  std::optional<fs::path> triples_path;
  std::optional<fs::path> report_path;
  bool include_deprecated = false;
};

struct BuildResult {
  KnowledgeGraph graph;
  std::vector<ParseReport> reports;
};

// ingest -> build_graph -> symmetrize_inverses -> apply_chain_closure.
// The three catalogs are parsed concurrently.
inline BuildResult build_from_files(const BuildConfig& config) {
  for (const auto* p : {&config.attack_path, &config.capec_path, &config.cwe_path}) {
    if (!fs::is_regular_file(*p)) throw IoError("input not found: " + p->string());
  }
  const ParseOptions options{config.include_deprecated};
  auto attack = std::async(std::launch::async, [&] {
    return ingest::parse_attack_bundle(read_file(config.attack_path), options);
  });
  auto capec = std::async(std::launch::async, [&] {
    return ingest::parse_capec_catalog(read_file(config.capec_path), options);
  });
  auto cwe = std::async(std::launch::async, [&] {
    return ingest::parse_cwe_catalog(read_file(config.cwe_path), options);
  });
  auto a = attack.get();
  auto c = capec.get();
  auto w = cwe.get();
  BuildResult result{close_graph(build_graph(a, c, w)), {a.report, c.report, w.report}};
  return result;
}

inline KnowledgeGraph load_snapshot(const fs::path& path) {
  auto g = snapshot_from_string(read_file(path));
  if (!g.closed()) throw ParseError("snapshot", 0, path.string() + " has not been closed");
  return g;
}

// ---- rendering -------------------------------------------------------------

inline json stats_json(const query::GraphStats& s) {
  json nodes = json::object();
  for (const auto& [ns, n] : s.node_counts) nodes[std::string(to_string(ns))] = n;
  json relations = json::object();
  for (const auto& [r, n] : s.pair_counts) relations[std::string(to_string(r))] = n;
  json references = json::array();
  for (const auto& row : s.references) {
    references.push_back({{"relation", row.label}, {"triples", row.triples}});
  }
  json involvement = json::array();
  for (const auto& row : s.involvement) {
    involvement.push_back({{"label", row.label},
                           {"namespace", std::string(to_string(row.subject))},
                           {"relation", std::string(to_string(row.relation))},
                           {"involved", row.involved},
                           {"total", row.total},
                           {"percent", row.percent}});
  }
  return {{"node_counts", nodes},
          {"pair_counts", relations},
          {"references", references},
          {"involvement", involvement}};
}

inline void print_stats(std::ostream& out, const query::GraphStats& s) {
  auto count = [&](Namespace ns) { return s.node_counts.at(ns); };
  out << std::left << std::setw(34) << "Entity" << std::right << std::setw(8) << "Total" << "\n";
  for (auto [label, ns] : {std::pair{"ATT&CK", Namespace::Attck}, std::pair{"CAPEC", Namespace::Capec},
                           std::pair{"CWE", Namespace::Cwe}, std::pair{"CVE", Namespace::Cve},
                           std::pair{"Tactic", Namespace::Tactic},
                           std::pair{"Data component", Namespace::DataComponent},
                           std::pair{"Restriction", Namespace::Restriction},
                           std::pair{"Threat", Namespace::Threat}}) {
    out << std::left << std::setw(34) << label << std::right << std::setw(8) << count(ns) << "\n";
  }
  out << "\n" << std::left << std::setw(34) << "Relation" << std::right << std::setw(8) << "Triples"
      << "\n";
  for (const auto& row : s.references) {
    out << std::left << std::setw(34) << row.label << std::right << std::setw(8) << row.triples << "\n";
  }
  out << "\n" << std::left << std::setw(42) << "Involvement" << std::right << std::setw(8) << "Total"
      << std::setw(12) << "Percentage" << std::setw(8) << "Of" << "\n";
  for (const auto& row : s.involvement) {
    out << std::left << std::setw(42) << row.label << std::right << std::setw(8) << row.involved
        << std::setw(10) << row.percent << " %" << std::setw(8) << row.total << "\n";
  }
}

inline json ids_json(const std::set<NodeId>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

inline json neighbors_json(const NodeId& node, const query::Neighborhood& n) {
  json outgoing = json::object();
  for (const auto& [r, ids] : n.outgoing) outgoing[std::string(to_string(r))] = ids_json(ids);
  json incoming = json::object();
  for (const auto& [r, ids] : n.incoming) incoming[std::string(to_string(r))] = ids_json(ids);
  return {{"node", node.str()}, {"outgoing", outgoing}, {"incoming", incoming}};
}

inline void print_neighbors(std::ostream& out, const NodeId& node, const query::Neighborhood& n) {
  out << node.str() << "\n";
  for (const auto& [r, ids] : n.outgoing) {
    for (const auto& id : ids) out << "  -> " << to_string(r) << " " << id.str() << "\n";
  }
  for (const auto& [r, ids] : n.incoming) {
    for (const auto& id : ids) out << "  <- " << to_string(r) << " " << id.str() << "\n";
  }
}

inline json histogram_json(const std::vector<query::HistogramRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back({{"id", row.id.str()}, {"threats", row.threats}});
  return out;
}

inline void print_histogram(std::ostream& out, const std::vector<query::HistogramRow>& rows,
                            std::string_view prefix) {
  for (const auto& row : rows) {
    out << std::left << std::setw(60) << (std::string(prefix) + row.id.local) << std::right
        << std::setw(6) << row.threats << "\n";
  }
}

inline void print_ids(std::ostream& out, const std::set<NodeId>& ids) {
  for (const auto& id : ids) out << id.str() << "\n";
}

// ---- commands --------------------------------------------------------------

inline int cmd_build(const BuildConfig& config, std::ostream& out, bool as_json = false) {
  auto result = build_from_files(config);
  const auto snapshot = snapshot_to_string(result.graph);
  std::optional<std::string> triples;
  if (config.triples_path) triples = export_triples(result.graph);
  std::optional<std::string> report;
  if (config.report_path) {
    json reports = json::array();
    for (const auto& r : result.reports) reports.push_back(ingest::to_json(r));
    report = json{{"reports", reports}}.dump(2) + "\n";
  }

  // All outputs are staged before any is moved into place.
  std::vector<std::unique_ptr<StagedFile>> staged;
  staged.push_back(std::make_unique<StagedFile>(config.output_path, snapshot));
  if (triples) staged.push_back(std::make_unique<StagedFile>(*config.triples_path, *triples));
  if (report) staged.push_back(std::make_unique<StagedFile>(*config.report_path, *report));
  for (auto& f : staged) f->commit();

  const auto s = query::stats(result.graph);
  if (as_json) {
    out << stats_json(s).dump(2) << "\n";
  } else {
    print_stats(out, s);
  }
  return kOk;
}

struct ModelConfig {
  fs::path graph_path;
  fs::path diagram_in;
  fs::path diagram_out;
  std::optional<fs::path> report_path;
  bool force = false;
  modeler::ModelOptions options;
};

// Writes the annotated diagram (and optional report); warnings go to `err`.
inline int cmd_model(const ModelConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.force) {
    for (const auto* p : {&config.diagram_out, config.report_path ? &*config.report_path : nullptr}) {
      if (p && fs::exists(*p)) {
        throw IoError(p->string() + " exists; pass --force to overwrite");
      }
    }
  }
  const auto g = load_snapshot(config.graph_path);
  auto diagram = modeler::parse_diagram(read_file(config.diagram_in));
  modeler::resolve_diagram(g, diagram, config.options);
  const auto annotated = modeler::annotate_diagram(g, diagram);
  const auto report = modeler::model_report(g, diagram);

  std::vector<std::unique_ptr<StagedFile>> staged;
  staged.push_back(
      std::make_unique<StagedFile>(config.diagram_out, modeler::diagram_to_string(annotated)));
  if (config.report_path) {
    staged.push_back(std::make_unique<StagedFile>(*config.report_path, report.dump(2) + "\n"));
  }
  for (auto& f : staged) f->commit();

  for (const auto& e : diagram.elements) {
    for (const auto& w : e.warnings) err << "warning: " << e.element_id << " (" << e.name << "): " << w << "\n";
  }
  out << std::left << std::setw(40) << "Element" << std::setw(10) << "Kind" << std::right
      << std::setw(8) << "Threats" << "\n";
  for (const auto& e : diagram.elements) {
    out << std::left << std::setw(40) << (e.name.empty() ? e.element_id : e.name) << std::setw(10)
        << to_string(e.kind) << std::right << std::setw(8) << e.threats.size() << "\n";
  }
  return kOk;
}

}  // namespace enumkg::cli
