// enumkg: build, query and apply the ATT&CK/CAPEC/CWE/CVE knowledge graph.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "enumkg/cli/commands.hpp"

namespace {

using namespace enumkg;
using namespace enumkg::cli;

constexpr const char* kDefaultGraph = "graph.json";

void add_graph_option(CLI::App* app, std::string& path) {
  app->add_option("-g,--graph", path, "Graph snapshot produced by 'build'")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security enumeration knowledge graph and DFD threat modeler"};
  app.require_subcommand(1);

  bool as_json = false;

  // build
  BuildConfig build;
  std::string build_out = kDefaultGraph;
  std::string build_triples;
  std::string build_report;
  auto* build_cmd = app.add_subcommand("build", "Ingest catalogs and write a closed graph snapshot");
  build_cmd->add_option("--attack", build.attack_path, "ATT&CK Enterprise STIX bundle (JSON)")
      ->required();
  build_cmd->add_option("--capec", build.capec_path, "CAPEC catalog (XML)")->required();
  build_cmd->add_option("--cwe", build.cwe_path, "CWE catalog (XML)")->required();
  build_cmd->add_option("-o,--output", build_out, "Snapshot path")->capture_default_str();
  build_cmd->add_option("--triples", build_triples, "Also write the triple export here");
  build_cmd->add_option("--report", build_report, "Write the parse report (JSON) here");
  build_cmd->add_flag("--include-deprecated", build.include_deprecated,
                      "Keep revoked and deprecated catalog entries");
  build_cmd->add_flag("--json", as_json, "Print the summary as JSON");

  // stats
  std::string graph = kDefaultGraph;
  auto* stats_cmd = app.add_subcommand("stats", "Instance, reference and involvement statistics");
  add_graph_option(stats_cmd, graph);
  stats_cmd->add_flag("--json", as_json, "JSON output");

  // query
  auto* query_cmd = app.add_subcommand("query", "Graph queries");
  query_cmd->require_subcommand(1);
  std::string node_arg;
  auto* neighbors_cmd = query_cmd->add_subcommand("neighbors", "Parents and children of a node");
  add_graph_option(neighbors_cmd, graph);
  neighbors_cmd->add_option("id", node_arg, "Node id (CAPEC-242, CWE-284, NAMESPACE:local, ...)")
      ->required();
  neighbors_cmd->add_flag("--json", as_json, "JSON output");

  auto* techniques_cmd =
      query_cmd->add_subcommand("techniques", "Techniques reaching a CAPEC, CWE or CVE");
  add_graph_option(techniques_cmd, graph);
  techniques_cmd->add_option("id", node_arg, "CAPEC, CWE or CVE id")->required();
  techniques_cmd->add_flag("--json", as_json, "JSON output");

  std::string axis = "datacomponent";
  std::size_t min_count = 0;
  auto* histogram_cmd = query_cmd->add_subcommand("histogram", "Threats per data component or restriction");
  add_graph_option(histogram_cmd, graph);
  histogram_cmd->add_option("--by", axis, "datacomponent | restriction")
      ->check(CLI::IsMember({"datacomponent", "restriction"}))
      ->capture_default_str();
  histogram_cmd->add_option("--min-count", min_count, "Hide rows below this count");
  histogram_cmd->add_flag("--json", as_json, "JSON output");

  // list
  std::string what;
  auto* list_cmd = app.add_subcommand("list", "List restrictions, data components or enum items");
  add_graph_option(list_cmd, graph);
  list_cmd->add_option("what", what, "restrictions | datacomponents | enums")
      ->required()
      ->check(CLI::IsMember({"restrictions", "datacomponents", "enums"}));
  list_cmd->add_flag("--json", as_json, "JSON output");

  // export
  std::string format = "triples";
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export", "Export the graph");
  add_graph_option(export_cmd, graph);
  export_cmd->add_option("--format", format, "triples | snapshot")
      ->check(CLI::IsMember({"triples", "snapshot"}))
      ->capture_default_str();
  export_cmd->add_option("-o,--output", export_out, "Output file (default: standard output)");

  // model
  ModelConfig model;
  std::string model_graph = kDefaultGraph;
  std::string model_in;
  std::string model_out;
  std::string model_report;
  auto* model_cmd = app.add_subcommand("model", "Resolve threats for a Threat Dragon diagram");
  add_graph_option(model_cmd, model_graph);
  model_cmd->add_option("--in", model_in, "Threat Dragon v1 diagram")->required();
  model_cmd->add_option("--out", model_out, "Annotated diagram")->required();
  model_cmd->add_option("--report", model_report, "Per-element report (JSON)");
  model_cmd->add_flag("--force", model.force, "Overwrite existing outputs");
  model_cmd->add_option("--status", model.options.status, "Status of generated threats")
      ->capture_default_str();
  model_cmd->add_option("--severity", model.options.severity, "Severity of generated threats")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUnknownId;
  }

  try {
    if (*build_cmd) {
      build.output_path = build_out;
      if (!build_triples.empty()) build.triples_path = build_triples;
      if (!build_report.empty()) build.report_path = build_report;
      return cmd_build(build, std::cout, as_json);
    }
    if (*model_cmd) {
      model.graph_path = model_graph;
      model.diagram_in = model_in;
      model.diagram_out = model_out;
      if (!model_report.empty()) model.report_path = model_report;
      return cmd_model(model, std::cout, std::cerr);
    }

    const auto g = load_snapshot(graph);
    if (*stats_cmd) {
      const auto s = query::stats(g);
      if (as_json) {
        std::cout << stats_json(s).dump(2) << "\n";
      } else {
        print_stats(std::cout, s);
      }
    } else if (*neighbors_cmd) {
      const auto id = parse_node_id(node_arg);
      const auto n = query::neighbors(g, id);
      if (as_json) {
        std::cout << neighbors_json(id, n).dump(2) << "\n";
      } else {
        print_neighbors(std::cout, id, n);
      }
    } else if (*techniques_cmd) {
      const auto found = query::techniques_for(g, parse_node_id(node_arg));
      if (as_json) {
        std::cout << ids_json(found).dump(2) << "\n";
      } else {
        print_ids(std::cout, found);
      }
    } else if (*histogram_cmd) {
      const bool by_dc = axis == "datacomponent";
      auto rows = query::at_least(
          query::histogram(g, by_dc ? query::HistogramAxis::DataComponent
                                    : query::HistogramAxis::Restriction),
          min_count);
      if (as_json) {
        std::cout << histogram_json(rows).dump(2) << "\n";
      } else {
        print_histogram(std::cout, rows, by_dc ? ":HasDataComponent_" : ":HasRestriction_");
      }
    } else if (*list_cmd) {
      const auto ids = what == "restrictions"     ? query::list_restrictions(g)
                       : what == "datacomponents" ? query::list_datacomponents(g)
                                                  : query::list_enums(g);
      if (as_json) {
        std::cout << ids_json(ids).dump(2) << "\n";
      } else {
        print_ids(std::cout, ids);
      }
    } else if (*export_cmd) {
      const auto text = format == "triples" ? export_triples(g) : snapshot_to_string(g);
      if (export_out.empty()) {
        std::cout << text;
      } else {
        write_file(export_out, text);
      }
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
