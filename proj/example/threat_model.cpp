// Builds a graph from three catalog files, resolves a Threat Dragon diagram
// against it and prints each element's threats.
//
//   example_threat_model ATTACK.json CAPEC.xml CWE.xml DIAGRAM.json

#include <iostream>

#include "enumkg/cli/commands.hpp"
#include "enumkg/enumkg.hpp"

int main(int argc, char** argv) {
  if (argc != 5) {
    std::cerr << "usage: " << argv[0] << " ATTACK.json CAPEC.xml CWE.xml DIAGRAM.json\n";
    return 2;
  }
  using namespace enumkg;
  try {
    const auto attack = ingest::parse_attack_bundle(cli::read_file(argv[1]));
    const auto capec = ingest::parse_capec_catalog(cli::read_file(argv[2]));
    const auto cwe = ingest::parse_cwe_catalog(cli::read_file(argv[3]));
    const auto graph = close_graph(build_graph(attack, capec, cwe));

    auto diagram = modeler::parse_diagram(cli::read_file(argv[4]));
    modeler::resolve_diagram(graph, diagram);
    for (const auto& element : diagram.elements) {
      std::cout << element.name << " (" << to_string(element.kind) << ")\n";
      for (const auto& threat : element.threats) std::cout << "  " << threat.title << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
  return 0;
}
