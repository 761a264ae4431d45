#pragma once

#include "enumkg/errors.hpp"
#include "enumkg/names.hpp"
#include "enumkg/node_id.hpp"
#include "enumkg/records.hpp"
#include "enumkg/relation.hpp"

#include "enumkg/ingest/attack_stix.hpp"
#include "enumkg/ingest/capec_xml.hpp"
#include "enumkg/ingest/cwe_xml.hpp"
#include "enumkg/ingest/report_json.hpp"

#include "enumkg/graph/build.hpp"
#include "enumkg/graph/closure.hpp"
#include "enumkg/graph/knowledge_graph.hpp"
#include "enumkg/graph/snapshot.hpp"

#include "enumkg/query/query.hpp"

#include "enumkg/modeler/annotate.hpp"
#include "enumkg/modeler/diagram.hpp"
#include "enumkg/modeler/labels.hpp"
#include "enumkg/modeler/resolve.hpp"
