// JSON input and output for the command-line tool.
#pragma once

#include "pvforge/pipeline.hpp"

#include "json.hpp"

#include <string>

namespace pvforge::cli {

using json = nlohmann::ordered_json;

struct SystemFile {
  std::string name;
  System system;
  PipelineConfig config;
};

// {"name": .., "n": .., "A": [[..], ..] or a flat row-major list, "config": {..}}
SystemFile read_system(const std::string& text);
std::string read_file(const std::string& path);

json ideal_json(const PolyRing& R, const PolyList& gb);
json group_json(const GroupIdeal& H);
json relations_json(const RelationResult& r);
json toric_json(const ToricResult& T);
json kbar_json(const KbarResult& k);
json pv_json(const PVResult& r);
json verify_json(const VerifyReport& rep);

}  // namespace pvforge::cli
