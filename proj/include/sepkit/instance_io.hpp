#pragma once

#include <string>

#include "sepkit/hahn_banach.hpp"

namespace sepkit {

// Instance files are structured text with a stable field order; streams are
// tables with eventually-periodic (or affine) tails, and anything richer is
// expressed through the generating recipe carried under "planted".
std::string instance_to_text(const PlantedInstance& inst);
PlantedInstance instance_from_text(const std::string& text);

void save_instance(const std::string& path, const PlantedInstance& inst);
PlantedInstance load_instance(const std::string& path);

struct TraceRecord {
  std::string reduction_id;
  std::string instance_digest;
  std::uint64_t depth = 0;
  std::uint64_t fuel = 0;
  std::vector<std::pair<std::uint64_t, Verdict>> verdicts;  // per probed depth
  std::vector<std::string> output_prefix;
};

std::string trace_to_text(const TraceRecord& t);

// FNV-1a over the canonical instance text
std::string instance_digest(const PlantedInstance& inst);

}  // namespace sepkit
