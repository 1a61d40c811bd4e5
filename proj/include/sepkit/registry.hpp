#pragma once

#include <map>

#include "sepkit/instance_io.hpp"
#include "sepkit/reductions.hpp"

namespace sepkit {

struct Registry {
  std::map<std::string, Problem> problems;
  std::map<std::string, Reduction> reductions;
  std::map<std::string, std::function<PlantedInstance(std::uint64_t)>> generators;
};

const Registry& registry();

// the point-reproduction problem used by the composition demo: solutions of
// an instance r are r itself (the unique path of its prefix tree)
Problem repath_problem();
Reduction repath_le_path2();

}  // namespace sepkit
