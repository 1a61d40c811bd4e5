#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepkit/instance_io.hpp"
#include "sepkit/registry.hpp"

namespace py = pybind11;
using namespace sepkit;

namespace {

std::vector<std::string> stream_prefix(const Stream& s, std::uint64_t n) {
  std::vector<std::string> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(s.at(i).str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_sepkit, m) {
  m.doc() = "exact-real stream kernel and computable reductions";

  py::class_<Stream>(m, "Stream")
      .def("prefix", &stream_prefix)
      .def("at", [](const Stream& s, const std::string& i) {
        return s.at(Nat(i)).str();
      });

  py::class_<PlantedInstance>(m, "PlantedInstance")
      .def_readonly("problem", &PlantedInstance::problem_id)
      .def_property_readonly("name", [](const PlantedInstance& i) { return i.name; })
      .def("to_text", &instance_to_text)
      .def("digest", &instance_digest);

  m.def("seq_encode", [](const std::vector<std::string>& xs) {
    FinSeq s;
    for (const auto& x : xs) s.push_back(Nat(x));
    return seqcode::encode(s).str();
  });
  m.def("seq_decode", [](const std::string& code) {
    std::vector<std::string> out;
    for (const auto& v : seqcode::decode(Nat(code))) out.push_back(v.str());
    return out;
  });

  m.def("generate", [](const std::string& problem, std::uint64_t seed) {
    const auto& reg = registry();
    auto it = reg.generators.find(problem);
    if (it == reg.generators.end()) throw py::value_error("unknown generator");
    return it->second(seed);
  });
  m.def("parse_instance", &instance_from_text);

  m.def("list_reductions", []() {
    std::vector<std::string> out;
    for (const auto& [id, r] : registry().reductions) out.push_back(id);
    return out;
  });
  m.def("list_problems", []() {
    std::vector<std::string> out;
    for (const auto& [id, p] : registry().problems) out.push_back(id);
    return out;
  });

  // run a registered reduction against the planted oracle and verify
  m.def("run_reduction",
        [](const std::string& reduction, const PlantedInstance& inst,
           std::uint64_t depth) -> std::string {
          const auto& reg = registry();
          const Reduction& red = reg.reductions.at(reduction);
          const Problem& source = reg.problems.at(red.source);
          return to_string(check_reduction(red, source, inst, depth));
        });

  m.def("verify_planted", [](const PlantedInstance& inst, std::uint64_t depth) {
    const auto& reg = registry();
    const Problem& p = reg.problems.at(inst.problem_id);
    Stream solution;
    if (inst.problem_id == "sep")
      solution = std::any_cast<const SepPlant&>(inst.data).solution;
    else if (inst.problem_id == "path2")
      solution = std::any_cast<const Path2Plant&>(inst.data).aut.leftmost_path();
    else if (inst.problem_id == "pathB")
      solution = std::any_cast<const PathBPlant&>(inst.data).path;
    else
      throw py::value_error("instance carries no solution stream");
    return to_string(p.verify(inst.name, solution, depth));
  });
}
