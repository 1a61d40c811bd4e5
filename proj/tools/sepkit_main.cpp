#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sepkit/registry.hpp"

namespace {

constexpr int kOk = 0, kReject = 2, kFuel = 3, kUsage = 4;

int cmd_list() {
  const auto& reg = sepkit::registry();
  std::cout << "problems:";
  for (const auto& [id, p] : reg.problems) std::cout << " " << id;
  std::cout << "\nreductions:";
  for (const auto& [id, r] : reg.reductions) std::cout << " " << id;
  std::cout << "\ngenerators:";
  for (const auto& [id, g] : reg.generators) std::cout << " " << id;
  std::cout << "\n";
  return kOk;
}

int cmd_gen(const std::string& problem, std::uint64_t seed, std::uint64_t size,
            const std::string& out) {
  const auto& reg = sepkit::registry();
  auto it = reg.generators.find(problem);
  if (it == reg.generators.end()) {
    std::cerr << "unknown generator '" << problem << "'\n";
    return kUsage;
  }
  sepkit::PlantedInstance inst =
      problem == "sep" ? sepkit::gen_sep(seed, size ? size : 64) : it->second(seed);
  std::string text = sepkit::instance_to_text(inst);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return kUsage;
    }
    f << text;
  }
  return kOk;
}

int cmd_run(const std::string& reduction, const std::string& instance_path,
            const std::string& oracle, std::uint64_t depth, std::uint64_t fuel,
            const std::string& trace_out) {
  const auto& reg = sepkit::registry();
  auto rit = reg.reductions.find(reduction);
  if (rit == reg.reductions.end()) {
    std::cerr << "unknown reduction '" << reduction << "'\n";
    return kUsage;
  }
  if (oracle != "planted") {
    std::cerr << "unknown oracle '" << oracle << "' (only 'planted' is registered)\n";
    return kUsage;
  }
  sepkit::PlantedInstance inst = sepkit::load_instance(instance_path);
  if (inst.problem_id != rit->second.source) {
    std::cerr << "instance solves '" << inst.problem_id << "' but reduction starts at '"
              << rit->second.source << "'\n";
    return kUsage;
  }
  const sepkit::Problem& source = reg.problems.at(rit->second.source);
  sepkit::TraceRecord trace;
  trace.reduction_id = reduction;
  trace.instance_digest = sepkit::instance_digest(inst);
  trace.depth = depth;
  trace.fuel = fuel;
  sepkit::Verdict final_verdict = sepkit::Verdict::NeedMoreDepth;
  try {
    sepkit::OracleRealizer g = rit->second.planted_oracle(inst);
    sepkit::OracleRealizer solver = sepkit::apply_reduction(rit->second, g);
    sepkit::Stream y = solver.realize(inst.name);
    for (std::uint64_t d = 1; d < depth; d *= 2)
      trace.verdicts.emplace_back(d, source.verify(inst.name, y, d));
    final_verdict = source.verify(inst.name, y, depth);
    trace.verdicts.emplace_back(depth, final_verdict);
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(depth, 32); ++i)
      trace.output_prefix.push_back(y.at(i).str());
  } catch (const sepkit::FuelExhausted& e) {
    std::cerr << "fuel exhausted: " << e.what() << "\n";
    return kFuel;
  }
  std::string text = sepkit::trace_to_text(trace);
  if (trace_out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(trace_out);
    f << text;
  }
  return final_verdict == sepkit::Verdict::Reject ? kReject : kOk;
}

int cmd_verify(const std::string& instance_path, std::uint64_t depth) {
  const auto& reg = sepkit::registry();
  sepkit::PlantedInstance inst = sepkit::load_instance(instance_path);
  auto pit = reg.problems.find(inst.problem_id);
  if (pit == reg.problems.end()) {
    std::cerr << "no verifier for '" << inst.problem_id << "'\n";
    return kUsage;
  }
  sepkit::Stream solution;
  if (inst.problem_id == "sep") {
    solution = std::any_cast<const sepkit::SepPlant&>(inst.data).solution;
  } else if (inst.problem_id == "path2") {
    solution = std::any_cast<const sepkit::Path2Plant&>(inst.data).aut.leftmost_path();
  } else if (inst.problem_id == "pathB") {
    solution = std::any_cast<const sepkit::PathBPlant&>(inst.data).path;
  } else if (inst.problem_id == "range") {
    auto plant = std::any_cast<const sepkit::RangePlant&>(inst.data);
    solution = sepkit::Stream::from_rule(
        [plant](const sepkit::Nat& n) -> sepkit::Nat { return plant.in_range(n) ? 1 : 0; });
  } else if (inst.problem_id == "c1") {
    solution = std::any_cast<const sepkit::C1Plant&>(inst.data).target;
  } else if (inst.problem_id == "sup") {
    auto plant = std::any_cast<const sepkit::SupPlant&>(inst.data);
    solution = sepkit::CReal(plant.sup).name();
  } else {
    std::cerr << "verify needs a planted solution for '" << inst.problem_id << "'\n";
    return kUsage;
  }
  try {
    sepkit::Verdict v = pit->second.verify(inst.name, solution, depth);
    std::cout << sepkit::to_string(v) << "\n";
    return v == sepkit::Verdict::Reject ? kReject : kOk;
  } catch (const sepkit::FuelExhausted& e) {
    std::cerr << "fuel exhausted: " << e.what() << "\n";
    return kFuel;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planted-instance lab for computable reductions"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a planted instance");
  std::string gen_problem, gen_out;
  std::uint64_t gen_seed = 0, gen_size = 0;
  gen->add_option("problem", gen_problem, "problem id")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--size", gen_size, "instance size hint");
  gen->add_option("--out", gen_out, "output file (stdout when empty)");

  auto* run = app.add_subcommand("run", "run a reduction against an oracle");
  std::string run_reduction, run_instance, run_oracle = "planted", run_trace;
  std::uint64_t run_depth = 64, run_fuel = 1u << 20;
  run->add_option("reduction", run_reduction, "reduction id")->required();
  run->add_option("instance", run_instance, "instance file")->required();
  run->add_option("--oracle", run_oracle, "oracle id");
  run->add_option("--depth", run_depth, "verification depth");
  run->add_option("--fuel", run_fuel, "fuel bound");
  run->add_option("--trace", run_trace, "trace output file");

  auto* verify = app.add_subcommand("verify", "verify a planted solution");
  std::string verify_instance;
  std::uint64_t verify_depth = 64;
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("--depth", verify_depth, "verification depth");

  app.add_subcommand("list", "dump the registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_problem, gen_seed, gen_size, gen_out);
    if (run->parsed())
      return cmd_run(run_reduction, run_instance, run_oracle, run_depth, run_fuel,
                     run_trace);
    if (verify->parsed()) return cmd_verify(verify_instance, verify_depth);
    return cmd_list();
  } catch (const sepkit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const sepkit::FuelExhausted& e) {
    std::cerr << "fuel exhausted: " << e.what() << "\n";
    return kFuel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
