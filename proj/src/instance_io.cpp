#include "sepkit/instance_io.hpp"

#include <fstream>

#include "json.hpp"

namespace sepkit {

namespace {

using json = nlohmann::ordered_json;

json nat_list(const std::vector<Nat>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

std::vector<Nat> nat_list_from(const json& j) {
  std::vector<Nat> out;
  for (const auto& v : j) out.push_back(Nat(v.get<std::string>()));
  return out;
}

json rat_list(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

json automaton_to_json(const TreeAutomaton& a) {
  json next = json::array();
  for (const auto& row : a.next) next.push_back(row);
  return json{{"arity", a.arity}, {"initial", a.initial}, {"next", next}};
}

TreeAutomaton automaton_from_json(const json& j) {
  TreeAutomaton a;
  a.arity = j.at("arity").get<std::uint32_t>();
  a.initial = j.at("initial").get<std::uint32_t>();
  for (const auto& row : j.at("next")) a.next.push_back(row.get<std::vector<std::int32_t>>());
  if (a.next.empty()) throw MalformedName("automaton needs at least one state");
  for (const auto& row : a.next) {
    if (row.size() != a.arity) throw MalformedName("automaton row arity mismatch");
    for (auto t : row)
      if (t < -1 || t >= static_cast<std::int32_t>(a.next.size()))
        throw MalformedName("automaton transition out of range");
  }
  return a;
}

json instance_json(const PlantedInstance& inst) {
  json out;
  out["problem"] = inst.problem_id;
  if (inst.problem_id == "sep") {
    const auto& plant = std::any_cast<const SepPlant&>(inst.data);
    out["streams"] = {{"p", {{"head", json::array()}, {"period", nat_list(plant.p_period)}}},
                      {"q", {{"head", json::array()}, {"period", nat_list(plant.q_period)}}}};
    out["planted"] = {{"solution", {{"head", nat_list(plant.sol_head)}, {"period", nat_list({Nat(0)})}}},
                      {"value_bound", plant.value_bound}};
  } else if (inst.problem_id == "path2") {
    const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
    out["automaton"] = automaton_to_json(plant.aut);
  } else if (inst.problem_id == "pathB") {
    const auto& plant = std::any_cast<const PathBPlant&>(inst.data);
    json planted;
    planted["family"] = plant.from_automaton ? "automaton" : "unique-path";
    planted["bound_period"] = nat_list(plant.bound_period);
    if (plant.from_automaton)
      out["automaton"] = automaton_to_json(plant.aut);
    else
      planted["path_period"] = nat_list(plant.path_period);
    out["planted"] = planted;
  } else if (inst.problem_id == "range") {
    const auto& plant = std::any_cast<const RangePlant&>(inst.data);
    out["streams"] = {{"p", {{"head", nat_list(plant.head_order)},
                             {"affine", {{"base", plant.tail_base}, {"step", 1}}}}}};
    out["planted"] = {{"tail_base", plant.tail_base}};
  } else if (inst.problem_id == "sup") {
    const auto& plant = std::any_cast<const SupPlant&>(inst.data);
    out["planted"] = {{"sup", plant.sup.str()},
                      {"geometric", plant.geometric},
                      {"values", rat_list(plant.values)}};
  } else if (inst.problem_id == "c1") {
    const auto& plant = std::any_cast<const C1Plant&>(inst.data);
    out["planted"] = {{"target", {{"head", nat_list(plant.target_head)},
                                  {"period", nat_list(plant.target_period)}}},
                      {"witness_bound", plant.witness_bound}};
  } else if (inst.problem_id == "cover") {
    const auto& plant = std::any_cast<const CoverPlant&>(inst.data);
    json iv = json::array();
    for (const auto& [a, b] : plant.intervals)
      iv.push_back(json{{"lo", a.str()}, {"hi", b.str()}});
    out["planted"] = {{"intervals", iv}};
  } else if (inst.problem_id == "hb") {
    const auto& plant = std::any_cast<const HbPlant&>(inst.data);
    out["pseudo_norm"] = {{"id", "max2"}};
    out["planted"] = {{"extension_weight", plant.extension_weight.str()},
                      {"whole_space", plant.subspace_is_whole}};
  } else {
    throw UsageError("no file form for problem '" + inst.problem_id + "'");
  }
  return out;
}

}  // namespace

std::string instance_to_text(const PlantedInstance& inst) {
  return instance_json(inst).dump(2) + "\n";
}

PlantedInstance instance_from_text(const std::string& text) {
  json j = json::parse(text);
  std::string problem = j.at("problem").get<std::string>();
  if (problem == "sep") {
    SepPlant plant;
    plant.p_period = nat_list_from(j.at("streams").at("p").at("period"));
    plant.q_period = nat_list_from(j.at("streams").at("q").at("period"));
    plant.sol_head = nat_list_from(j.at("planted").at("solution").at("head"));
    plant.value_bound = j.at("planted").at("value_bound").get<std::uint64_t>();
    if (plant.p_period.empty() || plant.q_period.empty())
      throw MalformedName("separation streams need nonempty periods");
    plant.p = Stream::periodic({}, plant.p_period);
    plant.q = Stream::periodic({}, plant.q_period);
    plant.solution = Stream::periodic(plant.sol_head, {Nat(0)});
    PlantedInstance inst;
    inst.problem_id = "sep";
    inst.name = Stream::interleave(plant.p, plant.q);
    inst.data = plant;
    return inst;
  }
  if (problem == "path2") {
    Path2Plant plant{automaton_from_json(j.at("automaton"))};
    PlantedInstance inst;
    inst.problem_id = "path2";
    inst.name = plant.aut.char_stream();
    inst.data = plant;
    return inst;
  }
  if (problem == "pathB") {
    PathBPlant plant;
    plant.from_automaton = j.at("planted").at("family") == "automaton";
    plant.bound_period = nat_list_from(j.at("planted").at("bound_period"));
    if (plant.from_automaton)
      plant.aut = automaton_from_json(j.at("automaton"));
    else
      plant.path_period = nat_list_from(j.at("planted").at("path_period"));
    plant = materialize_pathB_plant(std::move(plant));
    PlantedInstance inst;
    inst.problem_id = "pathB";
    inst.name = plant.tree.name();
    inst.data = plant;
    return inst;
  }
  if (problem == "range") {
    RangePlant plant;
    plant.head_order = nat_list_from(j.at("streams").at("p").at("head"));
    for (const auto& v : plant.head_order) plant.head_values.insert(to_u64(v));
    plant.tail_base = j.at("planted").at("tail_base").get<std::uint64_t>();
    plant.head_len = plant.head_values.size();
    PlantedInstance inst;
    inst.problem_id = "range";
    inst.name = Stream::affine_tail(plant.head_order, Nat(plant.tail_base), Nat(1));
    inst.data = plant;
    return inst;
  }
  if (problem == "sup") {
    SupPlant plant;
    plant.sup = Rational::parse(j.at("planted").at("sup").get<std::string>());
    plant.geometric = j.at("planted").at("geometric").get<bool>();
    for (const auto& v : j.at("planted").at("values"))
      plant.values.push_back(Rational::parse(v.get<std::string>()));
    if (!plant.geometric && plant.values.empty())
      throw MalformedName("finite-support sup instance needs values");
    PlantedInstance inst;
    inst.problem_id = "sup";
    inst.name = sup_instance_stream(plant);
    inst.data = plant;
    return inst;
  }
  if (problem == "c1") {
    C1Plant plant;
    plant.target_head = nat_list_from(j.at("planted").at("target").at("head"));
    plant.target_period = nat_list_from(j.at("planted").at("target").at("period"));
    plant.witness_bound = j.at("planted").at("witness_bound").get<std::uint64_t>();
    plant.target = Stream::periodic(plant.target_head, plant.target_period);
    PlantedInstance inst;
    inst.problem_id = "c1";
    inst.name = c1_instance_stream(plant.target);
    inst.data = plant;
    return inst;
  }
  if (problem == "cover") {
    CoverPlant plant;
    std::vector<Nat> head;
    for (const auto& iv : j.at("planted").at("intervals")) {
      Rational lo = Rational::parse(iv.at("lo").get<std::string>());
      Rational hi = Rational::parse(iv.at("hi").get<std::string>());
      plant.intervals.emplace_back(lo, hi);
      head.push_back(interval_code(lo, hi));
    }
    if (head.empty()) throw MalformedName("empty cover enumeration");
    PlantedInstance inst;
    inst.problem_id = "cover";
    inst.name = Stream::periodic(head, {head.back()});
    inst.data = plant;
    return inst;
  }
  if (problem == "hb") {
    HbPlant plant;
    plant.extension_weight =
        Rational::parse(j.at("planted").at("extension_weight").get<std::string>());
    plant.subspace_is_whole = j.at("planted").at("whole_space").get<bool>();
    return make_hb_instance(plant);
  }
  throw UsageError("unknown problem id '" + problem + "' in instance file");
}

void save_instance(const std::string& path, const PlantedInstance& inst) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << instance_to_text(inst);
}

PlantedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instance_from_text(text);
}

std::string instance_digest(const PlantedInstance& inst) {
  std::string text = instance_to_text(inst);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string trace_to_text(const TraceRecord& t) {
  json out;
  out["reduction"] = t.reduction_id;
  out["instance_digest"] = t.instance_digest;
  out["depth"] = t.depth;
  out["fuel"] = t.fuel;
  json vs = json::array();
  for (const auto& [d, v] : t.verdicts)
    vs.push_back(json{{"depth", d}, {"verdict", to_string(v)}});
  out["verdicts"] = vs;
  out["output_prefix"] = t.output_prefix;
  return out.dump(2) + "\n";
}

}  // namespace sepkit
