#include "avqa/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "avqa/errors.hpp"

namespace avqa::io {

json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates()) {
    json qubits = json::array({g.qubits[0]});
    if (g.kind == GateKind::CNOT) qubits.push_back(g.qubits[1]);
    gates.push_back({{"kind", std::string(to_string(g.kind))},
                     {"qubits", qubits},
                     {"param_slot", g.param_slot ? json(*g.param_slot) : json(nullptr)}});
  }
  return {{"n_qubits", c.n_qubits()}, {"gates", gates}, {"params", c.params()}};
}

Circuit circuit_from_json(const json& j) {
  std::vector<Gate> gates;
  for (const json& jg : j.at("gates")) {
    Gate g;
    g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
    const auto& qs = jg.at("qubits");
    if (qs.size() != static_cast<std::size_t>(arity(g.kind))) {
      throw StructuralError("gate " + std::string(to_string(g.kind)) + " has wrong qubit count");
    }
    g.qubits[0] = qs[0].get<int>();
    if (g.kind == GateKind::CNOT) g.qubits[1] = qs[1].get<int>();
    if (jg.contains("param_slot") && !jg["param_slot"].is_null()) {
      g.param_slot = jg["param_slot"].get<std::size_t>();
    }
    gates.push_back(g);
  }
  return Circuit(j.at("n_qubits").get<int>(), std::move(gates),
                 j.at("params").get<std::vector<double>>());
}

json to_json(const ProblemSpec& s) {
  return {{"kind", std::string(to_string(s.kind))},
          {"n", s.n},
          {"seed", s.seed},
          {"edge_prob", s.edge_prob},
          {"penalty", s.penalty},
          {"value_lo", s.value_lo},
          {"value_hi", s.value_hi}};
}

ProblemSpec spec_from_json(const json& j) {
  ProblemSpec s;
  s.kind = problem_kind_from_string(j.at("kind").get<std::string>());
  s.n = j.at("n").get<int>();
  s.seed = j.value("seed", std::uint64_t{0});
  s.edge_prob = j.value("edge_prob", s.edge_prob);
  s.penalty = j.value("penalty", s.penalty);
  s.value_lo = j.value("value_lo", s.value_lo);
  s.value_hi = j.value("value_hi", s.value_hi);
  s.validate();
  return s;
}

json to_json(const QuboInstance& q) {
  json edges = json::array();
  for (const auto& [a, b] : q.edges) edges.push_back({a, b});
  return {{"spec", to_json(q.spec)}, {"q", q.q},           {"constant", q.constant},
          {"edges", edges},          {"values", q.values}};
}

QuboInstance instance_from_json(const json& j) {
  QuboInstance q;
  q.spec = spec_from_json(j.at("spec"));
  q.n = q.spec.n;
  q.q = j.at("q").get<std::vector<double>>();
  if (q.q.size() != static_cast<std::size_t>(q.n) * static_cast<std::size_t>(q.n)) {
    throw std::invalid_argument("instance: q must hold n*n entries");
  }
  q.constant = j.at("constant").get<double>();
  if (j.contains("edges")) {
    for (const json& e : j["edges"]) q.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  if (j.contains("values")) q.values = j["values"].get<std::vector<int>>();
  return q;
}

json to_json(const GroundTruth& g, int n) {
  json argmin = json::array();
  for (std::uint64_t b : g.argmin) argmin.push_back(bitstring(b, n));
  return {{"min_energy", g.min_energy}, {"argmin", argmin}};
}

GroundTruth ground_truth_from_json(const json& j) {
  GroundTruth g;
  g.min_energy = j.at("min_energy").get<double>();
  for (const json& s : j.at("argmin")) g.argmin.push_back(parse_bitstring(s.get<std::string>()));
  return g;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const AlgorithmResult& r) {
  return {{"algorithm", r.algorithm},
          {"instance_id", r.instance_id},
          {"approximation_ratio", optional_json(r.approximation_ratio)},
          {"expectation", r.expectation},
          {"loss", r.loss},
          {"absolute_gap", r.absolute_gap},
          {"min_energy", r.min_energy},
          {"gates", r.gates},
          {"cnot", r.cnot},
          {"depth", r.depth},
          {"evals_used", r.evals_used},
          {"structures", r.structures},
          {"max_structure_evals", r.max_structure_evals},
          {"max_gates_explored", r.max_gates_explored},
          {"optimizer", r.optimizer},
          {"best_circuit", to_json(r.best_circuit)},
          {"error", r.error ? json(*r.error) : json(nullptr)}};
}

AlgorithmResult result_from_json(const json& j) {
  AlgorithmResult r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.instance_id = j.at("instance_id").get<std::string>();
  if (!j.at("approximation_ratio").is_null()) r.approximation_ratio = j["approximation_ratio"].get<double>();
  r.expectation = j.at("expectation").get<double>();
  r.loss = j.value("loss", r.expectation);
  r.absolute_gap = j.value("absolute_gap", 0.0);
  r.min_energy = j.value("min_energy", 0.0);
  r.gates = j.at("gates").get<std::size_t>();
  r.cnot = j.at("cnot").get<std::size_t>();
  r.depth = j.value("depth", std::size_t{0});
  r.evals_used = j.at("evals_used").get<std::size_t>();
  r.structures = j.value("structures", std::size_t{0});
  r.max_structure_evals = j.value("max_structure_evals", std::size_t{0});
  r.max_gates_explored = j.value("max_gates_explored", std::size_t{0});
  r.optimizer = j.value("optimizer", std::string(kOptimizerName));
  if (j.contains("best_circuit")) r.best_circuit = circuit_from_json(j["best_circuit"]);
  if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
  return r;
}

json to_json(const hypertune::ParamConfig& p) {
  json out = json::object();
  for (const auto& [k, v] : p) {
    std::visit([&](const auto& x) { out[k] = x; }, v);
  }
  return out;
}

hypertune::ParamConfig param_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("hyperparameters must be a JSON object");
  hypertune::ParamConfig p;
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      p.emplace(k, v.get<std::string>());
    } else if (v.is_number_integer()) {
      p.emplace(k, v.get<std::int64_t>());
    } else if (v.is_number()) {
      p.emplace(k, v.get<double>());
    } else {
      throw std::invalid_argument("hyperparameter '" + k + "' must be a number or string");
    }
  }
  return p;
}

json to_json(const hypertune::TrialRecord& t) {
  return {{"config", to_json(t.config)},
          {"loss", std::isfinite(t.loss) ? json(t.loss) : json(nullptr)},
          {"wall_time", t.wall_time},
          {"eval_count", t.eval_count}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace avqa::io
