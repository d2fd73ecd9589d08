#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksum/core.hpp"
#include "ksum/reductions.hpp"
#include "ksum/stats.hpp"

namespace ksum {

using nlohmann::json;

// All big integers cross the wire as decimal strings.

inline json domain_to_json(const Domain& d) {
  if (d.is_modular()) return json{{"modular", to_decimal(d.bound)}};
  return json{{"interval", to_decimal(d.bound)}};
}

inline Domain domain_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw std::invalid_argument("domain must be {\"modular\": Q} or {\"interval\": u}");
  if (j.contains("modular")) return Domain::modular(parse_decimal(j.at("modular").get<std::string>()));
  if (j.contains("interval")) return Domain::interval(parse_decimal(j.at("interval").get<std::string>()));
  throw std::invalid_argument("unknown domain kind");
}

inline json instance_to_json(const KSumInstance& inst) {
  json elems = json::array();
  for (const Int& e : inst.elements) elems.push_back(to_decimal(e));
  return json{{"domain", domain_to_json(inst.domain)}, {"k", inst.k}, {"elements", elems}};
}

inline KSumInstance instance_from_json(const json& j) {
  KSumInstance inst;
  inst.domain = domain_from_json(j.at("domain"));
  inst.k = j.at("k").get<int>();
  for (const auto& e : j.at("elements")) inst.elements.push_back(parse_decimal(e.get<std::string>()));
  check_instance(inst);
  return inst;
}

inline json solution_to_json(const KSumSolution& sol) {
  json arr = json::array();
  for (std::uint32_t i : sol.indices) arr.push_back(i);
  return arr;
}

inline json sis_to_json(const SisInstance& s) {
  json elems = json::array();
  for (const Int& e : s.elements) elems.push_back(to_decimal(e));
  return json{{"q", to_decimal(s.q)}, {"r", s.r}, {"beta", to_decimal(s.beta)}, {"elements", elems}};
}

inline SisInstance sis_from_json(const json& j) {
  SisInstance s;
  s.q = parse_decimal(j.at("q").get<std::string>());
  s.r = j.at("r").get<int>();
  s.beta = parse_decimal(j.at("beta").get<std::string>());
  for (const auto& e : j.at("elements")) s.elements.push_back(parse_decimal(e.get<std::string>()));
  check_sis_instance(s);
  return s;
}

inline json sis_solution_to_json(const SisSolution& sol) {
  json xs = json::array();
  for (const Int& v : sol.x) xs.push_back(to_decimal(v));
  return json{{"x", xs}};
}

inline SisSolution sis_solution_from_json(const json& j) {
  SisSolution sol;
  for (const auto& v : j.at("x")) sol.x.push_back(parse_decimal(v.get<std::string>()));
  return sol;
}

inline json trace_to_json(const TraceRecord& t) {
  json levels = json::array();
  for (const LevelTrace& l : t.levels) {
    levels.push_back(json{{"target", l.target},
                          {"oracle_calls", l.oracle_calls},
                          {"successes", l.successes},
                          {"disjointness_rejections", l.disjoint_rejections},
                          {"elements_produced", l.produced}});
  }
  return json{{"levels", levels}, {"failed_level", t.failed_level}};
}

inline json totality_to_json(const TotalityReport& r) {
  return json{{"trials", r.trials},
              {"successes", r.successes},
              {"empirical_rate", to_string(r.empirical_rate)},
              {"lower_bound", to_string(r.lower_bound)},
              {"upper_bound", to_string(r.upper_bound)},
              {"lower_raw", to_string(r.lower_raw)},
              {"upper_raw", to_string(r.upper_raw)},
              {"sigma", r.sigma},
              {"within_bounds", r.within}};
}

inline json params_to_json(const ParamSet& p) {
  return json{{"n", p.n},
              {"k", p.k},
              {"epsilon", to_string(p.epsilon)},
              {"epsilon_prime", to_string(p.epsilon_prime)},
              {"c", to_string(p.c)},
              {"r", p.r},
              {"beta", to_decimal(p.beta)},
              {"u", to_decimal(p.u)},
              {"m", to_decimal(p.m)},
              {"q", to_decimal(p.q)},
              {"Q", to_decimal(p.Q)},
              {"m_prime", to_decimal(p.m_prime)}};
}

/// Reads JSON from a file, or from stdin when path is "-".
inline json load_json_file(const std::string& path) {
  json j;
  if (path == "-") {
    std::cin >> j;
    return j;
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  in >> j;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace ksum
