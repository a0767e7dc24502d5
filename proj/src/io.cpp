#include "bslab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bslab/error.hpp"

namespace bslab {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("invalid JSON: ") + e.what());
  }
}

void require_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  detail::require(j.is_object(), std::string(what) + ": expected an object");
  std::set<std::string_view> ok(allowed);
  for (const auto& [key, value] : j.items()) {
    detail::require(ok.contains(key), std::string(what) + ": unknown key '" + key + "'");
  }
  for (auto key : allowed) {
    detail::require(j.contains(key), std::string(what) + ": missing key '" + std::string(key) + "'");
  }
}

template <typename T>
T get(const json& j, const char* key, std::string_view what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw PreconditionError(std::string(what) + ": bad value for '" + key + "'");
  }
}

}  // namespace

std::string write_capacity_problem(const CapacityProblem& problem) {
  json edges = json::array();
  for (const Edge& e : problem.graph.edges()) edges.push_back({e.u, e.v});
  json j = {{"vertex_count", problem.graph.vertex_count()},
            {"edges", edges},
            {"source", problem.source},
            {"ground", problem.ground},
            {"exponent", problem.exponent}};
  return j.dump(1) + "\n";
}

CapacityProblem parse_capacity_problem(std::string_view text) {
  const json j = parse_json(text);
  constexpr std::string_view what = "capacity problem";
  require_keys(j, {"vertex_count", "edges", "source", "ground", "exponent"}, what);
  std::vector<Edge> edges;
  for (const auto& pair : get<std::vector<std::array<Vertex, 2>>>(j, "edges", what)) {
    edges.push_back({pair[0], pair[1]});
  }
  CapacityProblem p;
  p.graph = Graph::build(get<std::size_t>(j, "vertex_count", what), std::move(edges));
  p.source = get<std::vector<Vertex>>(j, "source", what);
  p.ground = get<std::vector<Vertex>>(j, "ground", what);
  p.exponent = get<double>(j, "exponent", what);
  return p;
}

std::string write_potential_solution(const PotentialSolution& solution) {
  json j = {{"u", solution.u},
            {"energy", solution.energy},
            {"iterations", solution.iterations},
            {"residual", solution.residual}};
  return j.dump(1) + "\n";
}

PotentialSolution parse_potential_solution(std::string_view text) {
  const json j = parse_json(text);
  constexpr std::string_view what = "potential solution";
  require_keys(j, {"u", "energy", "iterations", "residual"}, what);
  PotentialSolution s;
  s.u = get<std::vector<double>>(j, "u", what);
  s.energy = get<double>(j, "energy", what);
  s.iterations = get<std::size_t>(j, "iterations", what);
  s.residual = get<double>(j, "residual", what);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  detail::require(static_cast<bool>(in), "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  detail::require(static_cast<bool>(out), "cannot write " + path);
  out << contents;
}

}  // namespace bslab
