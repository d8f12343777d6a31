#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "septensor/ctd.hpp"

namespace septensor {

// JSON snapshot: {dims, rank, svals, components as column-major arrays}.
inline nlohmann::json to_json(const Ctd& u) {
  nlohmann::json j;
  j["dims"] = u.dims();
  j["rank"] = u.rank();
  j["svals"] = std::vector<double>(u.svals().data(), u.svals().data() + u.rank());
  j["components"] = nlohmann::json::array();
  for (Index d = 0; d < u.ndims(); ++d) {
    const Matrix& c = u.component(d);
    j["components"].push_back(std::vector<double>(c.data(), c.data() + c.size()));
  }
  return j;
}

inline Ctd ctd_from_json(const nlohmann::json& j) {
  const auto dims = j.at("dims").get<std::vector<Index>>();
  const Index rank = j.at("rank").get<Index>();
  const auto svals = j.at("svals").get<std::vector<double>>();
  if (static_cast<Index>(svals.size()) != rank)
    throw invalid_input_error("ctd_from_json: svals size != rank");
  Vector sv = Eigen::Map<const Vector>(svals.data(), rank);
  std::vector<Matrix> comps(dims.size());
  for (size_t d = 0; d < dims.size(); ++d) {
    const auto vals = j.at("components").at(d).get<std::vector<double>>();
    if (static_cast<Index>(vals.size()) != dims[d] * rank)
      throw invalid_input_error("ctd_from_json: component size mismatch");
    comps[d] = Eigen::Map<const Matrix>(vals.data(), dims[d], rank);
  }
  return Ctd(sv, std::move(comps));
}

inline void save_ctd(const Ctd& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invalid_input_error("save_ctd: cannot open " + path);
  out << to_json(u).dump(2) << "\n";
}

inline Ctd load_ctd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input_error("load_ctd: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return ctd_from_json(j);
}

}  // namespace septensor
