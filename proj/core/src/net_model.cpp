// Copyright 2026 The csc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csc/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "csc/errors.hpp"

namespace csc {
namespace {

std::string indexed(const std::string& base, std::size_t i,
                    const std::string& field) {
  return base + "[" + std::to_string(i) + "]." + field;
}

void throw_if_any(std::vector<std::string> bad, const std::string& what) {
  if (bad.empty()) return;
  std::string msg = what + ": ";
  for (std::size_t i = 0; i < bad.size(); ++i) {
    if (i) msg += ", ";
    msg += bad[i];
  }
  throw ConfigError(std::move(bad), msg);
}

}  // namespace

NetworkTopology::NetworkTopology(std::vector<Cell> cells, Region region,
                                 std::vector<Channel> channels,
                                 double interference_radius_m)
    : cells_(std::move(cells)),
      region_(region),
      channels_(std::move(channels)),
      radius_m_(interference_radius_m) {
  std::vector<std::string> bad;
  if (cells_.empty()) bad.emplace_back("cells");
  if (!(region_.width > 0.0)) bad.emplace_back("region.width");
  if (!(region_.height > 0.0)) bad.emplace_back("region.height");
  if (channels_.empty()) bad.emplace_back("channels");
  if (!(radius_m_ > 0.0)) bad.emplace_back("interference_radius_m");
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (!(channels_[i].bandwidth_hz > 0.0))
      bad.push_back(indexed("channels", i, "bandwidth_hz"));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (c.id != static_cast<CellId>(i)) bad.push_back(indexed("cells", i, "id"));
    if (!(c.active_prob > 0.0 && c.active_prob <= 1.0))
      bad.push_back(indexed("cells", i, "active_prob"));
    if (!(c.position.x >= 0.0 && c.position.x <= region_.width))
      bad.push_back(indexed("cells", i, "x"));
    if (!(c.position.y >= 0.0 && c.position.y <= region_.height))
      bad.push_back(indexed("cells", i, "y"));
    if (!std::isfinite(c.tx_power_dbm))
      bad.push_back(indexed("cells", i, "tx_power_dbm"));
  }
  throw_if_any(std::move(bad), "invalid topology");

  adjacency_.assign(cells_.size(), {});
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (std::size_t j = i + 1; j < cells_.size(); ++j) {
      if (distance(static_cast<CellId>(i), static_cast<CellId>(j)) <=
          radius_m_) {
        adjacency_[i].push_back(static_cast<CellId>(j));
        adjacency_[j].push_back(static_cast<CellId>(i));
      }
    }
  }
}

const Cell& NetworkTopology::cell(CellId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= cells_.size())
    throw std::out_of_range("unknown cell id " + std::to_string(id));
  return cells_[static_cast<std::size_t>(id)];
}

const std::vector<CellId>& NetworkTopology::neighbors(CellId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= adjacency_.size())
    throw std::out_of_range("unknown cell id " + std::to_string(id));
  return adjacency_[static_cast<std::size_t>(id)];
}

bool NetworkTopology::adjacent(CellId a, CellId b) const {
  const auto& n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

double NetworkTopology::distance(CellId a, CellId b) const {
  const Point& p = cell(a).position;
  const Point& q = cell(b).position;
  return std::hypot(p.x - q.x, p.y - q.y);
}

std::size_t NetworkTopology::edge_count() const noexcept {
  std::size_t degree_sum = 0;
  for (const auto& n : adjacency_) degree_sum += n.size();
  return degree_sum / 2;
}

NetworkTopology generate_topology(const TopologyParams& params) {
  std::vector<std::string> bad;
  if (params.n_cells < 1) bad.emplace_back("n_cells");
  if (params.n_channels < 1) bad.emplace_back("n_channels");
  if (!(params.interference_radius_m > 0.0))
    bad.emplace_back("interference_radius_m");
  if (!(params.bandwidth_hz > 0.0)) bad.emplace_back("bandwidth_hz");
  if (params.active_prob.size() != 1 &&
      params.active_prob.size() != static_cast<std::size_t>(params.n_cells))
    bad.emplace_back("active_prob");
  throw_if_any(std::move(bad), "invalid topology parameters");

  Rng rng(params.seed);
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(params.n_cells));
  for (int i = 0; i < params.n_cells; ++i) {
    Cell c;
    c.id = i;
    c.position.x = rng.uniform(0.0, params.region.width);
    c.position.y = rng.uniform(0.0, params.region.height);
    c.tx_power_dbm = params.tx_power_dbm;
    c.active_prob = params.active_prob.size() == 1
                        ? params.active_prob.front()
                        : params.active_prob[static_cast<std::size_t>(i)];
    cells.push_back(c);
  }
  std::vector<Channel> channels;
  for (int k = 0; k < params.n_channels; ++k)
    channels.push_back(Channel{k, params.bandwidth_hz});
  return NetworkTopology(std::move(cells), params.region, std::move(channels),
                         params.interference_radius_m);
}

std::vector<CellId> neighbors(const NetworkTopology& topo, CellId cell) {
  return topo.neighbors(cell);
}

ActiveSet ActiveSet::from_ids(std::size_t n, const std::vector<CellId>& ids) {
  ActiveSet s(n, false);
  for (CellId id : ids) s.set(id, true);
  return s;
}

std::vector<CellId> ActiveSet::ids() const {
  std::vector<CellId> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(static_cast<CellId>(i));
  return out;
}

ActiveSet sample_active_set(const NetworkTopology& topo, Rng& rng) {
  ActiveSet s(topo.size(), false);
  for (const Cell& c : topo.cells()) {
    // Always draw, so the stream position does not depend on the lambdas.
    const bool on = rng.bernoulli(c.active_prob);
    s.set(c.id, on);
  }
  return s;
}

nlohmann::json topology_to_json(const NetworkTopology& topo) {
  nlohmann::json doc;
  doc["region"] = {{"width", topo.region().width},
                   {"height", topo.region().height}};
  doc["interference_radius_m"] = topo.interference_radius_m();
  doc["channels"] = nlohmann::json::array();
  for (const Channel& ch : topo.channels())
    doc["channels"].push_back({{"id", ch.id}, {"bandwidth_hz", ch.bandwidth_hz}});
  doc["cells"] = nlohmann::json::array();
  for (const Cell& c : topo.cells()) {
    doc["cells"].push_back({{"id", c.id},
                            {"x", c.position.x},
                            {"y", c.position.y},
                            {"tx_power_dbm", c.tx_power_dbm},
                            {"active_prob", c.active_prob}});
  }
  return doc;
}

NetworkTopology topology_from_json(const nlohmann::json& doc) {
  std::vector<std::string> bad;
  auto number = [&](const nlohmann::json& obj, const char* key,
                    const std::string& path, double fallback) -> double {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      bad.push_back(path);
      return fallback;
    }
    return v.get<double>();
  };
  if (!doc.is_object()) throw ConfigError("topology");
  for (const char* key : {"region", "interference_radius_m", "channels", "cells"})
    if (!doc.contains(key)) bad.emplace_back(key);
  throw_if_any(bad, "missing topology fields");

  Region region{number(doc["region"], "width", "region.width", -1.0),
                number(doc["region"], "height", "region.height", -1.0)};
  const double radius =
      number(doc, "interference_radius_m", "interference_radius_m", -1.0);

  std::vector<Channel> channels;
  if (!doc["channels"].is_array()) bad.emplace_back("channels");
  else {
    for (std::size_t i = 0; i < doc["channels"].size(); ++i) {
      const auto& ch = doc["channels"][i];
      Channel c;
      c.id = static_cast<int>(i);
      c.bandwidth_hz =
          number(ch, "bandwidth_hz", indexed("channels", i, "bandwidth_hz"), 1e6);
      channels.push_back(c);
    }
  }
  std::vector<Cell> cells;
  if (!doc["cells"].is_array()) bad.emplace_back("cells");
  else {
    for (std::size_t i = 0; i < doc["cells"].size(); ++i) {
      const auto& js = doc["cells"][i];
      Cell c;
      c.id = static_cast<CellId>(number(js, "id", indexed("cells", i, "id"),
                                        static_cast<double>(i)));
      c.position.x = number(js, "x", indexed("cells", i, "x"), 0.0);
      c.position.y = number(js, "y", indexed("cells", i, "y"), 0.0);
      c.tx_power_dbm =
          number(js, "tx_power_dbm", indexed("cells", i, "tx_power_dbm"), 20.0);
      c.active_prob =
          number(js, "active_prob", indexed("cells", i, "active_prob"), 1.0);
      cells.push_back(c);
    }
  }
  throw_if_any(std::move(bad), "malformed topology document");
  return NetworkTopology(std::move(cells), region, std::move(channels), radius);
}

NetworkTopology load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({path.string()}, std::string("parse error: ") + e.what());
  }
  return topology_from_json(doc);
}

void save_topology(const NetworkTopology& topo,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write topology file " + path.string());
  out << topology_to_json(topo).dump(2) << '\n';
}

}  // namespace csc
