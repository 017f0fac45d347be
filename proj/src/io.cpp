#include "cbpp/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cbpp {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

long long require_integer(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<long long>();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " +
                     e.what());
  }
}

}  // namespace

json instance_to_json(const Instance& instance) {
  json circles = json::array();
  for (const Circle& c : instance.circles()) {
    circles.push_back({{"id", c.id}, {"radius", c.radius}});
  }
  return {{"bin_side", instance.bin_side()}, {"circles", circles}};
}

Instance instance_from_json(const json& j) {
  const double side = require_number(j, "bin_side", "instance");
  const json& arr = require(j, "circles", "instance");
  if (!arr.is_array()) throw ParseError("instance.circles: expected an array");

  std::vector<Circle> circles;
  std::set<long long> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "instance.circles[" + std::to_string(i) + "]";
    const long long id = require_integer(arr[i], "id", where);
    const double radius = require_number(arr[i], "radius", where);
    if (!seen.insert(id).second) {
      throw ParseError(where + ": duplicate id " + std::to_string(id));
    }
    if (id < 0 || id >= static_cast<long long>(arr.size())) {
      throw ParseError(where + ": id " + std::to_string(id) + " outside 0.." +
                       std::to_string(arr.size() - 1));
    }
    if (2.0 * radius > side) {
      std::ostringstream msg;
      msg.precision(17);
      msg << where << ": 2*radius (" << 2.0 * radius << ") exceeds bin_side (" << side << ")";
      throw ParseError(msg.str());
    }
    circles.push_back({static_cast<int>(id), radius});
  }
  try {
    return Instance(side, std::move(circles));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

Instance parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(instance).dump(2) + "\n");
}

Instance read_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string solution_to_json(const Layout& layout) {
  const Layout compact = compact_bins(layout);
  const Metrics m = compute_metrics(compact);
  json placements = json::array();
  for (std::size_t i = 0; i < compact.placements().size(); ++i) {
    const Placement& p = compact.placements()[i];
    if (!p.placed()) continue;
    placements.push_back(
        {{"id", static_cast<int>(i)}, {"bin", p.bin}, {"x", p.center.x}, {"y", p.center.y}});
  }
  json j = {{"instance_hash", instance_hash(layout.instance())},
            {"bins_used", m.bins_used},
            {"objective", m.objective},
            {"bin_densities", m.bin_densities},
            {"placements", placements},
            {"instance", instance_to_json(layout.instance())}};
  return j.dump(2) + "\n";
}

Layout parse_solution(const std::string& text, const InstancePtr& instance) {
  const json j = parse_json(text);
  InstancePtr inst = instance;
  if (!inst) {
    if (!j.is_object() || !j.contains("instance")) {
      throw ParseError("solution: no embedded \"instance\"; supply the instance file");
    }
    inst = std::make_shared<const Instance>(instance_from_json(j["instance"]));
  }
  if (j.is_object() && j.contains("instance_hash")) {
    const json& h = j["instance_hash"];
    if (!h.is_string() || h.get<std::string>() != instance_hash(*inst)) {
      throw ParseError("solution: instance_hash does not match the instance");
    }
  }

  const json& arr = require(j, "placements", "solution");
  if (!arr.is_array()) throw ParseError("solution.placements: expected an array");
  Layout layout(inst);
  std::set<long long> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "solution.placements[" + std::to_string(i) + "]";
    const long long id = require_integer(arr[i], "id", where);
    const long long bin = require_integer(arr[i], "bin", where);
    const double x = require_number(arr[i], "x", where);
    const double y = require_number(arr[i], "y", where);
    if (id < 0 || id >= static_cast<long long>(inst->size())) {
      throw ParseError(where + ": unknown circle id " + std::to_string(id));
    }
    if (!seen.insert(id).second) {
      throw ParseError(where + ": circle " + std::to_string(id) + " placed more than once");
    }
    if (bin < 1) throw ParseError(where + ": bin must be >= 1");
    layout.place(static_cast<int>(id), static_cast<int>(bin), {x, y});
  }
  return layout;
}

Layout read_solution(const std::filesystem::path& path, const InstancePtr& instance) {
  try {
    return parse_solution(read_text_file(path), instance);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace cbpp
