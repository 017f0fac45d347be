#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cbpp/model.hpp"

namespace cbpp {

/// Malformed or invariant-violating input file. what() names the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance JSON: {"bin_side": L, "circles": [{"id": i, "radius": r}, ...]}
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);
Instance parse_instance(const std::string& text);

void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);

/// Solution JSON. Bins are compacted to 1..K and the instance is embedded under
/// "instance" so the file can be validated on its own.
std::string solution_to_json(const Layout& layout);

/// Rebuilds a layout from solution text. Uses the embedded instance, or
/// `instance` when given (its hash must match "instance_hash"). Placements may
/// be incomplete; validate() reports missing circles.
Layout parse_solution(const std::string& text, const InstancePtr& instance = nullptr);
Layout read_solution(const std::filesystem::path& path, const InstancePtr& instance = nullptr);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cbpp
