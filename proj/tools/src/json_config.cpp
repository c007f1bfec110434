#include "json_config.hpp"

#include <json.hpp>

namespace prorata::cli {
namespace {

using nlohmann::json;

std::string scalar_text(const json& value, const std::string& key) {
  switch (value.type()) {
    case json::value_t::string:
      return value.get<std::string>();
    case json::value_t::boolean:
      return value.get<bool>() ? "true" : "false";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float:
      return value.dump();
    default:
      throw CLI::ConfigError("config key '" + key + "' must be a string, number or boolean");
  }
}

void push(std::vector<CLI::ConfigItem>& items, const std::vector<std::string>& parents,
          const std::string& key, const json& value) {
  CLI::ConfigItem item;
  item.parents = parents;
  item.name = key;
  if (value.is_array()) {
    for (const json& v : value) item.inputs.push_back(scalar_text(v, key));
  } else {
    item.inputs.push_back(scalar_text(value, key));
  }
  items.push_back(std::move(item));
}

void flatten(std::vector<CLI::ConfigItem>& items, const std::vector<std::string>& parents,
             const json& object) {
  for (const auto& [key, value] : object.items()) {
    if (key == "family" && value.is_object()) {
      for (const auto& [inner, v] : value.items()) {
        push(items, parents, inner == "kind" ? "family" : inner, v);
      }
    } else if (value.is_object()) {
      throw CLI::ConfigError("config key '" + key + "' cannot hold an object here");
    } else {
      push(items, parents, key, value);
    }
  }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CLI::ConfigError("config must be a JSON object");

  std::vector<std::string> active;
  const auto selected = root_->get_subcommands();
  if (!selected.empty()) active.push_back(selected.front()->get_name());

  std::vector<CLI::ConfigItem> items;
  json flat = json::object();
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object() && key != "family") {
      if (root_->get_subcommand_no_throw(key) == nullptr) {
        throw CLI::ConfigError("config section '" + key + "' is not a subcommand");
      }
      // Sections for other subcommands are allowed and skipped.
      if (!active.empty() && key == active.front()) flatten(items, {key}, value);
    } else {
      flat[key] = value;
    }
  }
  flatten(items, active, flat);
  return items;
}

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool,
                                  std::string) const {
  json out = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    std::vector<std::string> values = opt->reduced_results();
    if (values.empty() && default_also && !opt->get_default_str().empty()) {
      values.push_back(opt->get_default_str());
    }
    if (values.empty()) continue;
    if (values.size() == 1 && opt->get_items_expected_max() <= 1) {
      out[name] = values.front();
    } else {
      out[name] = values;
    }
  }
  return out.dump(2) + "\n";
}

}  // namespace prorata::cli
