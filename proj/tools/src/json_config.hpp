#pragma once

// JSON config files for CLI11.
//
// Keys are long option names without dashes. Flat keys apply to the
// subcommand being run; an object keyed by a subcommand name applies to that
// subcommand only. A "family" object is flattened: its "kind" entry becomes
// --family and the remaining entries become their own options, e.g.
//   {"family": {"kind": "power", "beta": 0.5, "gamma": 0.05}, "n": 4}

#include <CLI11.hpp>

namespace prorata::cli {

class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const CLI::App* root_;
};

}  // namespace prorata::cli
