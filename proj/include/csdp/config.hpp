#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "csdp/learning.hpp"
#include "csdp/network.hpp"

namespace csdp {

/// Malformed configuration. what() names the key and line.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& origin, int line, const std::string& key, const std::string& why);
    int line() const { return line_; }
    const std::string& key() const { return key_; }

  private:
    int line_;
    std::string key_;
};

/// File could not be read or written. what() names the path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    NetworkConfig network{};
    TrainConfig training{};
    /// Named two-input task (xor, and, or, nand, nor, xnor) or "custom".
    std::string task = "xor";
    /// Label for each input pattern, inputs read as an MSB-first binary number.
    std::vector<int> truth_table;

    /// Fills truth_table from task when empty and checks everything.
    void finalize();
};

/// Parses flat `key = value` text; `#` starts a comment.
ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<config>");

ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` listing of every setting, in a fixed order.
std::string echo_config(const ExperimentConfig& config);

}  // namespace csdp
