#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lorentz::cli {

enum class Format { csv, json };

struct RunConfig {
    std::string command;
    // Comma lists; only `constants` takes more than one value.
    std::string p = "2";
    std::string s = "4";
    std::optional<std::string> input_path;
    double epsilon = 0.01;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    std::optional<Format> format;  // json by default, csv for constants
    std::optional<std::string> output_path;
    bool list = false;             // verify --list
};

// 0 ok, 1 property failure, 2 input error. Diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::vector<std::string> command_names();

}  // namespace lorentz::cli
