#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lorentz {

struct VerifyContext {
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
};

struct PropertyOutcome {
    std::size_t cases = 0;
    std::size_t violations = 0;
    double worst = 0.0;   // largest violation amount, or the tightest margin when none
    std::string detail;
    bool pass() const { return violations == 0 && cases > 0; }
};

struct Property {
    std::string name;
    std::string module;
    std::string statement;
    std::function<PropertyOutcome(const VerifyContext&)> run;
};

const std::vector<Property>& property_registry();

struct PropertyReport {
    std::string name;
    std::string module;
    PropertyOutcome outcome;
};

// Runs every registered property (or those whose name contains `filter`).
std::vector<PropertyReport> run_suite(const VerifyContext& ctx, const std::string& filter = "");

std::string reports_csv(const std::vector<PropertyReport>& reports);
nlohmann::json reports_json(const std::vector<PropertyReport>& reports, const VerifyContext& ctx);

}  // namespace lorentz
