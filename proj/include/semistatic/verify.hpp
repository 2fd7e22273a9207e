#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "semistatic/io.hpp"

namespace semistatic {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    long p_max = 5;
    long m_max = 6;
    unsigned threads = 1;  // no effect on results
};

struct SuiteResult {
    std::string suite;
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    Json stats = Json::object();  // suite-specific tallies
    bool passed() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();  // without "all"

// Throws ParseError on an unknown suite.
SuiteResult run_suite(const std::string& suite, const SuiteOptions& options);
Json suite_to_json(const SuiteResult& r);

}  // namespace semistatic
