#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skewrot/exec.hpp"
#include "skewrot/rational.hpp"

namespace skewrot::experiments {

// String-keyed experiment parameters.  Every experiment has complete
// defaults; overrides come from --set key=value or a JSON config.  Typed
// getters throw ConfigError on malformed values.
class Params {
  public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    squares::Rational get_rational(const std::string& key, const squares::Rational& fallback) const;

    const std::map<std::string, std::string>& raw() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

struct Result {
    std::vector<std::pair<std::string, std::string>> summary;  // ordered key=value pairs
    std::vector<std::string> outputs;                          // files written
};

struct Experiment {
    std::string name;
    std::string description;
    Result (*run)(const Params&, const std::string& out_dir, Exec exec);
};

// all registered experiments, in a fixed presentation order
const std::vector<Experiment>& registry();

// nullptr when the name is unknown
const Experiment* find(const std::string& name);

// creates out_dir if needed, then dispatches; throws ConfigError for unknown
// names
Result run_experiment(const std::string& name, const Params& params, const std::string& out_dir,
                      Exec exec);

}  // namespace skewrot::experiments
