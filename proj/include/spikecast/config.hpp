#pragma once

#include <cstdint>
#include <string>

#include "spikecast/lorenz.hpp"
#include "spikecast/pipeline.hpp"

namespace spikecast {

struct DatasetSpec {
    enum class Kind { lorenz, csv };

    Kind kind = Kind::lorenz;
    int steps_per_mode = 300;
    double h = 0.01;
    TrendSpec trend{};
    std::string path;                   // csv only
    std::string value_column = "value";

    ModeSchedule schedule() const;  // lorenz only
    void validate() const;
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::string out = "out";
    DatasetSpec dataset{};
    ModelSpec model = ModelSpec::make(ModelKind::wass);
    double epsilon = 0.1;

    void validate() const;
};

// Parses a JSON document into a fully defaulted, validated config. Unknown
// keys anywhere are rejected; errors name the offending field.
RunConfig parse_config(const std::string& text);

// Canonical JSON form; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& config);

}  // namespace spikecast
