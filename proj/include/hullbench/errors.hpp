#pragma once

#include <stdexcept>
#include <string>

namespace hullbench {

/// Bad user input: unreadable files, invalid parameters, malformed configs.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A pipeline stage failed; carries the stage name for reporting.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& msg)
        : std::runtime_error(stage + ": " + msg), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace hullbench
