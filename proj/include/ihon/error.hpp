// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ihon {

/// A state the model must never reach (link busy at a GST exit, an event
/// scheduled in the past, ...). Always indicates a bug, never bad input.
class InvariantViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Rejected configuration value; `field()` names the offending key.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace ihon
