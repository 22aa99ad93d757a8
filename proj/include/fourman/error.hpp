#pragma once

#include <stdexcept>
#include <string>

namespace fourman {

// Calculation-level failure. `code` is a short stable tag the CLI maps to
// report fields: "validation", "parity", "hypothesis", "model", "input".
class CalcError : public std::runtime_error {
public:
    CalcError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline CalcError validation_error(const std::string& msg) { return CalcError("validation", msg); }
inline CalcError parity_error(const std::string& msg) { return CalcError("parity", msg); }
inline CalcError hypothesis_error(const std::string& msg) { return CalcError("hypothesis", msg); }
inline CalcError model_error(const std::string& msg) { return CalcError("model", msg); }
inline CalcError input_error(const std::string& msg) { return CalcError("input", msg); }

}  // namespace fourman
