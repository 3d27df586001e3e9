#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ldl {

// Failure class, used by the CLI to pick a process exit code:
// usage/input problems -> 1, infeasibility -> 2, resource caps -> 3.
enum class ErrorClass { Usage = 1, Infeasible = 2, Resource = 3 };

class LdlError : public std::runtime_error {
public:
    LdlError(std::string name, ErrorClass cls, const std::string& msg)
        : std::runtime_error(msg), name_(std::move(name)), class_(cls) {}

    const std::string& name() const { return name_; }
    ErrorClass error_class() const { return class_; }
    int exit_code() const { return static_cast<int>(class_); }

private:
    std::string name_;
    ErrorClass class_;
};

struct ZeroEfficiency : LdlError {
    explicit ZeroEfficiency(const std::string& msg)
        : LdlError("ZeroEfficiency", ErrorClass::Infeasible, msg) {}
};

struct InconsistentEfficiencies : LdlError {
    explicit InconsistentEfficiencies(const std::string& msg)
        : LdlError("InconsistentEfficiencies", ErrorClass::Infeasible, msg) {}
};

struct SizeOverflow : LdlError {
    explicit SizeOverflow(const std::string& msg)
        : LdlError("SizeOverflow", ErrorClass::Resource, msg) {}
};

struct ScenarioMismatch : LdlError {
    explicit ScenarioMismatch(const std::string& msg)
        : LdlError("ScenarioMismatch", ErrorClass::Usage, msg) {}
};

struct SignallingInput : LdlError {
    explicit SignallingInput(const std::string& msg)
        : LdlError("SignallingInput", ErrorClass::Usage, msg) {}
};

struct ZeroEtaMin : LdlError {
    explicit ZeroEtaMin(const std::string& msg)
        : LdlError("ZeroEtaMin", ErrorClass::Usage, msg) {}
};

struct DegenerateTau : LdlError {
    explicit DegenerateTau(const std::string& msg)
        : LdlError("DegenerateTau", ErrorClass::Usage, msg) {}
};

struct ParseError : LdlError {
    explicit ParseError(const std::string& msg)
        : LdlError("ParseError", ErrorClass::Usage, msg) {}
};

}  // namespace ldl
