#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sweepcover {

enum class ErrorKind {
    invalid_argument,
    invalid_polygon,
    degenerate_geometry,
    infeasible_workspace,
    empty_plan,
    infeasible_node,
    infeasible_instance,
    unreachable,
    size_limit,
    parse_error,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::invalid_polygon: return "invalid_polygon";
        case ErrorKind::degenerate_geometry: return "degenerate_geometry";
        case ErrorKind::infeasible_workspace: return "infeasible_workspace";
        case ErrorKind::empty_plan: return "empty_plan";
        case ErrorKind::infeasible_node: return "infeasible_node";
        case ErrorKind::infeasible_instance: return "infeasible_instance";
        case ErrorKind::unreachable: return "unreachable";
        case ErrorKind::size_limit: return "size_limit";
        case ErrorKind::parse_error: return "parse_error";
    }
    return "unknown";
}

/// All planner failures are reported through this type. `stage()` is filled in
/// by the pipeline so callers can tell which step failed.
class PlannerError : public std::runtime_error {
public:
    PlannerError(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    const std::string& stage() const { return stage_; }
    void set_stage(std::string stage) { stage_ = std::move(stage); }

private:
    ErrorKind kind_;
    std::string stage_;
};

/// Process exit code for the CLI: 0 ok, 2 infeasible workspace,
/// 3 unreachable/infeasible allocation, 4 parse or input error.
inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::infeasible_workspace:
        case ErrorKind::empty_plan:
            return 2;
        case ErrorKind::unreachable:
        case ErrorKind::infeasible_node:
        case ErrorKind::infeasible_instance:
            return 3;
        case ErrorKind::parse_error:
        case ErrorKind::invalid_polygon:
        case ErrorKind::invalid_argument:
        case ErrorKind::degenerate_geometry:
            return 4;
        default:
            return 1;
    }
}

}  // namespace sweepcover
