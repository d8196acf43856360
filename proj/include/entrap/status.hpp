#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace entrap {

/// Four-way rover status: the joint outcome of the divergence and movement
/// classifiers. Also used as the per-sample scenario label in telemetry.
enum class Status {
    entrapped,  // diverged and stopped
    slipping,   // diverged and moving
    moving,     // consistent and moving
    stopped,    // consistent and stopped
};

std::string_view to_string(Status s);
std::optional<Status> status_from_string(std::string_view text);

}  // namespace entrap
