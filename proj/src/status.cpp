#include "entrap/status.hpp"

namespace entrap {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::entrapped: return "entrapped";
        case Status::slipping: return "slipping";
        case Status::moving: return "moving";
        case Status::stopped: return "stopped";
    }
    return "unknown";
}

std::optional<Status> status_from_string(std::string_view text) {
    if (text == "entrapped") return Status::entrapped;
    if (text == "slipping") return Status::slipping;
    if (text == "moving") return Status::moving;
    if (text == "stopped") return Status::stopped;
    return std::nullopt;
}

}  // namespace entrap
