#include <sharpframe/error.hpp>

namespace sharpframe {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::input: return "input";
    case ErrorKind::training: return "training";
    case ErrorKind::backend: return "backend";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

} // namespace sharpframe
