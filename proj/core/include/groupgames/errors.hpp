#pragma once

#include <stdexcept>
#include <string>

namespace gg {

/// Base class for every error raised by the engine.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A value was paired with a group, function or measure of the wrong variant.
struct VariantMismatch : Error {
    using Error::Error;
};

/// A construction-time invariant failed (bad Cayley table, weights not
/// summing to one, malformed neighborhood, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// The requested operation exists but is not available for this class of
/// inputs (e.g. exact suprema of lattice predicates).
struct UnsupportedError : Error {
    using Error::Error;
};

/// Error located inside a game/profile/sweep document.
struct DocumentError : Error {
    DocumentError(const std::string& where, const std::string& reason, int line = -1)
        : Error(render(where, reason, line)), where(where), reason(reason), line(line) {}

    std::string where;
    std::string reason;
    int line;

private:
    static std::string render(const std::string& where, const std::string& reason, int line) {
        std::string msg = "document error";
        if (line >= 0) msg += " (line " + std::to_string(line) + ")";
        if (!where.empty()) msg += " at " + where;
        msg += ": " + reason;
        return msg;
    }
};

}  // namespace gg
