#ifndef CHADKG_ERRORS_HPP
#define CHADKG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chadkg {

/// Filesystem-level failure (missing file, unwritable directory), as
/// opposed to malformed content.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace chadkg

#endif
