#pragma once

#include <stdexcept>
#include <string>

namespace simplexforge {

// Exit-code contract shared by the library and the CLI:
// 0 success, 2 domain violation, 3 I/O or parse failure, 4 guard exceeded.
enum class ErrorKind { Domain = 2, Parse = 3, Guard = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

inline Error domain_error(const std::string& what) { return Error(ErrorKind::Domain, what); }
inline Error parse_error(const std::string& what) { return Error(ErrorKind::Parse, what); }
inline Error guard_error(const std::string& what) { return Error(ErrorKind::Guard, what); }

} // namespace simplexforge
