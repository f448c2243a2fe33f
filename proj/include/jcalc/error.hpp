#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace jcalc {

/* Domain error carrying a stable machine-readable code (e.g. "NotCharacteristic",
 * "SignatureObstruction").  The CLI maps these to exit code 1 and surfaces the
 * code verbatim; schema-level problems use a separate path (exit code 2). */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

} // namespace jcalc
