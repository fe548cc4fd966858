#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace growthkit {

/// Domain error. `code()` is module-qualified ("data.gapped_year"); the
/// optional location reads like "row 4, column output".
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string code, const std::string& message,
          std::optional<std::string> location = std::nullopt)
        : std::runtime_error(message),
          module_(std::move(module)),
          code_(module_ + "." + code),
          location_(std::move(location)) {}

    [[nodiscard]] const std::string& module() const noexcept { return module_; }
    [[nodiscard]] const std::string& code() const noexcept { return code_; }
    [[nodiscard]] const std::optional<std::string>& location() const noexcept { return location_; }

private:
    std::string module_;
    std::string code_;
    std::optional<std::string> location_;
};

}  // namespace growthkit
