#pragma once

namespace sshqed {

inline constexpr const char* version = "0.1.0";

} // namespace sshqed
