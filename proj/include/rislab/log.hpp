#pragma once

#include <functional>
#include <string>

namespace rislab {

using WarningHandler = std::function<void(const std::string&)>;

// Installs a handler for library warnings and returns the previous one.
// The default handler writes to stderr. Each distinct message is reported
// once per installed handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

} // namespace rislab
