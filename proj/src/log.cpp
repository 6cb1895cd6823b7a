#include "rislab/log.hpp"

#include <iostream>
#include <mutex>
#include <set>
#include <utility>

namespace rislab {
namespace {

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& handler_slot() {
    static WarningHandler h = [](const std::string& msg) { std::cerr << "rislab warning: " << msg << '\n'; };
    return h;
}

std::set<std::string>& seen() {
    static std::set<std::string> s;
    return s;
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(handler_mutex());
    seen().clear();
    return std::exchange(handler_slot(), std::move(handler));
}

void warn(const std::string& message) {
    std::lock_guard lock(handler_mutex());
    if (!seen().insert(message).second) {
        return;
    }
    if (handler_slot()) {
        handler_slot()(message);
    }
}

} // namespace rislab
