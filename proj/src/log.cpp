#include "sgc/log.hpp"

#include <iostream>
#include <mutex>

namespace sgc {
namespace {

std::mutex mu;
WarningSink current;

}  // namespace

WarningSink set_warning_sink(WarningSink sink) {
  std::lock_guard lock(mu);
  std::swap(current, sink);
  return sink;
}

void warn(const std::string& message) {
  std::lock_guard lock(mu);
  if (current) {
    current(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace sgc
