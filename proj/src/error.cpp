#include "mog/error.hpp"

namespace mog {

namespace {

std::string format_message(ErrorKind kind, const std::string& message,
                           std::optional<std::size_t> line) {
  std::string out = to_string(kind);
  out += " error";
  if (line) out += " at line " + std::to_string(*line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::lookup: return "lookup";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::disconnected: return "disconnected";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::spec: return "spec";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(format_message(kind, message, line)),
      kind_(kind),
      line_(line),
      detail_(message) {}

Error Error::with_stage(std::string stage) const {
  Error copy(kind_, stage + ": " + detail_, line_);
  copy.stage_ = std::move(stage);
  copy.value_ = value_;
  return copy;
}

Error Error::with_value(double value) const {
  Error copy = *this;
  copy.value_ = value;
  return copy;
}

}  // namespace mog
