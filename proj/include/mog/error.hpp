#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mog {

enum class ErrorKind {
  parse,         // malformed input
  validation,    // well-formed input that violates a graph/cover invariant
  lookup,        // unknown node label, interval id, graph id
  parameter,     // out-of-range argument
  disconnected,  // lens undefined on a disconnected graph
  convergence,   // iterative solver hit its cap
  spec,          // invalid generator spec
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library. `line` is set for parse/validation
// errors that originate in a text format; `stage` is set by compute_mog when
// the error is propagated out of a pipeline stage.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  // Convergence errors carry the last residual; disconnected errors carry the
  // kernel dimension (number of components).
  std::optional<double> value() const noexcept { return value_; }

  Error with_stage(std::string stage) const;
  Error with_value(double value) const;

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
  std::string stage_;
  std::string detail_;
  std::optional<double> value_;
};

}  // namespace mog
