#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vfplan {

// Malformed input text; `position` is the byte offset reported by the parser.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Structurally invalid floorplan; `ring` names the offending ring
// ("outer", "hole 2", ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string ring)
      : std::runtime_error(what), ring_(std::move(ring)) {}
  const std::string& ring() const { return ring_; }

 private:
  std::string ring_;
};

// The requested plan cannot exist under the given parameters. Carries the
// ids of boundary segments that cannot be satisfied when relevant.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<int> segment_ids = {})
      : std::runtime_error(what), segment_ids_(std::move(segment_ids)) {}
  const std::vector<int>& segment_ids() const { return segment_ids_; }

 private:
  std::vector<int> segment_ids_;
};

// Caller broke an API contract (mismatched boundary sets etc.).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vfplan
