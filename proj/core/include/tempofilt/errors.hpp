#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempofilt {

// Unusable input or output: missing file, unreadable stream, malformed content.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed content, carrying the source location when known.
class ParseError : public IoError {
 public:
  ParseError(const std::string& origin, std::size_t line, const std::string& what)
      : IoError(origin + ":" + std::to_string(line) + ": " + what) {}
  explicit ParseError(const std::string& what) : IoError(what) {}
};

// An operation was asked to run with parameters or preconditions it cannot
// satisfy (bad fraction, multi-labeled input to a single-label filtration, ...).
class ValueError : public std::runtime_error {
 public:
  explicit ValueError(const std::string& what) : std::runtime_error(what) {}
};

// A configured work or memory cap was exhausted (simplex budget, rewire retries).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tempofilt
