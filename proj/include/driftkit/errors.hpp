#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace driftkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source text could not be lexed. `position` is a byte offset into the input.
class LexError : public Error {
 public:
  LexError(std::size_t position, const std::string& what)
      : Error("lex error at offset " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An identifier did not match the casing style it was asserted to have.
class StyleError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the inputs of an operation was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

/// A loaded tokenizer breaks one or more invariants; all of them are listed.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "tokenizer validation failed";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Carries the ids that were required but absent.
class IdListError : public Error {
 public:
  IdListError(const std::string& prefix, std::vector<std::string> ids)
      : Error(render(prefix, ids)), ids_(std::move(ids)) {}
  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  static std::string render(const std::string& prefix, const std::vector<std::string>& ids) {
    std::string out = prefix + " (" + std::to_string(ids.size()) + "):";
    std::size_t shown = 0;
    for (const auto& id : ids) {
      if (shown++ == 20) {
        out += " ...";
        break;
      }
      out += " " + id;
    }
    return out;
  }
  std::vector<std::string> ids_;
};

class MissingLabel : public IdListError {
 public:
  explicit MissingLabel(std::vector<std::string> ids) : IdListError("missing labels", std::move(ids)) {}
  MissingLabel(const std::string& what, std::vector<std::string> ids)
      : IdListError("missing labels for " + what, std::move(ids)) {}
};

class PartitionGap : public IdListError {
 public:
  explicit PartitionGap(std::vector<std::string> ids)
      : IdListError("partition does not cover affected samples", std::move(ids)) {}
};

/// Wraps a failure while processing one corpus sample.
class SampleError : public Error {
 public:
  SampleError(std::string sample_id, const std::string& what)
      : Error("sample " + sample_id + ": " + what), sample_id_(std::move(sample_id)) {}
  const std::string& sample_id() const noexcept { return sample_id_; }

 private:
  std::string sample_id_;
};

class EmptySubset : public Error {
 public:
  EmptySubset() : Error("accuracy requested over an empty subset") {}
};

}  // namespace driftkit
