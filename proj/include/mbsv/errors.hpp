#ifndef MBSV_ERRORS_HPP_
#define MBSV_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace mbsv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A variable id was referenced that does not exist in the network.
class UnknownIdError : public Error {
 public:
  explicit UnknownIdError(const std::string& id)
      : Error("unknown variable id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// The edge list contains a directed cycle.
class CycleError : public Error {
 public:
  using Error::Error;
};

/// A variable has no CPT.
class MissingCptError : public Error {
 public:
  using Error::Error;
};

/// A CPT row is not a probability vector (bad sum or out-of-range entry).
class BadRowSumError : public Error {
 public:
  BadRowSumError(const std::string& child, int row, const std::string& detail)
      : Error("bad CPT row for '" + child + "', row " + std::to_string(row) +
              ": " + detail),
        child_(child),
        row_(row) {}
  const std::string& child() const { return child_; }
  int row() const { return row_; }

 private:
  std::string child_;
  int row_;
};

/// Structural model problem not covered by a more specific error.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Evidence does not cover every required variable.
class IncompleteEvidenceError : public Error {
 public:
  explicit IncompleteEvidenceError(std::vector<std::string> missing)
      : Error(format(missing)), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  static std::string format(const std::vector<std::string>& missing) {
    std::string s = "incomplete evidence, missing:";
    for (const auto& id : missing) s += " " + id;
    return s;
  }
  std::vector<std::string> missing_;
};

/// The joint state space is too large to enumerate exactly.
class StateSpaceError : public Error {
 public:
  using Error::Error;
};

/// A model or readings file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A stuck-at injection names a state index outside a victim's cardinality.
class BadStuckStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbsv

#endif  // MBSV_ERRORS_HPP_
