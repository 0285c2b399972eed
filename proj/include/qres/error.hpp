#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qres {

enum class ErrorKind {
  NotHermitian,
  TraceDefect,
  NotPositive,
  OutOfRange,
  NumericalDomain,
  NotCP,
  ChannelNotTP,
  IntegratorFailure,
  DimensionMismatch,
  EmptySeries,
  InvalidConfig,
  Unsupported,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries its kind and, where one exists, the measured
// defect that tripped the check.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double defect = 0.0);

  ErrorKind kind() const noexcept { return kind_; }
  double defect() const noexcept { return defect_; }

  // kind=<Kind> defect=<value> message=<text>
  std::string one_line() const;

 private:
  ErrorKind kind_;
  double defect_;
};

}  // namespace qres
