#include "qres/error.hpp"

#include <cstdio>

namespace qres {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceDefect: return "TraceDefect";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NumericalDomain: return "NumericalDomain";
    case ErrorKind::NotCP: return "NotCP";
    case ErrorKind::ChannelNotTP: return "ChannelNotTP";
    case ErrorKind::IntegratorFailure: return "IntegratorFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double defect)
    : std::runtime_error(what), kind_(kind), defect_(defect) {}

std::string Error::one_line() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", defect_);
  std::string msg = what();
  for (char& c : msg) {
    if (c == '\n') c = ' ';
  }
  return "kind=" + std::string(to_string(kind_)) + " defect=" + buf + " message=" + msg;
}

}  // namespace qres
