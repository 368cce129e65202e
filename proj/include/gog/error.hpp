#pragma once

#include <stdexcept>
#include <string>

namespace gog {

enum class ErrorKind {
  Syntax,
  EmptyGraph,
  DisconnectedGraph,
  FiniteOrderAttachment,
  UnknownGenerator,
  UnknownVertex,
  UnknownEdge,
  DuplicateName,
  RankZero,
  TrivialWord,
  NotTwoEnded,
  NoWitness,
  SearchBudgetExceeded,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::FiniteOrderAttachment: return "FiniteOrderAttachment";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::RankZero: return "RankZero";
    case ErrorKind::TrivialWord: return "TrivialWord";
    case ErrorKind::NotTwoEnded: return "NotTwoEnded";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}

  ErrorKind kind() const noexcept { return kind_; }
  // 1-based source position, 0 when the error has no location
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
};

}  // namespace gog
