#include "hypermachine/error.h"

namespace hypermachine {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kStructural: return "structural error";
    case ErrorKind::kInput: return "input error";
    case ErrorKind::kUnsupportedClass: return "unsupported machine class";
    case ErrorKind::kInvalidEncoding: return "invalid encoding";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kEvaluation: return "evaluation error";
    case ErrorKind::kRefused: return "refused";
  }
  return "error";
}

}  // namespace hypermachine
