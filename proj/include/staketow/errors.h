#ifndef STAKETOW_ERRORS_H_
#define STAKETOW_ERRORS_H_

#include <stdexcept>
#include <string>

namespace staketow {

enum class ErrorCode {
  kMalformedInput,
  kDisconnectedGraph,
  kMissingPayment,
  kNotATree,
  kNotIndicatorPayment,
  kRootNotLeaf,
  kVertexNotOpen,
  kNonConvergence,
  kStakeOutOfRange,
  kIllegalStake,
  kIllegalMove,
  kSingularSystem,
  kIndexOutOfRange,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace staketow

#endif  // STAKETOW_ERRORS_H_
