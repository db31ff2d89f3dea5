#include "staketow/errors.h"

namespace staketow {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kMissingPayment: return "MissingPayment";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kNotIndicatorPayment: return "NotIndicatorPayment";
    case ErrorCode::kRootNotLeaf: return "RootNotLeaf";
    case ErrorCode::kVertexNotOpen: return "VertexNotOpen";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kStakeOutOfRange: return "StakeOutOfRange";
    case ErrorCode::kIllegalStake: return "IllegalStake";
    case ErrorCode::kIllegalMove: return "IllegalMove";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

}  // namespace staketow
