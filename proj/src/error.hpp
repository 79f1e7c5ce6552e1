#ifndef SCALEKIT_ERROR_HPP_
#define SCALEKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace scalekit {

// Mirrors the sk_status codes in the public C header.
enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 1,
    too_few_points = 2,
    degenerate_data = 3,
    zero_tokens = 4,
    unsatisfiable = 5,
    budget_too_small = 6,
    out_of_range = 7,
    zero_batch = 8,
    empty_input = 9,
    missing_loss = 10,
    schema_mismatch = 11,
    duplicate_label = 12,
    malformed_number = 13,
    nonfinite_coordinate = 14,
    overflow = 15,
    io = 16,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace scalekit

#endif
