#pragma once

#include <stdexcept>
#include <string>

namespace nsbox {

/// Machine-readable reason attached to every domain error.
enum class ErrorCode {
  negative_entry,
  not_normalized,
  signaling_a_to_b,
  signaling_b_to_a,
  out_of_alphabet,
  bad_k,
  weight_sum,
  setting_mismatch,
  shape_mismatch,
  cap_exceeded,
  not_local,
  not_violating,
  not_bijective,
  bad_representative,
  bad_probability,
  same_output,
  empty_inputs,
  bad_source,
  bad_setting,
  cache_corrupt,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::negative_entry: return "NegativeEntry";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::signaling_a_to_b: return "SignalingAtoB";
    case ErrorCode::signaling_b_to_a: return "SignalingBtoA";
    case ErrorCode::out_of_alphabet: return "OutOfAlphabet";
    case ErrorCode::bad_k: return "BadK";
    case ErrorCode::weight_sum: return "WeightSum";
    case ErrorCode::setting_mismatch: return "SettingMismatch";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::not_local: return "NotLocal";
    case ErrorCode::not_violating: return "NotViolating";
    case ErrorCode::not_bijective: return "NotBijective";
    case ErrorCode::bad_representative: return "BadRepresentative";
    case ErrorCode::bad_probability: return "BadProbability";
    case ErrorCode::same_output: return "SameOutput";
    case ErrorCode::empty_inputs: return "EmptyInputs";
    case ErrorCode::bad_source: return "BadSource";
    case ErrorCode::bad_setting: return "BadSetting";
    case ErrorCode::cache_corrupt: return "CacheCorrupt";
  }
  return "UnknownError";
}

/// Exception carrying an ErrorCode plus a message that pinpoints the
/// offending entry (indices are reported 1-based, as in file formats).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nsbox
