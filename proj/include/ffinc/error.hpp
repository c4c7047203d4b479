#pragma once

#include <stdexcept>
#include <string>

namespace ffinc {

enum class Errc {
    bad_params,
    zero_inverse,
    modulus_mismatch,
    zero_scale,
    zero_coeff,
    bad_threshold,
    size_order,
    cap_exceeded,
    bad_shape,
    check_failed,
    io_error,
    hypothesis_violated,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::bad_params: return "BadParams";
        case Errc::zero_inverse: return "ZeroInverse";
        case Errc::modulus_mismatch: return "ModulusMismatch";
        case Errc::zero_scale: return "ZeroScale";
        case Errc::zero_coeff: return "ZeroCoeff";
        case Errc::bad_threshold: return "BadThreshold";
        case Errc::size_order: return "SizeOrder";
        case Errc::cap_exceeded: return "CapExceeded";
        case Errc::bad_shape: return "BadShape";
        case Errc::check_failed: return "CheckFailed";
        case Errc::io_error: return "IoError";
        case Errc::hypothesis_violated: return "SpecHypothesisViolated";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace ffinc
