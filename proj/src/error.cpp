#include "extendo/error.hpp"

namespace extendo {

std::string_view to_string(InputErrorCode code) noexcept {
    switch (code) {
        case InputErrorCode::domain: return "domain";
        case InputErrorCode::invalid_curve: return "invalid-curve";
        case InputErrorCode::curve_horizon: return "curve-horizon";
        case InputErrorCode::invalid_contract: return "invalid-contract";
        case InputErrorCode::unsupported_setting: return "unsupported-setting";
        case InputErrorCode::parse: return "parse";
    }
    return "unknown";
}

}  // namespace extendo
