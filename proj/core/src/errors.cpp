#include "finsler/errors.hpp"

namespace finsler {

const char* err_name(Err code) {
  switch (code) {
    case Err::cone_violation: return "ConeViolation";
    case Err::dual_cone_violation: return "DualConeViolation";
    case Err::dimension_mismatch: return "DimensionMismatch";
    case Err::singular_tensor: return "SingularTensor";
    case Err::domain_violation: return "DomainViolation";
    case Err::not_unit_wind: return "NotUnitWind";
    case Err::newton_divergence: return "NewtonDivergence";
    case Err::out_of_domain: return "OutOfDomain";
    case Err::no_conic_normal: return "NoConicNormal";
    case Err::frame_degenerate: return "FrameDegenerate";
    case Err::not_killing: return "NotKilling";
    case Err::normal_excluded: return "NormalExcluded";
    case Err::insufficient_samples: return "InsufficientSamples";
    case Err::empty_domain: return "EmptyDomain";
    case Err::degenerate_flag: return "DegenerateFlag";
    case Err::bad_scenario: return "BadScenario";
    case Err::unsupported: return "Unsupported";
  }
  return "UnknownError";
}

bool is_config_error(Err code) {
  switch (code) {
    case Err::bad_scenario:
    case Err::not_unit_wind:
    case Err::dimension_mismatch:
    case Err::unsupported: return true;
    default: return false;
  }
}

}  // namespace finsler
