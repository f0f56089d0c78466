#include "nlheat/error.hpp"

namespace nlheat {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::ConductivityDomain: return "conductivity-domain";
        case ErrorKind::Mesh: return "mesh";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::TimeMesh: return "time-mesh";
        case ErrorKind::NonFiniteState: return "non-finite-state";
        case ErrorKind::SingularJacobian: return "singular-jacobian";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::NoSteadyState: return "no-steady-state";
        case ErrorKind::Estimator: return "estimator";
        case ErrorKind::March: return "march";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace nlheat
