#pragma once

#include <stdexcept>
#include <string>

namespace linepin {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// pattern construction / decision
struct InvalidPattern : Error { using Error::Error; };
struct ProvidedAnglesNotSigma5 : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct NotSpanningTriple : Error { using Error::Error; };

// linear feasibility
struct ToleranceAmbiguous : Error { using Error::Error; };
struct GivesUp : Error { using Error::Error; };

// ball configurations
struct InvalidConfig : Error { using Error::Error; };
struct GapTooSmall : Error { using Error::Error; };
struct DeltaTooLarge : Error { using Error::Error; };
struct NotTangent : Error { using Error::Error; };

// pinning engine
struct ExtractionFailed : Error { using Error::Error; };
struct DisjointnessFailure : Error { using Error::Error; };

// I/O
struct SchemaError : Error { using Error::Error; };

} // namespace linepin
