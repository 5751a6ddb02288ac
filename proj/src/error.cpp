#include "curvekit/error.hpp"

namespace curvekit {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::syntax: return "SYNTAX";
        case Errc::length_mismatch: return "LENGTH_MISMATCH";
        case Errc::label_count: return "LABEL_COUNT";
        case Errc::consecutivity: return "CONSECUTIVITY";
        case Errc::not_bijective: return "NOT_BIJECTIVE";
        case Errc::bigon_found: return "BIGON_FOUND";
        case Errc::unsupported_decomposition: return "UNSUPPORTED_DECOMPOSITION";
        case Errc::not_consecutive: return "NOT_CONSECUTIVE";
        case Errc::incompatible_kind: return "INCOMPATIBLE_KIND";
        case Errc::not_in_spiral: return "NOT_IN_SPIRAL";
        case Errc::invalid_site: return "INVALID_SITE";
        case Errc::region_invalid: return "REGION_INVALID";
        case Errc::unsupported: return "UNSUPPORTED";
        case Errc::not_a_path: return "NOT_A_PATH";
        case Errc::misaligned: return "MISALIGNED";
    }
    return "UNKNOWN";
}

}  // namespace curvekit
