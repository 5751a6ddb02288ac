#pragma once

#include <stdexcept>
#include <string>

namespace curvekit {

enum class Errc {
    syntax,
    length_mismatch,
    label_count,
    consecutivity,
    not_bijective,
    bigon_found,
    unsupported_decomposition,
    not_consecutive,
    incompatible_kind,
    not_in_spiral,
    invalid_site,
    region_invalid,
    unsupported,
    not_a_path,
    misaligned,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace curvekit
