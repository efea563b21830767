#include "semrel/concat.hpp"

#include <string>

namespace semrel {

std::string_view scheme_flag(ConcatScheme s) {
    switch (s) {
        case ConcatScheme::UV: return "uv";
        case ConcatScheme::UVDiff: return "uvd";
        case ConcatScheme::UVDiffProd: return "uvdp";
    }
    return "?";
}

std::string_view scheme_label(ConcatScheme s) {
    switch (s) {
        case ConcatScheme::UV: return "u;v";
        case ConcatScheme::UVDiff: return "u;v;|u-v|";
        case ConcatScheme::UVDiffProd: return "u;v;|u-v|;u*v";
    }
    return "?";
}

ConcatScheme parse_scheme(std::string_view flag) {
    for (auto s : {ConcatScheme::UV, ConcatScheme::UVDiff, ConcatScheme::UVDiffProd}) {
        if (flag == scheme_flag(s) || flag == scheme_label(s)) return s;
    }
    throw ValidationError("unknown concatenation scheme '" + std::string(flag) +
                          "' (expected uv, uvd or uvdp)");
}

}  // namespace semrel
