#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "semrel/errors.hpp"

namespace semrel {

enum class ConcatScheme {
    UV,          // [u; v]
    UVDiff,      // [u; v; |u - v|]
    UVDiffProd,  // [u; v; |u - v|; u * v]
};

constexpr Eigen::Index scheme_blocks(ConcatScheme s) {
    switch (s) {
        case ConcatScheme::UV: return 2;
        case ConcatScheme::UVDiff: return 3;
        case ConcatScheme::UVDiffProd: return 4;
    }
    return 0;
}

/// "uv", "uvd", "uvdp"
std::string_view scheme_flag(ConcatScheme s);
/// "u;v", "u;v;|u-v|", "u;v;|u-v|;u*v"
std::string_view scheme_label(ConcatScheme s);
ConcatScheme parse_scheme(std::string_view flag);

/// Joins two document vectors into a pair vector. The first 2*dim components
/// are always [u; v].
template <typename DerivedU, typename DerivedV>
Eigen::Matrix<typename DerivedU::Scalar, Eigen::Dynamic, 1> concat(
    const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v,
    ConcatScheme scheme) {
    static_assert(DerivedU::IsVectorAtCompileTime && DerivedV::IsVectorAtCompileTime);
    if (u.size() != v.size()) {
        throw ValidationError("concat: dimension mismatch " + std::to_string(u.size()) + " vs " +
                              std::to_string(v.size()));
    }
    const Eigen::Index d = u.size();
    Eigen::Matrix<typename DerivedU::Scalar, Eigen::Dynamic, 1> out(scheme_blocks(scheme) * d);
    out.segment(0, d) = u;
    out.segment(d, d) = v.template cast<typename DerivedU::Scalar>();
    if (scheme != ConcatScheme::UV) {
        out.segment(2 * d, d) = (u - v.template cast<typename DerivedU::Scalar>()).cwiseAbs();
    }
    if (scheme == ConcatScheme::UVDiffProd) {
        out.segment(3 * d, d) = u.cwiseProduct(v.template cast<typename DerivedU::Scalar>());
    }
    return out;
}

/// Column-wise version: U and V hold one document vector per column.
template <typename DerivedU, typename DerivedV>
Eigen::Matrix<typename DerivedU::Scalar, Eigen::Dynamic, Eigen::Dynamic> concat_columns(
    const Eigen::MatrixBase<DerivedU>& U, const Eigen::MatrixBase<DerivedV>& V,
    ConcatScheme scheme) {
    if (U.rows() != V.rows() || U.cols() != V.cols()) {
        throw ValidationError("concat_columns: shape mismatch");
    }
    const Eigen::Index d = U.rows();
    Eigen::Matrix<typename DerivedU::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
        scheme_blocks(scheme) * d, U.cols());
    out.topRows(d) = U;
    out.middleRows(d, d) = V;
    if (scheme != ConcatScheme::UV) out.middleRows(2 * d, d) = (U - V).cwiseAbs();
    if (scheme == ConcatScheme::UVDiffProd) out.middleRows(3 * d, d) = U.cwiseProduct(V);
    return out;
}

}  // namespace semrel
