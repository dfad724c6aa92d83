#include "krf/pose_fit.hpp"

#include "krf/error.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

namespace krf {

namespace {

// Relative singular-value floor below which a direction counts as absent.
constexpr double kRankTolerance = 1e-10;

}  // namespace

KeypointSet::KeypointSet(std::vector<Vec3> keypoints) : keypoints_(std::move(keypoints)) {
    if (keypoints_.size() < 3) throw InvalidInput("KeypointSet needs at least 3 keypoints");
    for (const auto& k : keypoints_) {
        if (!k.allFinite()) throw InvalidInput("KeypointSet: non-finite keypoint");
    }
}

Vec3 fit_translation(std::span<const Vec3> matched_source, std::span<const Vec3> targets) {
    if (matched_source.empty()) throw InvalidInput("fit_translation: empty input");
    if (matched_source.size() != targets.size()) throw InvalidInput("fit_translation: length mismatch");
    return centroid(targets) - centroid(matched_source);
}

PoseSE3 fit_rigid(std::span<const Vec3> source, std::span<const Vec3> target) {
    if (source.size() != target.size()) throw InvalidInput("fit_rigid: length mismatch");
    if (source.size() < 3) throw InvalidInput("fit_rigid: need at least 3 point pairs");

    const Vec3 cs = centroid(source);
    const Vec3 ct = centroid(target);

    Mat3 h = Mat3::Zero();
    Mat3 spread = Mat3::Zero();
    for (std::size_t i = 0; i < source.size(); ++i) {
        const Vec3 s = source[i] - cs;
        h += s * (target[i] - ct).transpose();
        spread += s * s.transpose();
    }

    const Eigen::JacobiSVD<Mat3> spread_svd(spread);
    const auto& sv = spread_svd.singularValues();
    if (!(sv(0) > 0.0) || sv(1) <= kRankTolerance * sv(0)) {
        throw DegenerateConfiguration("fit_rigid: source points are coincident or collinear");
    }

    const Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& hv = svd.singularValues();
    if (!(hv(0) > 0.0) || hv(1) <= kRankTolerance * hv(0)) {
        throw DegenerateConfiguration("fit_rigid: cross-covariance has rank < 2");
    }

    const Mat3& u = svd.matrixU();
    Mat3 v = svd.matrixV();
    if ((v * u.transpose()).determinant() < 0.0) v.col(2) *= -1.0;
    const Mat3 r = v * u.transpose();

    return {r, ct - r * cs};
}

PoseSE3 fit_rigid(const KeypointSet& source_keypoints, std::span<const Vec3> target_keypoints) {
    return fit_rigid(std::span<const Vec3>(source_keypoints.points()), target_keypoints);
}

}  // namespace krf
