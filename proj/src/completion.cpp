#include "krf/completion.hpp"

#include "krf/error.hpp"
#include "krf/ply.hpp"

#include <cmath>
#include <iostream>

namespace krf {

ColoredPointCloud null_completion(const ColoredPointCloud&) {
    return ColoredPointCloud{{}, Frame::object};
}

ColoredPointCloud mirror_completion(const ColoredPointCloud& visible, const Vec3& plane_normal) {
    const double n = plane_normal.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("mirror_completion: plane normal must be non-zero");
    const Vec3 unit = plane_normal / n;
    ColoredPointCloud out;
    out.frame = Frame::object;
    out.points.reserve(visible.size());
    for (const auto& p : visible.points) {
        out.points.push_back({p.position - 2.0 * unit.dot(p.position) * unit, std::nullopt});
    }
    return out;
}

ColoredPointCloud NullCompletion::complete(const ColoredPointCloud& visible_object_frame) const {
    return null_completion(visible_object_frame);
}

FileCompletion::FileCompletion(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw IoError("completion file not found: " + path.string());
    dense_ = ply_read(path);
    if (dense_.empty()) throw IoError("completion file has no points: " + path.string());
    bool had_color = false;
    for (auto& p : dense_.points) {
        had_color = had_color || p.colored();
        p.color.reset();
    }
    if (had_color) std::cerr << "warning: dropping colors from completion file " << path.string() << '\n';
    dense_.frame = Frame::object;
}

ColoredPointCloud FileCompletion::complete(const ColoredPointCloud&) const { return dense_; }

MirrorCompletion::MirrorCompletion(const Vec3& plane_normal) : normal_(plane_normal) {
    if (!(plane_normal.norm() > 0.0)) throw InvalidInput("MirrorCompletion: plane normal must be non-zero");
}

ColoredPointCloud MirrorCompletion::complete(const ColoredPointCloud& visible_object_frame) const {
    return mirror_completion(visible_object_frame, normal_);
}

std::unique_ptr<CompletionProvider> make_provider(const CompletionKind& kind) {
    struct Visitor {
        std::unique_ptr<CompletionProvider> operator()(const NullKind&) const { return std::make_unique<NullCompletion>(); }
        std::unique_ptr<CompletionProvider> operator()(const FileKind& f) const {
            return std::make_unique<FileCompletion>(f.path);
        }
        std::unique_ptr<CompletionProvider> operator()(const MirrorKind& m) const {
            return std::make_unique<MirrorCompletion>(m.normal);
        }
    };
    return std::visit(Visitor{}, kind);
}

std::string kind_name(const CompletionKind& kind) {
    switch (kind.index()) {
        case 0: return "null";
        case 1: return "file";
        default: return "mirror";
    }
}

ColoredPointCloud build_target(const ColoredPointCloud& visible_cam, const PoseSE3& init_pose,
                               const CompletionProvider& provider) {
    if (visible_cam.empty()) throw InvalidInput("build_target: empty visible cloud");
    ColoredPointCloud target = visible_cam;
    target.frame = Frame::camera;

    ColoredPointCloud completed = provider.complete(to_object_frame(init_pose, visible_cam));
    if (completed.empty()) return target;
    completed.frame = Frame::object;
    for (auto& p : completed.points) p.color.reset();
    const ColoredPointCloud completed_cam = apply_pose(init_pose, completed);
    target.points.insert(target.points.end(), completed_cam.points.begin(), completed_cam.points.end());
    return target;
}

}  // namespace krf
