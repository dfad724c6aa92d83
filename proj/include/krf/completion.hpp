#pragma once

#include "krf/geometry.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <variant>

namespace krf {

/// Densifies a visible object-frame cloud. Implementations return uncolored
/// object-frame points and must be safe to call concurrently.
class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    [[nodiscard]] virtual ColoredPointCloud complete(const ColoredPointCloud& visible_object_frame) const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
    /// False only for the null provider; reported as the "CN" ablation flag.
    [[nodiscard]] virtual bool enabled() const { return true; }
};

class NullCompletion final : public CompletionProvider {
public:
    [[nodiscard]] ColoredPointCloud complete(const ColoredPointCloud& visible_object_frame) const override;
    [[nodiscard]] std::string name() const override { return "null"; }
    [[nodiscard]] bool enabled() const override { return false; }
};

/// Returns a dense cloud loaded once from a PLY file, colors stripped.
class FileCompletion final : public CompletionProvider {
public:
    explicit FileCompletion(const std::filesystem::path& path);
    [[nodiscard]] ColoredPointCloud complete(const ColoredPointCloud& visible_object_frame) const override;
    [[nodiscard]] std::string name() const override { return "file"; }
    [[nodiscard]] const ColoredPointCloud& cloud() const noexcept { return dense_; }

private:
    ColoredPointCloud dense_;
};

/// Reflects the visible points through a plane through the object origin.
/// A heuristic for objects with a mirror symmetry in their canonical frame.
class MirrorCompletion final : public CompletionProvider {
public:
    explicit MirrorCompletion(const Vec3& plane_normal = Vec3::UnitZ());
    [[nodiscard]] ColoredPointCloud complete(const ColoredPointCloud& visible_object_frame) const override;
    [[nodiscard]] std::string name() const override { return "mirror"; }
    [[nodiscard]] const Vec3& normal() const noexcept { return normal_; }

private:
    Vec3 normal_;
};

ColoredPointCloud null_completion(const ColoredPointCloud& visible);
ColoredPointCloud mirror_completion(const ColoredPointCloud& visible, const Vec3& plane_normal);

struct NullKind {};
struct FileKind {
    std::filesystem::path path;
};
struct MirrorKind {
    Vec3 normal = Vec3::UnitZ();
};
using CompletionKind = std::variant<NullKind, FileKind, MirrorKind>;

std::unique_ptr<CompletionProvider> make_provider(const CompletionKind& kind);
std::string kind_name(const CompletionKind& kind);

/// Target cloud for refinement: the visible camera-frame points plus the
/// provider's completion of them, mapped through `init_pose` into the
/// object frame and back.
ColoredPointCloud build_target(const ColoredPointCloud& visible_cam, const PoseSE3& init_pose,
                               const CompletionProvider& provider);

}  // namespace krf
