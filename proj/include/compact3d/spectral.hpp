#pragma once

#include <memory>
#include <span>
#include <vector>

#include "compact3d/field.hpp"

namespace compact3d {

/// Orthonormal type-I discrete sine transform of an n_x x n_y plane
/// (x fastest). The transform is its own inverse.
///
/// Construction goes through the FFT planner and is serialized internally;
/// a constructed plan may be executed concurrently on disjoint data.
class TransformPlan {
public:
    TransformPlan(int n_x, int n_y);
    ~TransformPlan();
    TransformPlan(TransformPlan&&) noexcept;
    TransformPlan& operator=(TransformPlan&&) noexcept;
    TransformPlan(const TransformPlan&) = delete;
    TransformPlan& operator=(const TransformPlan&) = delete;

    int n_x() const noexcept { return n_x_; }
    int n_y() const noexcept { return n_y_; }

    /// In-place 2D transform of one plane.
    void plane(std::span<Complex> data) const;
    /// In-place 1D transform along x of the contiguous line at `line`.
    void x_line(Complex* line) const;
    /// In-place 1D transform along y of the line starting at `first`
    /// with element stride n_x.
    void y_line(Complex* first) const;

private:
    struct Impl;
    int n_x_ = 0;
    int n_y_ = 0;
    std::unique_ptr<Impl> impl_;
};

TransformPlan make_plan(int n_x, int n_y);

/// In-place 2D transform. Throws std::invalid_argument on extent mismatch.
void dst2d(const TransformPlan& plan, std::span<Complex> plane);

/// Transforms 0-based planes [l_begin, l_end) of `field`; others untouched.
void transform_stack(const TransformPlan& plan, Field3D& field, int l_begin, int l_end);

/// Batched 1D passes over a stack of planes stored contiguously in `slab`.
/// x-lines are numbered plane-major (line k is row k % n_y of plane
/// k / n_y); y-lines likewise (column k % n_x of plane k / n_x).
void transform_x_lines(const TransformPlan& plan, std::span<Complex> slab, int first, int last);
void transform_y_lines(const TransformPlan& plan, std::span<Complex> slab, int first, int last);

/// Direct O(n^2) orthonormal DST-I, for cross-validation.
std::vector<Complex> dst1d_reference(std::span<const Complex> x);
std::vector<Complex> dst2d_reference(int n_x, int n_y, std::span<const Complex> plane);

}  // namespace compact3d
