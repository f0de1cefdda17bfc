#include "compact3d/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace compact3d {

namespace {

// The FFTW planner keeps global state.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

constexpr unsigned plan_flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace

// All plans treat complex data as interleaved (re, im) doubles: two real
// transforms with element stride 2, one starting at the real part and one
// at the imaginary part.
struct TransformPlan::Impl {
    fftw_plan plane = nullptr;
    fftw_plan x_line = nullptr;
    fftw_plan y_line = nullptr;
    double plane_scale = 1.0;
    double x_scale = 1.0;
    double y_scale = 1.0;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        for (fftw_plan p : {plane, x_line, y_line}) {
            if (p != nullptr) fftw_destroy_plan(p);
        }
    }
};

TransformPlan::TransformPlan(int n_x, int n_y) : n_x_(n_x), n_y_(n_y) {
    if (n_x < 1 || n_y < 1) {
        throw std::invalid_argument("TransformPlan: extents must be positive");
    }
    impl_ = std::make_unique<Impl>();
    // RODFT00 of size n computes 2 * sum x_j sin(pi (j+1)(k+1)/(n+1)).
    impl_->x_scale = 1.0 / std::sqrt(2.0 * (n_x + 1));
    impl_->y_scale = 1.0 / std::sqrt(2.0 * (n_y + 1));
    impl_->plane_scale = impl_->x_scale * impl_->y_scale;

    std::vector<double> scratch(2 * static_cast<std::size_t>(n_x) * n_y);
    const fftw_r2r_kind kinds[2] = {FFTW_RODFT00, FFTW_RODFT00};
    const int plane_dims[2] = {n_y, n_x};
    const int x_dims[1] = {n_x};
    const int y_dims[1] = {n_y};

    std::lock_guard lock(planner_mutex());
    impl_->plane = fftw_plan_many_r2r(2, plane_dims, 2, scratch.data(), nullptr, 2, 1,
                                      scratch.data(), nullptr, 2, 1, kinds, plan_flags);
    impl_->x_line = fftw_plan_many_r2r(1, x_dims, 2, scratch.data(), nullptr, 2, 1,
                                       scratch.data(), nullptr, 2, 1, kinds, plan_flags);
    impl_->y_line = fftw_plan_many_r2r(1, y_dims, 2, scratch.data(), nullptr, 2 * n_x, 1,
                                       scratch.data(), nullptr, 2 * n_x, 1, kinds, plan_flags);
    if (impl_->plane == nullptr || impl_->x_line == nullptr || impl_->y_line == nullptr) {
        throw std::runtime_error("FFTW failed to create a DST-I plan");
    }
}

TransformPlan::~TransformPlan() = default;
TransformPlan::TransformPlan(TransformPlan&&) noexcept = default;
TransformPlan& TransformPlan::operator=(TransformPlan&&) noexcept = default;

void TransformPlan::plane(std::span<Complex> data) const {
    auto* raw = reinterpret_cast<double*>(data.data());
    fftw_execute_r2r(impl_->plane, raw, raw);
    const double s = impl_->plane_scale;
    for (auto& v : data) v *= s;
}

void TransformPlan::x_line(Complex* line) const {
    auto* raw = reinterpret_cast<double*>(line);
    fftw_execute_r2r(impl_->x_line, raw, raw);
    const double s = impl_->x_scale;
    for (int i = 0; i < n_x_; ++i) line[i] *= s;
}

void TransformPlan::y_line(Complex* first) const {
    auto* raw = reinterpret_cast<double*>(first);
    fftw_execute_r2r(impl_->y_line, raw, raw);
    const double s = impl_->y_scale;
    for (int j = 0; j < n_y_; ++j) first[static_cast<std::size_t>(j) * n_x_] *= s;
}

TransformPlan make_plan(int n_x, int n_y) { return TransformPlan(n_x, n_y); }

void dst2d(const TransformPlan& plan, std::span<Complex> plane) {
    if (plane.size() != static_cast<std::size_t>(plan.n_x()) * plan.n_y()) {
        throw std::invalid_argument("dst2d: plane size " + std::to_string(plane.size()) +
                                    " does not match plan " + std::to_string(plan.n_x()) + "x" +
                                    std::to_string(plan.n_y()));
    }
    plan.plane(plane);
}

void transform_stack(const TransformPlan& plan, Field3D& field, int l_begin, int l_end) {
    if (field.n_x() != plan.n_x() || field.n_y() != plan.n_y()) {
        throw std::invalid_argument("transform_stack: field extents do not match plan");
    }
    if (l_begin < 0 || l_end > field.n_z()) {
        throw std::out_of_range("transform_stack: plane range outside the field");
    }
    for (int l = l_begin; l < l_end; ++l) plan.plane(field.plane(l));
}

void transform_x_lines(const TransformPlan& plan, std::span<Complex> slab, int first, int last) {
    const std::size_t nx = plan.n_x();
    for (int k = first; k < last; ++k) plan.x_line(slab.data() + nx * k);
}

void transform_y_lines(const TransformPlan& plan, std::span<Complex> slab, int first, int last) {
    const std::size_t nx = plan.n_x();
    const std::size_t plane = nx * plan.n_y();
    for (int k = first; k < last; ++k) {
        const std::size_t p = static_cast<std::size_t>(k) / nx;
        const std::size_t col = static_cast<std::size_t>(k) % nx;
        plan.y_line(slab.data() + p * plane + col);
    }
}

std::vector<Complex> dst1d_reference(std::span<const Complex> x) {
    const std::size_t n = x.size();
    const double scale = std::sqrt(2.0 / (n + 1));
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) {
            acc += x[j] * std::sin(std::numbers::pi * (j + 1) * (k + 1) / (n + 1));
        }
        out[k] = scale * acc;
    }
    return out;
}

std::vector<Complex> dst2d_reference(int n_x, int n_y, std::span<const Complex> plane) {
    if (plane.size() != static_cast<std::size_t>(n_x) * n_y) {
        throw std::invalid_argument("dst2d_reference: size mismatch");
    }
    std::vector<Complex> tmp(plane.begin(), plane.end());
    std::vector<Complex> line;
    for (int j = 0; j < n_y; ++j) {
        auto row = std::span<Complex>(tmp).subspan(static_cast<std::size_t>(j) * n_x, n_x);
        line = dst1d_reference(row);
        std::copy(line.begin(), line.end(), row.begin());
    }
    std::vector<Complex> col(n_y);
    for (int i = 0; i < n_x; ++i) {
        for (int j = 0; j < n_y; ++j) col[j] = tmp[static_cast<std::size_t>(j) * n_x + i];
        line = dst1d_reference(col);
        for (int j = 0; j < n_y; ++j) tmp[static_cast<std::size_t>(j) * n_x + i] = line[j];
    }
    return tmp;
}

}  // namespace compact3d
