#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "compact3d/common.hpp"

namespace compact3d {

/// Complex values on interior nodes, x fastest, then y, then z.
///
/// Accessors take 0-based array indices: array index (i, j, l) holds the
/// node with grid indices (i+1, j+1, l+1).
class Field3D {
public:
    Field3D() = default;
    Field3D(int n_x, int n_y, int n_z)
        : n_x_(n_x), n_y_(n_y), n_z_(n_z),
          values_(static_cast<std::size_t>(n_x) * n_y * n_z) {
        if (n_x < 0 || n_y < 0 || n_z < 0) {
            throw std::invalid_argument("Field3D: negative extent");
        }
    }

    int n_x() const noexcept { return n_x_; }
    int n_y() const noexcept { return n_y_; }
    int n_z() const noexcept { return n_z_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t plane_size() const noexcept { return static_cast<std::size_t>(n_x_) * n_y_; }

    std::size_t index(int i, int j, int l) const noexcept {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(n_x_) * (static_cast<std::size_t>(j) +
                                                 static_cast<std::size_t>(n_y_) * l);
    }

    Complex& operator()(int i, int j, int l) noexcept { return values_[index(i, j, l)]; }
    const Complex& operator()(int i, int j, int l) const noexcept { return values_[index(i, j, l)]; }

    std::span<Complex> values() noexcept { return values_; }
    std::span<const Complex> values() const noexcept { return values_; }

    /// Contiguous storage of one z-plane (0-based level).
    std::span<Complex> plane(int l) noexcept {
        return std::span<Complex>(values_).subspan(plane_size() * l, plane_size());
    }
    std::span<const Complex> plane(int l) const noexcept {
        return std::span<const Complex>(values_).subspan(plane_size() * l, plane_size());
    }

    bool same_extents(const Field3D& other) const noexcept {
        return n_x_ == other.n_x_ && n_y_ == other.n_y_ && n_z_ == other.n_z_;
    }

private:
    int n_x_ = 0, n_y_ = 0, n_z_ = 0;
    std::vector<Complex> values_;
};

/// Largest absolute entry-wise difference; throws on extent mismatch.
double max_abs_difference(const Field3D& a, const Field3D& b);

}  // namespace compact3d
