#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sharpframe {

/// RGB frame with interleaved, row-major samples in [0, 1].
///
/// The validating constructor enforces the value range. Mutable access
/// through at()/data() does not re-check it; writers clamp on the way out
/// and validate() can be called after in-place edits.
class Frame {
public:
    static constexpr int channels = 3;

    Frame() = default;
    /// Black frame of the given size.
    Frame(int height, int width);
    /// Takes ownership of `data` (height * width * 3 samples) after validation.
    Frame(int height, int width, std::vector<double> data);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    bool empty() const noexcept { return data_.empty(); }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(height_) * width_; }

    double& at(int row, int col, int channel) noexcept {
        return data_[(static_cast<std::size_t>(row) * width_ + col) * channels + channel];
    }
    double at(int row, int col, int channel) const noexcept {
        return data_[(static_cast<std::size_t>(row) * width_ + col) * channels + channel];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    /// Throws InputError if any sample is outside [0, 1] or not finite.
    void validate() const;

    bool same_shape(const Frame& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_;
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<double> data_;
};

/// Single-channel real image. Values are unconstrained (filter responses may
/// be negative or exceed 1) but must stay finite.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int height, int width, double fill = 0.0);
    GrayImage(int height, int width, std::vector<double> data);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(int row, int col) noexcept {
        return data_[static_cast<std::size_t>(row) * width_ + col];
    }
    double operator()(int row, int col) const noexcept {
        return data_[static_cast<std::size_t>(row) * width_ + col];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const GrayImage& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<double> data_;
};

/// Rectangular filter mask, row-major.
class Kernel {
public:
    Kernel() = default;
    Kernel(int rows, int cols, std::vector<double> weights);

    static Kernel identity() { return Kernel(1, 1, {1.0}); }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double operator()(int row, int col) const noexcept {
        return weights_[static_cast<std::size_t>(row) * cols_ + col];
    }
    std::span<const double> weights() const noexcept { return weights_; }

    double sum() const noexcept;
    /// Point-spread functions must sum to one within 1e-9.
    bool is_normalized(double tolerance = 1e-9) const noexcept;
    /// Kernel rotated by 180 degrees.
    Kernel flipped() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> weights_;
};

/// Splits channel `channel` of a frame into a GrayImage.
GrayImage extract_channel(const Frame& frame, int channel);

/// Assembles three equally sized planes into a frame, clamping to [0, 1].
Frame merge_channels(const GrayImage& red, const GrayImage& green, const GrayImage& blue);

/// Clamps every sample of `data` into [0, 1].
void clamp_unit(std::span<double> data) noexcept;

} // namespace sharpframe
