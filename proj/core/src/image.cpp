#include <sharpframe/image.hpp>

#include <sharpframe/error.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sharpframe {

namespace {

void require_positive_dims(int height, int width, const char* what) {
    if (height < 1 || width < 1) {
        throw DimensionError(std::string(what) + ": dimensions must be at least 1x1, got " +
                             std::to_string(height) + "x" + std::to_string(width));
    }
}

} // namespace

Frame::Frame(int height, int width)
    : height_(height), width_(width) {
    require_positive_dims(height, width, "Frame");
    data_.assign(static_cast<std::size_t>(height) * width * channels, 0.0);
}

Frame::Frame(int height, int width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
    require_positive_dims(height, width, "Frame");
    if (data_.size() != static_cast<std::size_t>(height) * width * channels) {
        throw DimensionError("Frame: expected " +
                             std::to_string(static_cast<std::size_t>(height) * width * channels) +
                             " samples, got " + std::to_string(data_.size()));
    }
    validate();
}

void Frame::validate() const {
    for (double v : data_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("Frame: sample outside [0,1]: " + std::to_string(v));
        }
    }
}

GrayImage::GrayImage(int height, int width, double fill)
    : height_(height), width_(width) {
    require_positive_dims(height, width, "GrayImage");
    data_.assign(static_cast<std::size_t>(height) * width, fill);
}

GrayImage::GrayImage(int height, int width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
    require_positive_dims(height, width, "GrayImage");
    if (data_.size() != static_cast<std::size_t>(height) * width) {
        throw DimensionError("GrayImage: expected " +
                             std::to_string(static_cast<std::size_t>(height) * width) +
                             " samples, got " + std::to_string(data_.size()));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw InputError("GrayImage: non-finite sample");
    }
}

Kernel::Kernel(int rows, int cols, std::vector<double> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
    require_positive_dims(rows, cols, "Kernel");
    if (weights_.size() != static_cast<std::size_t>(rows) * cols) {
        throw DimensionError("Kernel: weight count does not match " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
    for (double w : weights_) {
        if (!std::isfinite(w)) throw ParameterError("Kernel: non-finite weight");
    }
}

double Kernel::sum() const noexcept {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool Kernel::is_normalized(double tolerance) const noexcept {
    return std::abs(sum() - 1.0) <= tolerance;
}

Kernel Kernel::flipped() const {
    std::vector<double> w(weights_.rbegin(), weights_.rend());
    return Kernel(rows_, cols_, std::move(w));
}

GrayImage extract_channel(const Frame& frame, int channel) {
    GrayImage out(frame.height(), frame.width());
    auto src = frame.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = src[i * Frame::channels + channel];
    }
    return out;
}

Frame merge_channels(const GrayImage& red, const GrayImage& green, const GrayImage& blue) {
    if (!red.same_shape(green) || !red.same_shape(blue)) {
        throw DimensionError("merge_channels: planes differ in size");
    }
    std::vector<double> data(red.size() * Frame::channels);
    const GrayImage* planes[] = {&red, &green, &blue};
    for (int c = 0; c < Frame::channels; ++c) {
        auto src = planes[c]->data();
        for (std::size_t i = 0; i < src.size(); ++i) {
            data[i * Frame::channels + c] = std::clamp(src[i], 0.0, 1.0);
        }
    }
    return Frame(red.height(), red.width(), std::move(data));
}

void clamp_unit(std::span<double> data) noexcept {
    for (double& v : data) v = std::clamp(v, 0.0, 1.0);
}

} // namespace sharpframe
