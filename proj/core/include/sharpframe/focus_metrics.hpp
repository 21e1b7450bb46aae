#pragma once

#include <sharpframe/image.hpp>

#include <array>
#include <string_view>

namespace sharpframe {

/// Version of the feature layout below. Bump whenever the metric set or its
/// order changes; feature tables and detector models carry it.
inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr std::size_t kFeatureCount = 6;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "mis3", "gra7", "lap1", "sta3", "dct3", "wav1",
};

/// Metric window size used when none is given.
inline constexpr int kDefaultMetricKernel = 11;

/// Six autofocus measures of one frame, all computed with the same pooling
/// window `kernel_size`.
struct FocusFeatures {
    double mis3 = 0.0;
    double gra7 = 0.0;
    double lap1 = 0.0;
    double sta3 = 0.0;
    double dct3 = 0.0;
    double wav1 = 0.0;
    int kernel_size = kDefaultMetricKernel;

    /// Values in schema order.
    std::array<double, kFeatureCount> values() const noexcept {
        return {mis3, gra7, lap1, sta3, dct3, wav1};
    }
    static FocusFeatures from_values(const std::array<double, kFeatureCount>& v, int kernel_size);

    friend bool operator==(const FocusFeatures&, const FocusFeatures&) = default;
};

// Each metric maps a grayscale image to a non-negative scalar.

/// Image contrast: per-pixel sum of absolute differences to the 3x3
/// neighbourhood (reflect padding), l1-pooled with window k, globally averaged.
double mis3(const GrayImage& image, int k);

/// Tenengrad variance: deviation of the Sobel magnitude from its k x k padded
/// mean, squared, l2-pooled with window k, globally averaged.
double gra7(const GrayImage& image, int k);

/// Energy of Laplacian: squared Laplacian response, l2-pooled, averaged.
double lap1(const GrayImage& image, int k);

/// Gray-level variance: squared deviation from the k x k padded mean,
/// l2-pooled, averaged.
double sta3(const GrayImage& image, int k);

/// Modified DCT: mean absolute response to the 8x8 mask
/// [[1,-1],[-1,1]] (x) ones(4,4), reflect padding.
double dct3(const GrayImage& image);

/// Sum of wavelet coefficients: |HL| + |HH| from one daubechies6 level plus
/// |LH| from the second daubechies10 level, summed over all coefficients.
double wav1(const GrayImage& image);

/// The 8x8 DCT3 mask.
Kernel dct3_mask();

/// Grayscale conversion followed by all six metrics with a shared window.
/// A frame too small for one of the metrics raises DimensionError naming it.
FocusFeatures feature_vector(const Frame& frame, int k = kDefaultMetricKernel);
FocusFeatures feature_vector(const GrayImage& gray, int k = kDefaultMetricKernel);

} // namespace sharpframe
