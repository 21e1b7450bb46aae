#pragma once

#include <sharpframe/image.hpp>

#include <span>

namespace sharpframe {

/// Orthogonal Daubechies wavelets, named by vanishing moments
/// (daubechies6 has 12 taps, daubechies10 has 20).
enum class Wavelet {
    daubechies6,
    daubechies10,
};

enum class Extension {
    /// Half-sample symmetric extension; output length floor((n + taps - 1) / 2).
    symmetric,
    /// Circular extension; output length n / 2, even sizes only. Orthonormal,
    /// so energy is preserved and idwt2 inverts it exactly.
    periodic,
};

/// Analysis low-pass filter (decomposition order).
std::span<const double> lowpass_filter(Wavelet wavelet) noexcept;
/// Analysis high-pass filter, the quadrature mirror of lowpass_filter().
std::span<const double> highpass_filter(Wavelet wavelet) noexcept;

/// One level of sub-bands. The first letter names the filter applied along
/// the width, the second along the height: `lh` is low-pass across columns and
/// high-pass down rows, so it responds to horizontal edges.
struct SubBands {
    GrayImage ll;
    GrayImage lh;
    GrayImage hl;
    GrayImage hh;
};

/// Separable 2-D analysis filter bank with downsampling by two. Returns the
/// sub-bands at depth `levels` (1 or 2), recursing on LL.
///
/// Throws DimensionError when an input dimension at some level is below 2
/// (periodic mode additionally needs even sizes at every level).
SubBands dwt2(const GrayImage& image, Wavelet wavelet, int levels = 1,
              Extension extension = Extension::symmetric);

/// Inverse of a single periodic level.
GrayImage idwt2_periodic(const SubBands& bands, Wavelet wavelet);

} // namespace sharpframe
