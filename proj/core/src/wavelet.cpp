#include <sharpframe/wavelet.hpp>

#include <sharpframe/error.hpp>
#include <sharpframe/filters.hpp>

#include <array>
#include <string>
#include <vector>

namespace sharpframe {

namespace {

// Decomposition low-pass coefficients (same ordering as MATLAB wfilters and
// PyWavelets dec_lo).
constexpr std::array<double, 12> kDb6Lo = {
    -0.0010773010853084796, 0.004777257510945511,  0.0005538422011614961,
    -0.03158203931748603,   0.027522865530305727,  0.09750160558732304,
    -0.12976686756726194,   -0.22626469396543983,  0.31525035170919763,
    0.7511339080210954,     0.49462389039845306,   0.11154074335010947,
};

constexpr std::array<double, 20> kDb10Lo = {
    -1.3264202894521244e-05, 9.358867032006959e-05,  -0.00011646685512928545,
    -0.0006858566949597116,  0.001992405295185056,   0.001395351747052901,
    -0.010733175483330575,   0.0036065535669561697,  0.033212674059341,
    -0.029457536821875813,   -0.07139414716639708,   0.09305736460357235,
    0.12736934033579325,     -0.19594627437737705,   -0.24984642432731538,
    0.2811723436605775,      0.6884590394536035,     0.5272011889317256,
    0.1881768000776915,      0.026670057900555554,
};

template <std::size_t N>
constexpr std::array<double, N> quadrature_mirror(const std::array<double, N>& lo) {
    std::array<double, N> hi{};
    for (std::size_t k = 0; k < N; ++k) {
        const double h = lo[N - 1 - k];
        hi[k] = (k % 2 == 0) ? -h : h;
    }
    return hi;
}

constexpr auto kDb6Hi = quadrature_mirror(kDb6Lo);
constexpr auto kDb10Hi = quadrature_mirror(kDb10Lo);

int output_length(int n, int taps, Extension extension) {
    return extension == Extension::periodic ? n / 2 : (n + taps - 1) / 2;
}

int extend(int index, int n, Extension extension) {
    if (index >= 0 && index < n) return index;
    return extension == Extension::periodic ? wrap_index(index, n) : reflect_index(index, n);
}

// Filters every row (along the width) with lo/hi and downsamples.
void analyze_rows(const GrayImage& src, std::span<const double> lo, std::span<const double> hi,
                  Extension extension, GrayImage& low, GrayImage& high) {
    const int n = src.width();
    const int taps = static_cast<int>(lo.size());
    const int out = output_length(n, taps, extension);
    low = GrayImage(src.height(), out);
    high = GrayImage(src.height(), out);
    for (int r = 0; r < src.height(); ++r) {
        for (int i = 0; i < out; ++i) {
            double a = 0.0;
            double d = 0.0;
            for (int k = 0; k < taps; ++k) {
                const double x = src(r, extend(2 * i + 1 - k, n, extension));
                a += lo[k] * x;
                d += hi[k] * x;
            }
            low(r, i) = a;
            high(r, i) = d;
        }
    }
}

void analyze_cols(const GrayImage& src, std::span<const double> lo, std::span<const double> hi,
                  Extension extension, GrayImage& low, GrayImage& high) {
    const int n = src.height();
    const int taps = static_cast<int>(lo.size());
    const int out = output_length(n, taps, extension);
    low = GrayImage(out, src.width());
    high = GrayImage(out, src.width());
    for (int i = 0; i < out; ++i) {
        for (int c = 0; c < src.width(); ++c) {
            double a = 0.0;
            double d = 0.0;
            for (int k = 0; k < taps; ++k) {
                const double x = src(extend(2 * i + 1 - k, n, extension), c);
                a += lo[k] * x;
                d += hi[k] * x;
            }
            low(i, c) = a;
            high(i, c) = d;
        }
    }
}

SubBands analyze(const GrayImage& image, Wavelet wavelet, Extension extension) {
    const int h = image.height();
    const int w = image.width();
    if (h < 2 || w < 2) {
        throw DimensionError("dwt2: image " + std::to_string(h) + "x" + std::to_string(w) +
                             " too small for another decomposition level");
    }
    if (extension == Extension::periodic && (h % 2 != 0 || w % 2 != 0)) {
        throw DimensionError("dwt2: periodic extension needs even dimensions");
    }
    const auto lo = lowpass_filter(wavelet);
    const auto hi = highpass_filter(wavelet);
    GrayImage row_low;
    GrayImage row_high;
    analyze_rows(image, lo, hi, extension, row_low, row_high);
    SubBands bands;
    analyze_cols(row_low, lo, hi, extension, bands.ll, bands.lh);
    analyze_cols(row_high, lo, hi, extension, bands.hl, bands.hh);
    return bands;
}

} // namespace

std::span<const double> lowpass_filter(Wavelet wavelet) noexcept {
    return wavelet == Wavelet::daubechies6 ? std::span<const double>(kDb6Lo)
                                           : std::span<const double>(kDb10Lo);
}

std::span<const double> highpass_filter(Wavelet wavelet) noexcept {
    return wavelet == Wavelet::daubechies6 ? std::span<const double>(kDb6Hi)
                                           : std::span<const double>(kDb10Hi);
}

SubBands dwt2(const GrayImage& image, Wavelet wavelet, int levels, Extension extension) {
    if (levels != 1 && levels != 2) {
        throw ParameterError("dwt2: levels must be 1 or 2, got " + std::to_string(levels));
    }
    SubBands bands = analyze(image, wavelet, extension);
    if (levels == 2) bands = analyze(bands.ll, wavelet, extension);
    return bands;
}

GrayImage idwt2_periodic(const SubBands& bands, Wavelet wavelet) {
    const int h2 = bands.ll.height();
    const int w2 = bands.ll.width();
    for (const GrayImage* b : {&bands.lh, &bands.hl, &bands.hh}) {
        if (b->height() != h2 || b->width() != w2) {
            throw DimensionError("idwt2_periodic: sub-band sizes differ");
        }
    }
    const auto lo = lowpass_filter(wavelet);
    const auto hi = highpass_filter(wavelet);
    const int taps = static_cast<int>(lo.size());
    const int h = 2 * h2;
    const int w = 2 * w2;

    // The periodic analysis operator is orthonormal, so its transpose inverts it.
    auto synth_cols = [&](const GrayImage& low, const GrayImage& high) {
        GrayImage out(h, w2);
        for (int i = 0; i < h2; ++i) {
            for (int k = 0; k < taps; ++k) {
                const int r = wrap_index(2 * i + 1 - k, h);
                for (int c = 0; c < w2; ++c) out(r, c) += lo[k] * low(i, c) + hi[k] * high(i, c);
            }
        }
        return out;
    };
    const GrayImage row_low = synth_cols(bands.ll, bands.lh);
    const GrayImage row_high = synth_cols(bands.hl, bands.hh);

    GrayImage out(h, w);
    for (int r = 0; r < h; ++r) {
        for (int i = 0; i < w2; ++i) {
            for (int k = 0; k < taps; ++k) {
                out(r, wrap_index(2 * i + 1 - k, w)) += lo[k] * row_low(r, i) + hi[k] * row_high(r, i);
            }
        }
    }
    return out;
}

} // namespace sharpframe
