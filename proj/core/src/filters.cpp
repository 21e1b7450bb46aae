#include <sharpframe/filters.hpp>

#include <sharpframe/error.hpp>

#include <cmath>
#include <string>

namespace sharpframe {

namespace {

std::string dims(int h, int w) {
    return std::to_string(h) + "x" + std::to_string(w);
}

int map_index(int index, int n, Padding padding) noexcept {
    if (index >= 0 && index < n) return index;
    switch (padding) {
    case Padding::periodic: return wrap_index(index, n);
    case Padding::zero: return -1;
    default: return reflect_index(index, n);
    }
}

// Valid-extent convolution of an already padded image.
GrayImage convolve_valid(const GrayImage& src, const Kernel& kernel) {
    const int kh = kernel.rows();
    const int kw = kernel.cols();
    GrayImage out(src.height() - kh + 1, src.width() - kw + 1);
    for (int i = 0; i < out.height(); ++i) {
        for (int j = 0; j < out.width(); ++j) {
            double acc = 0.0;
            for (int a = 0; a < kh; ++a) {
                const int r = i + kh - 1 - a;
                for (int b = 0; b < kw; ++b) {
                    acc += kernel(a, b) * src(r, j + kw - 1 - b);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

// Sums over k x k windows, valid extent, separably (rows then columns).
GrayImage window_sums(const GrayImage& src, int k) {
    const int h = src.height();
    const int w = src.width();
    GrayImage horizontal(h, w - k + 1);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c + k <= w; ++c) {
            double acc = 0.0;
            for (int t = 0; t < k; ++t) acc += src(r, c + t);
            horizontal(r, c) = acc;
        }
    }
    GrayImage out(h - k + 1, w - k + 1);
    for (int r = 0; r + k <= h; ++r) {
        for (int c = 0; c < out.width(); ++c) {
            double acc = 0.0;
            for (int t = 0; t < k; ++t) acc += horizontal(r + t, c);
            out(r, c) = acc;
        }
    }
    return out;
}

void require_at_least_3x3(const GrayImage& image, const char* op) {
    if (image.height() < 3 || image.width() < 3) {
        throw DimensionError(std::string(op) + ": image must be at least 3x3, got " +
                             dims(image.height(), image.width()));
    }
}

} // namespace

GrayImage pad_image(const GrayImage& image, int top, int bottom, int left, int right, Padding padding) {
    const int h = image.height();
    const int w = image.width();
    GrayImage out(h + top + bottom, w + left + right);
    for (int r = 0; r < out.height(); ++r) {
        const int sr = map_index(r - top, h, padding);
        for (int c = 0; c < out.width(); ++c) {
            const int sc = map_index(c - left, w, padding);
            out(r, c) = (sr < 0 || sc < 0) ? 0.0 : image(sr, sc);
        }
    }
    return out;
}

int reflect_index(int index, int n) noexcept {
    const int period = 2 * n;
    int m = index % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

int wrap_index(int index, int n) noexcept {
    int m = index % n;
    return m < 0 ? m + n : m;
}

GrayImage to_grayscale(const Frame& frame) {
    GrayImage out(frame.height(), frame.width());
    auto src = frame.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const double* px = &src[i * Frame::channels];
        // Blue first: with this order white maps to exactly 1.0.
        dst[i] = 0.114 * px[2] + 0.587 * px[1] + 0.299 * px[0];
    }
    return out;
}

GrayImage convolve2d(const GrayImage& image, const Kernel& kernel, Padding padding) {
    const int kh = kernel.rows();
    const int kw = kernel.cols();
    if (padding == Padding::valid) {
        if (kh > image.height() || kw > image.width()) {
            throw DimensionError("convolve2d: kernel " + dims(kh, kw) + " larger than image " +
                                 dims(image.height(), image.width()) + " with valid padding");
        }
        return convolve_valid(image, kernel);
    }
    const int anchor_r = kh / 2;
    const int anchor_c = kw / 2;
    const GrayImage padded = pad_image(image, kh - 1 - anchor_r, anchor_r, kw - 1 - anchor_c, anchor_c, padding);
    return convolve_valid(padded, kernel);
}

GrayImage lp_pool(const GrayImage& image, int p, int k) {
    if (p != 1 && p != 2) throw ParameterError("lp_pool: p must be 1 or 2, got " + std::to_string(p));
    if (k < 1) throw ParameterError("lp_pool: window must be >= 1, got " + std::to_string(k));
    if (k > image.height() || k > image.width()) {
        throw DimensionError("lp_pool: window " + std::to_string(k) + " larger than image " +
                             dims(image.height(), image.width()));
    }
    GrayImage powered(image.height(), image.width());
    auto src = image.data();
    auto dst = powered.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = p == 1 ? std::abs(src[i]) : src[i] * src[i];
    }
    GrayImage out = window_sums(powered, k);
    const double area = static_cast<double>(k) * k;
    for (double& v : out.data()) {
        v /= area;
        if (p == 2) v = std::sqrt(v);
    }
    return out;
}

GrayImage avg_pool_padded(const GrayImage& image, int k) {
    if (k < 1) throw ParameterError("avg_pool_padded: window must be >= 1, got " + std::to_string(k));
    if (k == 1) return image;
    const int before = k / 2;
    const int after = k - 1 - before;
    GrayImage out = window_sums(pad_image(image, before, after, before, after, Padding::reflect), k);
    const double area = static_cast<double>(k) * k;
    for (double& v : out.data()) v /= area;
    return out;
}

GrayImage sobel_gradient(const GrayImage& image) {
    require_at_least_3x3(image, "sobel_gradient");
    const GrayImage p = pad_image(image, 1, 1, 1, 1, Padding::reflect);
    GrayImage out(image.height(), image.width());
    for (int i = 0; i < out.height(); ++i) {
        for (int j = 0; j < out.width(); ++j) {
            const int r = i + 1;
            const int c = j + 1;
            const double gx = (p(r - 1, c + 1) - p(r - 1, c - 1)) + 2.0 * (p(r, c + 1) - p(r, c - 1)) +
                              (p(r + 1, c + 1) - p(r + 1, c - 1));
            const double gy = (p(r + 1, c - 1) - p(r - 1, c - 1)) + 2.0 * (p(r + 1, c) - p(r - 1, c)) +
                              (p(r + 1, c + 1) - p(r - 1, c + 1));
            out(i, j) = std::sqrt(gx * gx + gy * gy);
        }
    }
    return out;
}

GrayImage laplacian(const GrayImage& image) {
    require_at_least_3x3(image, "laplacian");
    const GrayImage p = pad_image(image, 1, 1, 1, 1, Padding::reflect);
    GrayImage out(image.height(), image.width());
    for (int i = 0; i < out.height(); ++i) {
        for (int j = 0; j < out.width(); ++j) {
            const int r = i + 1;
            const int c = j + 1;
            const double x = p(r, c);
            out(i, j) = (p(r - 1, c) - x) + (p(r + 1, c) - x) + (p(r, c - 1) - x) + (p(r, c + 1) - x);
        }
    }
    return out;
}

Kernel gaussian_psf(int size, double sigma) {
    if (size < 1 || size % 2 == 0) {
        throw ParameterError("gaussian_psf: size must be a positive odd integer, got " + std::to_string(size));
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("gaussian_psf: sigma must be positive, got " + std::to_string(sigma));
    }
    const int half = size / 2;
    std::vector<double> w(static_cast<std::size_t>(size) * size);
    double total = 0.0;
    for (int i = -half; i <= half; ++i) {
        for (int j = -half; j <= half; ++j) {
            const double v = std::exp(-static_cast<double>(i * i + j * j) / (2.0 * sigma * sigma));
            w[static_cast<std::size_t>(i + half) * size + (j + half)] = v;
            total += v;
        }
    }
    for (double& v : w) v /= total;
    return Kernel(size, size, std::move(w));
}

Kernel box_kernel(int k) {
    if (k < 1) throw ParameterError("box_kernel: size must be >= 1");
    const double v = 1.0 / (static_cast<double>(k) * k);
    return Kernel(k, k, std::vector<double>(static_cast<std::size_t>(k) * k, v));
}

} // namespace sharpframe
