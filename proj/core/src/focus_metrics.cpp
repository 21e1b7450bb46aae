#include <sharpframe/focus_metrics.hpp>

#include <sharpframe/error.hpp>
#include <sharpframe/filters.hpp>
#include <sharpframe/wavelet.hpp>

#include <cmath>
#include <numeric>
#include <string>

namespace sharpframe {

namespace {

double global_mean(const GrayImage& image) {
    auto d = image.data();
    return std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
}

double abs_sum(const GrayImage& image) {
    double acc = 0.0;
    for (double v : image.data()) acc += std::abs(v);
    return acc;
}

GrayImage squared(GrayImage image) {
    for (double& v : image.data()) v *= v;
    return image;
}

void require_min_size(const GrayImage& image, int min_side, const char* metric) {
    if (image.height() < min_side || image.width() < min_side) {
        throw DimensionError(std::string(metric) + ": image " + std::to_string(image.height()) + "x" +
                             std::to_string(image.width()) + " smaller than " + std::to_string(min_side) +
                             "x" + std::to_string(min_side));
    }
}

} // namespace

FocusFeatures FocusFeatures::from_values(const std::array<double, kFeatureCount>& v, int kernel_size) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], kernel_size};
}

double mis3(const GrayImage& image, int k) {
    require_min_size(image, 3, "mis3");
    const int h = image.height();
    const int w = image.width();
    GrayImage contrast(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double centre = image(r, c);
            double acc = 0.0;
            for (int dr = -1; dr <= 1; ++dr) {
                const int rr = reflect_index(r + dr, h);
                for (int dc = -1; dc <= 1; ++dc) {
                    acc += std::abs(centre - image(rr, reflect_index(c + dc, w)));
                }
            }
            contrast(r, c) = acc;
        }
    }
    return global_mean(lp_pool(contrast, 1, k));
}

double gra7(const GrayImage& image, int k) {
    const GrayImage gradient = sobel_gradient(image);
    const GrayImage local_mean = avg_pool_padded(gradient, k);
    GrayImage deviation(gradient.height(), gradient.width());
    auto g = gradient.data();
    auto m = local_mean.data();
    auto d = deviation.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double diff = g[i] - m[i];
        d[i] = diff * diff;
    }
    return global_mean(lp_pool(deviation, 2, k));
}

double lap1(const GrayImage& image, int k) {
    return global_mean(lp_pool(squared(laplacian(image)), 2, k));
}

double sta3(const GrayImage& image, int k) {
    const GrayImage local_mean = avg_pool_padded(image, k);
    GrayImage deviation(image.height(), image.width());
    auto x = image.data();
    auto m = local_mean.data();
    auto d = deviation.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double diff = x[i] - m[i];
        d[i] = diff * diff;
    }
    return global_mean(lp_pool(deviation, 2, k));
}

Kernel dct3_mask() {
    std::vector<double> w(64);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            w[r * 8 + c] = ((r < 4) == (c < 4)) ? 1.0 : -1.0;
        }
    }
    return Kernel(8, 8, std::move(w));
}

double dct3(const GrayImage& image) {
    require_min_size(image, 8, "dct3");
    const GrayImage response = convolve2d(image, dct3_mask(), Padding::reflect);
    return abs_sum(response) / static_cast<double>(response.size());
}

double wav1(const GrayImage& image) {
    const SubBands fine = dwt2(image, Wavelet::daubechies6, 1);
    const SubBands coarse = dwt2(image, Wavelet::daubechies10, 2);
    return abs_sum(fine.hl) + abs_sum(fine.hh) + abs_sum(coarse.lh);
}

FocusFeatures feature_vector(const Frame& frame, int k) {
    return feature_vector(to_grayscale(frame), k);
}

FocusFeatures feature_vector(const GrayImage& gray, int k) {
    if (k < 1) throw ParameterError("feature_vector: kernel size must be >= 1, got " + std::to_string(k));
    FocusFeatures f;
    f.kernel_size = k;
    auto run = [](const char* name, auto&& metric) {
        try {
            return metric();
        } catch (const DimensionError& e) {
            throw DimensionError(std::string("feature_vector: ") + name + ": " + e.what());
        }
    };
    f.mis3 = run("mis3", [&] { return mis3(gray, k); });
    f.gra7 = run("gra7", [&] { return gra7(gray, k); });
    f.lap1 = run("lap1", [&] { return lap1(gray, k); });
    f.sta3 = run("sta3", [&] { return sta3(gray, k); });
    f.dct3 = run("dct3", [&] { return dct3(gray); });
    f.wav1 = run("wav1", [&] { return wav1(gray); });
    return f;
}

} // namespace sharpframe
