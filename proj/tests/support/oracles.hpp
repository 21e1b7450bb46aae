#pragma once

// Slow, direct reference implementations used to check the library. They
// follow the textbook definitions and share no code with sharpframe beyond
// the image containers.

#include <sharpframe/image.hpp>

#include <span>
#include <vector>

namespace sharpframe::oracle {

/// Half-sample symmetric index by repeated folding.
int mirror(int index, int n);

enum class Border { reflect, zero, valid };

/// out(i, j) = sum_ab K(a, b) I(i + kh/2 - a, j + kw/2 - b); for `valid`,
/// only positions where the flipped kernel lies inside the image.
GrayImage convolve(const GrayImage& image, const Kernel& kernel, Border border);

GrayImage lp_pool(const GrayImage& image, int p, int k);
GrayImage avg_pool(const GrayImage& image, int k);
GrayImage sobel(const GrayImage& image);
GrayImage laplacian(const GrayImage& image);
GrayImage grayscale(const Frame& frame);

double mean(const GrayImage& image);

double mis3(const GrayImage& image, int k);
double gra7(const GrayImage& image, int k);
double lap1(const GrayImage& image, int k);
double sta3(const GrayImage& image, int k);
double dct3(const GrayImage& image);

/// One level of a 1-D analysis filter with symmetric extension, built from an
/// explicitly extended signal and a full convolution.
std::vector<double> analysis_1d(std::span<const double> signal, std::span<const double> filter);

double psnr(const Frame& a, const Frame& b);
/// Two-pass SSIM (means first, then central moments).
double ssim(const Frame& a, const Frame& b);

/// Plain gradient descent on the standardised logistic loss.
struct LogisticFit {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> means;
    std::vector<double> stds;
};
LogisticFit logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y, double l2, double lr,
                     int iterations);
double logistic_probability(const LogisticFit& fit, const std::vector<double>& x);

} // namespace sharpframe::oracle
