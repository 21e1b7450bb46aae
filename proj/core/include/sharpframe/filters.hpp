#pragma once

#include <sharpframe/image.hpp>

namespace sharpframe {

/// Boundary handling for neighbourhood operations.
///
/// `reflect` mirrors about the image border, repeating the edge sample
/// (... 1 0 | 0 1 2 ...). `periodic` wraps around and is meant for tests that
/// need exact conservation laws.
enum class Padding {
    reflect,
    zero,
    valid,
    periodic,
};

/// Maps an out-of-range index into [0, n) by half-sample reflection.
int reflect_index(int index, int n) noexcept;
/// Maps an out-of-range index into [0, n) by wrapping.
int wrap_index(int index, int n) noexcept;

/// Copies `image` into a larger canvas with the given margins filled per
/// `padding` (`valid` is treated as `reflect`, `zero` writes zeros).
GrayImage pad_image(const GrayImage& image, int top, int bottom, int left, int right, Padding padding);

/// BT.601 luma: 0.299 R + 0.587 G + 0.114 B.
GrayImage to_grayscale(const Frame& frame);

/// Discrete 2-D convolution (the kernel is flipped).
///
/// For an even kernel dimension the anchor sits at index size/2, so `same`
/// style paddings keep the input size. `valid` shrinks the output by
/// (rows - 1, cols - 1) and throws DimensionError when the kernel does not fit.
GrayImage convolve2d(const GrayImage& image, const Kernel& kernel, Padding padding);

/// lp-pooling with a k x k window, stride 1 and valid extent:
/// out = ((1/k^2) * sum |x|^p)^(1/p). Only p = 1 and p = 2 are supported.
GrayImage lp_pool(const GrayImage& image, int p, int k);

/// Sliding k x k mean with reflect padding; output keeps the input size.
/// Even windows cover offsets [-k/2, k/2 - 1].
GrayImage avg_pool_padded(const GrayImage& image, int k);

/// Sobel gradient magnitude sqrt(Gx^2 + Gy^2), reflect padding.
GrayImage sobel_gradient(const GrayImage& image);

/// 4-neighbour Laplacian [[0,1,0],[1,-4,1],[0,1,0]], reflect padding.
GrayImage laplacian(const GrayImage& image);

/// Sampled isotropic Gaussian normalised to unit sum.
Kernel gaussian_psf(int size, double sigma);

/// Uniform k x k averaging kernel.
Kernel box_kernel(int k);

} // namespace sharpframe
