#pragma once

#include <sharpframe/image.hpp>
#include <sharpframe/label.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace sharpframe {

/// Windows of at most this many source frames produce sharp frames.
inline constexpr int kMaxSharpWindow = 5;

using Rng = std::mt19937_64;

struct SynthConfig {
    /// Target probability that a window is sharp, in [0, 0.5].
    double ratio = 0.5;
    std::vector<int> sharp_windows = {1, 2, 3, 4, 5};
    std::vector<int> blur_windows = {7, 8, 9, 10, 11, 12, 13};
    std::uint64_t seed = 0;

    /// Throws ParameterError unless 0 <= ratio <= 0.5, sharp windows lie in
    /// [1, 5], blur windows in [6, 15], and both sets are non-empty.
    void validate() const;
};

/// Blur frames x, labels l and ground truths g built from a high-frame-rate
/// sequence by averaging consecutive, non-overlapping windows.
struct LabeledBlurVideo {
    std::vector<Frame> blur_frames;
    std::vector<FrameLabel> labels;
    std::vector<Frame> ground_truths;
    std::vector<int> windows;
    std::vector<std::size_t> offsets;
    std::size_t source_length = 0;

    std::size_t size() const noexcept { return windows.size(); }
};

/// Draws window lengths until the next draw would overflow `length` source
/// frames. Each draw picks the sharp set with probability `ratio`, then a
/// window uniformly from the chosen set.
///
/// Throws InputError when `length` is below every admissible window.
std::vector<int> sample_windows(std::size_t length, const SynthConfig& config, Rng& rng);

/// Random access to a source sequence, so long sequences need not be held in
/// memory.
struct FrameSource {
    std::size_t length = 0;
    std::function<Frame(std::size_t)> frame;
};

/// Receives blur frame x_j, ground truth g_j and the window index j.
using SynthSink = std::function<void(std::size_t j, Frame&& blur, Frame&& ground_truth)>;

/// Core averaging step for a fixed window vector. Throws InputError if the
/// windows do not fit into the source or a window is not positive.
void synthesize_streaming(const FrameSource& source, std::span<const int> windows, const SynthSink& sink);

/// x_j = mean of v[o_j .. o_j + w_j - 1], l_j = (w_j <= 5),
/// g_j = v[o_j + w_j / 2], with o_j the running window sum.
LabeledBlurVideo synthesize_with_windows(std::span<const Frame> source, std::span<const int> windows);

LabeledBlurVideo synthesize(std::span<const Frame> source, const SynthConfig& config, Rng& rng);
/// Seeds the generator from config.seed.
LabeledBlurVideo synthesize(std::span<const Frame> source, const SynthConfig& config);

/// Label and offset bookkeeping shared by every synthesis path.
std::vector<FrameLabel> labels_for_windows(std::span<const int> windows);
std::vector<std::size_t> offsets_for_windows(std::span<const int> windows);

/// Fraction of sharp labels. Throws InputError on an empty sequence.
double measured_ratio(LabelSpan labels);
double measured_ratio(const LabeledBlurVideo& video);

} // namespace sharpframe
