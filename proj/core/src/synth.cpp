#include <sharpframe/synth.hpp>

#include <sharpframe/error.hpp>

#include <algorithm>
#include <string>

namespace sharpframe {

namespace {

// Engine-only draws: the distributions in <random> are not specified
// bit-for-bit across standard libraries, the mt19937_64 engine is.
double draw_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw_index(Rng& rng, std::size_t n) {
    const std::uint64_t limit = Rng::max() - Rng::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
}

} // namespace

void SynthConfig::validate() const {
    if (!(ratio >= 0.0 && ratio <= 0.5)) {
        throw ParameterError("synth: ratio must lie in [0, 0.5], got " + std::to_string(ratio));
    }
    if (sharp_windows.empty() || blur_windows.empty()) throw ParameterError("synth: window sets must be non-empty");
    for (int w : sharp_windows) {
        if (w < 1 || w > kMaxSharpWindow) {
            throw ParameterError("synth: sharp window " + std::to_string(w) + " outside [1, 5]");
        }
    }
    for (int w : blur_windows) {
        if (w < 6 || w > 15) throw ParameterError("synth: blur window " + std::to_string(w) + " outside [6, 15]");
    }
}

std::vector<int> sample_windows(std::size_t length, const SynthConfig& config, Rng& rng) {
    config.validate();
    int smallest = *std::min_element(config.blur_windows.begin(), config.blur_windows.end());
    if (config.ratio > 0.0) {
        smallest = std::min(smallest, *std::min_element(config.sharp_windows.begin(), config.sharp_windows.end()));
    }
    if (length < static_cast<std::size_t>(smallest)) {
        throw InputError("sample_windows: source length " + std::to_string(length) +
                         " is shorter than the smallest admissible window " + std::to_string(smallest));
    }
    std::vector<int> windows;
    std::size_t used = 0;
    for (;;) {
        const bool sharp = draw_unit(rng) < config.ratio;
        const auto& set = sharp ? config.sharp_windows : config.blur_windows;
        const int w = set[draw_index(rng, set.size())];
        if (used + static_cast<std::size_t>(w) > length) break;
        windows.push_back(w);
        used += static_cast<std::size_t>(w);
    }
    return windows;
}

std::vector<FrameLabel> labels_for_windows(std::span<const int> windows) {
    std::vector<FrameLabel> labels(windows.size());
    std::transform(windows.begin(), windows.end(), labels.begin(),
                   [](int w) { return label_from(w <= kMaxSharpWindow); });
    return labels;
}

std::vector<std::size_t> offsets_for_windows(std::span<const int> windows) {
    std::vector<std::size_t> offsets(windows.size());
    std::size_t sum = 0;
    for (std::size_t j = 0; j < windows.size(); ++j) {
        offsets[j] = sum;
        sum += static_cast<std::size_t>(windows[j]);
    }
    return offsets;
}

void synthesize_streaming(const FrameSource& source, std::span<const int> windows, const SynthSink& sink) {
    std::size_t total = 0;
    for (int w : windows) {
        if (w < 1) throw InputError("synthesize: window lengths must be positive");
        total += static_cast<std::size_t>(w);
    }
    if (total > source.length) {
        throw InputError("synthesize: windows cover " + std::to_string(total) + " frames but the source has " +
                         std::to_string(source.length));
    }

    std::vector<double> acc;
    std::size_t offset = 0;
    for (std::size_t j = 0; j < windows.size(); ++j) {
        const int w = windows[j];
        const std::size_t centre = offset + static_cast<std::size_t>(w / 2);
        Frame ground_truth;
        int height = 0;
        int width = 0;
        for (int k = 0; k < w; ++k) {
            Frame f = source.frame(offset + k);
            if (k == 0) {
                height = f.height();
                width = f.width();
                acc.assign(f.data().begin(), f.data().end());
            } else {
                if (f.height() != height || f.width() != width) {
                    throw InputError("synthesize: source frame " + std::to_string(offset + k) + " changes size");
                }
                auto d = f.data();
                for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += d[i];
            }
            if (offset + k == centre) ground_truth = std::move(f);
        }
        for (double& v : acc) v /= w;
        sink(j, Frame(height, width, acc), std::move(ground_truth));
        offset += static_cast<std::size_t>(w);
    }
}

LabeledBlurVideo synthesize_with_windows(std::span<const Frame> source, std::span<const int> windows) {
    LabeledBlurVideo video;
    video.windows.assign(windows.begin(), windows.end());
    video.labels = labels_for_windows(windows);
    video.offsets = offsets_for_windows(windows);
    video.source_length = source.size();
    video.blur_frames.reserve(windows.size());
    video.ground_truths.reserve(windows.size());
    const FrameSource view{source.size(), [source](std::size_t i) { return source[i]; }};
    synthesize_streaming(view, windows, [&](std::size_t, Frame&& blur, Frame&& gt) {
        video.blur_frames.push_back(std::move(blur));
        video.ground_truths.push_back(std::move(gt));
    });
    return video;
}

LabeledBlurVideo synthesize(std::span<const Frame> source, const SynthConfig& config, Rng& rng) {
    const auto windows = sample_windows(source.size(), config, rng);
    return synthesize_with_windows(source, windows);
}

LabeledBlurVideo synthesize(std::span<const Frame> source, const SynthConfig& config) {
    Rng rng(config.seed);
    return synthesize(source, config, rng);
}

double measured_ratio(LabelSpan labels) {
    if (labels.empty()) throw InputError("measured_ratio: empty label sequence");
    const auto sharp = std::count(labels.begin(), labels.end(), FrameLabel::sharp);
    return static_cast<double>(sharp) / static_cast<double>(labels.size());
}

double measured_ratio(const LabeledBlurVideo& video) {
    return measured_ratio(video.labels);
}

} // namespace sharpframe
