#pragma once

#include <sharpframe/filters.hpp>
#include <sharpframe/image.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace sharpframe {

/// Settings of the Richardson-Lucy edge-emphasis stage.
struct ReeConfig {
    Kernel psf = gaussian_psf(9, 1.5);
    int iterations = 5;
    /// Total-variation weight; 0 gives plain Richardson-Lucy.
    double tv_weight = 0.0;
    /// Guard added to numerator and denominator of the RL ratio.
    double epsilon = 1e-8;
    /// `reflect` for normal use, `periodic` to test exact flux conservation.
    Padding boundary = Padding::reflect;

    void validate() const;
};

/// Richardson-Lucy deconvolution starting from the observation:
///
///     I <- I * (flip(K) (*) ((B + eps) / (K (*) I + eps)))
///
/// With tv_weight > 0 each update is further divided by
/// 1 - tv_weight * div(grad I / |grad I|), floored at 1e-3. Output is clamped
/// to >= 0.
///
/// The PSF is applied as I + sum K(q) (I(p - q) - I(p)), which equals the
/// plain convolution for a unit-sum kernel and leaves constants and the delta
/// PSF exactly fixed.
///
/// Throws InputError on negative input and ParameterError on a PSF that does
/// not sum to one.
GrayImage richardson_lucy(const GrayImage& observed, const ReeConfig& config);

/// Per-channel richardson_lucy followed by clamping to [0, 1].
Frame ree(const Frame& frame, const ReeConfig& config = {});

/// Previous, current and next frame around one index.
struct Triplet {
    const Frame& previous;
    const Frame& current;
    const Frame& next;
};

enum class RestorerBackend {
    passthrough,
    rl_deconv,
    external,
};

/// Subprocess restorer, called as
/// `<command> [args...] --current C --prev P --next N [--sharp S] --out O`.
struct ExternalRestorer {
    std::string command;
    std::vector<std::string> args;
    /// Scratch space for PNG hand-off; the system temp dir when empty.
    std::filesystem::path work_dir;
};

/// Stand-in for the learned restoration stages.
struct RestorerSpec {
    RestorerBackend backend = RestorerBackend::passthrough;
    ReeConfig rl;
    ExternalRestorer external;
};

RestorerBackend parse_backend(const std::string& name);
std::string to_string(RestorerBackend backend);

/// Restores `x.current` from its triplet, the edge-emphasised triplet `c`,
/// and the closest sharp frame when one was found (`sharp` may be null).
/// The result has the size of `x.current` and samples in [0, 1].
///
/// Throws DimensionError on inconsistent sizes and BackendError when the
/// external process fails or produces an unusable frame.
Frame restore_frame(const Triplet& x, const Triplet& c, const Frame* sharp, const RestorerSpec& spec);

/// Runs the external restorer once. Exposed for tests.
Frame run_external_restorer(const ExternalRestorer& restorer, const Triplet& x, const Frame* sharp);

} // namespace sharpframe
