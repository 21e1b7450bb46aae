#pragma once

#include <sharpframe/image.hpp>
#include <sharpframe/label.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpframe {

/// 10 log10(1 / MSE) over all channels with a peak of 1; +inf for identical
/// frames. Throws InputError on differing sizes.
double psnr(const Frame& a, const Frame& b);

/// Mean SSIM of the luminance planes, 11x11 Gaussian window (sigma 1.5),
/// C1 = 0.01^2, C2 = 0.03^2, averaged over fully covered window positions.
/// Throws InputError on differing sizes or frames smaller than 11x11.
double ssim(const Frame& a, const Frame& b);

struct EvalReport {
    std::string dataset;
    std::optional<double> ratio;
    std::vector<double> psnr;
    std::vector<double> ssim;
    /// Mean over finite PSNR values; +inf when every frame is identical.
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;
    std::size_t infinite_psnr_count = 0;

    std::size_t frame_count() const noexcept { return psnr.size(); }
    bool all_psnr_infinite() const noexcept { return !psnr.empty() && infinite_psnr_count == psnr.size(); }
};

/// Throws InputError on empty input or mismatched lengths/sizes.
EvalReport evaluate_video(std::span<const Frame> restored, std::span<const Frame> ground_truth, int jobs = 1);

/// JSON with `frames` (per-frame arrays) and `summary`; infinities are
/// written as the string "inf".
std::string report_to_json(const EvalReport& report);

/// Measured sharp ratio of one synthesized video at one target ratio.
struct RatioRecord {
    std::string video;
    double target = 0.0;
    double measured = 0.0;
};

RatioRecord ratio_record(std::string video, double target, LabelSpan labels);

/// Videos as rows ("#1", "#2", ... unless named otherwise), target ratios as
/// ascending columns, plus the per-column average.
struct RatioTable {
    std::vector<double> targets;
    std::vector<std::string> videos;
    /// cells[row][column]; empty when a video lacks that target.
    std::vector<std::vector<std::optional<double>>> cells;
    std::vector<double> averages;
};

/// Throws InputError when `records` is empty.
RatioTable ratio_report(std::span<const RatioRecord> records);

/// `video,r=0.02,...` header, one row per video, then `Average`.
std::string ratio_table_csv(const RatioTable& table);

} // namespace sharpframe
