#pragma once

#include <sharpframe/detector.hpp>
#include <sharpframe/restore.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpframe {

struct PipelineConfig {
    SearchConfig search;
    /// Metric kernel used for detection features.
    int kernel_size = kDefaultMetricKernel;
    /// Backend plus the RL settings that also produce the edge-emphasised c_i.
    RestorerSpec restorer;
    /// Worker threads for the per-frame passes; 0 picks hardware concurrency.
    int jobs = 1;

    void validate() const;
};

enum class Branch {
    self,
    sharp_conditioned,
};

std::string to_string(Branch branch);

struct FrameDecision {
    std::size_t index = 0;
    double probability = 0.0;
    FrameLabel label = FrameLabel::blur;
    std::optional<std::size_t> closest_sharp;
    Branch branch = Branch::self;

    /// t_i with -1 for "none".
    long long t() const noexcept { return closest_sharp ? static_cast<long long>(*closest_sharp) : -1; }
};

struct PipelineResult {
    std::vector<Frame> restored;
    std::vector<FrameDecision> decisions;
};

/// Per-frame sharp/blur decision; the index lets tests plug in an oracle.
using Classifier = std::function<Prediction(const Frame& frame, std::size_t index)>;

/// feature_vector + predict with the model's kernel size.
Classifier model_classifier(const DetectorModel& model);

/// Classifies every frame, then resolves t_i over the predicted labels.
std::vector<FrameDecision> detect(std::span<const Frame> video, const Classifier& classify,
                                  const SearchConfig& search, int jobs = 1);

/// Restores every frame. Boundary triplets replicate the first/last frame;
/// frame i takes the sharp-conditioned branch iff t_i exists.
///
/// Throws InputError on an empty video or frames of different sizes.
PipelineResult run_pipeline(std::span<const Frame> video, const Classifier& classify, const PipelineConfig& config);

/// Uses model_classifier(model). Throws ParameterError when the model was
/// trained with a different metric kernel than config.kernel_size.
PipelineResult run_pipeline(std::span<const Frame> video, const DetectorModel& model, const PipelineConfig& config);

/// CSV with header `frame_index,probability,label,t_i[,branch]`.
std::string detection_csv(std::span<const FrameDecision> decisions, bool with_branch);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads and rethrows the first
/// exception after all workers have stopped.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

} // namespace sharpframe
