#pragma once

#include <sharpframe/focus_metrics.hpp>
#include <sharpframe/label.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpframe {

/// Logistic-regression sharp/blur classifier over standardised FocusFeatures.
struct DetectorModel {
    std::array<double, kFeatureCount> weights{};
    double bias = 0.0;
    std::array<double, kFeatureCount> feature_means{};
    std::array<double, kFeatureCount> feature_stds{1, 1, 1, 1, 1, 1};
    double threshold = 0.5;
    int schema_version = kFeatureSchemaVersion;
    int kernel_size = kDefaultMetricKernel;

    /// Throws ParameterError on non-positive stds, a threshold outside (0, 1),
    /// non-finite parameters or a foreign schema version.
    void validate() const;
};

struct FitConfig {
    double l2 = 1e-4;
    double learning_rate = 0.1;
    int max_iterations = 5000;
    /// Stop once the gradient infinity-norm drops below this.
    double gradient_tolerance = 1e-6;
    double threshold = 0.5;
};

struct FitResult {
    DetectorModel model;
    int iterations = 0;
    bool converged = false;
    double final_loss = 0.0;
    std::vector<std::string> warnings;
};

/// Full-batch gradient descent on the L2-regularised mean log-loss (the bias
/// is not regularised). Features are z-scored with training statistics; a
/// zero-variance feature keeps std 1 and produces a warning.
///
/// Throws InputError on size mismatch, fewer than two samples or non-finite
/// features, and TrainingError when only one class is present.
FitResult fit_logistic(std::span<const FocusFeatures> features, LabelSpan labels, const FitConfig& config = {});

struct Prediction {
    double probability = 0.5;
    FrameLabel label = FrameLabel::blur;
};

/// p = sigmoid(w . standardise(x) + b); sharp iff p >= threshold.
/// Throws InputError on a NaN feature.
Prediction predict(const DetectorModel& model, const FocusFeatures& features);

struct SearchConfig {
    /// Number of past frames examined.
    int gamma = 7;
};

/// Index of the most recent sharp frame among the `gamma` frames strictly
/// before `index`; nullopt when there is none (serialised as -1).
std::optional<std::size_t> find_closest_sharp(LabelSpan labels, std::size_t index, const SearchConfig& config = {});

/// Binary classification summary with sharp as the positive class.
struct ClassificationReport {
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;
    std::size_t true_negative = 0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// False when the denominator was zero; the value is then reported as 0.
    bool precision_defined = true;
    bool recall_defined = true;
};

ClassificationReport classification_report(LabelSpan predicted, LabelSpan truth);

ClassificationReport evaluate_detector(const DetectorModel& model, std::span<const FocusFeatures> features,
                                       LabelSpan truth);

/// Model file: JSON with schema_version, features, weights, bias, means,
/// stds, threshold and kernel_size.
std::string model_to_json(const DetectorModel& model);
DetectorModel model_from_json(const std::string& text);

} // namespace sharpframe
