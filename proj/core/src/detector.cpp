#include <sharpframe/detector.hpp>

#include <sharpframe/error.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace sharpframe {

namespace {

using Vec = std::array<double, kFeatureCount>;

double sigmoid(double s) noexcept {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

// -log p(y | s) for a logit s.
double log_loss(double s, double y) noexcept {
    return std::max(s, 0.0) - y * s + std::log1p(std::exp(-std::abs(s)));
}

double dot(const Vec& a, const Vec& b) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < kFeatureCount; ++j) acc += a[j] * b[j];
    return acc;
}

Vec standardise(const DetectorModel& model, const Vec& x) noexcept {
    Vec z{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) z[j] = (x[j] - model.feature_means[j]) / model.feature_stds[j];
    return z;
}

bool all_finite(const Vec& v) noexcept {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace

void DetectorModel::validate() const {
    if (schema_version != kFeatureSchemaVersion) {
        throw ParameterError("detector model: schema_version " + std::to_string(schema_version) +
                             " does not match feature schema " + std::to_string(kFeatureSchemaVersion));
    }
    for (double s : feature_stds) {
        if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("detector model: feature std must be > 0");
    }
    if (!all_finite(weights) || !all_finite(feature_means) || !std::isfinite(bias)) {
        throw ParameterError("detector model: non-finite parameter");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ParameterError("detector model: threshold must lie in (0,1)");
    }
    if (kernel_size < 1) throw ParameterError("detector model: kernel_size must be >= 1");
}

FitResult fit_logistic(std::span<const FocusFeatures> features, LabelSpan labels, const FitConfig& config) {
    const std::size_t n = features.size();
    if (n != labels.size()) throw InputError("fit_logistic: features and labels differ in length");
    if (n < 2) throw InputError("fit_logistic: need at least two samples");
    const auto sharp_count = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), FrameLabel::sharp));
    if (sharp_count == 0 || sharp_count == n) throw TrainingError("fit_logistic: training labels contain a single class");
    if (!(config.learning_rate > 0.0) || config.max_iterations < 1 || config.l2 < 0.0) {
        throw ParameterError("fit_logistic: invalid optimiser settings");
    }

    FitResult result;
    DetectorModel& model = result.model;
    model.threshold = config.threshold;
    model.kernel_size = features.front().kernel_size;

    std::vector<Vec> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = features[i].values();
        if (!all_finite(x[i])) throw InputError("fit_logistic: non-finite feature in sample " + std::to_string(i));
        if (features[i].kernel_size != model.kernel_size) {
            throw InputError("fit_logistic: samples computed with different metric kernel sizes");
        }
    }

    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        double mean = 0.0;
        for (const auto& row : x) mean += row[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : x) var += (row[j] - mean) * (row[j] - mean);
        const double sd = std::sqrt(var / static_cast<double>(n));
        model.feature_means[j] = mean;
        if (sd <= 1e-12 * (1.0 + std::abs(mean))) {
            model.feature_stds[j] = 1.0;
            result.warnings.push_back("feature '" + std::string(kFeatureNames[j]) +
                                      "' has zero variance; std replaced by 1");
        } else {
            model.feature_stds[j] = sd;
        }
    }

    std::vector<Vec> z(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = standardise(model, x[i]);
        y[i] = is_sharp(labels[i]) ? 1.0 : 0.0;
    }

    Vec& w = model.weights;
    double& b = model.bias;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        Vec grad_w{};
        double grad_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double residual = sigmoid(dot(w, z[i]) + b) - y[i];
            for (std::size_t j = 0; j < kFeatureCount; ++j) grad_w[j] += residual * z[i][j];
            grad_b += residual;
        }
        double norm = std::abs(grad_b * inv_n);
        for (std::size_t j = 0; j < kFeatureCount; ++j) {
            grad_w[j] = grad_w[j] * inv_n + config.l2 * w[j];
            norm = std::max(norm, std::abs(grad_w[j]));
        }
        if (norm < config.gradient_tolerance) {
            result.converged = true;
            break;
        }
        for (std::size_t j = 0; j < kFeatureCount; ++j) w[j] -= config.learning_rate * grad_w[j];
        b -= config.learning_rate * grad_b * inv_n;
        result.iterations = iter + 1;
    }

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) loss += log_loss(dot(w, z[i]) + b, y[i]);
    result.final_loss = loss * inv_n + 0.5 * config.l2 * dot(w, w);
    return result;
}

Prediction predict(const DetectorModel& model, const FocusFeatures& features) {
    const Vec x = features.values();
    if (std::any_of(x.begin(), x.end(), [](double v) { return std::isnan(v); })) {
        throw InputError("predict: NaN feature");
    }
    const double p = sigmoid(dot(model.weights, standardise(model, x)) + model.bias);
    return {p, label_from(p >= model.threshold)};
}

std::optional<std::size_t> find_closest_sharp(LabelSpan labels, std::size_t index, const SearchConfig& config) {
    if (index >= labels.size()) {
        throw InputError("find_closest_sharp: index " + std::to_string(index) + " out of range");
    }
    if (config.gamma < 1) throw ParameterError("find_closest_sharp: gamma must be >= 1");
    const std::size_t gamma = static_cast<std::size_t>(config.gamma);
    const std::size_t first = index > gamma ? index - gamma : 0;
    for (std::size_t t = index; t > first; --t) {
        if (is_sharp(labels[t - 1])) return t - 1;
    }
    return std::nullopt;
}

ClassificationReport classification_report(LabelSpan predicted, LabelSpan truth) {
    if (predicted.size() != truth.size()) throw InputError("classification_report: length mismatch");
    if (truth.empty()) throw InputError("classification_report: empty test set");
    ClassificationReport r;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool p = is_sharp(predicted[i]);
        const bool t = is_sharp(truth[i]);
        if (p && t) ++r.true_positive;
        else if (p) ++r.false_positive;
        else if (t) ++r.false_negative;
        else ++r.true_negative;
    }
    const auto ratio = [](std::size_t num, std::size_t den, bool& defined) {
        defined = den > 0;
        return defined ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    };
    r.accuracy = static_cast<double>(r.true_positive + r.true_negative) / static_cast<double>(truth.size());
    r.precision = ratio(r.true_positive, r.true_positive + r.false_positive, r.precision_defined);
    r.recall = ratio(r.true_positive, r.true_positive + r.false_negative, r.recall_defined);
    r.f1 = (r.precision + r.recall) > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

ClassificationReport evaluate_detector(const DetectorModel& model, std::span<const FocusFeatures> features,
                                       LabelSpan truth) {
    if (features.empty()) throw InputError("evaluate_detector: empty test set");
    std::vector<FrameLabel> predicted;
    predicted.reserve(features.size());
    for (const auto& f : features) predicted.push_back(predict(model, f).label);
    return classification_report(predicted, truth);
}

std::string model_to_json(const DetectorModel& model) {
    nlohmann::ordered_json j;
    j["schema_version"] = model.schema_version;
    j["features"] = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
    j["kernel_size"] = model.kernel_size;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    j["means"] = model.feature_means;
    j["stds"] = model.feature_stds;
    j["threshold"] = model.threshold;
    return j.dump(2) + "\n";
}

DetectorModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("detector model: invalid JSON: ") + e.what());
    }
    DetectorModel model;
    try {
        model.schema_version = j.at("schema_version").get<int>();
        if (j.contains("features")) {
            const auto names = j.at("features").get<std::vector<std::string>>();
            if (names.size() != kFeatureCount || !std::equal(names.begin(), names.end(), kFeatureNames.begin())) {
                throw InputError("detector model: feature order does not match schema " +
                                 std::to_string(kFeatureSchemaVersion));
            }
        }
        model.kernel_size = j.value("kernel_size", kDefaultMetricKernel);
        model.weights = j.at("weights").get<Vec>();
        model.bias = j.at("bias").get<double>();
        model.feature_means = j.at("means").get<Vec>();
        model.feature_stds = j.at("stds").get<Vec>();
        model.threshold = j.value("threshold", 0.5);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("detector model: ") + e.what());
    }
    model.validate();
    return model;
}

} // namespace sharpframe
