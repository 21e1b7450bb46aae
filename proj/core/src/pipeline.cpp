#include <sharpframe/pipeline.hpp>

#include <sharpframe/error.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace sharpframe {

void PipelineConfig::validate() const {
    if (search.gamma < 1) throw ParameterError("pipeline: gamma must be >= 1");
    if (kernel_size < 1) throw ParameterError("pipeline: metric kernel size must be >= 1");
    if (jobs < 0) throw ParameterError("pipeline: jobs must be >= 0");
    restorer.rl.validate();
}

std::string to_string(Branch branch) {
    return branch == Branch::sharp_conditioned ? "sharp_conditioned" : "self";
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

Classifier model_classifier(const DetectorModel& model) {
    model.validate();
    return [model](const Frame& frame, std::size_t) {
        return predict(model, feature_vector(frame, model.kernel_size));
    };
}

std::vector<FrameDecision> detect(std::span<const Frame> video, const Classifier& classify,
                                  const SearchConfig& search, int jobs) {
    std::vector<FrameDecision> decisions(video.size());
    parallel_for(video.size(), jobs, [&](std::size_t i) {
        const Prediction p = classify(video[i], i);
        decisions[i].index = i;
        decisions[i].probability = p.probability;
        decisions[i].label = p.label;
    });
    std::vector<FrameLabel> labels(video.size());
    for (std::size_t i = 0; i < video.size(); ++i) labels[i] = decisions[i].label;
    for (std::size_t i = 0; i < video.size(); ++i) {
        decisions[i].closest_sharp = find_closest_sharp(labels, i, search);
        decisions[i].branch = decisions[i].closest_sharp ? Branch::sharp_conditioned : Branch::self;
    }
    return decisions;
}

PipelineResult run_pipeline(std::span<const Frame> video, const Classifier& classify, const PipelineConfig& config) {
    config.validate();
    if (video.empty()) throw InputError("pipeline: empty video");
    for (std::size_t i = 1; i < video.size(); ++i) {
        if (!video[i].same_shape(video[0])) {
            throw InputError("pipeline: frame " + std::to_string(i) + " differs in size from frame 0");
        }
    }

    PipelineResult result;
    result.decisions = detect(video, classify, config.search, config.jobs);

    const std::size_t n = video.size();
    std::vector<Frame> emphasised(n);
    parallel_for(n, config.jobs, [&](std::size_t i) { emphasised[i] = ree(video[i], config.restorer.rl); });

    result.restored.resize(n);
    parallel_for(n, config.jobs, [&](std::size_t i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = std::min(i + 1, n - 1);
        const Triplet x{video[lo], video[i], video[hi]};
        const Triplet c{emphasised[lo], emphasised[i], emphasised[hi]};
        const FrameDecision& d = result.decisions[i];
        const Frame* sharp = d.branch == Branch::sharp_conditioned ? &video[*d.closest_sharp] : nullptr;
        if (config.restorer.backend == RestorerBackend::rl_deconv) {
            // c_i already is ree(x_i) under the backend's settings.
            result.restored[i] = emphasised[i];
        } else {
            result.restored[i] = restore_frame(x, c, sharp, config.restorer);
        }
    });
    return result;
}

PipelineResult run_pipeline(std::span<const Frame> video, const DetectorModel& model, const PipelineConfig& config) {
    if (model.kernel_size != config.kernel_size) {
        throw ParameterError("pipeline: model was trained with metric kernel " + std::to_string(model.kernel_size) +
                             " but kernel " + std::to_string(config.kernel_size) + " was requested");
    }
    return run_pipeline(video, model_classifier(model), config);
}

std::string detection_csv(std::span<const FrameDecision> decisions, bool with_branch) {
    std::string out = with_branch ? "frame_index,probability,label,t_i,branch\n" : "frame_index,probability,label,t_i\n";
    char buf[96];
    for (const auto& d : decisions) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%d,%lld", d.index, d.probability, is_sharp(d.label) ? 1 : 0, d.t());
        out += buf;
        if (with_branch) {
            out += ',';
            out += to_string(d.branch);
        }
        out += '\n';
    }
    return out;
}

} // namespace sharpframe
