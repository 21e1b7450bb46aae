#include <sharpframe/error.hpp>
#include <sharpframe/pipeline.hpp>
#include <sharpframe/synth.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sharpframe;

namespace {

Classifier oracle_classifier(std::vector<FrameLabel> labels) {
    return [labels = std::move(labels)](const Frame&, std::size_t i) {
        return Prediction{is_sharp(labels.at(i)) ? 1.0 : 0.0, labels.at(i)};
    };
}

PipelineConfig small_config(RestorerBackend backend = RestorerBackend::passthrough) {
    PipelineConfig cfg;
    cfg.restorer.backend = backend;
    cfg.restorer.rl.psf = gaussian_psf(3, 0.8);
    cfg.restorer.rl.iterations = 2;
    return cfg;
}

std::vector<Frame> small_video(std::size_t n) {
    std::vector<Frame> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(fixture::textured_frame(12, 12, i));
    return v;
}

} // namespace

TEST(Pipeline, SingleFrame) {
    const auto v = small_video(1);
    const auto r = run_pipeline(v, oracle_classifier({FrameLabel::sharp}), small_config());
    ASSERT_EQ(r.restored.size(), 1u);
    EXPECT_EQ(r.restored[0], v[0]);
    EXPECT_EQ(r.decisions[0].branch, Branch::self);
    EXPECT_EQ(r.decisions[0].t(), -1);
}

TEST(Pipeline, AllSharpPassthroughIsIdentity) {
    const auto v = small_video(10);
    const auto r = run_pipeline(v, oracle_classifier(std::vector<FrameLabel>(10, FrameLabel::sharp)), small_config());
    EXPECT_EQ(r.restored, v);
    for (std::size_t i = 1; i < 10; ++i) {
        EXPECT_EQ(r.decisions[i].t(), static_cast<long long>(i) - 1);
        EXPECT_EQ(r.decisions[i].branch, Branch::sharp_conditioned);
    }
}

TEST(Pipeline, SynthesizedFixtureWithOracleDetector) {
    const FrameSource src = fixture::panning_source(16, 16, 220, 3);
    std::vector<Frame> hfr;
    for (std::size_t i = 0; i < src.length; ++i) hfr.push_back(src.frame(i));
    SynthConfig sc;
    sc.ratio = 0.3;
    sc.seed = 8;
    auto data = synthesize(hfr, sc);
    data.blur_frames.resize(std::min<std::size_t>(20, data.size()));
    data.labels.resize(data.blur_frames.size());

    const auto r = run_pipeline(data.blur_frames, oracle_classifier(data.labels),
                                small_config(RestorerBackend::rl_deconv));
    ASSERT_EQ(r.restored.size(), data.blur_frames.size());
    std::size_t expected_conditioned = 0;
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
        const auto t = find_closest_sharp(data.labels, i, {7});
        expected_conditioned += t.has_value();
        EXPECT_EQ(r.decisions[i].closest_sharp, t);
        EXPECT_EQ(r.decisions[i].branch == Branch::sharp_conditioned, t.has_value());
        EXPECT_EQ(r.restored[i], ree(data.blur_frames[i], small_config().restorer.rl));
    }
    std::size_t conditioned = 0;
    for (const auto& d : r.decisions) conditioned += d.branch == Branch::sharp_conditioned;
    EXPECT_EQ(conditioned, expected_conditioned);
}

TEST(Pipeline, TotalWhenNothingIsSharp) {
    const auto v = small_video(15);
    const auto r = run_pipeline(v, oracle_classifier(std::vector<FrameLabel>(15, FrameLabel::blur)), small_config());
    ASSERT_EQ(r.restored.size(), 15u);
    for (std::size_t i = 0; i < 15; ++i) {
        EXPECT_EQ(r.decisions[i].index, i);
        EXPECT_EQ(r.decisions[i].branch, Branch::self);
    }
}

TEST(Pipeline, ExternalBackendSeesSharpFrameOnlyWhenConditioned) {
    const auto v = small_video(5);
    PipelineConfig cfg = small_config(RestorerBackend::external);
    cfg.restorer.external.command = ECHO_RESTORER;
    const auto r = run_pipeline(
        v, oracle_classifier({FrameLabel::blur, FrameLabel::sharp, FrameLabel::blur, FrameLabel::blur, FrameLabel::blur}),
        cfg);
    ASSERT_EQ(r.restored.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        // 16-bit round trip of the current frame.
        for (std::size_t s = 0; s < v[i].data().size(); ++s) {
            EXPECT_NEAR(r.restored[i].data()[s], v[i].data()[s], 0.5 / 65535.0 + 1e-12);
        }
    }
    EXPECT_EQ(r.decisions[0].branch, Branch::self);
    EXPECT_EQ(r.decisions[1].branch, Branch::self);
    EXPECT_EQ(r.decisions[2].t(), 1);
}

TEST(Pipeline, ParallelMatchesSerial) {
    const auto v = small_video(12);
    std::vector<FrameLabel> labels;
    for (int i = 0; i < 12; ++i) labels.push_back(label_from(i % 4 == 0));
    PipelineConfig serial = small_config(RestorerBackend::rl_deconv);
    PipelineConfig parallel = serial;
    parallel.jobs = 4;
    const auto a = run_pipeline(v, oracle_classifier(labels), serial);
    const auto b = run_pipeline(v, oracle_classifier(labels), parallel);
    EXPECT_EQ(a.restored, b.restored);
    EXPECT_EQ(detection_csv(a.decisions, true), detection_csv(b.decisions, true));
}

TEST(Pipeline, Errors) {
    EXPECT_THROW(run_pipeline({}, oracle_classifier({}), small_config()), InputError);
    std::vector<Frame> mixed = {Frame(8, 8), Frame(8, 9)};
    EXPECT_THROW(run_pipeline(mixed, oracle_classifier({FrameLabel::blur, FrameLabel::blur}), small_config()),
                 InputError);
    PipelineConfig cfg = small_config();
    cfg.search.gamma = 0;
    EXPECT_THROW(run_pipeline(small_video(2), oracle_classifier({FrameLabel::blur, FrameLabel::blur}), cfg),
                 ParameterError);

    DetectorModel model;
    model.kernel_size = 5;
    EXPECT_THROW(run_pipeline(small_video(2), model, small_config()), ParameterError);
}

TEST(Pipeline, ModelClassifierRuns) {
    DetectorModel model;
    model.kernel_size = 5;
    model.weights = {1, 0, 0, 0, 0, 0};
    PipelineConfig cfg = small_config();
    cfg.kernel_size = 5;
    const auto r = run_pipeline(small_video(3), model, cfg);
    EXPECT_EQ(r.restored.size(), 3u);
}

TEST(DetectionCsv, Format) {
    std::vector<FrameDecision> d(2);
    d[0] = {0, 0.25, FrameLabel::blur, std::nullopt, Branch::self};
    d[1] = {1, 0.75, FrameLabel::sharp, 0, Branch::sharp_conditioned};
    EXPECT_EQ(detection_csv(d, false), "frame_index,probability,label,t_i\n0,0.25,0,-1\n1,0.75,1,0\n");
    EXPECT_EQ(detection_csv(d, true),
              "frame_index,probability,label,t_i,branch\n0,0.25,0,-1,self\n1,0.75,1,0,sharp_conditioned\n");
}

TEST(ParallelFor, CoversEveryIndexAndPropagates) {
    for (int jobs : {0, 1, 3}) {
        std::vector<int> hits(100, 0);
        parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i]++; });
        for (int h : hits) EXPECT_EQ(h, 1);
    }
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw InputError("boom");
                 }),
                 InputError);
}
