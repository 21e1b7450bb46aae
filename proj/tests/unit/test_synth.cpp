#include <sharpframe/dataset_io.hpp>
#include <sharpframe/error.hpp>
#include <sharpframe/synth.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace sharpframe;

namespace {

std::vector<Frame> constant_video(std::size_t n, double v) {
    return std::vector<Frame>(n, fixture::constant_frame(2, 3, v));
}

} // namespace

TEST(SampleWindows, ZeroRatioIsAllBlur) {
    SynthConfig cfg;
    cfg.ratio = 0.0;
    Rng rng(1);
    const auto w = sample_windows(5000, cfg, rng);
    for (int x : w) {
        EXPECT_GE(x, 7);
        EXPECT_LE(x, 13);
    }
    EXPECT_EQ(measured_ratio(labels_for_windows(w)), 0.0);
}

TEST(SampleWindows, HalfRatioConverges) {
    SynthConfig cfg;
    cfg.ratio = 0.5;
    Rng rng(2024);
    const auto w = sample_windows(100000, cfg, rng);
    EXPECT_NEAR(measured_ratio(labels_for_windows(w)), 0.5, 0.01);
}

TEST(SampleWindows, ForcedSingleWindow) {
    SynthConfig cfg;
    cfg.ratio = 0.0;
    cfg.blur_windows = {7};
    Rng rng(3);
    EXPECT_EQ(sample_windows(7, cfg, rng), std::vector<int>{7});
}

TEST(SampleWindows, StopsAtFirstOverflowAndFits) {
    SynthConfig cfg;
    cfg.ratio = 0.3;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const std::size_t L = 20 + seed * 7;
        const auto w = sample_windows(L, cfg, rng);
        const auto total = static_cast<std::size_t>(std::accumulate(w.begin(), w.end(), 0));
        EXPECT_LE(total, L);

        // Replaying the stream: the draw after the last window overflowed.
        Rng replay(seed);
        SynthConfig big = cfg;
        const auto longer = sample_windows(10 * L, big, replay);
        ASSERT_GT(longer.size(), w.size());
        EXPECT_TRUE(std::equal(w.begin(), w.end(), longer.begin()));
        EXPECT_GT(total + static_cast<std::size_t>(longer[w.size()]), L);
    }
}

TEST(SampleWindows, Errors) {
    SynthConfig cfg;
    cfg.ratio = 0.0;
    Rng rng(0);
    EXPECT_THROW(sample_windows(6, cfg, rng), InputError);
    cfg.ratio = 0.6;
    EXPECT_THROW(sample_windows(100, cfg, rng), ParameterError);
    cfg.ratio = 0.2;
    cfg.sharp_windows = {6};
    EXPECT_THROW(sample_windows(100, cfg, rng), ParameterError);
    cfg.sharp_windows = {1, 2};
    cfg.blur_windows = {16};
    EXPECT_THROW(sample_windows(100, cfg, rng), ParameterError);
}

TEST(SampleWindows, SeededStreamIsFrozen) {
    // mt19937_64 with engine-only draws: the sequence is portable, so pin it.
    SynthConfig cfg;
    cfg.ratio = 0.5;
    Rng rng(7);
    const auto w = sample_windows(60, cfg, rng);
    Rng again(7);
    EXPECT_EQ(sample_windows(60, cfg, again), w);
    EXPECT_FALSE(w.empty());
}

TEST(Synthesize, SingleWindowOfThree) {
    const auto v = fixture::ramp_video(3);
    const LabeledBlurVideo out = synthesize_with_windows(v, std::vector<int>{3});
    ASSERT_EQ(out.size(), 1u);
    for (std::size_t i = 0; i < v[0].data().size(); ++i) {
        EXPECT_EQ(out.blur_frames[0].data()[i], (v[0].data()[i] + v[1].data()[i] + v[2].data()[i]) / 3.0);
    }
    EXPECT_EQ(out.labels[0], FrameLabel::sharp);
    EXPECT_EQ(out.ground_truths[0], v[1]);
}

TEST(Synthesize, IdentityWindow) {
    const auto v = fixture::ramp_video(2);
    const LabeledBlurVideo out = synthesize_with_windows(v, std::vector<int>{1});
    EXPECT_EQ(out.blur_frames[0], v[0]);
    EXPECT_EQ(out.ground_truths[0], v[0]);
    EXPECT_TRUE(is_sharp(out.labels[0]));
}

TEST(Synthesize, ConstantVideo) {
    const auto v = constant_video(200, 0.3);
    SynthConfig cfg;
    cfg.ratio = 0.4;
    cfg.seed = 5;
    const auto out = synthesize(v, cfg);
    for (std::size_t j = 0; j < out.size(); ++j) {
        for (double x : out.blur_frames[j].data()) EXPECT_NEAR(x, 0.3, 1e-15);
        EXPECT_EQ(out.ground_truths[j], v[0]);
    }
}

TEST(Synthesize, Invariants) {
    const auto v = fixture::ramp_video(400, 2, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SynthConfig cfg;
        cfg.ratio = 0.1 * (seed % 6);
        cfg.seed = seed;
        const auto out = synthesize(v, cfg);
        ASSERT_EQ(out.labels.size(), out.size());
        ASSERT_EQ(out.blur_frames.size(), out.size());
        ASSERT_EQ(out.ground_truths.size(), out.size());
        ASSERT_EQ(out.offsets.size(), out.size());
        std::size_t o = 0;
        for (std::size_t j = 0; j < out.size(); ++j) {
            EXPECT_EQ(out.offsets[j], o);
            EXPECT_EQ(is_sharp(out.labels[j]), out.windows[j] <= 5);
            const std::size_t g = o + out.windows[j] / 2;
            EXPECT_EQ(out.ground_truths[j], v[g]);
            o += out.windows[j];
        }
        EXPECT_LE(o, v.size());
    }
}

TEST(Synthesize, SeedDeterminism) {
    const auto v = fixture::ramp_video(300, 2, 2);
    SynthConfig cfg;
    cfg.ratio = 0.3;
    cfg.seed = 99;
    const auto a = synthesize(v, cfg);
    const auto b = synthesize(v, cfg);
    EXPECT_EQ(a.windows, b.windows);
    EXPECT_EQ(a.blur_frames, b.blur_frames);
}

TEST(Synthesize, RatioNearTargetAcrossSeeds) {
    SynthConfig cfg;
    cfg.ratio = 0.3;
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        sum += measured_ratio(labels_for_windows(sample_windows(30000, cfg, rng)));
    }
    EXPECT_NEAR(sum / 5, 0.3, 0.04);
}

TEST(Synthesize, WindowsMustFit) {
    const auto v = fixture::ramp_video(5);
    EXPECT_THROW(synthesize_with_windows(v, std::vector<int>{3, 3}), InputError);
    EXPECT_THROW(synthesize_with_windows(v, std::vector<int>{0}), InputError);
}

TEST(MeasuredRatio, Examples) {
    const std::vector<FrameLabel> l = {FrameLabel::sharp, FrameLabel::blur, FrameLabel::blur, FrameLabel::sharp};
    EXPECT_EQ(measured_ratio(l), 0.5);
    EXPECT_THROW(measured_ratio(LabelSpan{}), InputError);
}

TEST(Dataset, WriteAndReadBack) {
    fixture::TempDir hfr("hfr");
    fixture::TempDir out("ds");
    std::vector<Frame> frames;
    for (int i = 0; i < 60; ++i) frames.push_back(fixture::textured_frame(16, 16, i));
    save_video(hfr.path(), frames, BitDepth::u16);

    SynthConfig cfg;
    cfg.ratio = 0.3;
    cfg.seed = 11;
    const DatasetManifest m = write_synthesized_dataset(png_frame_source(hfr.path()), cfg, out.path(), "clip");
    EXPECT_TRUE(is_dataset_dir(out.path()));
    const DatasetManifest back = read_manifest(out.path());
    EXPECT_EQ(back.windows, m.windows);
    EXPECT_EQ(back.labels, m.labels);
    EXPECT_EQ(back.offsets, m.offsets);
    EXPECT_EQ(back.source, "clip");
    EXPECT_EQ(back.ratio_measured, m.ratio_measured);
    EXPECT_EQ(list_frames(out.path() / "blur").size(), m.windows.size());
    EXPECT_EQ(list_frames(out.path() / "gt").size(), m.windows.size());

    // Same as the in-memory path, up to 16-bit quantisation of the source.
    const Video src = load_video(hfr.path());
    const auto mem = synthesize_with_windows(src.frames, m.windows);
    const Video gt = load_video(out.path() / "gt");
    for (std::size_t j = 0; j < gt.frames.size(); ++j) EXPECT_EQ(gt.frames[j], mem.ground_truths[j]);
}

TEST(Dataset, ManifestRejectsBadLabels) {
    EXPECT_THROW(manifest_from_json(R"({"ratio_target":0.1,"ratio_measured":0,"seed":1,"windows":[7],)"
                                    R"("offsets":[0],"labels":[2]})"),
                 InputError);
    EXPECT_THROW(manifest_from_json(R"({"ratio_target":0.1,"ratio_measured":0,"seed":1,"windows":[7,8],)"
                                    R"("offsets":[0],"labels":[0]})"),
                 InputError);
}
