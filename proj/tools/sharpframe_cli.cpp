#include "cli_support.hpp"

#include <sharpframe/dataset_io.hpp>
#include <sharpframe/detector.hpp>
#include <sharpframe/error.hpp>
#include <sharpframe/eval.hpp>
#include <sharpframe/feature_table.hpp>
#include <sharpframe/pipeline.hpp>
#include <sharpframe/restore.hpp>
#include <sharpframe/synth.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

using namespace sharpframe;
namespace fs = std::filesystem;

namespace {

struct Common {
    int jobs = 1;
};

struct SynthArgs {
    std::string hfr;
    double ratio = 0.5;
    std::uint64_t seed = 0;
    std::string out;
    std::string name;
};

struct FeaturesArgs {
    std::string video;
    int k = kDefaultMetricKernel;
    std::string out;
};

struct TrainArgs {
    std::string features;
    std::string out;
    double l2 = 1e-4;
    double learning_rate = 0.1;
    int max_iterations = 5000;
};

struct DetectArgs {
    std::string video;
    std::string model;
    int gamma = 7;
    std::string out;
};

struct ReeArgs {
    std::string video;
    int iterations = 5;
    int psf_size = 9;
    double psf_sigma = 1.5;
    double tv_weight = 0.0;
    std::string out;
};

struct DeblurArgs {
    std::string video;
    std::string model;
    std::string backend = "passthrough";
    int gamma = 7;
    int iterations = 5;
    int psf_size = 9;
    double psf_sigma = 1.5;
    double tv_weight = 0.0;
    std::string external;
    std::vector<std::string> external_args;
    std::string out;
};

struct EvalArgs {
    std::string restored;
    std::string gt;
    std::string out;
    std::vector<std::string> datasets;
    std::string ratios_out;
};

ReeConfig make_ree(int iterations, int psf_size, double psf_sigma, double tv_weight) {
    ReeConfig cfg;
    cfg.psf = gaussian_psf(psf_size, psf_sigma);
    cfg.iterations = iterations;
    cfg.tv_weight = tv_weight;
    cfg.validate();
    return cfg;
}

void require_dir(const std::string& path, const char* what) {
    if (!fs::is_directory(path)) throw InputError(std::string(what) + " directory not found: " + path);
}

void require_file(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path)) throw InputError(std::string(what) + " file not found: " + path);
}

std::vector<FeatureRow> compute_features(const fs::path& video_dir, int k, int jobs) {
    const FrameSource source = png_frame_source(cli::frames_dir(video_dir));
    std::optional<DatasetManifest> manifest;
    if (is_dataset_dir(video_dir)) {
        manifest = read_manifest(video_dir);
        if (manifest->labels.size() != source.length) {
            throw InputError("manifest lists " + std::to_string(manifest->labels.size()) + " frames but " +
                             std::to_string(source.length) + " were found");
        }
    }
    std::vector<FeatureRow> rows(source.length);
    parallel_for(source.length, jobs, [&](std::size_t i) {
        rows[i].frame_index = i;
        rows[i].features = feature_vector(source.frame(i), k);
        if (manifest) rows[i].label = manifest->labels[i];
    });
    return rows;
}

DetectorModel load_model(const std::string& path) {
    require_file(path, "model");
    return model_from_json(read_text_file(path));
}

void run_synth(const SynthArgs& a, const CLI::App& cmd) {
    require_dir(a.hfr, "--hfr");
    SynthConfig cfg;
    cfg.ratio = a.ratio;
    cfg.seed = a.seed;
    cfg.validate();
    const std::string name = a.name.empty() ? fs::path(a.hfr).lexically_normal().filename().string() : a.name;
    const DatasetManifest m = write_synthesized_dataset(png_frame_source(a.hfr), cfg, a.out, name);
    cli::RunRecord run(cmd, "synth");
    run.result()["frame_count"] = m.windows.size();
    run.result()["ratio_measured"] = m.ratio_measured;
    run.write_for_dir(a.out);
}

void run_features(const FeaturesArgs& a, const Common& c, const CLI::App& cmd) {
    require_dir(a.video, "--video");
    if (a.k < 1) throw ParameterError("--k must be >= 1");
    const auto rows = compute_features(a.video, a.k, c.jobs);
    if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + a.out);
    write_feature_table(out, rows);
    out.close();
    if (!out) throw IoError("write failed for " + a.out);
    cli::RunRecord run(cmd, "features");
    run.result()["frame_count"] = rows.size();
    run.result()["labelled"] = !rows.empty() && rows.front().label.has_value();
    run.write_for_file(a.out);
}

void run_train(const TrainArgs& a, const CLI::App& cmd) {
    require_file(a.features, "--features");
    std::ifstream in(a.features, std::ios::binary);
    const auto rows = read_feature_table(in);
    std::vector<FocusFeatures> features;
    std::vector<FrameLabel> labels;
    for (const auto& r : rows) {
        if (!r.label) throw InputError("feature table has no label column; train from a synthesized dataset");
        features.push_back(r.features);
        labels.push_back(*r.label);
    }
    FitConfig cfg;
    cfg.l2 = a.l2;
    cfg.learning_rate = a.learning_rate;
    cfg.max_iterations = a.max_iterations;
    const FitResult fit = fit_logistic(features, labels, cfg);
    for (const auto& w : fit.warnings) cli::warn(w);
    if (!fit.converged) cli::warn("gradient descent stopped after " + std::to_string(fit.iterations) + " iterations");
    write_text_file(a.out, model_to_json(fit.model));

    const auto report = evaluate_detector(fit.model, features, labels);
    cli::RunRecord run(cmd, "train-detector");
    run.result()["samples"] = rows.size();
    run.result()["iterations"] = fit.iterations;
    run.result()["converged"] = fit.converged;
    run.result()["final_loss"] = fit.final_loss;
    run.result()["train_accuracy"] = report.accuracy;
    run.result()["train_f1"] = report.f1;
    run.result()["warnings"] = fit.warnings;
    run.write_for_file(a.out);
}

void run_detect(const DetectArgs& a, const Common& c, const CLI::App& cmd) {
    require_dir(a.video, "--video");
    const DetectorModel model = load_model(a.model);
    SearchConfig search{a.gamma};
    if (search.gamma < 1) throw ParameterError("--gamma must be >= 1");
    const Video video = load_video(cli::frames_dir(a.video));
    const auto decisions = detect(video.frames, model_classifier(model), search, c.jobs);
    write_text_file(a.out, detection_csv(decisions, false));
    std::size_t sharp = 0;
    for (const auto& d : decisions) sharp += is_sharp(d.label) ? 1 : 0;
    cli::RunRecord run(cmd, "detect");
    run.result()["frame_count"] = decisions.size();
    run.result()["predicted_sharp"] = sharp;
    run.write_for_file(a.out);
}

void run_ree(const ReeArgs& a, const Common& c, const CLI::App& cmd) {
    require_dir(a.video, "--video");
    const ReeConfig cfg = make_ree(a.iterations, a.psf_size, a.psf_sigma, a.tv_weight);
    const fs::path in_dir = cli::frames_dir(a.video);
    const auto files = list_frames(in_dir);
    if (files.empty()) throw InputError("no PNG frames in " + in_dir.string());
    std::vector<BitDepth> depths(files.size());
    fs::create_directories(a.out);
    parallel_for(files.size(), c.jobs, [&](std::size_t i) {
        const LoadedFrame f = read_png(files[i]);
        depths[i] = f.depth;
        write_png(fs::path(a.out) / frame_filename(i), ree(f.frame, cfg), f.depth);
    });
    for (auto d : depths) {
        if (d != depths.front()) cli::warn("input frames mix 8- and 16-bit depths");
    }
    cli::RunRecord run(cmd, "ree");
    run.result()["frame_count"] = files.size();
    run.write_for_dir(a.out);
}

void run_deblur(const DeblurArgs& a, const Common& c, const CLI::App& cmd) {
    require_dir(a.video, "--video");
    const DetectorModel model = load_model(a.model);
    PipelineConfig cfg;
    cfg.search.gamma = a.gamma;
    cfg.kernel_size = model.kernel_size;
    cfg.jobs = c.jobs;
    cfg.restorer.backend = parse_backend(a.backend);
    cfg.restorer.rl = make_ree(a.iterations, a.psf_size, a.psf_sigma, a.tv_weight);
    if (cfg.restorer.backend == RestorerBackend::external) {
        if (a.external.empty()) throw ParameterError("--backend external needs --external-command");
        cfg.restorer.external.command = a.external;
        cfg.restorer.external.args = a.external_args;
    }
    const Video video = load_video(cli::frames_dir(a.video));
    const PipelineResult result = run_pipeline(video.frames, model, cfg);
    save_video(a.out, result.restored, video.depth);
    write_text_file(fs::path(a.out) / "detection.csv", detection_csv(result.decisions, true));

    std::size_t conditioned = 0;
    for (const auto& d : result.decisions) conditioned += d.branch == Branch::sharp_conditioned ? 1 : 0;
    cli::RunRecord run(cmd, "deblur");
    run.result()["frame_count"] = result.restored.size();
    run.result()["sharp_conditioned"] = conditioned;
    run.result()["bit_depth"] = static_cast<int>(video.depth);
    run.write_for_dir(a.out);
}

void run_eval(const EvalArgs& a, const Common& c, const CLI::App& cmd) {
    require_dir(a.restored, "--restored");
    require_dir(a.gt, "--gt");
    const Video restored = load_video(cli::frames_dir(a.restored));
    const Video gt = load_video(cli::frames_dir(a.gt, "gt"));
    EvalReport report = evaluate_video(restored.frames, gt.frames, c.jobs);
    report.dataset = fs::path(a.gt).lexically_normal().filename().string();
    if (is_dataset_dir(a.gt)) report.ratio = read_manifest(a.gt).ratio_target;
    write_text_file(a.out, report_to_json(report));
    cli::RunRecord run(cmd, "eval");
    run.result()["frame_count"] = report.frame_count();
    run.write_for_file(a.out);
}

void run_eval_ratios(const EvalArgs& a, const CLI::App& cmd) {
    std::vector<RatioRecord> records;
    std::vector<std::string> sources;
    for (const auto& d : a.datasets) {
        if (!is_dataset_dir(d)) throw InputError("not a synthesized dataset: " + d);
        const DatasetManifest m = read_manifest(d);
        const std::string source = m.source.empty() ? d : m.source;
        auto it = std::find(sources.begin(), sources.end(), source);
        if (it == sources.end()) {
            sources.push_back(source);
            it = sources.end() - 1;
        }
        records.push_back(ratio_record("#" + std::to_string(it - sources.begin() + 1), m.ratio_target, m.labels));
    }
    const RatioTable table = ratio_report(records);
    write_text_file(a.ratios_out, ratio_table_csv(table));
    cli::RunRecord run(cmd, "eval ratios");
    run.result()["videos"] = sources;
    run.result()["averages"] = table.averages;
    run.write_for_file(a.ratios_out);
}

void add_ree_options(CLI::App* sub, int& iterations, int& psf_size, double& psf_sigma, double& tv_weight) {
    sub->add_option("--iterations", iterations, "Richardson-Lucy iterations")->capture_default_str();
    sub->add_option("--psf-size", psf_size, "Gaussian PSF size (odd)")->capture_default_str();
    sub->add_option("--psf-sigma", psf_sigma, "Gaussian PSF sigma")->capture_default_str();
    sub->add_option("--tv-weight", tv_weight, "total-variation weight, 0 disables")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp-frame guided video deblurring toolkit", "sharpframe"};
    app.set_config("--config", "", "key=value settings file (flags take precedence)");
    app.require_subcommand(1);
    app.set_version_flag("--version", SHARPFRAME_VERSION);

    Common common;
    app.add_option("--jobs", common.jobs, "worker threads, 0 = all cores")->capture_default_str();

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "synthesize a labelled blur dataset from a high-frame-rate sequence");
    s->add_option("--hfr", synth.hfr, "directory of HFR PNG frames")->required();
    s->add_option("--ratio", synth.ratio, "target sharp ratio in [0, 0.5]")->required();
    s->add_option("--seed", synth.seed, "random seed")->required();
    s->add_option("--out", synth.out, "output dataset directory")->required();
    s->add_option("--name", synth.name, "source name recorded in the manifest (default: HFR dir name)");

    FeaturesArgs feat;
    auto* f = app.add_subcommand("features", "compute focus features per frame");
    f->add_option("--video", feat.video, "frame directory or dataset directory")->required();
    f->add_option("--k", feat.k, "metric kernel size")->capture_default_str();
    f->add_option("--out", feat.out, "output CSV")->required();

    TrainArgs train;
    auto* t = app.add_subcommand("train-detector", "fit the sharp-frame classifier");
    t->add_option("--features", train.features, "labelled feature CSV")->required();
    t->add_option("--out", train.out, "output model JSON")->required();
    t->add_option("--l2", train.l2, "L2 penalty")->capture_default_str();
    t->add_option("--learning-rate", train.learning_rate, "gradient step")->capture_default_str();
    t->add_option("--max-iterations", train.max_iterations, "iteration cap")->capture_default_str();

    DetectArgs det;
    auto* d = app.add_subcommand("detect", "classify frames and locate the closest sharp frame");
    d->add_option("--video", det.video, "frame directory or dataset directory")->required();
    d->add_option("--model", det.model, "model JSON")->required();
    d->add_option("--gamma", det.gamma, "frames searched backwards")->capture_default_str();
    d->add_option("--out", det.out, "output CSV")->required();

    ReeArgs ree_args;
    auto* r = app.add_subcommand("ree", "edge-emphasise frames with Richardson-Lucy");
    r->add_option("--video", ree_args.video, "frame directory or dataset directory")->required();
    add_ree_options(r, ree_args.iterations, ree_args.psf_size, ree_args.psf_sigma, ree_args.tv_weight);
    r->add_option("--out", ree_args.out, "output frame directory")->required();

    DeblurArgs deb;
    auto* b = app.add_subcommand("deblur", "run the full restoration pipeline");
    b->add_option("--video", deb.video, "frame directory or dataset directory")->required();
    b->add_option("--model", deb.model, "model JSON")->required();
    b->add_option("--backend", deb.backend, "passthrough, rl_deconv or external")
        ->capture_default_str()
        ->check(CLI::IsMember({"passthrough", "rl_deconv", "external"}));
    b->add_option("--gamma", deb.gamma, "frames searched backwards")->capture_default_str();
    add_ree_options(b, deb.iterations, deb.psf_size, deb.psf_sigma, deb.tv_weight);
    b->add_option("--external-command", deb.external, "restorer executable for --backend external");
    b->add_option("--external-arg", deb.external_args, "extra argument passed to the restorer (repeatable)");
    b->add_option("--out", deb.out, "output frame directory")->required();

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "PSNR/SSIM of restored frames, or ratio tables");
    e->add_option("--restored", ev.restored, "restored frame directory");
    e->add_option("--gt", ev.gt, "ground-truth frame directory or dataset directory");
    e->add_option("--out", ev.out, "output report JSON");
    auto* er = e->add_subcommand("ratios", "measured sharp ratios of synthesized datasets");
    er->add_option("--datasets", ev.datasets, "dataset directories")->required();
    er->add_option("--out", ev.ratios_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
        if (*e && !*er) {
            for (const char* name : {"--restored", "--gt", "--out"}) {
                if (e->count(name) == 0) throw CLI::RequiredError(name);
            }
        }
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);
        std::cerr << "error: usage: " << err.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (common.jobs < 0) throw ParameterError("--jobs must be >= 0");
        if (*s) run_synth(synth, *s);
        else if (*f) run_features(feat, common, *f);
        else if (*t) run_train(train, *t);
        else if (*d) run_detect(det, common, *d);
        else if (*r) run_ree(ree_args, common, *r);
        else if (*b) run_deblur(deb, common, *b);
        else if (*er) run_eval_ratios(ev, *er);
        else if (*e) run_eval(ev, common, *e);
    } catch (const Error& err) {
        std::cerr << "error: " << to_string(err.kind()) << ": " << err.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& err) {
        std::cerr << "error: io: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: internal: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
