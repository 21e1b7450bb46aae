#include <sharpframe/eval.hpp>

#include <sharpframe/error.hpp>
#include <sharpframe/filters.hpp>
#include <sharpframe/pipeline.hpp>
#include <sharpframe/synth.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sharpframe {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same_shape(const Frame& a, const Frame& b, const char* what) {
    if (!a.same_shape(b)) {
        throw InputError(std::string(what) + ": frames differ in size (" + std::to_string(a.height()) + "x" +
                         std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                         std::to_string(b.width()) + ")");
    }
}

nlohmann::ordered_json number_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string format_ratio(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

double psnr(const Frame& a, const Frame& b) {
    require_same_shape(a, b, "psnr");
    auto x = a.data();
    auto y = b.data();
    if (x.empty()) throw InputError("psnr: empty frames");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(x.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Frame& a, const Frame& b) {
    require_same_shape(a, b, "ssim");
    if (a.height() < kSsimWindow || a.width() < kSsimWindow) {
        throw InputError("ssim: frames must be at least 11x11");
    }
    const GrayImage x = to_grayscale(a);
    const GrayImage y = to_grayscale(b);
    const Kernel g = gaussian_psf(kSsimWindow, kSsimSigma);

    const int oh = x.height() - kSsimWindow + 1;
    const int ow = x.width() - kSsimWindow + 1;
    double total = 0.0;
    for (int r = 0; r < oh; ++r) {
        for (int c = 0; c < ow; ++c) {
            double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
            for (int u = 0; u < kSsimWindow; ++u) {
                for (int v = 0; v < kSsimWindow; ++v) {
                    const double w = g(u, v);
                    const double p = x(r + u, c + v);
                    const double q = y(r + u, c + v);
                    mx += w * p;
                    my += w * q;
                    sxx += w * (p * p);
                    syy += w * (q * q);
                    sxy += w * (p * q);
                }
            }
            // Written so that swapping a and b, or a == b, is exact.
            const double vx = sxx - mx * mx;
            const double vy = syy - my * my;
            const double cov = sxy - mx * my;
            const double num = (2.0 * (mx * my) + kC1) * (2.0 * cov + kC2);
            const double den = (mx * mx + my * my + kC1) * (vx + vy + kC2);
            total += num / den;
        }
    }
    return total / (static_cast<double>(oh) * ow);
}

EvalReport evaluate_video(std::span<const Frame> restored, std::span<const Frame> ground_truth, int jobs) {
    if (restored.empty()) throw InputError("evaluate_video: empty video");
    if (restored.size() != ground_truth.size()) {
        throw InputError("evaluate_video: " + std::to_string(restored.size()) + " restored frames vs " +
                         std::to_string(ground_truth.size()) + " ground truths");
    }
    EvalReport report;
    report.psnr.resize(restored.size());
    report.ssim.resize(restored.size());
    parallel_for(restored.size(), jobs, [&](std::size_t i) {
        report.psnr[i] = psnr(restored[i], ground_truth[i]);
        report.ssim[i] = ssim(restored[i], ground_truth[i]);
    });

    double psnr_sum = 0.0;
    std::size_t finite = 0;
    for (double p : report.psnr) {
        if (std::isinf(p)) {
            ++report.infinite_psnr_count;
        } else {
            psnr_sum += p;
            ++finite;
        }
    }
    report.mean_psnr = finite > 0 ? psnr_sum / static_cast<double>(finite) : std::numeric_limits<double>::infinity();
    double ssim_sum = 0.0;
    for (double s : report.ssim) ssim_sum += s;
    report.mean_ssim = ssim_sum / static_cast<double>(report.ssim.size());
    return report;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    if (!report.dataset.empty()) j["dataset"] = report.dataset;
    if (report.ratio) j["ratio"] = *report.ratio;
    nlohmann::ordered_json summary;
    summary["frame_count"] = report.frame_count();
    summary["mean_psnr"] = number_or_inf(report.mean_psnr);
    summary["mean_ssim"] = report.mean_ssim;
    summary["infinite_psnr_count"] = report.infinite_psnr_count;
    summary["all_psnr_infinite"] = report.all_psnr_infinite();
    j["summary"] = summary;
    auto psnr_values = nlohmann::ordered_json::array();
    for (double p : report.psnr) psnr_values.push_back(number_or_inf(p));
    j["frames"]["psnr"] = psnr_values;
    j["frames"]["ssim"] = report.ssim;
    return j.dump(2) + "\n";
}

RatioRecord ratio_record(std::string video, double target, LabelSpan labels) {
    return {std::move(video), target, measured_ratio(labels)};
}

RatioTable ratio_report(std::span<const RatioRecord> records) {
    if (records.empty()) throw InputError("ratio_report: no datasets");
    RatioTable table;
    for (const auto& r : records) {
        if (std::find(table.targets.begin(), table.targets.end(), r.target) == table.targets.end()) {
            table.targets.push_back(r.target);
        }
        if (std::find(table.videos.begin(), table.videos.end(), r.video) == table.videos.end()) {
            table.videos.push_back(r.video);
        }
    }
    std::sort(table.targets.begin(), table.targets.end());
    table.cells.assign(table.videos.size(), std::vector<std::optional<double>>(table.targets.size()));
    for (const auto& r : records) {
        const auto row = std::find(table.videos.begin(), table.videos.end(), r.video) - table.videos.begin();
        const auto col = std::find(table.targets.begin(), table.targets.end(), r.target) - table.targets.begin();
        if (table.cells[row][col]) {
            throw InputError("ratio_report: duplicate entry for video " + r.video + " at r=" + format_ratio(r.target));
        }
        table.cells[row][col] = r.measured;
    }
    table.averages.resize(table.targets.size());
    for (std::size_t c = 0; c < table.targets.size(); ++c) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& row : table.cells) {
            if (row[c]) {
                sum += *row[c];
                ++n;
            }
        }
        table.averages[c] = sum / static_cast<double>(n);
    }
    return table;
}

std::string ratio_table_csv(const RatioTable& table) {
    std::string out = "video";
    for (double t : table.targets) {
        char buf[40];
        std::snprintf(buf, sizeof buf, ",r=%g", t);
        out += buf;
    }
    out += '\n';
    for (std::size_t r = 0; r < table.videos.size(); ++r) {
        out += table.videos[r];
        for (const auto& cell : table.cells[r]) {
            out += ',';
            if (cell) out += format_ratio(*cell);
        }
        out += '\n';
    }
    out += "Average";
    for (double a : table.averages) out += ',' + format_ratio(a);
    out += '\n';
    return out;
}

} // namespace sharpframe
