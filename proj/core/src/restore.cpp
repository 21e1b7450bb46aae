#include <sharpframe/restore.hpp>

#include <sharpframe/error.hpp>

#include <algorithm>
#include <cmath>

namespace sharpframe {

namespace {

constexpr double kTvFloor = 1e-3;

// K (*) I written as I + sum K(q) (I(p - q) - I(p)); see richardson_lucy().
GrayImage apply_psf(const GrayImage& image, const Kernel& psf, Padding boundary) {
    const int kh = psf.rows();
    const int kw = psf.cols();
    const GrayImage p = pad_image(image, kh / 2, kh / 2, kw / 2, kw / 2, boundary);
    GrayImage out(image.height(), image.width());
    for (int i = 0; i < image.height(); ++i) {
        for (int j = 0; j < image.width(); ++j) {
            const double centre = image(i, j);
            double acc = 0.0;
            for (int a = 0; a < kh; ++a) {
                const int r = i + kh - 1 - a;
                for (int b = 0; b < kw; ++b) {
                    acc += psf(a, b) * (p(r, j + kw - 1 - b) - centre);
                }
            }
            out(i, j) = centre + acc;
        }
    }
    return out;
}

// div(grad I / |grad I|) with forward differences and the matching backward
// divergence; Neumann boundary.
GrayImage tv_curvature(const GrayImage& image) {
    const int h = image.height();
    const int w = image.width();
    GrayImage nx(h, w);
    GrayImage ny(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double gx = c + 1 < w ? image(r, c + 1) - image(r, c) : 0.0;
            const double gy = r + 1 < h ? image(r + 1, c) - image(r, c) : 0.0;
            const double norm = std::sqrt(gx * gx + gy * gy);
            if (norm > 0.0) {
                nx(r, c) = gx / norm;
                ny(r, c) = gy / norm;
            }
        }
    }
    GrayImage div(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double dx = nx(r, c) - (c > 0 ? nx(r, c - 1) : 0.0);
            const double dy = ny(r, c) - (r > 0 ? ny(r - 1, c) : 0.0);
            div(r, c) = dx + dy;
        }
    }
    return div;
}

} // namespace

void ReeConfig::validate() const {
    if (iterations < 1) throw ParameterError("ree: iterations must be >= 1");
    if (!(epsilon > 0.0)) throw ParameterError("ree: epsilon must be > 0");
    if (!(tv_weight >= 0.0) || !std::isfinite(tv_weight)) throw ParameterError("ree: tv_weight must be >= 0");
    if (psf.rows() % 2 == 0 || psf.cols() % 2 == 0) throw ParameterError("ree: PSF dimensions must be odd");
    if (!psf.is_normalized()) throw ParameterError("ree: PSF must sum to 1 (got " + std::to_string(psf.sum()) + ")");
    if (boundary == Padding::valid || boundary == Padding::zero) {
        throw ParameterError("ree: boundary must be reflect or periodic");
    }
}

GrayImage richardson_lucy(const GrayImage& observed, const ReeConfig& config) {
    config.validate();
    for (double v : observed.data()) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("richardson_lucy: input must be finite and non-negative");
    }
    const Kernel adjoint = config.psf.flipped();
    const double eps = config.epsilon;
    GrayImage estimate = observed;
    GrayImage ratio(observed.height(), observed.width());
    auto b = observed.data();
    for (int it = 0; it < config.iterations; ++it) {
        const GrayImage blurred = apply_psf(estimate, config.psf, config.boundary);
        auto k = blurred.data();
        auto q = ratio.data();
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = (b[i] + eps) / (k[i] + eps);
        const GrayImage correction = apply_psf(ratio, adjoint, config.boundary);
        auto corr = correction.data();
        auto e = estimate.data();
        if (config.tv_weight > 0.0) {
            const GrayImage curvature = tv_curvature(estimate);
            auto cv = curvature.data();
            for (std::size_t i = 0; i < e.size(); ++i) {
                const double damping = std::max(1.0 - config.tv_weight * cv[i], kTvFloor);
                e[i] = std::max(e[i] * corr[i] / damping, 0.0);
            }
        } else {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i] * corr[i], 0.0);
        }
    }
    return estimate;
}

Frame ree(const Frame& frame, const ReeConfig& config) {
    const GrayImage r = richardson_lucy(extract_channel(frame, 0), config);
    const GrayImage g = richardson_lucy(extract_channel(frame, 1), config);
    const GrayImage b = richardson_lucy(extract_channel(frame, 2), config);
    return merge_channels(r, g, b);
}

RestorerBackend parse_backend(const std::string& name) {
    if (name == "passthrough") return RestorerBackend::passthrough;
    if (name == "rl_deconv") return RestorerBackend::rl_deconv;
    if (name == "external") return RestorerBackend::external;
    throw ParameterError("unknown restorer backend '" + name + "' (passthrough, rl_deconv, external)");
}

std::string to_string(RestorerBackend backend) {
    switch (backend) {
    case RestorerBackend::passthrough: return "passthrough";
    case RestorerBackend::rl_deconv: return "rl_deconv";
    case RestorerBackend::external: return "external";
    }
    return "unknown";
}

Frame restore_frame(const Triplet& x, const Triplet& c, const Frame* sharp, const RestorerSpec& spec) {
    const Frame& ref = x.current;
    for (const Frame* f : {&x.previous, &x.next, &c.previous, &c.current, &c.next}) {
        if (!f->same_shape(ref)) throw DimensionError("restore_frame: triplet frames differ in size");
    }
    if (sharp && !sharp->same_shape(ref)) throw DimensionError("restore_frame: sharp frame differs in size");

    switch (spec.backend) {
    case RestorerBackend::passthrough:
        return ref;
    case RestorerBackend::rl_deconv:
        return ree(ref, spec.rl);
    case RestorerBackend::external: {
        Frame out = run_external_restorer(spec.external, x, sharp);
        if (!out.same_shape(ref)) {
            throw BackendError("external restorer returned a " + std::to_string(out.height()) + "x" +
                               std::to_string(out.width()) + " frame for a " + std::to_string(ref.height()) +
                               "x" + std::to_string(ref.width()) + " input");
        }
        return out;
    }
    }
    throw ParameterError("restore_frame: unknown backend");
}

} // namespace sharpframe
