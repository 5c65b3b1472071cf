#include "docflow/synthgen.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "docflow/image_ops.hpp"
#include "docflow/util.hpp"

namespace docflow {

DistortionKind parse_distortion_kind(const std::string& name) {
    if (name == "perspective") return DistortionKind::Perspective;
    if (name == "curved") return DistortionKind::Curved;
    if (name == "folded") return DistortionKind::Folded;
    throw ConfigError("unknown distortion kind: " + name);
}

std::string to_string(DistortionKind kind) {
    switch (kind) {
        case DistortionKind::Perspective: return "perspective";
        case DistortionKind::Curved: return "curved";
        case DistortionKind::Folded: return "folded";
    }
    return "?";
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Analytic map from distorted pixel coordinates to flat source coordinates.
struct Warp {
    DistortionKind kind = DistortionKind::Perspective;
    int width = 0, height = 0;
    Eigen::Matrix3d H = Eigen::Matrix3d::Identity();  // perspective (squeeze folded in)
    // curved: dy(x) = sum_k amp_k sin(2 pi freq_k x / W + phase_k)
    std::vector<double> amp, freq, phase;
    // folded: d(p) += slope_j * max(0, n_j . (p - c_j))
    std::vector<Eigen::Vector2d> crease_point, crease_normal, crease_slope;
    // squeeze t -> s (t - c0) + c1 applied after the raw map (curved/folded)
    double squeeze = 1.0;
    Eigen::Vector2d c0 = Eigen::Vector2d::Zero(), c1 = Eigen::Vector2d::Zero();
    bool identity = false;

    Eigen::Vector2d raw(const Eigen::Vector2d& p) const {
        switch (kind) {
            case DistortionKind::Perspective: {
                const Eigen::Vector3d q = H * Eigen::Vector3d(p.x(), p.y(), 1.0);
                return q.head<2>() / q.z();
            }
            case DistortionKind::Curved: {
                double dy = 0;
                for (std::size_t k = 0; k < amp.size(); ++k)
                    dy += amp[k] * std::sin(2.0 * kPi * freq[k] * p.x() / width + phase[k]);
                return {p.x(), p.y() + dy};
            }
            case DistortionKind::Folded: {
                Eigen::Vector2d q = p;
                for (std::size_t j = 0; j < crease_point.size(); ++j) {
                    const double s = crease_normal[j].dot(p - crease_point[j]);
                    if (s > 0) q += crease_slope[j] * s;
                }
                return q;
            }
        }
        return p;
    }

    Eigen::Vector2d operator()(const Eigen::Vector2d& p) const {
        if (identity) return p;
        if (kind == DistortionKind::Perspective) return raw(p);
        return squeeze * (raw(p) - c0) + c1;
    }
};

Eigen::Matrix3d homography_from_corners(const Eigen::Vector2d src[4], const Eigen::Vector2d dst[4]) {
    Eigen::Matrix<double, 8, 8> A = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 1> b;
    for (int i = 0; i < 4; ++i) {
        const double x = src[i].x(), y = src[i].y();
        const double u = dst[i].x(), v = dst[i].y();
        A.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
        A.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
        b(2 * i) = u;
        b(2 * i + 1) = v;
    }
    const Eigen::Matrix<double, 8, 1> hv = A.colPivHouseholderQr().solve(b);
    Eigen::Matrix3d H;
    H << hv(0), hv(1), hv(2), hv(3), hv(4), hv(5), hv(6), hv(7), 1.0;
    return H;
}

Warp make_warp(int w, int h, const DistortionSpec& spec) {
    Warp warp;
    warp.kind = spec.kind;
    warp.width = w;
    warp.height = h;
    if (spec.magnitude == 0.0f) {
        warp.identity = true;
        return warp;
    }
    std::mt19937_64 rng(mix_seed(spec.seed, 0xd15707ull));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double mag = double(spec.magnitude);

    switch (spec.kind) {
        case DistortionKind::Perspective: {
            const double r = mag * 0.15 * w;
            const Eigen::Vector2d src[4] = {{0, 0},
                                            {double(w - 1), 0},
                                            {double(w - 1), double(h - 1)},
                                            {0, double(h - 1)}};
            Eigen::Vector2d dst[4];
            for (int i = 0; i < 4; ++i) {
                const double ang = 2.0 * kPi * uni(rng);
                const double rad = r * std::sqrt(uni(rng));
                dst[i] = src[i] + rad * Eigen::Vector2d(std::cos(ang), std::sin(ang));
            }
            warp.H = homography_from_corners(src, dst);
            break;
        }
        case DistortionKind::Curved: {
            const int k = 2 + static_cast<int>(rng() % 3);  // 2..4 sinusoids
            double slope_sum = 0;
            for (int i = 0; i < k; ++i) {
                const double f = 0.5 + 1.5 * uni(rng);
                const double a = 0.3 + 0.7 * uni(rng);
                warp.freq.push_back(f);
                warp.amp.push_back(a);
                warp.phase.push_back(2.0 * kPi * uni(rng));
                slope_sum += a * 2.0 * kPi * f / w;
            }
            const double scale = 0.45 * mag / slope_sum;
            for (double& a : warp.amp) a *= scale;
            break;
        }
        case DistortionKind::Folded: {
            const int j = spec.creases;
            std::vector<double> weights;
            double wsum = 0;
            for (int i = 0; i < j; ++i) {
                const double u = 0.3 + 0.7 * uni(rng);
                weights.push_back(u);
                wsum += u;
            }
            for (int i = 0; i < j; ++i) {
                const Eigen::Vector2d c(w * (0.2 + 0.6 * uni(rng)), h * (0.2 + 0.6 * uni(rng)));
                const double na = 2.0 * kPi * uni(rng);
                const double va = 2.0 * kPi * uni(rng);
                const double slope = 0.45 * mag * weights[static_cast<std::size_t>(i)] / wsum;
                warp.crease_point.push_back(c);
                warp.crease_normal.emplace_back(std::cos(na), std::sin(na));
                warp.crease_slope.push_back(slope *
                                            Eigen::Vector2d(std::cos(va), std::sin(va)));
            }
            break;
        }
    }

    // squeeze the mapped frame into the flat page so every distorted pixel
    // keeps an in-bounds source position
    Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
    auto grow = [&](const Eigen::Vector2d& q) {
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
    };
    if (spec.kind == DistortionKind::Perspective) {
        grow(warp.raw({0, 0}));
        grow(warp.raw({double(w - 1), 0}));
        grow(warp.raw({double(w - 1), double(h - 1)}));
        grow(warp.raw({0, double(h - 1)}));
    } else {
        const int n = 256;
        for (int iy = 0; iy <= n; ++iy)
            for (int ix = 0; ix <= n; ++ix)
                grow(warp.raw({double(w - 1) * ix / n, double(h - 1) * iy / n}));
    }
    const Eigen::Vector2d target_lo(1.0, 1.0);
    const Eigen::Vector2d target_hi(double(w - 2), double(h - 2));
    const Eigen::Vector2d bbox = (hi - lo).cwiseMax(1e-9);
    const Eigen::Vector2d target = target_hi - target_lo;
    const double s = std::min({1.0, target.x() / bbox.x(), target.y() / bbox.y()});
    warp.squeeze = s;
    warp.c0 = 0.5 * (lo + hi);
    warp.c1 = 0.5 * (target_lo + target_hi);
    if (spec.kind == DistortionKind::Perspective) {
        Eigen::Matrix3d S = Eigen::Matrix3d::Identity();
        S(0, 0) = S(1, 1) = s;
        S(0, 2) = warp.c1.x() - s * warp.c0.x();
        S(1, 2) = warp.c1.y() - s * warp.c0.y();
        warp.H = S * warp.H;
    }
    return warp;
}

}  // namespace

SyntheticSample generate(const RasterImage& flat, const DistortionSpec& spec) {
    if (flat.width() < 256 || flat.height() < 256)
        throw SizeError("generate: flat page must be at least 256x256");
    if (spec.magnitude < 0.0f || spec.magnitude > 1.0f)
        throw ConfigError("generate: magnitude must be in [0,1]");
    if (spec.kind == DistortionKind::Folded && (spec.creases < 1 || spec.creases > 4))
        throw ConfigError("generate: creases must be in [1,4]");

    const int w = flat.width(), h = flat.height();
    const Warp warp = make_warp(w, h, spec);

    SyntheticSample sample;
    sample.spec = spec;
    sample.flat = flat;
    sample.distorted = RasterImage(w, h, flat.channels());
    sample.gt_flow = FlowField(w, h);

    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const Eigen::Vector2d src = warp({double(x), double(y)});
            const bool in = src.x() >= 0.0 && src.x() <= double(w - 1) && src.y() >= 0.0 &&
                            src.y() <= double(h - 1);
            sample.gt_flow.mask(y, x) = in ? 1 : 0;
            sample.gt_flow.u(y, x) = in ? float(src.x() - x) : 0.0f;
            sample.gt_flow.v(y, x) = in ? float(src.y() - y) : 0.0f;
            for (int c = 0; c < flat.channels(); ++c)
                sample.distorted.planes[static_cast<std::size_t>(c)](y, x) =
                    in ? sample_bilinear(flat.planes[static_cast<std::size_t>(c)],
                                         float(src.x()), float(src.y()))
                       : 1.0f;
        }
    });
    return sample;
}

Planef shading_field(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 0x50adeull));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int k = 3;
    double fx[k], fy[k], ph[k], am[k];
    for (int i = 0; i < k; ++i) {
        fx[i] = -1.5 + 3.0 * uni(rng);
        fy[i] = -1.5 + 3.0 * uni(rng);
        ph[i] = 2.0 * kPi * uni(rng);
        am[i] = 0.3 + 0.7 * uni(rng);
    }
    Planef field(height, width);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double v = 0;
            for (int i = 0; i < k; ++i)
                v += am[i] * std::cos(2.0 * kPi * (fx[i] * x / width + fy[i] * y / height) + ph[i]);
            field(y, x) = float(v);
        }
    const float lo = field.minCoeff();
    const float hi = field.maxCoeff();
    const float span = hi - lo > 1e-12f ? hi - lo : 1.0f;
    field = 0.4f + 0.6f * (field - lo) / span;
    return field;
}

RasterImage generate_shaded(const SyntheticSample& sample, std::uint64_t seed) {
    const Planef field = shading_field(sample.distorted.width(), sample.distorted.height(), seed);
    RasterImage out = sample.distorted;
    const int nc = std::min(out.channels(), 3);  // alpha untouched
    for (int c = 0; c < nc; ++c) out.plane(c) *= field;
    return out;
}

}  // namespace docflow
