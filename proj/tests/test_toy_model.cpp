#include <doctest.h>

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "asd/image_ops.hpp"
#include "asd/rng.hpp"
#include "asd/toy_model.hpp"

using namespace asd;

namespace {

Plane random_plane(int h, int w, int c, std::uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    Plane p(h, w, c);
    for (auto& v : p.data()) v = scale * rng.normal();
    return p;
}

}  // namespace

TEST_CASE("iid denoiser: prior-mean input predicts zero noise") {
    GaussianPrior prior;
    prior.mean = 0.3;
    prior.sigma = 0.8;
    const double ab = 0.6;
    const Plane z(4, 4, 2, std::sqrt(ab) * 0.3);
    const Plane e = eps_iid_exact_at(z, ab, prior);
    for (double v : e.data()) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("iid denoiser: deterministic-data limit") {
    GaussianPrior prior;
    prior.mean = -0.2;
    prior.sigma = 1e-9;
    const double ab = 0.7;
    const Plane z = random_plane(3, 3, 1, 4);
    const Plane e = eps_iid_exact_at(z, ab, prior);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double expect = (z.data()[i] - std::sqrt(ab) * prior.mean) / std::sqrt(1 - ab);
        CHECK(e.data()[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("iid denoiser matches a Monte-Carlo posterior estimate") {
    // E[eps | z] estimated from joint samples with z in a narrow window around 1.
    GaussianPrior prior;
    prior.mean = 0.0;
    prior.sigma = 1.0;
    const double ab = 0.5;
    const double z0 = 1.0, half = 0.01;
    Rng rng(31337);
    double sum = 0.0, sum2 = 0.0;
    long n = 0;
    for (long i = 0; i < 4000000; ++i) {
        const double x0 = prior.mean + prior.sigma * rng.normal();
        const double eps = rng.normal();
        const double z = std::sqrt(ab) * x0 + std::sqrt(1 - ab) * eps;
        if (std::abs(z - z0) < half) {
            sum += eps;
            sum2 += eps * eps;
            ++n;
        }
    }
    REQUIRE(n > 10000);
    const double mc = sum / n;
    const double se = std::sqrt((sum2 / n - mc * mc) / n);
    const double got = eps_iid_exact_at(Plane(1, 1, 1, z0), ab, prior).at(0, 0);
    CHECK(std::abs(got - mc) < 3.0 * se);
    CHECK(got == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("iid denoiser refuses the noise-free endpoint") {
    GaussianPrior prior;
    CHECK_THROWS_AS(eps_iid_exact_at(Plane(1, 1, 1), 1.0, prior), ConfigError);
    prior.kernel = {0.25, 0.5, 0.25};
    CHECK_THROWS_AS(eps_iid_exact_at(Plane(1, 1, 1), 0.5, prior), ConfigError);
}

TEST_CASE("correlated denoiser with identity kernel equals the iid one") {
    GaussianPrior iid;
    iid.mean = 0.1;
    iid.sigma = 0.9;
    GaussianPrior ident = iid;
    ident.kernel = {1.0};
    const Plane z = random_plane(9, 12, 3, 2);
    const Plane a = eps_iid_exact_at(z, 0.4, iid);
    const Plane b = eps_correlated_at(z, 0.4, ident, Receptive::whole());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.data()[i] - b.data()[i]) < 1e-9);
}

TEST_CASE("correlated denoiser maps matched constants to zero") {
    GaussianPrior prior;
    prior.mean = 0.7;
    prior.sigma = 2.0;
    prior.kernel = gaussian_kernel(3, 1.5);
    const double ab = 0.3;
    const Plane z(10, 14, 1, std::sqrt(ab) * 0.7);
    const Plane e = eps_correlated_at(z, ab, prior, Receptive::whole());
    for (double v : e.data()) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("correlated denoiser matches a dense linear solve") {
    const int n = 16;
    GaussianPrior prior;
    prior.mean = 0.2;
    prior.sigma = 1.3;
    prior.kernel = {0.25, 0.5, 0.25};
    const double ab = 0.55;
    const Plane z = random_plane(n, n, 1, 8);

    // K: separable circular blur on the n x n torus, as an n^2 x n^2 matrix.
    Eigen::MatrixXd k1 = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = -1; j <= 1; ++j) k1(i, ((i + j) % n + n) % n) += prior.kernel[static_cast<std::size_t>(j + 1)];
    Eigen::MatrixXd k(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) k.block(a * n, b * n, n, n) = k1(a, b) * k1;
    const Eigen::MatrixXd sigma = prior.sigma * prior.sigma * k * k.transpose();
    const Eigen::MatrixXd a = ab * sigma + (1 - ab) * Eigen::MatrixXd::Identity(n * n, n * n);
    Eigen::VectorXd rhs(n * n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) rhs(y * n + x) = z.at(y, x) - std::sqrt(ab) * prior.mean;
    const Eigen::VectorXd v = a.ldlt().solve(rhs);

    const Plane e = eps_correlated_at(z, ab, prior, Receptive::whole());
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) CHECK(std::abs(e.at(y, x) - std::sqrt(1 - ab) * v(y * n + x)) < 1e-10);
}

TEST_CASE("correlated denoiser needs a kernel") {
    GaussianPrior prior;
    CHECK_THROWS_AS(eps_correlated_at(Plane(4, 4, 1), 0.5, prior, Receptive::whole()), ConfigError);
}

TEST_CASE("more tile context brings the tile-limited output closer to the full one") {
    GaussianPrior prior;
    prior.sigma = 1.0;
    prior.kernel = gaussian_kernel(4, 2.0);
    const TileRect rect{16, 16, 16, 16};
    int better = 0;
    for (int s = 0; s < 20; ++s) {
        const Plane z = random_plane(64, 64, 1, 100 + s);
        const Plane full = eps_correlated_at(z, 0.3, prior, Receptive::whole()).crop(16, 16, 16, 16);
        const auto err = [&](int pad) {
            const Plane t = eps_correlated_at(z, 0.3, prior, Receptive::tile(rect, pad));
            double e = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) e += std::abs(t.data()[i] - full.data()[i]);
            return e / static_cast<double>(t.size());
        };
        if (err(16) < err(0)) ++better;
    }
    CHECK(better == 20);
}

TEST_CASE("tile-limited output has the tile shape and honours the boundary mode") {
    DenoiserSpec spec;
    spec.kind = DenoiserKind::correlated_tile_limited;
    spec.prior.kernel = gaussian_kernel(2, 1.0);
    spec.tile_pad = 4;
    const auto sched = make_linear_schedule(10);
    const Plane z = random_plane(20, 30, 2, 6);
    const Plane e = predict_noise(spec, z, {10, 4, 8, 8}, 5, sched);
    CHECK(e.height() == 8);
    CHECK(e.width() == 8);
    CHECK(e.channels() == 2);
    // whole-canvas tile with zero pad and circular context is the full filter
    spec.tile_pad = 0;
    spec.prior.boundary = BoundaryMode::circular;
    const Plane whole = predict_noise(spec, z, {0, 0, 30, 20}, 5, sched);
    const Plane full = eps_correlated(z, 5, spec.prior, sched, Receptive::whole());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(whole.data()[i] - full.data()[i]) < 1e-12);
    int token = 0;
    CHECK(predict_noise(spec, z, {0, 0, 30, 20}, 5, sched, &token) == whole);
}

TEST_CASE("denoiser spec validation") {
    DenoiserSpec spec;
    spec.prior.sigma = 0.0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.prior.sigma = 1.0;
    spec.kind = DenoiserKind::correlated_exact;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.prior.kernel = {0.5, 0.5};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.prior.kernel = {0.2, 0.5, 0.2};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.prior.kernel = {0.25, 0.5, 0.25};
    spec.tile_pad = -1;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.tile_pad = 0;
    CHECK_NOTHROW(spec.validate());
    spec.kind = DenoiserKind::toy_parametric;
    spec.params = ToyParams::zeros(2);
    spec.params.values[1] = std::nan("");
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    CHECK(parse_denoiser_kind(to_string(DenoiserKind::correlated_tile_limited)) == DenoiserKind::correlated_tile_limited);
    CHECK_THROWS_AS(parse_denoiser_kind("unet"), ConfigError);
}

TEST_CASE("toy encoder") {
    Plane img(2, 2, 1);
    img.at(1, 0) = 1.0;
    img.at(1, 1) = 1.0;
    CHECK(encode(img, 2).at(0, 0) == 0.0);
    CHECK(encode(img, 1).at(1, 1) == 1.0);
    CHECK(encode(img, 1).at(0, 0) == -1.0);
    CHECK_THROWS_AS(encode(Plane(6, 6, 1), 4), DimensionError);

    Rng rng(5);
    Plane r(8, 8, 1);
    for (auto& v : r.data()) v = rng.uniform();
    long double s = 0.0L;
    for (double v : r.data()) s += v;
    CHECK(encode(r, 8).at(0, 0) == doctest::Approx(static_cast<double>((s / 64.0L - 0.5L) * 2.0L)).epsilon(1e-14));
}

TEST_CASE("toy decoder") {
    const Plane flat = decode(Plane(3, 3, 3, 0.0), 4);
    CHECK(flat.height() == 12);
    for (double v : flat.data()) CHECK(v == 0.5);
    const Plane big = decode(random_plane(5, 5, 1, 1, 3.0), 2);
    for (double v : big.data()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("factor-one round trip") {
    // Exact whenever the affine maps are exact in binary (dyadic values);
    // within one rounding of the input otherwise.
    for (int k = 0; k <= 256; ++k) {
        Plane p(1, 1, 1, k / 256.0);
        CHECK(decode(encode(p, 1), 1).at(0, 0) == k / 256.0);
    }
    for (int k = 0; k <= 255; ++k) {
        const double v = k / 255.0;
        CHECK(std::abs(decode(encode(Plane(1, 1, 1, v), 1), 1).at(0, 0) - v) <= 0x1p-53);
    }
}

TEST_CASE("decode of encode equals upsampled block means") {
    Rng rng(6);
    Plane img(16, 24, 2);
    for (auto& v : img.data()) v = rng.uniform();
    const int f = 8;
    const Plane got = decode(encode(img, f), f);
    // independent block means and half-pixel bilinear interpolation
    const int bh = 2, bw = 3;
    std::vector<double> means(bh * bw * 2, 0.0);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 24; ++x)
            for (int c = 0; c < 2; ++c) means[((y / f) * bw + x / f) * 2 + c] += img.at(y, x, c) / (f * f);
    const auto coord = [](int i, int n, int factor) {
        double s = (i + 0.5) / factor - 0.5;
        return std::min(std::max(s, 0.0), static_cast<double>(n - 1));
    };
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 24; ++x) {
            const double sy = coord(y, bh, f), sx = coord(x, bw, f);
            const int y0 = static_cast<int>(sy), x0 = static_cast<int>(sx);
            const int y1 = std::min(y0 + 1, bh - 1), x1 = std::min(x0 + 1, bw - 1);
            const double fy = sy - y0, fx = sx - x0;
            for (int c = 0; c < 2; ++c) {
                const auto m = [&](int yy, int xx) { return means[(yy * bw + xx) * 2 + c]; };
                const double v = (1 - fy) * ((1 - fx) * m(y0, x0) + fx * m(y0, x1)) + fy * ((1 - fx) * m(y1, x0) + fx * m(y1, x1));
                CHECK(got.at(y, x, c) == doctest::Approx(v).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("parametric denoiser buckets") {
    CHECK(param_bucket(1, 50, 10) == 0);
    CHECK(param_bucket(5, 50, 10) == 0);
    CHECK(param_bucket(6, 50, 10) == 1);
    CHECK(param_bucket(50, 50, 10) == 9);
    CHECK_THROWS_AS(param_bucket(0, 50, 10), OrderingError);
    ToyParams p = ToyParams::zeros(2);
    p.values = {2.0, 3.0, 0.5, -1.0};
    const Plane e = eps_toy_parametric(Plane(1, 2, 1, 1.5), 10, 10, p);
    CHECK(e.at(0, 1) == 3.0 * 1.5 - 1.0);
}

TEST_CASE("training loss: perfect predictor") {
    // Zero data and one bucket per step: a_t = 1 / sqrt(1 - alpha_bar_t) recovers eps exactly.
    const auto sched = make_linear_schedule(20);
    ToyParams p = ToyParams::zeros(20);
    for (int t = 1; t <= 20; ++t) p.values[static_cast<std::size_t>(t - 1)] = 1.0 / std::sqrt(1.0 - sched.alpha_bar(t));
    Rng rng(3);
    const std::vector<Plane> batch(3, Plane(6, 6, 2, 0.0));
    CHECK(loss_arad(batch, p, sched, rng) < 1e-24);
}

TEST_CASE("training loss: zero parameters give the noise energy") {
    const auto sched = make_linear_schedule(50);
    const ToyParams p = ToyParams::zeros(5);
    const std::vector<Plane> batch{random_plane(4, 5, 3, 1), random_plane(4, 5, 3, 2)};
    double total = 0.0;
    for (int s = 0; s < 1000; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        total += loss_arad(batch, p, sched, rng);
    }
    CHECK(total / 1000 == doctest::Approx(4 * 5 * 3).epsilon(0.05));
}

TEST_CASE("training loss gradient matches central differences") {
    const auto sched = make_linear_schedule(50);
    const std::vector<Plane> batch{random_plane(5, 5, 2, 10), random_plane(5, 5, 2, 11), random_plane(5, 5, 2, 12)};
    Rng pick(44);
    for (int point = 0; point < 10; ++point) {
        ToyParams p = ToyParams::zeros(4);
        for (auto& v : p.values) v = pick.normal();
        const Rng base(1000 + static_cast<std::uint64_t>(point));
        Rng r0 = base;
        const LossGrad lg = loss_arad_with_grad(batch, p, sched, r0);
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            const double h = 1e-5;
            ToyParams up = p, dn = p;
            up.values[i] += h;
            dn.values[i] -= h;
            Rng ru = base, rd = base;
            const double fd = (loss_arad(batch, up, sched, ru) - loss_arad(batch, dn, sched, rd)) / (2 * h);
            const double scale = std::max({std::abs(fd), std::abs(lg.grad[i]), 1.0});
            CHECK(std::abs(fd - lg.grad[i]) / scale < 1e-4);
        }
    }
}

TEST_CASE("training loss rejects mixed shapes and empty batches") {
    const auto sched = make_linear_schedule(10);
    Rng rng(1);
    CHECK_THROWS_AS(loss_arad({Plane(2, 2, 1), Plane(2, 3, 1)}, ToyParams::zeros(1), sched, rng), DimensionError);
    CHECK_THROWS_AS(loss_arad({}, ToyParams::zeros(1), sched, rng), ConfigError);
}

namespace {

DatasetManifest toy_manifest(int n) {
    const auto table = default_table();
    std::vector<ManifestRecord> recs;
    for (int i = 0; i < n; ++i) {
        const auto& b = table.bucket(1 + i % 3);
        recs.push_back({"r" + std::to_string(i), b.height / 4, b.width / 4, ""});
    }
    return DatasetManifest(recs);
}

Plane toy_image(const ManifestRecord& rec) {
    Rng rng = Rng::for_purpose(std::hash<std::string>{}(rec.id), StreamPurpose::fixture);
    Plane p(rec.height, rec.width, 3);
    const double base = rng.uniform();
    for (auto& v : p.data()) v = std::clamp(base + 0.1 * rng.normal(), 0.0, 1.0);
    return p;
}

double window_mean(const std::vector<double>& v, std::size_t from, std::size_t n) {
    return std::accumulate(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + n), 0.0) / n;
}

}  // namespace

TEST_CASE("training: zero steps and frozen parameters") {
    const auto sched = make_linear_schedule(50);
    const auto m = toy_manifest(8);
    Rng rng(1);
    const auto r0 = train_toy_denoiser(m, default_table(), toy_image, sched, 0, 0.1, rng);
    CHECK(r0.loss_trace.empty());
    CHECK(r0.params.values == ToyParams::zeros(10).values);

    ToyParams init = ToyParams::zeros(10);
    init.values[0] = 0.3;
    const auto r1 = train_toy_denoiser(m, default_table(), toy_image, sched, 60, 0.0, rng, {}, &init);
    CHECK(r1.params.values == init.values);
    const double first = window_mean(r1.loss_trace, 0, 30), second = window_mean(r1.loss_trace, 30, 30);
    CHECK(std::abs(first - second) < 0.05 * first);
}

TEST_CASE("training reduces the smoothed loss") {
    const auto sched = make_linear_schedule(50);
    const auto m = toy_manifest(64);
    Rng rng(2);
    const auto r = train_toy_denoiser(m, default_table(), toy_image, sched, 500, 3e-6, rng);
    REQUIRE(r.loss_trace.size() == 500);
    CHECK(window_mean(r.loss_trace, 450, 50) < 0.9 * window_mean(r.loss_trace, 0, 50));
}

TEST_CASE("training divergence reports the step") {
    const auto sched = make_linear_schedule(50);
    const auto m = toy_manifest(8);
    Rng rng(3);
    try {
        train_toy_denoiser(m, default_table(), toy_image, sched, 200, 1e3, rng);
        FAIL("expected divergence");
    } catch (const TrainingError& e) {
        CHECK(e.step() > 0);
        CHECK(e.step() < 200);
    }
}
