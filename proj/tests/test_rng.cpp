#include <doctest.h>

#include <cmath>
#include <vector>

#include "asd/rng.hpp"

using namespace asd;

TEST_CASE("pcg32 reproduces the reference demo sequence") {
    // pcg32-demo: srandom(42, 54)
    Rng rng(42, 54);
    const std::vector<std::uint32_t> expect{0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e};
    for (auto e : expect) CHECK(rng.next_u32() == e);
}

TEST_CASE("fixed seed gives identical first normals") {
    Rng a = Rng::for_purpose(123, StreamPurpose::initial_latent);
    Rng b = Rng::for_purpose(123, StreamPurpose::initial_latent);
    for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());
    CHECK(a == b);
}

TEST_CASE("stream derivation separates purposes and indices") {
    CHECK(derive_stream(1, StreamPurpose::step_noise, 3) == derive_stream(1, StreamPurpose::step_noise, 3));
    CHECK(derive_stream(1, StreamPurpose::step_noise, 3) != derive_stream(1, StreamPurpose::step_noise, 4));
    CHECK(derive_stream(1, StreamPurpose::step_noise, 3) != derive_stream(1, StreamPurpose::tile_offset, 3));
    CHECK(derive_stream(1, StreamPurpose::step_noise, 3) != derive_stream(2, StreamPurpose::step_noise, 3));
}

TEST_CASE("uniform stays in the open unit interval") {
    Rng rng(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("bounded draws are uniform over small ranges") {
    Rng rng(17);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) ++counts[rng.bounded(7)];
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
    // 6 degrees of freedom, 0.999 quantile is 22.46
    CHECK(chi2 < 22.46);
}

TEST_CASE("normal moments over a million samples") {
    Rng rng(2024);
    const std::size_t n = 1000000;
    const auto xs = normal_sample(rng, n);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= n - 1;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    // var of the sample variance is 2 / n for a normal
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("two streams of one seed are uncorrelated") {
    Rng a = Rng::for_purpose(77, StreamPurpose::step_noise, 1);
    Rng b = Rng::for_purpose(77, StreamPurpose::step_noise, 2);
    const int n = 100000;
    double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i) {
        const double x = a.normal(), y = b.normal();
        sab += x * y;
        sa += x;
        sb += y;
        saa += x * x;
        sbb += y * y;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double r = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    CHECK(std::abs(r) < 0.01);
}
