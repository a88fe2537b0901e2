#include <doctest.h>

#include <cmath>

#include "asd/image_ops.hpp"
#include "asd/plane.hpp"
#include "asd/rng.hpp"

using namespace asd;

TEST_CASE("plane shape and crop/paste") {
    CHECK_THROWS_AS(Plane(0, 2, 1), DimensionError);
    Plane p(3, 4, 2);
    CHECK(p.size() == 24);
    p.at(1, 2, 1) = 5.0;
    const Plane c = p.crop(1, 2, 2, 2);
    CHECK(c.at(0, 0, 1) == 5.0);
    CHECK_THROWS_AS(p.crop(2, 3, 2, 2), DimensionError);
    Plane q(3, 4, 2);
    q.paste(c, 1, 2);
    CHECK(q.at(1, 2, 1) == 5.0);
    CHECK_THROWS_AS(q.paste(c, 2, 3), DimensionError);
}

TEST_CASE("bilinear resize keeps constants and identity") {
    Rng rng(1);
    Plane p(5, 7, 3);
    for (auto& v : p.data()) v = rng.uniform();
    CHECK(resize_bilinear(p, 5, 7) == p);
    const Plane c = resize_bilinear(Plane(5, 7, 3, 0.25), 11, 3);
    CHECK(c.height() == 11);
    for (double v : c.data()) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(resize_bilinear(p, 0, 4), DimensionError);
}

TEST_CASE("area downsample equals block means") {
    Rng rng(2);
    Plane p(8, 8, 1);
    for (auto& v : p.data()) v = rng.uniform();
    const Plane d = downsample_area(p, 4);
    for (int by = 0; by < 2; ++by) {
        for (int bx = 0; bx < 2; ++bx) {
            double s = 0;
            for (int y = 0; y < 4; ++y)
                for (int x = 0; x < 4; ++x) s += p.at(4 * by + y, 4 * bx + x);
            CHECK(d.at(by, bx) == doctest::Approx(s / 16).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(downsample_area(p, 3), DimensionError);
}

TEST_CASE("luminance weights") {
    Plane p(1, 1, 3);
    p.at(0, 0, 0) = 1.0;
    CHECK(luminance(p).at(0, 0) == doctest::Approx(0.299));
    CHECK(luminance(Plane(1, 1, 1, 0.3)).at(0, 0) == 0.3);
    CHECK_THROWS_AS(luminance(Plane(1, 1, 2)), DimensionError);
}
