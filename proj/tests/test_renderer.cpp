#include <doctest.h>

#include <vector>

#include "cellchain/pipeline.hpp"
#include "cellchain/renderer.hpp"

using namespace cellchain;

namespace {

/// Independent check: 4-connected component count of the orange mask.
int connected_components(const Mask& m) {
    std::vector<uint8_t> seen(m.v.size(), 0);
    int components = 0;
    for (size_t start = 0; start < m.v.size(); ++start) {
        if (!m.v[start] || seen[start]) continue;
        ++components;
        std::vector<size_t> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            size_t p = stack.back();
            stack.pop_back();
            int x = int(p % m.width), y = int(p / m.width);
            const int deltas[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& d : deltas) {
                int nx = x + d[0], ny = y + d[1];
                if (nx < 0 || ny < 0 || nx >= m.width || ny >= m.height) continue;
                size_t q = size_t(ny) * m.width + nx;
                if (m.v[q] && !seen[q]) {
                    seen[q] = 1;
                    stack.push_back(q);
                }
            }
        }
    }
    return components;
}

}  // namespace

TEST_CASE("empty scene renders no orange pixels") {
    Frame f = render_scene(SceneSpec::random(0, 3));
    CHECK(orange_mask(rgb_to_hsv(f)).count_set() == 0);
}

TEST_CASE("identical specs render byte-identical frames") {
    SceneSpec spec = SceneSpec::random(2, 99);
    Frame a = render_scene(spec);
    Frame b = render_scene(spec);
    CHECK(a.rgb == b.rgb);

    SceneSpec other = spec;
    other.seed += 1;
    CHECK(render_scene(other).rgb != a.rgb);
}

TEST_CASE("three balls produce exactly three orange components") {
    for (uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
        Frame f = render_scene(SceneSpec::random(3, seed));
        CHECK(connected_components(orange_mask(rgb_to_hsv(f))) == 3);
    }
}

TEST_CASE("invalid specs are rejected") {
    SceneSpec overlap;
    overlap.balls = {{40.0f, 40.0f, 12.0f}, {45.0f, 40.0f, 12.0f}};
    CHECK_THROWS_AS(render_scene(overlap), std::invalid_argument);

    SceneSpec outside;
    outside.balls = {{5.0f, 5.0f, 12.0f}};
    CHECK_THROWS_AS(render_scene(outside), std::invalid_argument);

    SceneSpec tiny;
    tiny.width = 16;
    tiny.height = 16;
    CHECK_THROWS_AS(render_scene(tiny), std::invalid_argument);

    CHECK_THROWS_AS(SceneSpec::random(4, 1), std::invalid_argument);
}

TEST_CASE("random specs always satisfy their own invariants") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        SceneSpec spec = SceneSpec::random(int(seed % 4), seed);
        CHECK(spec.validate().empty());
    }
}

TEST_CASE("ppm encoding round trips and accepts the plain-text variant") {
    Frame f = render_scene(SceneSpec::random(2, 8));
    Frame back = parse_ppm(encode_ppm(f));
    CHECK(back.width == f.width);
    CHECK(back.height == f.height);
    CHECK(back.rgb == f.rgb);

    // 2x2 plain-text P3 with a comment line
    std::string p3 = "P3\n# camera frame\n2 2\n255\n255 0 0 0 255 0\n0 0 255 10 20 30\n";
    Frame tiny = parse_ppm(Bytes(p3.begin(), p3.end()));
    CHECK(tiny.width == 2);
    CHECK(tiny.height == 2);
    CHECK(tiny.rgb == Bytes{255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 20, 30});

    CHECK_THROWS(parse_ppm(Bytes{'P', '5', '\n'}));
    Bytes truncated = encode_ppm(f);
    truncated.resize(truncated.size() / 2);
    CHECK_THROWS(parse_ppm(truncated));
}
