#ifndef HULLSEP_TESTS_SUPPORT_HPP
#define HULLSEP_TESTS_SUPPORT_HPP

// Shared helpers for the test binaries: a deterministic RNG (stable across
// standard libraries, unlike <random> distributions) and random-instance
// generators used by the property suites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hullsep/geometry.hpp"

class test_rng {
  public:
    explicit test_rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double gaussian(double sigma = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * sigma;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta) * sigma;
    }

    hullsep::Vec gaussian_vec(int m, double sigma = 1.0) {
        hullsep::Vec v(static_cast<std::size_t>(m));
        for (auto& x : v) x = gaussian(sigma);
        return v;
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// A pair of vertex clouds separated by the slab |x1| < margin, then rotated
// by a random Givens rotation so the separating direction is not axis-aligned.
// Every K vertex has u.x <= -margin and every K' vertex u.x >= +margin for the
// returned unit direction u, so the true hull distance is at least 2*margin.
struct separated_clouds {
    std::vector<hullsep::Vec> left, right;
    hullsep::Vec direction;  // unit separating direction, points left -> right
    double margin;           // half the guaranteed slab width
};

inline separated_clouds make_separated_clouds(test_rng& rng, int m, int n_left, int n_right,
                                              double margin) {
    separated_clouds out;
    out.margin = margin;
    auto cloud = [&](int count, double sign) {
        std::vector<hullsep::Vec> pts;
        for (int i = 0; i < count; ++i) {
            hullsep::Vec v = rng.gaussian_vec(m, 1.5);
            v[0] = sign * (margin + std::abs(v[0]));
            pts.push_back(v);
        }
        return pts;
    };
    out.left = cloud(n_left, -1.0);
    out.right = cloud(n_right, +1.0);

    hullsep::Vec u(static_cast<std::size_t>(m), 0.0);
    u[0] = 1.0;
    if (m >= 2) {
        const double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        const int j = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m - 1));
        const double c = std::cos(theta), s = std::sin(theta);
        auto rotate = [&](hullsep::Vec& v) {
            const double a = v[0], b = v[static_cast<std::size_t>(j)];
            v[0] = c * a - s * b;
            v[static_cast<std::size_t>(j)] = s * a + c * b;
        };
        for (auto& v : out.left) rotate(v);
        for (auto& v : out.right) rotate(v);
        rotate(u);
    }
    out.direction = u;
    return out;
}

// Two vertex clouds translated so their centroids coincide: the shared
// centroid is a point of both hulls, so the hulls intersect.
struct overlapping_clouds {
    std::vector<hullsep::Vec> a, b;
    hullsep::Vec common;  // the planted common point (the shared centroid)
};

inline overlapping_clouds make_overlapping_clouds(test_rng& rng, int m, int n_a, int n_b) {
    overlapping_clouds out;
    auto centered = [&](int count) {
        std::vector<hullsep::Vec> pts;
        for (int i = 0; i < count; ++i) pts.push_back(rng.gaussian_vec(m, 2.0));
        hullsep::Vec c(static_cast<std::size_t>(m), 0.0);
        for (const auto& p : pts) c = hullsep::add(c, p);
        c = hullsep::scaled(c, 1.0 / count);
        for (auto& p : pts) p = hullsep::sub(p, c);
        return pts;
    };
    out.a = centered(n_a);
    out.b = centered(n_b);
    hullsep::Vec shift = rng.gaussian_vec(m, 3.0);
    for (auto& p : out.a) p = hullsep::add(p, shift);
    for (auto& p : out.b) p = hullsep::add(p, shift);
    out.common = shift;
    return out;
}

#endif
