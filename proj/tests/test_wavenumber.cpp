// SPDX-License-Identifier: Apache-2.0
//
// nfbeam: near-field MIMO beam alignment in the wavenumber domain
// Copyright (C) 2026 The nfbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nfbeam/channel.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/wavenumber.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace nfbeam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    // Index range spanned by the x-cosines of the UE-to-BS direction over every antenna pair.
    std::pair<int, int> brute_force_range(const Scene &s, ArraySide side)
    {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int b = 0; b < s.bs.num_antennas; ++b)
        {
            for (int u = 0; u < s.ue.num_antennas; ++u)
            {
                const Vec3 d = s.bs.positions.col(b) - s.ue.positions.col(u);
                const double c = d.x() / d.norm();
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
        }
        const double aperture = side == ArraySide::bs ? s.bs.aperture() : s.ue.aperture();
        // k0 c <= 2 pi j / D  <=>  j >= D c / lambda
        const double scale = aperture / s.wavelength();
        return {static_cast<int>(std::ceil(scale * lo)), static_cast<int>(std::floor(scale * hi))};
    }

    Scene scene_at(double angle_deg, int antennas = 201, double distance = 15.0)
    {
        SceneConfig c;
        c.angle = angle_deg * kPi / 180.0;
        c.bs_antennas = antennas;
        c.ue_antennas = antennas;
        c.distance = distance;
        return build_scene(c);
    }

    struct Transforms
    {
        TransformOperator bs_full, ue_full, bs_trunc, ue_trunc;
    };

    Transforms transforms_for(const Scene &s)
    {
        const double lambda = s.wavelength();
        return {build_transform(s.bs, full_index_set(s.bs.aperture(), lambda), ArraySide::bs),
                build_transform(s.ue, full_index_set(s.ue.aperture(), lambda), ArraySide::ue),
                build_transform(s.bs, los_truncated_index_set(s.bs, s.ue, lambda, ArraySide::bs), ArraySide::bs),
                build_transform(s.ue, los_truncated_index_set(s.ue, s.bs, lambda, ArraySide::ue), ArraySide::ue)};
    }
}

TEST_CASE("full wavenumber set", "[wavenumber]")
{
    const double lambda = kSpeedOfLight / 28e9;
    const WavenumberIndexSet g = full_index_set(200 * lambda / 2, lambda);
    REQUIRE(g.size() == 201);
    REQUIRE(g.indices.front() == -100);
    REQUIRE(g.indices.back() == 100);
    REQUIRE_FALSE(g.truncated);
    for (int j : g.indices)
    {
        REQUIRE(std::pow(lambda * j / g.aperture, 2) <= 1.0 + 1e-12);
        REQUIRE(std::find(g.indices.begin(), g.indices.end(), -j) != g.indices.end());
    }
    const WavenumberIndexSet tiny = full_index_set(0.5 * lambda, lambda);
    REQUIRE(tiny.indices == std::vector<int>{0});
}

TEST_CASE("truncated set on the reference scene matches the brute-force range", "[wavenumber]")
{
    const Scene s = scene_at(90.0);
    const double lambda = s.wavelength();
    const WavenumberIndexSet full = full_index_set(s.bs.aperture(), lambda);
    for (ArraySide side : {ArraySide::bs, ArraySide::ue})
    {
        const WavenumberIndexSet t = side == ArraySide::bs ? los_truncated_index_set(s.bs, s.ue, lambda, side)
                                                           : los_truncated_index_set(s.ue, s.bs, lambda, side);
        const auto [lo, hi] = brute_force_range(s, side);
        REQUIRE(lo == -7);
        REQUIRE(hi == 7);
        REQUIRE(t.size() == 15);
        REQUIRE(t.indices.front() == lo);
        REQUIRE(t.indices.back() == hi);
        REQUIRE(t.truncated);
        REQUIRE_FALSE(t.clamped);
        REQUIRE_THAT(t.k_min, WithinRel(-t.k_max, 1e-12));
        const double d = s.bs.aperture();
        REQUIRE_THAT(t.k_max / s.wavenumber(), WithinRel(d / std::hypot(15.0, d), 1e-12));
        REQUIRE_THAT(t.k_max / s.wavenumber(), WithinRel(0.07125, 1e-3));
        REQUIRE(t.size() < full.size());
        for (int j : t.indices)
        {
            REQUIRE(std::find(full.indices.begin(), full.indices.end(), j) != full.indices.end());
            const double k = kTwoPi * j / t.aperture;
            REQUIRE(k >= t.k_min - 1e-9);
            REQUIRE(k <= t.k_max + 1e-9);
        }
    }
}

TEST_CASE("truncated set follows the geometry off broadside", "[wavenumber]")
{
    for (double deg : {30.0, 60.0, 120.0, 150.0})
    {
        const Scene s = scene_at(deg, 101, 10.0);
        const double lambda = s.wavelength();
        const auto bs_set = los_truncated_index_set(s.bs, s.ue, lambda, ArraySide::bs);
        const auto ue_set = los_truncated_index_set(s.ue, s.bs, lambda, ArraySide::ue);
        const auto [blo, bhi] = brute_force_range(s, ArraySide::bs);
        const auto [ulo, uhi] = brute_force_range(s, ArraySide::ue);
        REQUIRE(bs_set.indices.front() == blo);
        REQUIRE(bs_set.indices.back() == bhi);
        REQUIRE(ue_set.indices.front() == ulo);
        REQUIRE(ue_set.indices.back() == uhi);
    }
}

TEST_CASE("truncated set captures the LoS energy off broadside", "[wavenumber][property]")
{
    for (double deg : {30.0, 60.0, 90.0})
    {
        const Scene s = scene_at(deg);
        const CMatrix h = los_channel(s.bs, s.ue, s.wavelength());
        const Transforms t = transforms_for(s);
        const double mn = double(h.rows()) * double(h.cols());
        const double captured =
            mn * project_to_wavenumber(h, t.ue_trunc, t.bs_trunc).matrix.squaredNorm() / h.squaredNorm();
        REQUIRE(captured >= 0.85);
    }
}

TEST_CASE("empty LoS bounds clamp to the zero index", "[wavenumber]")
{
    // a 3-antenna array with an aperture below one wavelength sees no nonzero index
    const double lambda = 0.01;
    const ArrayGeometry own = build_ula(3, 0.004, Vec3::Zero());
    const ArrayGeometry other = build_ula(3, 0.004, Vec3(100.0, 0.0, 1.0));
    const WavenumberIndexSet t = los_truncated_index_set(own, other, lambda, ArraySide::bs);
    REQUIRE(t.clamped);
    REQUIRE(t.indices == std::vector<int>{0});
}

TEST_CASE("transform columns", "[wavenumber]")
{
    const Scene s = scene_at(90.0, 41);
    const WavenumberIndexSet g = full_index_set(s.bs.aperture(), s.wavelength());
    const TransformOperator t = build_transform(s.bs, g, ArraySide::bs);
    REQUIRE(t.matrix.rows() == 41);
    REQUIRE(t.matrix.cols() == static_cast<Eigen::Index>(g.size()));
    const RVector x = s.bs.x_coordinates();
    for (Eigen::Index c = 0; c < t.matrix.cols(); ++c)
    {
        REQUIRE_THAT(t.matrix.col(c).norm(), WithinAbs(1.0, 1e-14));
        const int j = g.indices[c];
        for (Eigen::Index n = 0; n < 41; ++n)
        {
            const Complex e = std::polar(1.0 / std::sqrt(41.0), kTwoPi * j * x(n) / g.aperture);
            REQUIRE(std::abs(t.matrix(n, c) - e) < 1e-14);
        }
        if (j == 0)
            REQUIRE((t.matrix.col(c) - CVector::Constant(41, 1.0 / std::sqrt(41.0))).norm() < 1e-15);
    }
    const WavenumberIndexSet wrong = full_index_set(2.0 * s.bs.aperture(), s.wavelength());
    REQUIRE_THROWS_AS(build_transform(s.bs, wrong, ArraySide::bs), Error);
}

TEST_CASE("Gram matrix follows the Dirichlet kernel", "[wavenumber]")
{
    const Scene s = scene_at(90.0);
    const WavenumberIndexSet g = full_index_set(s.bs.aperture(), s.wavelength());
    const TransformOperator t = build_transform(s.bs, g, ArraySide::bs);
    const CMatrix gram = t.matrix.adjoint() * t.matrix;
    const double K = s.bs.num_antennas;
    const double spacing = s.bs.spacing;
    double worst = 0.0;
    for (std::size_t a = 0; a < g.size(); ++a)
    {
        for (std::size_t b = 0; b < g.size(); ++b)
        {
            if (a == b)
                continue;
            const double delta = (g.indices[a] - g.indices[b]) * spacing / g.aperture;
            // the kernel tends to 1 where delta is an integer (aliased columns)
                const double kernel = std::abs(delta - std::round(delta)) < 1e-12
                                          ? 1.0
                                          : std::abs(std::sin(kPi * K * delta) / (K * std::sin(kPi * delta)));
            worst = std::max(worst, std::abs(std::abs(gram(a, b)) - kernel));
        }
    }
    REQUIRE(worst < 1e-12);
}

TEST_CASE("wavenumber projection keeps the dominant singular values", "[wavenumber]")
{
    const Scene s = scene_at(90.0);
    const CMatrix h = los_channel(s.bs, s.ue, s.wavelength());
    const Transforms t = transforms_for(s);
    const double root_mn = std::sqrt(double(h.rows()) * double(h.cols()));

    const WavenumberChannel full = project_to_wavenumber(h, t.ue_full, t.bs_full);
    REQUIRE_THAT(full.scaling, WithinRel(1.0 / root_mn, 1e-15));
    REQUIRE(full.matrix.rows() == 201);
    REQUIRE(full.matrix.cols() == 201);
    Eigen::JacobiSVD<CMatrix> a(h), b(root_mn * full.matrix);
    for (int i = 0; i < 5; ++i)
        REQUIRE_THAT(b.singularValues()(i), WithinRel(a.singularValues()(i), 0.02));

    const WavenumberChannel trunc = project_to_wavenumber(h, t.ue_trunc, t.bs_trunc);
    REQUIRE(trunc.matrix.rows() == 15);
    REQUIRE(trunc.matrix.cols() == 15);
    REQUIRE(root_mn * root_mn * trunc.matrix.squaredNorm() / h.squaredNorm() >= 0.9);

    REQUIRE(project_to_wavenumber(CMatrix::Zero(201, 201), t.ue_full, t.bs_full).matrix.norm() == 0.0);
    REQUIRE_THROWS_AS(project_to_wavenumber(CMatrix::Zero(3, 201), t.ue_full, t.bs_full), Error);
}

TEST_CASE("wavenumber beams map to the antenna domain", "[wavenumber]")
{
    const Scene s = scene_at(90.0);
    const Transforms t = transforms_for(s);
    const TransformOperator &phi = t.bs_trunc;
    const Eigen::Index g = phi.matrix.cols();

    for (Eigen::Index j = 0; j < g; ++j)
    {
        const CVector e = CVector::Unit(g, j);
        REQUIRE((beam_to_antenna(phi, e, false) - phi.matrix.col(j)).norm() < 1e-15);
        REQUIRE((beam_to_antenna(phi, e, true) - phi.matrix.col(j).conjugate()).norm() < 1e-15);
    }

    Rng rng(4);
    const double sigma_max = Eigen::JacobiSVD<CMatrix>(phi.matrix).singularValues()(0);
    REQUIRE_THAT(sigma_max, WithinAbs(1.0, 0.1));
    for (int trial = 0; trial < 20; ++trial)
    {
        CVector u(g), v(g);
        for (Eigen::Index i = 0; i < g; ++i)
        {
            u(i) = complex_gaussian(rng, 1.0);
            v(i) = complex_gaussian(rng, 1.0);
        }
        const Complex a(0.3, -1.2), b(2.0, 0.5);
        const CVector lhs = beam_to_antenna(phi, a * u + b * v, false);
        const CVector rhs = a * beam_to_antenna(phi, u, false) + b * beam_to_antenna(phi, v, false);
        REQUIRE((lhs - rhs).norm() < 1e-12 * lhs.norm());
        REQUIRE(beam_to_antenna(phi, u, false).norm() <= sigma_max * u.norm() * (1 + 1e-12));
    }
    REQUIRE_THROWS_AS(beam_to_antenna(phi, CVector::Ones(g + 1), false), Error);
}

TEST_CASE("beam gain carries over to the wavenumber domain", "[wavenumber][property]")
{
    const Scene s = scene_at(90.0);
    const CMatrix h = los_channel(s.bs, s.ue, s.wavelength());
    const Transforms t = transforms_for(s);
    const CMatrix he = project_to_wavenumber(h, t.ue_trunc, t.bs_trunc).matrix;
    const double root_mn = std::sqrt(double(h.rows()) * double(h.cols()));
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial)
    {
        CVector pw(he.cols()), sw(he.rows());
        for (auto &x : pw)
            x = complex_gaussian(rng, 1.0);
        for (auto &x : sw)
            x = complex_gaussian(rng, 1.0);
        const CVector p = beam_to_antenna(t.bs_trunc, pw, false);
        const CVector sv = beam_to_antenna(t.ue_trunc, sw, true);
        const Complex antenna = sv.transpose() * (h * p);
        const Complex wavenumber = sw.transpose() * (root_mn * he * pw);
        REQUIRE(std::abs(std::norm(antenna) - std::norm(wavenumber)) <= 1e-9 * std::norm(antenna));
    }
}
