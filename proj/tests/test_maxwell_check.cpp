#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nifield/errors.hpp"
#include "nifield/maxwell_check.hpp"
#include "test_support.hpp"

using namespace nifield;
using fixtures::electron;
using fixtures::random_unit;

namespace {

constexpr double kPi = std::numbers::pi;

double worst(const ResidualReport& r) {
  return std::max({std::abs(r.gauss), r.faraday.norm(), std::abs(r.div_b), r.ampere.norm()});
}

FieldSampler coulomb(double Q) {
  return [Q](const Event& ev) {
    const double r = ev.x.norm();
    FieldSample f;
    f.E = Q / (r * r * r) * ev.x;
    f.at = ev;
    return f;
  };
}

/// Rest event at distance r, base phase psi.
Event at_phase(const Vec3& x, double psi) { return {(psi + 2.0 * kPi * x.norm() + 2.0 * kPi) / (2.0 * kPi), x}; }

StencilOptions guarded(const ParticleSource& src) {
  StencilOptions o;
  o.distance = particle_distance(src);
  return o;
}

}  // namespace

TEST(MaxwellCheck, RestParticleSatisfiesModifiedSystem) {
  const auto src = electron();
  const Vec3 x = 2.0 * Vec3(1.0, -1.0, 0.5).normalized();
  for (double psi : {0.7, 2.0, kPi, 4.4, 5.9}) {
    // Largest at the pulse peak (about 1.1e-4 at h = 1e-3).
    const ResidualReport r = maxwell_residuals(rest_field_sampler(src), at_phase(x, psi), 1e-3, guarded(src));
    EXPECT_LT(worst(r), 2e-4) << psi;
    EXPECT_LT(worst(maxwell_residuals(rest_field_sampler(src), at_phase(x, psi), 5e-4, guarded(src))), 1e-4) << psi;
    EXPECT_EQ(r.div_b, 0.0);
  }
}

TEST(MaxwellCheck, StaticCoulombAtNoiseFloor) {
  const ResidualReport r = maxwell_residuals(coulomb(0.3), {0.0, Vec3(1.0, 2.0, -0.5)}, 1e-3);
  EXPECT_LT(r.faraday.norm(), 1e-6);
  EXPECT_LT(r.ampere.norm(), 1e-12);
  // div E of the Coulomb field is zero off the origin; FD error is O(h^2).
  EXPECT_LT(std::abs(r.gauss), 1e-6);
}

TEST(MaxwellCheck, CorruptedQIsDetected) {
  const auto src = electron();
  const FieldSampler good = rest_field_sampler(src);
  const FieldSampler bad = [good](const Event& ev) {
    FieldSample f = good(ev);
    f.q *= 2.0;
    return f;
  };
  const Event ev = at_phase(Vec3(0.0, 2.0, 0.0), 2.0);
  const ResidualReport a = maxwell_residuals(good, ev, 1e-3);
  const ResidualReport b = maxwell_residuals(bad, ev, 1e-3);
  EXPECT_GT(std::abs(b.gauss), 1e3 * std::abs(a.gauss));
  EXPECT_GT(b.ampere.norm(), 1e3 * a.ampere.norm());
  EXPECT_GT(std::abs(b.gauss), 1e-2);
  EXPECT_EQ(a.faraday, b.faraday);
  EXPECT_EQ(a.div_b, b.div_b);
}

TEST(MaxwellCheck, BoostedParticleConverges) {
  const auto src = electron(Lifetime::eternal(), Vec3(0.0, 0.0, -0.9));
  const Event rest = at_phase(Vec3(1.0, 1.5, 0.3), 2.4);
  const Event lab = boost_event(rest, src.v_lab, 1.0);
  const MaxwellOrders o = convergence_order(lab_field_sampler(src), lab, 1e-3, guarded(src));
  for (auto c : {o.gauss, o.faraday, o.div_b, o.ampere}) {
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(*c, 2.0, 0.2);
  }
}

TEST(MaxwellCheck, RestOrderAtCoarseStep) {
  const auto src = electron();
  const MaxwellOrders o = convergence_order(rest_field_sampler(src), at_phase(Vec3(2.0, 0.0, 0.0), 2.0), 1e-2);
  ASSERT_TRUE(o.gauss && o.ampere);
  EXPECT_NEAR(*o.gauss, 2.0, 0.2);
  EXPECT_NEAR(*o.ampere, 2.0, 0.2);
  EXPECT_FALSE(o.div_b.has_value());
}

TEST(MaxwellCheck, LinearFieldIsDegenerate) {
  const FieldSampler linear = [](const Event& ev) {
    FieldSample f;
    f.E = Vec3(ev.x.y(), ev.x.x(), 0.0);  // curl-free, divergence-free
    return f;
  };
  try {
    convergence_order(linear, {0.0, Vec3(1, 1, 1)}, 1e-2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateResidual);
  }
  EXPECT_THROW(convergence_order([](double) { return 0.0; }, 1e-2), Error);
}

TEST(MaxwellCheck, CorruptedSamplerDoesNotConverge) {
  const auto src = electron();
  const FieldSampler good = rest_field_sampler(src);
  const FieldSampler bad = [good](const Event& ev) {
    FieldSample f = good(ev);
    f.q *= 2.0;
    return f;
  };
  const MaxwellOrders o = convergence_order(bad, at_phase(Vec3(2.0, 0.0, 0.0), 2.0), 1e-3);
  ASSERT_TRUE(o.gauss.has_value());
  EXPECT_NEAR(*o.gauss, 0.0, 0.1);
}

TEST(MaxwellCheck, StencilRefusesToStraddleSource) {
  const auto src = electron();
  try {
    maxwell_residuals(rest_field_sampler(src), {0.0, Vec3(0.005, 0.0, 0.0)}, 1e-3, guarded(src));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooCloseToSource);
  }
  EXPECT_THROW(wave_residual(rest_potential_sampler(src), {0.0, Vec3(0.005, 0.0, 0.0)}, 1e-3, guarded(src)), Error);
}

TEST(MaxwellCheck, RestPotentialSolvesWaveEquation) {
  const auto src = electron();
  const Event ev = at_phase(Vec3(0.0, 0.0, 2.0), 2.2);
  const auto r = [&](double h) { return std::abs(wave_residual(rest_potential_sampler(src), ev, h).v0); };
  EXPECT_LT(r(1e-3), 1e-4);
  EXPECT_NEAR(convergence_order(r, 2e-3), 2.0, 0.2);
}

TEST(MaxwellCheck, CoulombPotentialIsHarmonic) {
  const PotentialSampler phi = [](const Event& ev) { return FourVector{0.3 / ev.x.norm(), Vec3::Zero()}; };
  EXPECT_LT(std::abs(wave_residual(phi, {0.0, Vec3(1.0, 2.0, -0.5)}, 1e-3).v0), 1e-6);
}

TEST(MaxwellCheck, BoostedPotentialSolvesWaveEquation) {
  const auto src = electron(Lifetime::eternal(), Vec3(0.6, 0.0, 0.0));
  const Event lab = boost_event(at_phase(Vec3(0.0, 2.0, 0.0), 2.2), src.v_lab, 1.0);
  const FourVector r = wave_residual(lab_potential_sampler(src), lab, 1e-3, guarded(src));
  EXPECT_LT(std::abs(r.v0), 1e-4);
  EXPECT_LT(r.v.norm(), 1e-4);
  const WaveOrders o = wave_convergence_order(lab_potential_sampler(src), lab, 2e-3, guarded(src));
  ASSERT_TRUE(o.phi && o.a);
  EXPECT_NEAR(*o.phi, 2.0, 0.2);
  EXPECT_NEAR(*o.a, 2.0, 0.2);
}

TEST(MaxwellCheck, WaveAndFieldFormsVanishTogether) {
  const auto src = electron(Lifetime::eternal(), Vec3(0.3, -0.4, 0.0));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const double r = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    const double psi = std::uniform_real_distribution<double>(0.8, 5.5)(rng);
    const Event lab = boost_event(at_phase(r * random_unit(rng), psi), src.v_lab, 1.0);
    const double h = 5e-4;
    const FourVector w = wave_residual(lab_potential_sampler(src), lab, h, guarded(src));
    const ResidualReport m = maxwell_residuals(lab_field_sampler(src), lab, h, guarded(src));
    EXPECT_LT(std::abs(w.v0) + w.v.norm(), 1e-4);
    EXPECT_LT(worst(m), 1e-4);
  }
}

TEST(MaxwellCheck, FieldsFromPotentialMatchClosedForms) {
  const auto src = electron(Lifetime::eternal(), Vec3(0.6, 0.0, 0.0));
  const FieldSampler fd = fields_from_potential(lab_potential_sampler(src), 1e-4, 1.0);
  const Event lab = boost_event(at_phase(Vec3(1.0, 1.0, 1.0), 2.0), src.v_lab, 1.0);
  const FieldSample a = fd(lab), b = lab_fields(src, lab);
  const double scale = b.E.norm() + b.B.norm() + std::abs(b.q);
  EXPECT_LT((a.E - b.E).norm(), 1e-5 * scale);
  EXPECT_LT((a.B - b.B).norm(), 1e-5 * scale);
  EXPECT_NEAR(a.q, b.q, 1e-5 * scale);
}

TEST(MaxwellCheck, DivergenceOfCurlAtNoiseFloor) {
  const auto src = electron(Lifetime::eternal(), Vec3(0.0, 0.7, 0.0));
  const FieldSampler fd = fields_from_potential(lab_potential_sampler(src), 1e-3, 1.0);
  const Event lab = boost_event(at_phase(Vec3(1.2, -0.3, 0.8), 3.0), src.v_lab, 1.0);
  const ResidualReport r = maxwell_residuals(fd, lab, 1e-3);
  const double scale = lab_fields(src, lab).B.norm();
  EXPECT_LT(std::abs(r.div_b), 1e-6 * scale / 1e-3);
}

TEST(MaxwellCheck, CsvHeaderIsStable) {
  EXPECT_EQ(residual_csv_header(), "t,x,y,z,gauss,faraday_x,faraday_y,faraday_z,divB,ampere_x,ampere_y,ampere_z,h");
  ResidualReport r;
  r.at = {0.5, Vec3(1.0, -2.0, 0.25)};
  r.gauss = 1e-7;
  r.faraday = Vec3(0.1, 0.0, -3.0);
  r.ampere = Vec3(2.0, 0.5, 1.0 / 3.0);
  r.h = 0.001;
  std::ostringstream os;
  write_residual_csv(os, std::span<const ResidualReport>(&r, 1));
  EXPECT_EQ(os.str(),
            "t,x,y,z,gauss,faraday_x,faraday_y,faraday_z,divB,ampere_x,ampere_y,ampere_z,h\n"
            "0.5,1,-2,0.25,1e-07,0.1,0,-3,0,2,0.5,0.3333333333333333,0.001\n");
}

TEST(MaxwellCheck, NumberFormatRoundTrips) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "-0");
}
