#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mpdec/balance.hpp"
#include "mpdec/cases.hpp"
#include "mpdec/spatial_operator.hpp"

using namespace mpdec;

namespace {

SpatialOperator make_operator(const Scenario& s, const Grid& g) {
  OperatorOptions o;
  o.physics.gravity = s.gravity;
  o.physics.eps_div = s.eps_div;
  o.eps_lim = s.eps_lim;
  return SpatialOperator(g, generate_tables(3, 4, s.eps_weno), s.bathymetry, o);
}

StateField random_smooth_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = u(rng), c = u(rng);
  const Bounds box = g.bounds;
  const double lx = box.x_max - box.x_min, ly = box.y_max - box.y_min;
  return init_cell_averages(
      g,
      [=](double x, double y) {
        const double sx = std::sin(2 * M_PI * x / lx), cy = std::cos(2 * M_PI * y / ly);
        return ConservedState{1.0 + 0.2 * a * sx * cy, 0.3 * b + 0.1 * cy, 0.2 * c * sx};
      },
      4);
}

}  // namespace

TEST(Pds, ZeroFluxesGiveEmptySystem) {
  const Grid g = build_grid({0, 1, 0, 1}, 4, 4);
  const PdsSystem pds = assemble_pds(FluxResidual(g.cell_count()), g);
  for (double v : pds.production) EXPECT_EQ(v, 0.0);
  for (double v : pds.destruction) EXPECT_EQ(v, 0.0);
  for (double v : pds.momentum_x) EXPECT_EQ(v, 0.0);
  std::ostringstream os;
  write_pds_coordinates(pds, os);
  EXPECT_TRUE(os.str().empty());
}

TEST(Pds, SingleFaceTrace) {
  const Grid g = build_grid({0, 2, 0, 1}, 4, 2);
  FluxResidual r(g.cell_count());
  const std::size_t left = g.index(1, 0), right = g.index(2, 0);
  r.x_face[0][left] = 0.6;  // mass flows from `left` into `right`
  const PdsSystem pds = assemble_pds(r, g);
  // right cell: production from its west neighbour
  EXPECT_EQ(pds.col(right, PdsSystem::kWest), left);
  EXPECT_DOUBLE_EQ(pds.p(right, PdsSystem::kWest), 0.6 / g.dx);
  EXPECT_EQ(pds.d(right, PdsSystem::kWest), 0.0);
  // left cell: destruction towards its east neighbour
  EXPECT_EQ(pds.col(left, PdsSystem::kEast), right);
  EXPECT_DOUBLE_EQ(pds.d(left, PdsSystem::kEast), 0.6 / g.dx);
  EXPECT_EQ(pds.p(left, PdsSystem::kEast), 0.0);
  EXPECT_DOUBLE_EQ(pds.net(right), 0.6 / g.dx);
  EXPECT_DOUBLE_EQ(pds.net(left), -0.6 / g.dx);
  std::ostringstream os;
  write_pds_coordinates(pds, os);
  EXPECT_EQ(os.str(), "p " + std::to_string(right) + " " + std::to_string(left) + " 1.2\n" + "d " +
                          std::to_string(left) + " " + std::to_string(right) + " 1.2\n");
}

TEST(Pds, NegativeFaceFluxReversesRoles) {
  const Grid g = build_grid({0, 1, 0, 1}, 3, 3);
  FluxResidual r(g.cell_count());
  const std::size_t a = g.index(1, 1), north = g.index(1, 2);
  r.y_face[0][a] = -0.3;
  const PdsSystem pds = assemble_pds(r, g);
  EXPECT_DOUBLE_EQ(pds.p(a, PdsSystem::kNorth), 0.3 / g.dy);
  EXPECT_DOUBLE_EQ(pds.d(north, PdsSystem::kSouth), 0.3 / g.dy);
  EXPECT_EQ(pds.d(a, PdsSystem::kNorth), 0.0);
}

TEST(Pds, ConservativePairsAndPositivity) {
  const Scenario s = vortex_scenario();
  const Grid g = build_grid(s.bounds, 12, 12);
  const SpatialOperator op = make_operator(s, g);
  PdsSystem pds = PdsSystem::for_grid(g);
  op.evaluate(initial_field(s, g), pds);
  for (std::size_t a = 0; a < pds.rows; ++a) {
    for (int sl = 0; sl < pds.width; ++sl) {
      EXPECT_GE(pds.p(a, sl), 0.0);
      EXPECT_GE(pds.d(a, sl), 0.0);
      const std::size_t b = pds.col(a, sl);
      const int back = sl ^ 1;  // W<->E, S<->N
      ASSERT_EQ(pds.col(b, back), a);
      EXPECT_EQ(pds.p(a, sl), pds.d(b, back));
    }
  }
}

TEST(Pds, GlobalTelescoping) {
  const Scenario s = vortex_scenario();
  for (unsigned seed : {1u, 2u, 3u}) {
    const Grid g = build_grid(s.bounds, 10, 7);
    const SpatialOperator op = make_operator(s, g);
    PdsSystem pds = PdsSystem::for_grid(g);
    op.evaluate(random_smooth_field(g, seed), pds);
    double total = 0.0, scale = 0.0;
    for (std::size_t a = 0; a < pds.rows; ++a) {
      total += pds.net(a);
      for (int sl = 0; sl < pds.width; ++sl) scale += pds.p(a, sl);
    }
    EXPECT_LE(std::abs(total), 1e-13 * std::max(1.0, scale));
  }
}

TEST(Pds, RowSumMatchesFluxDivergence) {
  const Scenario s = vortex_scenario();
  const Grid g = build_grid(s.bounds, 9, 9);
  const SpatialOperator op = make_operator(s, g);
  const StateField f = random_smooth_field(g, 5);
  const FluxResidual r = op.residual(f);
  const PdsSystem pds = assemble_pds(r, g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t a = g.index(i, j);
      const double div = (r.x_face[0][a] - r.x_face[0][g.index(i - 1, j)]) / g.dx +
                         (r.y_face[0][a] - r.y_face[0][g.index(i, j - 1)]) / g.dy;
      EXPECT_NEAR(pds.net(a), -div, 1e-14 * std::max(1.0, std::abs(div)));
    }
}

TEST(WellBalanced, FlatStillWaterIsHydrostatic) {
  Scenario s = dam_break_scenario(DamBreakKind::Wet);
  s.initial = [](double, double) { return ConservedState{2.0, 0.0, 0.0}; };
  const Grid g = build_grid(s.bounds, 6, 6);
  const SpatialOperator op = make_operator(s, g);
  const ReferenceResidual ref = precompute_reference(op, initial_field(s, g));
  for (std::size_t a = 0; a < g.cell_count(); ++a) {
    EXPECT_NEAR(ref.x_face[0][a], 0.0, 1e-14);
    EXPECT_NEAR(ref.x_face[1][a], 0.5 * s.gravity * 4.0, 1e-13);
    EXPECT_NEAR(ref.x_face[2][a], 0.0, 1e-14);
    EXPECT_NEAR(ref.y_face[2][a], 0.5 * s.gravity * 4.0, 1e-13);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(ref.source[c][a], 0.0);
  }
}

TEST(WellBalanced, ReferenceCancelsExactly) {
  for (const Scenario& s : {lake_at_rest_scenario(), island_scenario(0.7)}) {
    const Grid g = build_grid(s.bounds, 20, 8);
    SpatialOperator op = make_operator(s, g);
    const StateField steady = steady_field(s, g);
    op.set_reference(precompute_reference(op, steady));
    PdsSystem pds = PdsSystem::for_grid(g);
    op.evaluate(initial_field(s, g), pds);
    for (double v : pds.production) EXPECT_EQ(v, 0.0);
    for (double v : pds.destruction) EXPECT_EQ(v, 0.0);
    for (double v : pds.momentum_x) EXPECT_EQ(v, 0.0);
    for (double v : pds.momentum_y) EXPECT_EQ(v, 0.0);
  }
}

TEST(WellBalanced, DryIslandReferenceIsFinite) {
  const Scenario s = island_scenario(0.7);
  const Grid g = build_grid(s.bounds, 50, 20);
  const SpatialOperator op = make_operator(s, g);
  const ReferenceResidual ref = precompute_reference(op, steady_field(s, g));
  for (int c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < g.cell_count(); ++a) {
      EXPECT_TRUE(std::isfinite(ref.x_face[c][a]));
      EXPECT_TRUE(std::isfinite(ref.y_face[c][a]));
      EXPECT_TRUE(std::isfinite(ref.source[c][a]));
    }
}

TEST(WellBalanced, DisabledReferenceLeavesFluxes) {
  const Grid g = build_grid({0, 1, 0, 1}, 3, 3);
  FluxResidual r(g.cell_count());
  r.x_face[1][4] = 2.5;
  const FluxResidual same = wb_fluxes(r, nullptr);
  EXPECT_EQ(same.x_face[1][4], 2.5);
  const FluxResidual zero = wb_fluxes(r, &r);
  EXPECT_EQ(zero.x_face[1][4], 0.0);
}

TEST(WellBalanced, PerturbationIsLocal) {
  const Scenario s = perturbed_lake_scenario();
  const Grid g = build_grid(s.bounds, 50, 20);
  SpatialOperator op = make_operator(s, g);
  op.set_reference(precompute_reference(op, steady_field(s, g)));
  PdsSystem pds = PdsSystem::for_grid(g);
  op.evaluate(initial_field(s, g), pds);
  // perturbation is centred at (-2, 0.5) with radius 1/3; cells beyond the stencil reach see nothing
  bool touched = false;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_center(i), y = g.y_center(j);
      const std::size_t a = g.index(i, j);
      if (pds.net(a) != 0.0) touched = true;
      if (std::hypot(x + 2.0, y - 0.5) > 1.3) {
        EXPECT_EQ(pds.net(a), 0.0);
        EXPECT_EQ(pds.momentum_x[a], 0.0);
      }
    }
  EXPECT_TRUE(touched);
}

TEST(SpatialOperator, NonBalancedImbalanceDecaysWithResolution) {
  const Scenario s = lake_at_rest_scenario();
  auto imbalance = [&](int n) {
    const Grid g = build_grid(s.bounds, n, n);
    const SpatialOperator op = make_operator(s, g);
    StateField d;
    op.derivative(initial_field(s, g), d);
    double acc = 0.0;
    for (std::size_t a = 0; a < d.size(); ++a) acc += std::abs(d.hu[a]) * g.cell_area();
    return acc;
  };
  const double e1 = imbalance(16), e2 = imbalance(32);
  EXPECT_GT(e1, 0.0);
  EXPECT_GT(std::log2(e1 / e2), 4.0);
}
