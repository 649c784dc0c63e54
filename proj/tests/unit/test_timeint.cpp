#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "mpdec/cases.hpp"
#include "mpdec/spatial_operator.hpp"
#include "mpdec/timeint.hpp"

using namespace mpdec;

namespace {

// Linear two-cell exchange: mass moves from cell 0 to cell 1 at rate c * h_0.
struct Decay {
  double c;
  void operator()(const StateField& u, PdsSystem& pds) const {
    std::fill(pds.production.begin(), pds.production.end(), 0.0);
    std::fill(pds.destruction.begin(), pds.destruction.end(), 0.0);
    std::fill(pds.momentum_x.begin(), pds.momentum_x.end(), 0.0);
    std::fill(pds.momentum_y.begin(), pds.momentum_y.end(), 0.0);
    pds.destruction[pds.slot(0, 0)] = c * u.h[0];
    pds.production[pds.slot(1, 0)] = c * u.h[0];
  }
};

PdsSystem two_cell_shape() {
  PdsSystem pds(2, 1);
  pds.cols = {1, 0};
  return pds;
}

StateField two_cells(double a, double b) {
  StateField u(2);
  u.h = {a, b};
  return u;
}

// Starts away from zero so the regularized division does not enter the error.
double decay_error(double dt, const DecTables& tab, int K) {
  const Decay f{1.0};
  StateField u = two_cells(0.9, 0.1);
  const int steps = static_cast<int>(std::lround(1.0 / dt));
  const PdsFn fn = [&](const StateField& s, PdsSystem& p) {
    if (p.rows != 2) p = two_cell_shape();
    f(s, p);
  };
  for (int n = 0; n < steps; ++n) u = mpdec_step(u, dt, fn, tab, K);
  return std::abs(u.h[0] - 0.9 * std::exp(-1.0));
}

}  // namespace

TEST(DecTables, TrapezoidForOneSubstep) {
  const DecTables t = build_dec_tables(1);
  ASSERT_EQ(t.nodes.size(), 2u);
  EXPECT_EQ(t.weight(0, 0), 0.0);
  EXPECT_EQ(t.weight(0, 1), 0.0);
  EXPECT_NEAR(t.weight(1, 0), 0.5, 1e-15);
  EXPECT_NEAR(t.weight(1, 1), 0.5, 1e-15);
}

TEST(DecTables, LobattoNodesForThreeSubsteps) {
  const DecTables t = build_dec_tables(3);
  EXPECT_NEAR(t.nodes[1], 0.5 - std::sqrt(5.0) / 10.0, 1e-15);
  EXPECT_NEAR(t.nodes[2], 0.5 + std::sqrt(5.0) / 10.0, 1e-15);
  EXPECT_EQ(t.beta, t.nodes);
  bool negative = false;
  for (int m = 0; m <= 3; ++m) {
    const auto row = t.row(m);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), t.nodes[m], 1e-14);
    for (double w : row) negative = negative || w < 0.0;
  }
  EXPECT_TRUE(negative);
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(t.weight(0, r), 0.0);
}

TEST(DecTables, IntegratesPolynomialsOfDegreeM) {
  for (NodeFamily fam : {NodeFamily::GaussLobatto, NodeFamily::Equispaced}) {
    const DecTables t = build_dec_tables(5, fam);
    for (int m = 0; m <= 5; ++m) {
      double acc = 0.0;
      for (int r = 0; r <= 5; ++r) acc += t.weight(m, r) * std::pow(t.nodes[r], 5);
      EXPECT_NEAR(acc, std::pow(t.nodes[m], 6) / 6.0, 1e-14);
    }
  }
  EXPECT_THROW(build_dec_tables(0), std::invalid_argument);
}

TEST(Patankar, GammaSelect) {
  static_assert(gamma_select(3, 7, 0.2) == 3);
  static_assert(gamma_select(3, 7, 0.0) == 3);
  static_assert(gamma_select(3, 7, -0.2) == 7);
  SUCCEED();
}

TEST(Patankar, TwoCellMassMatrix) {
  PdsSystem pds = two_cell_shape();
  const double c = 2.0, dt = 0.1;
  pds.destruction[pds.slot(0, 0)] = c;
  pds.production[pds.slot(1, 0)] = c;
  const std::vector<double> h = {1.0, 1.0};
  const PatankarMass m = assemble_mass(pds, h, 1.0, dt, 0.0);
  EXPECT_NEAR(m.diag[0], 1.0 + dt * c, 1e-15);
  EXPECT_EQ(m.offdiag[0], 0.0);
  EXPECT_NEAR(m.diag[1], 1.0, 1e-15);
  EXPECT_NEAR(m.offdiag[1], -dt * c, 1e-15);
  // Columns sum to one: the solve conserves total mass.
  EXPECT_NEAR(m.diag[0] + m.offdiag[1], 1.0, 1e-15);
}

TEST(Patankar, NegativeWeightSwapsRoles) {
  PdsSystem pds = two_cell_shape();
  pds.destruction[pds.slot(0, 0)] = 1.0;
  pds.production[pds.slot(1, 0)] = 1.0;
  const std::vector<double> h = {1.0, 1.0};
  const PatankarMass m = assemble_mass(pds, h, -1.0, 0.5, 0.0);
  EXPECT_NEAR(m.diag[1], 1.5, 1e-15);
  EXPECT_NEAR(m.offdiag[pds.slot(0, 0)], -0.5, 1e-15);
  EXPECT_NEAR(m.diag[0], 1.0, 1e-15);
}

TEST(Jacobi, SmallSystem) {
  PatankarMass m(two_cell_shape());
  m.diag = {2.0, 2.0};
  m.offdiag = {-1.0, -1.0};
  const std::vector<double> rhs = {2.5, -0.5};
  const JacobiResult r = jacobi_solve(m, rhs);
  EXPECT_NEAR(r.x[0], 1.5, 1e-13);
  EXPECT_NEAR(r.x[1], 0.5, 1e-13);
}

TEST(Jacobi, IdentityConvergesImmediately) {
  PatankarMass m(two_cell_shape());
  m.diag = {1.0, 1.0};
  m.offdiag = {0.0, 0.0};
  const std::vector<double> rhs = {3.0, 4.0};
  const JacobiResult r = jacobi_solve(m, rhs);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.x, rhs);
}

TEST(Jacobi, ThrowsWhenNotConverging) {
  PatankarMass m(two_cell_shape());
  m.diag = {1.0, 1.0};
  m.offdiag = {-3.0, -3.0};
  const std::vector<double> rhs = {1.0, 0.0};
  EXPECT_THROW(jacobi_solve(m, rhs, 0.0, 50), SolverError);
}

TEST(Mpdec, ConservesAndStaysPositiveAtStiffSteps) {
  const DecTables tab = build_dec_tables(3);
  MpdecOptions opt;
  opt.jacobi_max_iter = 100000;
  // up to ten times the stiffness scale 1 / 50
  for (double dt : {0.02, 0.1, 0.2}) {
    const PdsFn fn = [](const StateField& s, PdsSystem& p) {
      if (p.rows != 2) p = two_cell_shape();
      Decay{50.0}(s, p);
    };
    const StateField u = mpdec_step(two_cells(0.9, 0.1), dt, fn, tab, 5, opt);
    EXPECT_GT(u.h[0], 0.0);
    EXPECT_GT(u.h[1], 0.0);
    EXPECT_NEAR(u.h[0] + u.h[1], 1.0, 1e-14);
  }
}

TEST(Mpdec, FifthOrderOnLinearDecay) {
  const DecTables tab = build_dec_tables(3);
  const double e1 = decay_error(0.05, tab, 5), e2 = decay_error(0.025, tab, 5);
  EXPECT_GT(std::log2(e1 / e2), 4.8);
}

TEST(Mpdec, StatsCountEvaluations) {
  const DecTables tab = build_dec_tables(3);
  StepStats st;
  const PdsFn fn = [](const StateField& s, PdsSystem& p) {
    if (p.rows != 2) p = two_cell_shape();
    Decay{1.0}(s, p);
  };
  mpdec_step(two_cells(1.0, 0.0), 0.1, fn, tab, 5, {}, &st);
  EXPECT_EQ(st.evaluations, 1 + 4 * 3);
  EXPECT_EQ(st.solves, 5 * 3);
  EXPECT_GE(st.jacobi_max, 1);
}

TEST(Dec, FifthOrderOnExponentialGrowth) {
  const DecTables tab = build_dec_tables(3);
  const RhsFn f = [](const StateField& u, StateField& d) {
    d = StateField(u.size());
    d.h[0] = u.h[0];
  };
  auto err = [&](int steps) {
    StateField u(1);
    u.h[0] = 1.0;
    for (int n = 0; n < steps; ++n) u = dec_step(u, 1.0 / steps, f, tab, 5);
    return std::abs(u.h[0] - std::exp(1.0));
  };
  EXPECT_GT(std::log2(err(10) / err(20)), 4.8);
}

TEST(Dec, OneIterationIsForwardEuler) {
  const DecTables tab = build_dec_tables(3);
  const RhsFn f = [](const StateField& u, StateField& d) {
    d = StateField(u.size());
    d.h[0] = -2.0 * u.h[0];
    d.hu[0] = 1.0;
  };
  StateField u(1);
  u.h[0] = 1.0;
  const StateField v = dec_step(u, 0.1, f, tab, 1);
  EXPECT_NEAR(v.h[0], 0.8, 1e-15);
  EXPECT_NEAR(v.hu[0], 0.1, 1e-15);
}

TEST(Dec, ZeroRhsIsIdentity) {
  const DecTables tab = build_dec_tables(4);
  const RhsFn f = [](const StateField& u, StateField& d) { d = StateField(u.size()); };
  StateField u(3);
  u.h = {1.0, 2.0, 3.0};
  u.hv = {-1.0, 0.5, 0.25};
  const StateField v = dec_step(u, 0.7, f, tab, 5);
  EXPECT_EQ(v.h, u.h);
  EXPECT_EQ(v.hv, u.hv);
}

TEST(Mpdec, WellBalancedLakeStepIsExact) {
  const Scenario s = lake_at_rest_scenario();
  const Grid g = build_grid(s.bounds, 12, 12);
  OperatorOptions o;
  o.physics.gravity = s.gravity;
  o.physics.eps_div = s.eps_div;
  o.eps_lim = s.eps_lim;
  SpatialOperator op(g, generate_tables(3, 4, s.eps_weno), s.bathymetry, o);
  const StateField u0 = initial_field(s, g);
  op.set_reference(precompute_reference(op, steady_field(s, g)));
  const PdsFn fn = [&](const StateField& u, PdsSystem& p) {
    if (p.rows != g.cell_count()) p = PdsSystem::for_grid(g);
    op.evaluate(u, p);
  };
  StepStats st;
  const StateField u1 = mpdec_step(u0, 0.01, fn, build_dec_tables(3), 5, {}, &st);
  EXPECT_EQ(u1.h, u0.h);
  EXPECT_EQ(u1.hu, u0.hu);
  EXPECT_EQ(st.jacobi_max, 1);
}
