// Discrete operators: gradient/divergence adjointness, Neumann stencil,
// inner products against an independent summation oracle, and the total
// variation evaluators.

#include <random>
#include <stdexcept>

#include "kwc/grid.hpp"
#include "kwc/operators.hpp"
#include "support/checks.hpp"

using namespace kwc;

namespace {

std::mt19937_64 rng(20240811);

ScalarField random_field(const Grid& g, double bound = 1.0) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  ScalarField f(g);
  for (int c = 0; c < f.size(); ++c) f[c] = dist(rng);
  return f;
}

VectorField random_vector(const Grid& g, double bound = 1.0) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  VectorField w(g);
  for (auto& x : w.values()) x = dist(rng);
  return w;
}

void gradient_examples() {
  // constant field annihilated
  Grid g = Grid::line(8, 2.0);
  VectorField grad = gradient(ScalarField(g, 3.7));
  double sup = 0.0;
  for (double v : grad.values()) sup = std::max(sup, std::abs(v));
  CHECK(sup == 0.0, "gradient of constant is zero");

  // 1D two-cell hand evaluation: values (0, h) with spacing h
  const double h = 0.25;
  Grid g2 = Grid::line(2, 2.0 * h);
  ScalarField f(g2);
  f[0] = 0.0;
  f[1] = h;
  VectorField gr = gradient(f);
  CHECK_NEAR(gr.at(0, 0), 1.0, 0.0, "forward difference at cell 0");
  CHECK_NEAR(gr.at(1, 0), 0.0, 0.0, "mirrored boundary at cell 1");

  // linear ramp in x on a 2D grid -> (1, 0) in the interior
  Grid g3 = Grid::box(6, 5, 1.2, 1.0);
  ScalarField ramp(g3);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i)
      ramp[g3.index(i, j)] = (i + 0.5) * g3.spacing[0];
  VectorField gr3 = gradient(ramp);
  bool interior_ok = true;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i + 1 < 6; ++i) {
      const int c = g3.index(i, j);
      interior_ok = interior_ok && std::abs(gr3.at(c, 0) - 1.0) < 1e-13 &&
                    gr3.at(c, 1) == (j + 1 < 5 ? 0.0 : 0.0);
    }
  CHECK(interior_ok, "2D ramp gradient is (1, 0) off the x boundary");
}

void neumann_stencil() {
  // zero normal component in every boundary-adjacent stencil
  Grid g = Grid::box(7, 4, 1.0, 2.0);
  ScalarField f = random_field(g);
  VectorField gr = gradient(f);
  bool ok = true;
  for (int j = 0; j < 4; ++j) ok = ok && gr.at(g.index(6, j), 0) == 0.0;
  for (int i = 0; i < 7; ++i) ok = ok && gr.at(g.index(i, 3), 1) == 0.0;
  CHECK(ok, "gradient normal component vanishes on the boundary");
}

void divergence_examples() {
  Grid g = Grid::line(9, 1.0);
  ScalarField div0 = divergence(VectorField(g));
  CHECK(div0.linf() == 0.0, "divergence of zero field is zero");

  Grid one = Grid::single_cell(2.0);
  VectorField w(one);
  w.at(0, 0) = 5.0;
  CHECK(divergence(w).linf() == 0.0, "single-cell divergence is identically zero");
}

void adjointness() {
  for (const Grid& g :
       {Grid::line(17, 1.3), Grid::box(9, 11, 1.0, 0.7), Grid::single_cell()}) {
    for (int rep = 0; rep < 25; ++rep) {
      ScalarField f = random_field(g);
      VectorField w = random_vector(g);
      const double lhs = inner_product(divergence(w), f);
      const double rhs = -inner_product(w, gradient(f));
      const double scale = norm_X(w) * norm_X(f) + 1e-30;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * scale,
            "integration by parts to 1e-12 relative");
    }
  }
}

void inner_product_oracle() {
  Grid g = Grid::box(5, 6, 1.0, 1.0);
  ScalarField f(g, 1.0), h(g, 1.0);
  CHECK_NEAR(inner_product(f, h), 1.0, 1e-15, "unit fields on unit measure");

  // disjoint supports
  ScalarField a(g), b(g);
  a[3] = 2.0;
  b[17] = -4.0;
  CHECK(inner_product(a, b) == 0.0, "orthogonal fields");

  // independent hand summation
  ScalarField x = random_field(g), y = random_field(g);
  double hand = 0.0;
  for (int c = 0; c < x.size(); ++c)
    hand += x[c] * y[c] * g.spacing[0] * g.spacing[1];
  CHECK_NEAR(inner_product(x, y), hand, 1e-14, "summation oracle");

  bool threw = false;
  try {
    inner_product(x, ScalarField(Grid::line(3, 1.0)));
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  CHECK(threw, "grid mismatch rejected");
}

void total_variation_examples() {
  Grid g = Grid::line(12, 1.0);
  CHECK(total_variation(ScalarField(g, 2.5)) == 0.0, "constant has zero TV");

  // 1D unit step on two cells: TV = 1 regardless of spacing
  Grid g2 = Grid::line(2, 0.6);
  ScalarField step(g2);
  step[1] = 1.0;
  CHECK_NEAR(total_variation(step), 1.0, 1e-14, "unit step has TV 1");

  // positive homogeneity
  ScalarField f = random_field(g);
  const double tv = total_variation(f);
  ScalarField f3(g);
  for (int c = 0; c < f.size(); ++c) f3[c] = -3.0 * f[c];
  CHECK_NEAR(total_variation(f3), 3.0 * tv, 1e-12 * (1.0 + tv),
             "TV is positively homogeneous");
}

void weighted_tv_checks() {
  Grid g = Grid::box(6, 6, 1.0, 1.0);
  ScalarField theta = random_field(g);

  // constant weight scales plain TV
  ScalarField beta_c(g, 0.7);
  CHECK_NEAR(weighted_tv(beta_c, theta), 0.7 * total_variation(theta), 1e-13,
             "constant weight scales TV");

  CHECK(weighted_tv(random_field(g, 1.0 + 1e-9).grid() == g ? beta_c : beta_c,
                    ScalarField(g, 4.0)) == 0.0,
        "constant theta has zero weighted TV");

  // brute-force cell loop oracle
  ScalarField beta(g);
  for (int c = 0; c < beta.size(); ++c) beta[c] = std::abs(random_field(g)[c]);
  VectorField grad = gradient(theta);
  double hand = 0.0;
  for (int c = 0; c < beta.size(); ++c)
    hand += beta[c] * grad.cell_norm(c) * g.cell_volume();
  CHECK_NEAR(weighted_tv(beta, theta), hand, 1e-14 * (1.0 + hand),
             "weighted TV summation oracle");

  bool threw = false;
  try {
    ScalarField neg(g, -0.1);
    weighted_tv(neg, theta);
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  CHECK(threw, "negative weight rejected");

  // convexity of weighted_tv(beta, .) by midpoint inequality
  for (int rep = 0; rep < 20; ++rep) {
    ScalarField t1 = random_field(g), t2 = random_field(g), mid(g);
    for (int c = 0; c < mid.size(); ++c) mid[c] = 0.5 * (t1[c] + t2[c]);
    const double lhs = weighted_tv(beta, mid);
    const double rhs =
        0.5 * (weighted_tv(beta, t1) + weighted_tv(beta, t2));
    CHECK(lhs <= rhs + 1e-12 * (1.0 + rhs), "midpoint convexity");
  }
}

void signed_weighted_tv_checks() {
  Grid g = Grid::line(10, 1.0);
  ScalarField theta = random_field(g);
  ScalarField beta(g);
  for (int c = 0; c < beta.size(); ++c) beta[c] = std::abs(theta[c]) + 0.1;

  CHECK_NEAR(signed_weighted_tv(beta, theta), weighted_tv(beta, theta), 1e-14,
             "nonnegative weight reduces to weighted_tv");

  ScalarField mixed = random_field(g);
  ScalarField flipped(g);
  for (int c = 0; c < mixed.size(); ++c) flipped[c] = -mixed[c];
  CHECK_NEAR(signed_weighted_tv(flipped, theta),
             -signed_weighted_tv(mixed, theta), 1e-13,
             "antisymmetric in the weight");

  // additivity on nonnegative weights (linearity in beta)
  ScalarField b1(g), b2(g), sum(g);
  for (int c = 0; c < b1.size(); ++c) {
    b1[c] = std::abs(random_field(g)[c]);
    b2[c] = std::abs(random_field(g)[c]);
    sum[c] = b1[c] + b2[c];
  }
  const double lhs = signed_weighted_tv(sum, theta);
  const double rhs =
      signed_weighted_tv(b1, theta) + signed_weighted_tv(b2, theta);
  CHECK_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(rhs)), "additive in beta");

  // scaling by a nonnegative profile against the summation oracle
  ScalarField phi(g);
  for (int c = 0; c < phi.size(); ++c) phi[c] = 0.5 + 0.5 * std::abs(theta[c]);
  ScalarField prod(g);
  for (int c = 0; c < prod.size(); ++c) prod[c] = phi[c] * mixed[c];
  VectorField grad = gradient(theta);
  double hand = 0.0;
  for (int c = 0; c < prod.size(); ++c)
    hand += prod[c] * grad.cell_norm(c) * g.cell_volume();
  CHECK_NEAR(signed_weighted_tv(prod, theta), hand,
             1e-13 * (1.0 + std::abs(hand)), "linear functional oracle");
}

}  // namespace

int main() {
  gradient_examples();
  neumann_stencil();
  divergence_examples();
  adjointness();
  inner_product_oracle();
  total_variation_examples();
  weighted_tv_checks();
  signed_weighted_tv_checks();
  return kwc_test::summary("operators");
}
