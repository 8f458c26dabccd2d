#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qjump/errors.hpp"
#include "qjump/qaoa.hpp"
#include "support/oracles.hpp"
#include "support/random_cases.hpp"

using namespace qjump;

namespace {

constexpr double kPi = 3.14159265358979323846;

DiagonalHamiltonian single_edge() { return maxcut_hamiltonian(parse_graph("2 1\n0 1\n")); }

QaoaParams make_params(std::initializer_list<double> gammas, std::initializer_list<double> betas) {
  QaoaParams p;
  p.gammas = Eigen::Map<const Eigen::VectorXd>(std::data(gammas), std::ssize(gammas));
  p.betas = Eigen::Map<const Eigen::VectorXd>(std::data(betas), std::ssize(betas));
  return p;
}

}  // namespace

TEST_SUITE("qaoa") {

TEST_CASE("zero angles give the plus state") {
  const DiagonalHamiltonian h = single_edge();
  const State s = qaoa_state(h, make_params({0.0}, {0.0}));
  CHECK((s.amplitudes - uniform_superposition(2).amplitudes).norm() == 0.0);
}

TEST_CASE("single-edge closed form") {
  const DiagonalHamiltonian h = single_edge();
  CHECK(qaoa_energy(h, make_params({0.0}, {0.0})) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(qaoa_energy(h, make_params({kPi / 2}, {kPi / 8})) ==
        doctest::Approx(-1.0).epsilon(1e-10));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const double g = uniform_double(rng, 0.0, kPi);
    const double b = uniform_double(rng, 0.0, kPi);
    CHECK(std::abs(qaoa_energy(h, make_params({g}, {b})) - oracle::single_edge_energy(g, b)) <
          1e-10);
  }
}

TEST_CASE("states stay normalized") {
  std::mt19937_64 rng(19);
  const DiagonalHamiltonian h = maxcut_hamiltonian(parse_graph("4 4\n0 1\n1 2\n2 3\n0 3\n"));
  for (int trial = 0; trial < 10; ++trial) {
    QaoaParams p;
    p.gammas = Eigen::VectorXd(3);
    p.betas = Eigen::VectorXd(3);
    for (int k = 0; k < 3; ++k) {
      p.gammas[k] = uniform_double(rng, -5, 5);
      p.betas[k] = uniform_double(rng, -5, 5);
    }
    CHECK(std::abs(qaoa_state(h, p).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("periodicity in beta and gamma") {
  std::mt19937_64 rng(23);
  const DiagonalHamiltonian h = maxcut_hamiltonian(parse_graph("3 3\n0 1\n1 2\n0 2\n"));
  for (int trial = 0; trial < 10; ++trial) {
    QaoaParams p = make_params({uniform_double(rng, 0, 2 * kPi), uniform_double(rng, 0, 2 * kPi)},
                               {uniform_double(rng, 0, kPi), uniform_double(rng, 0, kPi)});
    const double base = qaoa_energy(h, p);

    QaoaParams shifted_beta = p;
    shifted_beta.betas[trial % 2] += kPi;
    CHECK(std::abs(qaoa_energy(h, shifted_beta) - base) < 1e-10);

    // Unit weights: integer energies, so gamma has period 2π.
    QaoaParams shifted_gamma = p;
    shifted_gamma.gammas[trial % 2] += 2 * kPi;
    CHECK(std::abs(qaoa_energy(h, shifted_gamma) - base) < 1e-10);
  }
}

TEST_CASE("gradient vanishes at stationary points") {
  const DiagonalHamiltonian h = single_edge();
  const Eigen::VectorXd g0 = qaoa_gradient(h, make_params({0.0}, {0.0}));
  CHECK(g0.lpNorm<Eigen::Infinity>() < 2e-7);

  const Eigen::VectorXd g1 = qaoa_gradient(h, make_params({kPi / 2}, {kPi / 8}));
  CHECK(g1.lpNorm<Eigen::Infinity>() < 2e-7);
}

TEST_CASE("finite differences converge at second order") {
  const DiagonalHamiltonian h = maxcut_hamiltonian(parse_graph("3 2\n0 1\n1 2\n"));
  const QaoaParams p = make_params({0.7}, {0.45});
  const Eigen::VectorXd exact = qaoa_gradient(h, p, 1e-6);
  const double err_h = (qaoa_gradient(h, p, 2e-3) - exact).lpNorm<Eigen::Infinity>();
  const double err_h2 = (qaoa_gradient(h, p, 1e-3) - exact).lpNorm<Eigen::Infinity>();
  const double ratio = err_h / err_h2;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("gradient matches the analytic single-edge form") {
  const DiagonalHamiltonian h = single_edge();
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double g = kPi * i / 9, b = kPi * j / 9;
      const Eigen::VectorXd fd = qaoa_gradient(h, make_params({g}, {b}));
      const Eigen::Vector2d an = oracle::single_edge_gradient(g, b);
      CHECK(std::abs(fd[0] - an[0]) < 1e-6);
      CHECK(std::abs(fd[1] - an[1]) < 1e-6);
    }
  }
}

TEST_CASE("optimizer reaches the single-edge optimum") {
  const DiagonalHamiltonian h = single_edge();
  OptimizerConfig config;
  const OptTrace trace = optimize(h, make_params({0.3}, {0.3}), config);
  CHECK(trace.best().energy == doctest::Approx(-1.0).epsilon(1e-4));

  // Energies recomputable from recorded params.
  for (std::size_t i = 0; i < trace.iterates.size(); i += 17) {
    CHECK(std::abs(qaoa_energy(h, trace.iterates[i].params) - trace.iterates[i].energy) < 1e-10);
  }
}

TEST_CASE("momentum accelerates without breaking convergence") {
  const DiagonalHamiltonian h = single_edge();
  OptimizerConfig config;
  config.momentum = 0.5;
  const OptTrace trace = optimize(h, make_params({0.3}, {0.3}), config);
  CHECK(trace.best().energy == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("optimizer stops immediately at a stationary point") {
  const DiagonalHamiltonian h = single_edge();
  const OptTrace trace = optimize(h, make_params({0.0}, {0.0}), OptimizerConfig{});
  CHECK(trace.reason == StopReason::GradientConverged);
  REQUIRE(trace.iterates.size() == 1);
  CHECK(trace.iterates[0].params.gammas[0] == 0.0);
  CHECK(trace.iterates[0].params.betas[0] == 0.0);
}

TEST_CASE("optimizer traces are bit-identical across runs") {
  const DiagonalHamiltonian h = maxcut_hamiltonian(parse_graph("3 3\n0 1\n1 2\n0 2\n"));
  OptimizerConfig config;
  config.max_iterations = 50;
  const QaoaParams init = make_params({0.4, 1.1}, {0.2, 0.9});
  const OptTrace a = optimize(h, init, config);
  const OptTrace b = optimize(h, init, config);
  REQUIRE(a.iterates.size() == b.iterates.size());
  CHECK(a.reason == b.reason);
  for (std::size_t i = 0; i < a.iterates.size(); ++i) {
    CHECK(a.iterates[i].energy == b.iterates[i].energy);
    CHECK(a.iterates[i].grad_inf_norm == b.iterates[i].grad_inf_norm);
    CHECK((a.iterates[i].params.flat().array() == b.iterates[i].params.flat().array()).all());
  }
}

TEST_CASE("plateau signal stops the optimizer") {
  const DiagonalHamiltonian h = single_edge();
  OptimizerConfig config;
  config.grad_tolerance = 0.0;  // never converge; plateau has to fire
  config.plateau_grad_tol = 1e-3;
  config.plateau_window = 5;
  const OptTrace trace = optimize(h, make_params({0.3}, {0.3}), config);
  CHECK(trace.reason == StopReason::PlateauDetected);
  for (std::size_t i = trace.iterates.size() - 5; i < trace.iterates.size(); ++i) {
    CHECK(trace.iterates[i].grad_inf_norm < 1e-3);
  }
}

TEST_CASE("landscape matches the closed form and the corner rule") {
  const DiagonalHamiltonian h = single_edge();
  const LandscapeTable table = landscape(h, 1, 16);
  REQUIRE(table.points.size() == 256);
  for (const auto& pt : table.points) {
    CHECK(std::abs(pt.energy - oracle::single_edge_energy(pt.gamma, pt.beta)) < 1e-10);
  }
  CHECK(table.points[0].gamma == 0.0);
  CHECK(table.points[0].beta == 0.0);
  CHECK(std::abs(table.points[0].energy - (-0.5)) < 1e-10);

  // Corner (0,0) equals −Σw/2 for a weighted instance too.
  const Graph g = parse_graph("3 2\n0 1 2.0\n1 2 0.5\n");
  const LandscapeTable wt = landscape(maxcut_hamiltonian(g), 3, 4);
  CHECK(std::abs(wt.points[0].energy - (-g.total_weight() / 2)) < 1e-10);
}

TEST_CASE("landscape at p=1 matches dense simulation") {
  const Graph g = parse_graph("3 3\n0 1\n1 2\n0 2\n");
  const DiagonalHamiltonian h = maxcut_hamiltonian(g);
  auto href = std::make_shared<const DiagonalHamiltonian>(h);
  const LandscapeTable table = landscape(h, 1, 8);
  for (const auto& pt : table.points) {
    // Independent path: dense unitaries applied to the dense plus vector.
    const Eigen::MatrixXcd phase = oracle::dense_layer_matrix(CostPhase{-pt.gamma, href}, 3);
    const Eigen::MatrixXcd mixer = oracle::dense_layer_matrix(MixerX{pt.beta}, 3);
    const Eigen::VectorXcd psi = mixer * phase * uniform_superposition(3).amplitudes;
    double energy = 0.0;
    for (int x = 0; x < 8; ++x) energy += std::norm(psi[x]) * h.energies[x];
    CHECK(std::abs(pt.energy - energy) < 1e-12);
  }
}

TEST_CASE("landscape export format") {
  const DiagonalHamiltonian h = single_edge();
  for (int depth : {2, 4, 8, 16}) {
    const LandscapeTable table = landscape(h, depth, 4);
    std::ostringstream os;
    write_landscape(os, table, {"instance: test"});
    std::istringstream is(os.str());

    std::string line;
    int rows = 0, blanks = 0, comments = 0;
    while (std::getline(is, line)) {
      if (line.empty()) {
        ++blanks;
        continue;
      }
      if (line[0] == '#') {
        ++comments;
        continue;
      }
      std::istringstream ls(line);
      double g, b, e;
      std::string extra;
      REQUIRE(static_cast<bool>(ls >> g >> b >> e));
      REQUIRE(!(ls >> extra));
      ++rows;
    }
    CHECK(rows == 16);
    CHECK(blanks == 3);  // one between each pair of gamma blocks
    CHECK(comments == 1);
  }
}

TEST_CASE("input validation") {
  const DiagonalHamiltonian h = single_edge();
  QaoaParams bad;
  bad.gammas = Eigen::VectorXd::Zero(2);
  bad.betas = Eigen::VectorXd::Zero(1);
  CHECK_THROWS_AS(qaoa_state(h, bad), ShapeError);
  CHECK_THROWS_AS(landscape(h, 1, 1), ConfigError);
  CHECK_THROWS_AS(landscape(h, 0, 8), ConfigError);
}

}  // TEST_SUITE
