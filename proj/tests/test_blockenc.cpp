#include <catch2/catch_amalgamated.hpp>

#include "oscsim/blockenc.hpp"
#include "oscsim/spectral.hpp"

#include "test_util.hpp"

using namespace oscsim;
using namespace oscsim::blockenc;
using Catch::Approx;

namespace {

// masses and springs chosen so that none of the binary fractions terminate
SpringNetwork irrational_net() {
    return SpringNetwork(4, {0.7, 1.0, 1.3, 1.9},
                         {{0, 1, 0.53}, {1, 2, 0.81}, {2, 3, 1.07}, {0, 0, 0.67}}, 3);
}

} // namespace

TEST_CASE("quantize", "[blockenc]") {
    CHECK(quantize(1.0, 1.0, 4) == 16);
    CHECK(quantize(0.0, 1.0, 4) == 0);
    CHECK(quantize(1.0 / 3.0, 1.0, 8) == 85);
    const double rebuilt = 1.0 * 85.0 / 256.0;
    CHECK(std::abs(rebuilt - 1.0 / 3.0) < 1.0 / 256.0);
    CHECK_THROWS_AS(quantize(2.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(quantize(-0.5, 1.0, 4), std::invalid_argument);
}

TEST_CASE("exactly representable data encodes exactly", "[blockenc]") {
    // kappa / (aleph m) lands on squares of dyadic grid points, so the
    // comparison count is exact and no quantization error remains
    SpringNetwork net(2, {1.0, 1.0}, {{0, 1, 1.0}, {0, 0, 0.25}}, 2);
    const auto enc = block_encode_B(net, {16, 16, 16});
    CHECK(enc.achieved_error <= 1e-12);
    CHECK(enc.lambda == Approx(std::sqrt(2.0 * 1.0 * 2.0)));
}

TEST_CASE("moderate budgets reach the documented error", "[blockenc]") {
    SpringNetwork net(2, {1.0, 1.0}, {{0, 1, 1.0}}, 2);
    const auto enc = block_encode_B(net, {8, 8, 8});
    CHECK(enc.achieved_error <= std::ldexp(1.0, -6));
    CHECK(enc.achieved_error <= enc.predicted_error);
}

TEST_CASE("error bound holds across random networks", "[blockenc]") {
    for (std::uint64_t seed = 300; seed < 350; ++seed) {
        const auto net = testutil::random_network(
            seed, {.max_n = 8, .mass_lo = 0.4, .mass_hi = 1.0});
        const QuantizationConfig cfg{int(4 + seed % 6), int(6 + seed % 5),
                                     int(6 + seed % 7)};
        const auto enc = block_encode_B(net, cfg);
        CHECK(enc.achieved_error <= 4.0 * enc.predicted_error);
    }
}

TEST_CASE("error halves per extra bit", "[blockenc]") {
    const auto net = irrational_net();
    std::vector<double> errors;
    for (int r = 4; r <= 16; ++r) {
        const auto enc = block_encode_B(net, {r, r, r});
        CHECK(enc.achieved_error <= enc.predicted_error);
        errors.push_back(enc.achieved_error);
    }
    // least-squares slope of log2(error) against r
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int count = static_cast<int>(errors.size());
    for (int i = 0; i < count; ++i) {
        const double x = 4.0 + i;
        const double y = std::log2(errors[static_cast<std::size_t>(i)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    CHECK(slope < -0.75);
    CHECK(slope > -1.25);
}

TEST_CASE("direct block equals the one cut from the unitary", "[blockenc]") {
    for (const QuantizationConfig cfg : {QuantizationConfig{4, 5, 5},
                                         QuantizationConfig{6, 7, 6}}) {
        const auto net = irrational_net();
        const auto enc = block_encode_B(net, cfg);
        const auto unitary = materialize_unitary_B(net, cfg);
        const auto cut = extract_block_B(unitary, enc.padded_n, cfg);
        CHECK(spectral_norm(enc.block - cut) < 1e-13);

        // orthogonality of the materialized operator
        Eigen::SparseMatrix<double> gram(unitary.transpose() * unitary);
        double worst = 0.0;
        for (int outer = 0; outer < gram.outerSize(); ++outer)
            for (Eigen::SparseMatrix<double>::InnerIterator it(gram, outer); it; ++it)
                worst = std::max(worst, std::abs(it.value() -
                                                 (it.row() == it.col() ? 1.0 : 0.0)));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("odd sizes are padded with decoupled unit masses", "[blockenc]") {
    SpringNetwork net(3, {1.0, 1.0, 1.0}, {{0, 1, 1.0}, {1, 2, 0.5}}, 3);
    const auto enc = block_encode_B(net, {10, 10, 10});
    CHECK(enc.padded_n == 4);
    CHECK(enc.padded_d == 4);
    // padded rows stay silent
    for (int outer = 0; outer < enc.block.outerSize(); ++outer)
        for (Eigen::SparseMatrix<double>::InnerIterator it(enc.block, outer); it; ++it)
            CHECK(it.row() < 3);
}

TEST_CASE("anti-block assembly of H", "[blockenc]") {
    const auto net = irrational_net();
    const QuantizationConfig cfg{6, 8, 8};
    const auto be_b = block_encode_B(net, cfg);
    const auto be_h = block_encode_H(net, be_b);
    CHECK(be_h.lambda == be_b.lambda);
    CHECK(be_h.achieved_error <= be_b.achieved_error + 1e-12);
    CHECK(is_symmetric(Eigen::MatrixXd(be_h.block)));

    // exact budgets keep the assembly exact
    SpringNetwork dyadic(2, {1.0, 1.0}, {{0, 1, 1.0}, {0, 0, 0.25}}, 2);
    const auto exact_b = block_encode_B(dyadic, {16, 16, 16});
    const auto exact_h = block_encode_H(dyadic, exact_b);
    CHECK(exact_h.achieved_error <= 1e-12);
}

TEST_CASE("spectrum of the H encoding matches the padded target", "[blockenc]") {
    SpringNetwork net(2, {1.0, 1.0}, {{0, 1, 1.0}, {0, 0, 0.7}}, 2);
    const QuantizationConfig cfg{10, 12, 12};
    const auto be_b = block_encode_B(net, cfg);
    const auto be_h = block_encode_H(net, be_b);

    const int nn = be_h.padded_n * be_h.padded_n;
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(2 * nn, 2 * nn);
    const Eigen::MatrixXd b_exact(padded_incidence(pad_to_power_of_two(net)));
    for (int j = 0; j < be_h.padded_n; ++j)
        for (int c = 0; c < nn; ++c) {
            target(j * be_h.padded_n, nn + c) = -b_exact(j, c);
            target(nn + c, j * be_h.padded_n) = -b_exact(j, c);
        }

    const Eigen::MatrixXd scaled = be_h.lambda * Eigen::MatrixXd(be_h.block);
    const SymmetricEigen approx_eig = symmetric_eigen(scaled);
    const SymmetricEigen exact_eig = symmetric_eigen(target);
    const double worst =
        (approx_eig.values - exact_eig.values).cwiseAbs().maxCoeff();
    CHECK(worst <= be_h.lambda * be_h.achieved_error + 1e-10);
    CHECK(approx_eig.values.cwiseAbs().maxCoeff() <=
          exact_eig.values.cwiseAbs().maxCoeff() + be_h.lambda * be_h.achieved_error +
              1e-10);
}

TEST_CASE("H unitary via the conditional reflection", "[blockenc]") {
    SpringNetwork net(2, {1.0, 1.0}, {{0, 1, 1.0}, {0, 0, 0.5}}, 2);
    const QuantizationConfig cfg{4, 6, 6};
    const auto be_b = block_encode_B(net, cfg);
    const auto be_h = block_encode_H(net, be_b);

    const auto u_h = materialize_unitary_H(net, cfg);
    const auto cut = extract_block_H(u_h, be_h.padded_n, cfg);
    CHECK(spectral_norm(Eigen::SparseMatrix<double>(cut - be_h.block)) < 1e-13);

    const Eigen::MatrixXd dense(u_h);
    const Eigen::MatrixXd gram = dense.transpose() * dense;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK(is_symmetric(dense));
}

TEST_CASE("simulation cost model", "[blockenc]") {
    SpringNetwork net(2, {1.0, 1.0}, {{0, 1, 1.0}}, 2);
    CHECK(simulation_cost_model(net, 0.0, 0.5).queries == Approx(1.0));

    // doubling the sparsity bound scales tau by sqrt(2)
    SpringNetwork wide(2, {1.0, 1.0}, {{0, 1, 1.0}}, 4);
    CHECK(simulation_cost_model(wide, 3.0, 0.1).tau ==
          Approx(std::sqrt(2.0) * simulation_cost_model(net, 3.0, 0.1).tau));

    // linear growth in t at fixed eps
    const double q1 = simulation_cost_model(net, 10.0, 0.1).queries;
    const double q2 = simulation_cost_model(net, 20.0, 0.1).queries;
    const double q3 = simulation_cost_model(net, 30.0, 0.1).queries;
    CHECK(q3 - q2 == Approx(q2 - q1).epsilon(1e-12));
    CHECK(simulation_cost_model(net, 10.0, 0.1).eps_prime ==
          Approx(0.1 / q1).epsilon(1e-12));
}

TEST_CASE("initial state preparation", "[blockenc]") {
    // velocity-only start: amplitude = sqrt(E / K_max)
    const auto net = testutil::random_network(400, {.max_n = 12});
    const int n = net.size();
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd v0 = Eigen::VectorXd::Random(n);
    const auto velocity_only = prepare_initial_state(net, x0, v0);
    const double e = energy(net, {x0, v0, 0.0}).total;
    const double k_max = 0.5 * net.mass_max() * v0.squaredNorm();
    CHECK(velocity_only.success_amplitude == Approx(std::sqrt(e / k_max)));
    CHECK(velocity_only.success_amplitude <= 1.0 + 1e-12);
    CHECK(velocity_only.success_amplitude > 0.0);

    // general start: amplitude^2 equals the assembled subnormalization
    const auto state = testutil::random_state(401, n);
    const auto prep = prepare_initial_state(net, state.x, state.v);
    double numerator = 0.0;
    for (int j = 0; j < n; ++j) numerator += net.mass(j) * state.v[j] * state.v[j];
    for (const Spring& s : net.springs()) {
        const double stretch = s.j == s.k ? state.x[s.j] : state.x[s.j] - state.x[s.k];
        numerator += s.kappa * stretch * stretch;
    }
    const double denominator =
        net.mass_max() * state.v.squaredNorm() +
        2.0 * net.kappa_max() * net.sparsity() * state.x.squaredNorm();
    CHECK(prep.success_amplitude * prep.success_amplitude ==
          Approx(numerator / denominator).epsilon(1e-12));
    CHECK((prep.psi0.amplitudes -
           encode_primary(net, {state.x, state.v, 0.0}).amplitudes)
              .norm() < 1e-10);

    // search-style instance: one unit mass among featherweights, uniform kick
    for (int size : {16, 64, 256}) {
        std::vector<double> masses(static_cast<std::size_t>(size), 1e-8);
        masses[3] = 1.0;
        SpringNetwork search(size, std::move(masses), {}, 1);
        Eigen::VectorXd vx = Eigen::VectorXd::Zero(size);
        Eigen::VectorXd vv =
            Eigen::VectorXd::Constant(size, 1.0 / std::sqrt(double(size)));
        const auto rounds = prepare_initial_state(search, vx, vv).rounds_estimate;
        CHECK(rounds >= 0.9 * std::sqrt(double(size)));
        CHECK(rounds <= 1.1 * std::sqrt(double(size)) + 1.0);
    }

    CHECK_THROWS_AS(
        prepare_initial_state(net, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)),
        degenerate_state_error);
}

TEST_CASE("preparation amplitude reaches one only at saturation", "[blockenc]") {
    // uniform masses, no displacement: the denominator collapses to 2E
    SpringNetwork uniform(3, {2.0, 2.0, 2.0}, {{0, 1, 1.0}}, 2);
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd v0(3);
    v0 << 0.4, -0.3, 1.1;
    const auto prep = prepare_initial_state(uniform, x0, v0);
    CHECK(prep.success_amplitude == Approx(1.0).epsilon(1e-12));
    CHECK(prep.rounds_estimate == Approx(1.0));

    // a lighter mass anywhere breaks the equality
    SpringNetwork uneven(3, {2.0, 1.0, 2.0}, {{0, 1, 1.0}}, 2);
    CHECK(prepare_initial_state(uneven, x0, v0).success_amplitude < 1.0);
}

TEST_CASE("unitary materialization at larger register sizes", "[blockenc]") {
    // eight masses on a ring: padding is a no-op, d rounds to 4
    std::vector<Spring> ring;
    for (int j = 0; j < 8; ++j)
        ring.push_back({std::min(j, (j + 1) % 8), std::max(j, (j + 1) % 8),
                        0.3 + 0.1 * j});
    ring.push_back({0, 0, 0.45});
    SpringNetwork net(8, {0.6, 0.8, 1.0, 1.2, 0.9, 1.1, 0.7, 1.3}, std::move(ring), 4);
    const blockenc::QuantizationConfig cfg{4, 6, 6};
    const auto enc = blockenc::block_encode_B(net, cfg);
    CHECK(enc.padded_n == 8);
    CHECK(enc.padded_d == 4);
    const auto unitary = blockenc::materialize_unitary_B(net, cfg);
    const auto cut = blockenc::extract_block_B(unitary, enc.padded_n, cfg);
    CHECK(blockenc::spectral_norm(enc.block - cut) < 1e-13);

    // norm preservation on a few random vectors
    std::mt19937_64 gen(5150);
    for (int round = 0; round < 3; ++round) {
        Eigen::VectorXd probe(unitary.cols());
        for (Eigen::Index i = 0; i < probe.size(); ++i)
            probe[i] = uniform_range(gen, -1.0, 1.0);
        probe /= probe.norm();
        CHECK((unitary * probe).norm() == Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(blockenc::materialize_unitary_B(net, {14, 14, 14}),
                    resource_limit_error);
}

TEST_CASE("H unitary block at the four-mass size", "[blockenc]") {
    const auto net = irrational_net();
    const blockenc::QuantizationConfig cfg{4, 6, 6};
    const auto be_h = blockenc::block_encode_H(net, blockenc::block_encode_B(net, cfg));
    const auto u_h = blockenc::materialize_unitary_H(net, cfg);
    const auto cut = blockenc::extract_block_H(u_h, be_h.padded_n, cfg);
    CHECK(blockenc::spectral_norm(Eigen::SparseMatrix<double>(cut - be_h.block)) <
          1e-13);

    Eigen::SparseMatrix<double> gram(u_h.transpose() * u_h);
    double worst = 0.0;
    for (int outer = 0; outer < gram.outerSize(); ++outer)
        for (Eigen::SparseMatrix<double>::InnerIterator it(gram, outer); it; ++it)
            worst = std::max(worst,
                             std::abs(it.value() - (it.row() == it.col() ? 1.0 : 0.0)));
    CHECK(worst < 1e-10);
}
