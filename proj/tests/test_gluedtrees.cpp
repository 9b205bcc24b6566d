#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oscsim/dynamics.hpp"
#include "oscsim/gluedtrees.hpp"

#include "test_util.hpp"

using namespace oscsim;
using namespace oscsim::gluedtrees;
using Catch::Approx;

TEST_CASE("smallest instance has the right shape", "[gluedtrees]") {
    const auto inst = generate(2, 1);
    CHECK(inst.network.size() == 6);
    CHECK(inst.column_size(2) == 2);
    CHECK(inst.column_size(3) == 2);
    // four gluing edges between the two middle columns
    int gluing = 0;
    for (const Spring& s : inst.network.springs())
        if (s.j != s.k && s.j >= 1 && s.j <= 2 && s.k >= 3 && s.k <= 4) ++gluing;
    CHECK(gluing == 4);
}

TEST_CASE("degrees and wall springs follow the construction", "[gluedtrees]") {
    const auto inst = generate(4, 9);
    const int n = inst.network.size();
    REQUIRE(n == (1 << 5) - 2);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<double> wall(static_cast<std::size_t>(n), 0.0);
    for (const Spring& s : inst.network.springs()) {
        if (s.j == s.k) {
            wall[static_cast<std::size_t>(s.j)] = s.kappa;
        } else {
            degree[static_cast<std::size_t>(s.j)]++;
            degree[static_cast<std::size_t>(s.k)]++;
        }
    }
    CHECK(degree[0] == 2);
    CHECK(degree[static_cast<std::size_t>(n - 1)] == 2);
    CHECK(wall[0] == 1.0);
    CHECK(wall[static_cast<std::size_t>(n - 1)] == 1.0);
    for (int j = 1; j < n - 1; ++j) {
        CHECK(degree[static_cast<std::size_t>(j)] == 3);
        CHECK(wall[static_cast<std::size_t>(j)] == 0.0);
    }
    // only the roots respond to the diagonal oracle
    CHECK(inst.network.wall_spring(0) == 1.0);
    CHECK(inst.network.wall_spring(1) == 0.0);

    // labels are distinct 2n-bit strings
    std::set<std::uint64_t> unique(inst.labels.begin(), inst.labels.end());
    CHECK(unique.size() == inst.labels.size());
    for (std::uint64_t label : inst.labels) CHECK(label < (1ULL << 8));
}

TEST_CASE("fresh seeds change labels but not the column structure", "[gluedtrees]") {
    const auto a = generate(3, 1);
    const auto b = generate(3, 2);
    CHECK(a.labels != b.labels);
    CHECK(a.column_offsets == b.column_offsets);
    // every column-projected operator is the same chain
    const auto chain = reduce_to_chain(3);
    for (const auto& inst : {a, b}) {
        const Eigen::MatrixXd full = system_operator(inst.network);
        const int cols = 2 * inst.depth_n;
        Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(cols, cols);
        for (int l = 0; l < cols; ++l) {
            Eigen::VectorXd indicator = Eigen::VectorXd::Zero(inst.network.size());
            const int begin = inst.column_offsets[static_cast<std::size_t>(l)];
            const int end = inst.column_offsets[static_cast<std::size_t>(l + 1)];
            for (int j = begin; j < end; ++j)
                indicator[j] = 1.0 / std::sqrt(static_cast<double>(end - begin));
            const Eigen::VectorXd mapped = full * indicator;
            projected.col(l) = project_to_columns(inst, mapped);
        }
        CHECK((projected - chain.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("reduced chain matches the closed form", "[gluedtrees]") {
    const auto chain = reduce_to_chain(2);
    REQUIRE(chain.matrix.rows() == 4);
    const double root2 = std::sqrt(2.0);
    Eigen::MatrixXd expected(4, 4);
    expected << 3, -root2, 0, 0, -root2, 3, -2, 0, 0, -2, 3, -root2, 0, 0, -root2, 3;
    CHECK((chain.matrix - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("full and reduced trajectories agree", "[gluedtrees]") {
    for (int n : {3, 4}) {
        const auto inst = generate(n, 21 + static_cast<std::uint64_t>(n));
        const auto chain = reduce_to_chain(n);
        const auto chain_modes_data = chain_modes(chain);

        // a random column-symmetric initial condition
        std::mt19937_64 gen(77);
        Eigen::VectorXd zx(2 * n), zv(2 * n);
        for (int l = 0; l < 2 * n; ++l) {
            zx[l] = uniform_range(gen, -1.0, 1.0);
            zv[l] = uniform_range(gen, -1.0, 1.0);
        }
        ClassicalState full0{Eigen::VectorXd::Zero(inst.network.size()),
                             Eigen::VectorXd::Zero(inst.network.size()), 0.0};
        for (int l = 0; l < 2 * n; ++l) {
            const int begin = inst.column_offsets[static_cast<std::size_t>(l)];
            const int end = inst.column_offsets[static_cast<std::size_t>(l + 1)];
            for (int j = begin; j < end; ++j) {
                full0.x[j] = zx[l] / std::sqrt(static_cast<double>(end - begin));
                full0.v[j] = zv[l] / std::sqrt(static_cast<double>(end - begin));
            }
        }

        const auto full_modes = normal_modes(system_operator(inst.network));
        const SymmetricEigen chain_eig = symmetric_eigen(chain.matrix);
        for (double t : {1.0, 10.0, 50.0}) {
            const auto full_t = evolve_exact(inst.network, full_modes, full0, t);
            // chain-side evolution with the same closed form
            Eigen::VectorXd cz = chain_eig.vectors.transpose() * zx;
            Eigen::VectorXd cv = chain_eig.vectors.transpose() * zv;
            Eigen::VectorXd zt(2 * n), vt(2 * n);
            for (int k = 0; k < 2 * n; ++k) {
                const double w = std::sqrt(std::max(0.0, chain_eig.values[k]));
                const double c = std::cos(w * t);
                const double s = w > 0 ? std::sin(w * t) / w : t;
                zt[k] = c * cz[k] + s * cv[k];
                vt[k] = -w * std::sin(w * t) * cz[k] + c * cv[k];
            }
            zt = (chain_eig.vectors * zt).eval();
            vt = (chain_eig.vectors * vt).eval();
            CHECK((project_to_columns(inst, full_t.x) - zt).cwiseAbs().maxCoeff() <
                  1e-8);
            CHECK((project_to_columns(inst, full_t.v) - vt).cwiseAbs().maxCoeff() <
                  1e-8);
        }
        (void)chain_modes_data;
    }
}

TEST_CASE("average exit energy: closed form and limits", "[gluedtrees]") {
    for (int n : {2, 4, 8, 16}) {
        const auto chain = reduce_to_chain(n);
        const double limit = p_exit_infinity(chain);
        const double overlap = p_exit_infinity_overlap(chain);
        CHECK(std::abs(limit - overlap) < 1e-12);
        CHECK(limit >= 1.0 / (4.0 * n));

        // quadrature cross-check of the closed-form finite-T average
        const double horizon = 30.0;
        const auto modes = chain_modes(chain);
        const int panels = 200000;
        double sum = 0.0;
        for (int i = 0; i <= panels; ++i) {
            const double weight = (i == 0 || i == panels) ? 0.5 : 1.0;
            const double zdot = exit_velocity(modes, horizon * i / panels);
            sum += weight * zdot * zdot;
        }
        const double quadrature = sum / panels;
        CHECK(p_exit(chain, horizon) == Approx(quadrature).margin(1e-6));
    }
}

TEST_CASE("finite-time averages approach the limit", "[gluedtrees]") {
    for (int n : {4, 8, 16, 32}) {
        const auto chain = reduce_to_chain(n);
        const auto report = spectral_report(chain);
        const double limit = p_exit_infinity(chain);
        const double overlap4 =
            std::pow(report.lambda1_overlap, 4.0);
        for (double horizon : {50.0, 400.0}) {
            const double bound = 1.0 / (horizon * report.min_gap) + 0.5 * overlap4;
            CHECK(std::abs(p_exit(chain, horizon) - limit) <= bound + 1e-12);
        }
    }
}

TEST_CASE("spectral report", "[gluedtrees]") {
    for (int n : {4, 8, 16, 24, 32}) {
        const auto chain = reduce_to_chain(n);
        const auto report = spectral_report(chain);
        CHECK(report.v1_residual == Approx(std::pow(2.0, -0.5 * n)).margin(1e-12));
        // sqrt(a) - sqrt(b) = (a - b)/(sqrt(a) + sqrt(b)) with a, b <= 6
        CHECK(report.min_gap >= report.chain_gap / (2.0 * std::sqrt(6.0)) - 1e-12);
        CHECK(report.lambda1_overlap <= std::pow(2.0, -0.5 * (n - 2)));
        CHECK(report.smallest_eigenvalue > 0.0);
    }
    // the lowest eigenvalue decays roughly geometrically with n
    double previous = spectral_report(reduce_to_chain(6)).smallest_eigenvalue;
    for (int n : {8, 10, 12, 14}) {
        const double current = spectral_report(reduce_to_chain(n)).smallest_eigenvalue;
        const double ratio = current / previous;
        CHECK(ratio < 0.5);
        previous = current;
    }
}

TEST_CASE("exit time search", "[gluedtrees]") {
    const auto chain = reduce_to_chain(4);
    const auto when = find_exit_time(chain, 1.0 / 32.0);
    REQUIRE(when.has_value());
    CHECK(*when <= 10.0 * std::pow(4.0, 4.0));
    const auto modes = chain_modes(chain);
    const double zdot = exit_velocity(modes, *when);
    CHECK(zdot * zdot >= 1.0 / 32.0);

    CHECK_FALSE(find_exit_time(reduce_to_chain(2), 0.999).has_value());
}

TEST_CASE("exit time is near twice the depth", "[gluedtrees]") {
    const auto when = find_exit_time(reduce_to_chain(20), 0.05);
    REQUIRE(when.has_value());
    CHECK(*when >= 30.0);
    CHECK(*when <= 50.0);
}

TEST_CASE("protocol recovers the exit label", "[gluedtrees]") {
    for (int n : {3, 4}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto inst = generate(n, 100 + seed);
            const auto result = solve_instance(inst, 900 + seed);
            REQUIRE(result.success);
            CHECK(result.exit_label ==
                  inst.labels[static_cast<std::size_t>(inst.exit_id)]);
            CHECK(result.shots >= 1);
            CHECK(result.quantum_query_count > 0);
        }
    }
}

TEST_CASE("reflection symmetry of endpoint overlaps", "[gluedtrees]") {
    for (int n : {3, 6, 12}) {
        const auto chain = reduce_to_chain(n);
        const SymmetricEigen eig = symmetric_eigen(chain.matrix);
        for (int k = 0; k < 2 * n; ++k)
            CHECK(std::abs(std::abs(eig.vectors(0, k)) -
                           std::abs(eig.vectors(2 * n - 1, k))) < 1e-10);
    }
}

TEST_CASE("solver query counts grow polynomially", "[gluedtrees]") {
    std::vector<double> depths, counts;
    for (int n = 3; n <= 8; ++n) {
        const auto inst = generate(n, 777 + static_cast<std::uint64_t>(n));
        const auto result = solve_instance(inst, 55);
        REQUIRE(result.success);
        depths.push_back(std::log(static_cast<double>(n)));
        counts.push_back(std::log(static_cast<double>(result.quantum_query_count)));
    }
    // log-log slope bounded by degree five
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) {
        sx += depths[i];
        sy += counts[i];
        sxx += depths[i] * depths[i];
        sxy += depths[i] * counts[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope <= 5.0);
    CHECK(slope >= 0.0);
}
