#include "aaatrig/error.hpp"
#include "aaatrig/lightning.hpp"
#include "aaatrig/sampling.hpp"

#include <doctest.h>

using namespace aaatrig;

TEST_SUITE("lightning") {

TEST_CASE("tapered pole placement")
{
    const std::vector<Corner> c{{0.0, 0.0}};
    const auto p = place_poles(c, 4, 2.0, 1.0, nullptr);
    const double want[] = {0.135, 0.310, 0.585, 1.0};
    REQUIRE(p.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(std::abs(p[static_cast<std::size_t>(k)]) - want[k]) < 1e-3);
    CHECK(std::abs(p[0] - std::exp(-2.0)) < 1e-15);

    const auto single = place_poles({{cplx(1, 1), pi / 2}}, 1, 4.0, 0.3, nullptr);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single[0] - cplx(1, 1.3)) < 1e-15);

    const auto many = place_poles(demo_corners(), 30, 4.0, 0.5, in_flow_domain);
    CHECK(many.size() == 60);
    for (const Corner& k : demo_corners()) {
        const TaperFit t = taper_fit(many, k.point, 30);
        CHECK(std::abs(t.sigma + 4.0) < 1e-6);
    }
    for (cplx z : many) CHECK_FALSE(in_flow_domain(z));

    // a bisector pointing into the fluid is refused
    std::vector<Corner> wrong = demo_corners();
    wrong[0].bisector += pi;
    CHECK_THROWS_AS(place_poles(wrong, 5, 4.0, 0.5, in_flow_domain), InputError);
}

TEST_CASE("Arnoldi basis is orthonormal on its points")
{
    const auto pts = demo_boundary(100, 20, 4.0);
    MatrixXc q;
    const ArnoldiBasis b = arnoldi_fit(cplx(pi, 0.2), pts, 15, q);
    const double k = static_cast<double>(pts.size());
    const MatrixXc g = q.adjoint() * q / k;
    CHECK((g - MatrixXc::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((arnoldi_eval(b, pts) - q).cwiseAbs().maxCoeff() < 1e-8 * q.cwiseAbs().maxCoeff());
}

TEST_CASE("geometry helpers")
{
    CHECK(in_obstacle(cplx(0, 0.2)));
    CHECK(in_obstacle(cplx(two_pi, 0.2)));
    CHECK_FALSE(in_obstacle(cplx(0, -0.2)));
    CHECK(in_flow_domain(cplx(1.0, 0.0)));
    CHECK(demo_interior_grid().size() == 200);
    for (cplx z : demo_interior_grid()) CHECK(in_flow_domain(z));
    for (cplx z : demo_boundary(50, 10, 4.0)) {
        const double r = std::abs(z);
        const bool on_arc = std::abs(r - demo_radius) < 1e-12 && z.imag() >= -1e-15;
        const bool on_base = std::abs(z.imag()) < 1e-15 && std::abs(z.real()) <= demo_radius + 1e-15;
        CHECK((on_arc || on_base));
    }
}

TEST_CASE("exact Newman data is reproduced and the ansatz is periodic")
{
    const auto poles = place_poles(demo_corners(), 8, 4.0, 0.5, in_flow_domain);
    const cplx a0{0.7, -0.2};
    auto exact = [&](cplx z) { return a0 * cst(Parity::even, 0.5 * (z - poles[3])); };
    std::vector<BoundaryPoint> bc;
    for (cplx z : demo_boundary(200, 8, 4.0)) bc.push_back({z, exact(z).imag()});
    const LightningModel lm = solve_dirichlet(bc, poles, cplx(pi, 0.2), 6);
    CHECK(lm.boundary_residual < 1e-9);
    CHECK(lm.pole_count() == 16);
    CHECK(lm.runge_coeffs.size() == 6);

    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const cplx z{rng.uniform(-3, 3), rng.uniform(-2, 2)};
        if (!in_flow_domain(z)) continue;
        const cplx f = evaluate(lm, z);
        CHECK(std::abs(evaluate(lm, z + two_pi) - f) < 1e-9 * (1 + std::abs(f)));
        CHECK(std::abs(evaluate(lm, z - 2 * two_pi) - f) < 1e-9 * (1 + std::abs(f)));
        CHECK(std::abs(evaluate(lm, z).imag() - exact(z).imag()) < 1e-7);
    }

    std::vector<BoundaryPoint> few(bc.begin(), bc.begin() + 10);
    CHECK_THROWS_AS(solve_dirichlet(few, poles, cplx(pi, 0.2), 6), InputError);
}

TEST_CASE("zero data gives the zero solution and a constant compression")
{
    const auto poles = place_poles(demo_corners(), 6, 4.0, 0.5, in_flow_domain);
    std::vector<BoundaryPoint> bc;
    for (cplx z : demo_boundary(100, 6, 4.0)) bc.push_back({z, 0.0});
    const LightningModel lm = solve_dirichlet(bc, poles, cplx(pi, 0.2), 4);
    CHECK(lm.boundary_residual == 0.0);
    for (cplx a : lm.newman_coeffs) CHECK(a == cplx(0.0));
    for (cplx b : lm.runge_coeffs) CHECK(b == cplx(0.0));
    const TrigModel c = compress(lm, demo_boundary(250, 4, 4.0), 1e-7);
    CHECK(c.order() == 1);
    CHECK(evaluate(c, cplx(1.0, 1.0)) == cplx(0.0));
}

TEST_CASE("far field of the ansatz")
{
    const auto poles = place_poles(demo_corners(), 6, 4.0, 0.5, in_flow_domain);
    std::vector<BoundaryPoint> bc;
    for (cplx z : demo_boundary(150, 6, 4.0)) bc.push_back({z, -z.real()});
    const LightningModel lm = solve_dirichlet(bc, poles, cplx(pi, 0.2), 8);
    const FarField ff = far_field(lm);
    CHECK(std::abs(evaluate(lm, cplx(0.3, 40)) - ff.plus) < 1e-9 * (1 + std::abs(ff.plus)));
    CHECK(std::abs(evaluate(lm, cplx(0.3, -40)) - ff.minus) < 1e-9 * (1 + std::abs(ff.minus)));
}

}
