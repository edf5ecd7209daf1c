#include <doctest.h>

#include <random>
#include <vector>

#include "uqie/catalog.hpp"
#include "uqie/hypotheses.hpp"
#include "uqie/kernels.hpp"
#include "uqie/operator.hpp"

using namespace uqie;

TEST_CASE("serial and parallel kernels agree bit for bit") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Problem p0 = random_catalog_problem(rng);
    const Problem p = resolve_caps(p0, Grid(p0.horizon(), 32)).problem;
    const Grid g(p.horizon(), 50 + static_cast<int>(rng() % 150));
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::vector<double> x(g.size());
    for (double& v : x) v = u(rng);

    const GridFunction fs = serial::sample_forcing(p, g);
    const GridFunction fp = parallel::sample_forcing(p, g);
    CHECK(fs == fp);

    std::vector<double> a(g.size()), b(g.size());
    serial::apply_operator(p, g, fs.values(), x, a);
    parallel::apply_operator(p, g, fp.values(), x, b);
    CHECK(a == b);

    for (int which : {1, 2}) CHECK(serial::majorant_bound(p, which, g) == parallel::majorant_bound(p, which, g));

    const GridFunction xf(g, x);
    CHECK(apply_F(p, xf) == serial::apply_F(p, xf));
  }
}
