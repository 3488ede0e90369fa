#include <doctest.h>

#include <cmath>
#include <limits>

#include "ctxdim/report.hpp"
#include "ctxdim/reproduce.hpp"

using namespace ctxdim;

TEST_SUITE("report") {
  TEST_CASE("numbers keep twelve significant digits") {
    CHECK(report::number(1.0 / 3.0).get<double>() == 0.333333333333);
    CHECK(report::number(-0.0).dump() == "0.0");
    CHECK(report::number(std::numeric_limits<double>::quiet_NaN()).is_null());
    CHECK(report::number(2.5e-9).get<double>() == 2.5e-9);
  }

  TEST_CASE("bound reports carry the configuration") {
    BoundReport r;
    r.kind = BoundKind::Upper;
    r.target = BoundTarget::ThetaD;
    r.method = "tilde_ppt";
    r.valid = true;
    r.value = 3.34;
    r.cliques = {VertexSubset{1, 2, 3}};
    r.theta_cut = 3.33;
    r.seconds = 12.5;
    const auto j = report::to_json(r);
    CHECK(j["kind"] == "upper");
    CHECK(j["config"]["cuts"]["cliques"][0] == report::json({1, 2, 3}));
    CHECK(j["config"]["cuts"]["theta_cut"].get<double>() == 3.33);
    // Wall time never reaches the JSON.
    CHECK(report::dump(j).find("12.5") == std::string::npos);
  }

  TEST_CASE("invalid bounds serialize without a value") {
    BoundReport r;
    r.note = "nothing converged";
    const auto j = report::to_json(r);
    CHECK(j["value"].is_null());
    CHECK(j["note"] == "nothing converged");
  }

  TEST_CASE("reproduction rows") {
    ReproduceConfig cfg;
    cfg.only = {1};
    const auto rows = reproduce(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].pass);
    CHECK(summary_table(rows).rfind("PASS 1", 0) == 0);

    cfg.perturb = {1};
    const auto bad = reproduce(cfg);
    CHECK_FALSE(bad[0].pass);
    CHECK_FALSE(to_json(bad, cfg)["all_pass"].get<bool>());
  }
}
