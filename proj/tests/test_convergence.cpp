#include <gtest/gtest.h>

#include <random>

#include "ehd/convergence.hpp"

using namespace ehd::mms;

TEST(ObservedOrder, ReproducesPublishedOrderArithmetic) {
  EXPECT_NEAR(*observed_order(1.684e-02, 6.317e-03), 1.4146, 5e-4);
  EXPECT_NEAR(*observed_order(4.7142e-05, 2.3607e-05), 0.9978, 5e-4);
}

TEST(ObservedOrder, EqualErrorsGiveZeroAndInvalidInputsGiveNothing) {
  EXPECT_EQ(*observed_order(3e-3, 3e-3), 0.0);
  EXPECT_FALSE(observed_order(0.0, 1e-3));
  EXPECT_FALSE(observed_order(1e-3, 0.0));
  EXPECT_FALSE(observed_order(-1.0, 1e-3));
  EXPECT_FALSE(observed_order(std::nan(""), 1e-3));
  EXPECT_FALSE(observed_order(1e-2, 1e-3, 4, 4));
}

TEST(ObservedOrder, UsesTheRefinementRatio) {
  EXPECT_NEAR(*observed_order(16.0, 1.0, 8, 32), 2.0, 1e-15);
}

TEST(ObservedOrder, IsScaleInvariant) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> e(1e-8, 1.0), s(1e-6, 1e6);
  for (int k = 0; k < 200; ++k) {
    const double a = e(rng), b = e(rng), c = s(rng);
    EXPECT_NEAR(*observed_order(a, b), *observed_order(c * a, c * b), 1e-12);
  }
}

TEST(StudyConfig, ValidationRules) {
  StudyConfig c;
  EXPECT_NO_THROW(validate(c));
  c.levels = {4, 7};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = StudyConfig{};
  c.params["Pr"] = 2.0;  // temp key on a vd study
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = StudyConfig{};
  c.params["nu"] = -1.0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = StudyConfig{};
  c.levels = {1, 2};  // one vd step at N=1
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.model = Model::Temp;
  EXPECT_NO_THROW(validate(c));
}

TEST(StudyConfig, DefaultTimeRuleIsOneOverN) {
  StudyConfig c;
  for (int n : {4, 8, 32}) {
    const auto g = time_grid(c, n);
    EXPECT_EQ(g.steps, n);
    EXPECT_DOUBLE_EQ(g.dt, 1.0 / n);
  }
  c.dt_ratio = 0.5;
  c.t_final = 2.0;
  EXPECT_EQ(time_grid(c, 4).steps, 8);
  EXPECT_DOUBLE_EQ(time_grid(c, 4).dt, 0.25);
}

TEST(StudyConfig, ParametersAreForwarded) {
  StudyConfig c;
  c.params = {{"Pe", 2.0}, {"J0", 0.5}};
  const auto p = vd_parameters(c, 0.1);
  EXPECT_EQ(p.peclet, 2.0);
  EXPECT_EQ(p.j0, 0.5);
  EXPECT_EQ(p.nu, 1.0);
  c.model = Model::Temp;
  c.params = {{"alpha", 3.0}};
  EXPECT_EQ(temp_parameters(c, 0.1).alpha, 3.0);
}

TEST(Names, FieldsAndParameterKeys) {
  EXPECT_EQ(field_names(Model::Vd), (std::vector<std::string>{"rho", "u", "p", "rho_e", "phi"}));
  EXPECT_EQ(field_names(Model::Temp), (std::vector<std::string>{"u", "p", "q", "phi", "theta"}));
  EXPECT_EQ(parse_model("temp"), Model::Temp);
  EXPECT_THROW(parse_model("ns"), std::invalid_argument);
}

TEST(RunLevel, RefusesUnverifiedForcing) {
  StudyConfig c;
  EXPECT_THROW(run_vd_level(c, VdForcing{}, 4), std::logic_error);
  c.model = Model::Temp;
  EXPECT_THROW(run_temp_level(c, TempForcing{}, 4), std::logic_error);
}

class SmallStudy : public ::testing::Test {
 protected:
  static ConvergenceReport run(Model m, bool parallel) {
    StudyConfig c;
    c.model = m;
    c.levels = {2, 4, 8};
    c.parallel = parallel;
    return run_convergence(c);
  }
};

TEST_F(SmallStudy, ReportShapeAndCsvLayout) {
  const auto r = run(Model::Vd, true);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.all_ok());
  EXPECT_EQ(r.oracle.size(), 4u);
  for (const auto& rec : r.oracle) EXPECT_TRUE(rec.passed);
  for (const auto& o : r.rows[0].orders) EXPECT_FALSE(o.has_value());
  for (const auto& o : r.rows[2].orders) EXPECT_TRUE(o.has_value());
  for (std::size_t k = 0; k < 5; ++k) EXPECT_LT(r.rows[2].errors[k], r.rows[1].errors[k]);

  const std::string csv = to_csv(r);
  const std::string header =
      "N,err_rho,err_u,err_p,err_rho_e,err_phi,order_rho,order_u,order_p,order_rho_e,order_phi\r\n";
  EXPECT_EQ(csv.rfind(header, 0), 0u);
  int lines = 0;
  for (char ch : csv) lines += ch == '\n';
  EXPECT_EQ(lines, 4);
  EXPECT_NE(csv.find("\r\n2,"), std::string::npos);
  EXPECT_NE(csv.find(",,,,,\r\n4,"), std::string::npos);  // first row has blank orders
}

TEST_F(SmallStudy, DeterministicAndIndependentOfThreading) {
  EXPECT_EQ(to_csv(run(Model::Temp, true)), to_csv(run(Model::Temp, false)));
  EXPECT_EQ(to_markdown(run(Model::Vd, true)), to_markdown(run(Model::Vd, true)));
}

TEST_F(SmallStudy, MarkdownMirrorsTableColumns) {
  const auto md = to_markdown(run(Model::Temp, false));
  EXPECT_NE(md.find("| N | ‖e_u‖₀ | Order | ‖e_p‖₀ | Order | ‖e_q‖₀ | Order | ‖e_φ‖₀ | Order | ‖e_θ‖₀ | Order |"),
            std::string::npos);
  EXPECT_NE(md.find("- model: temp"), std::string::npos);
  EXPECT_NE(md.find("- oracle_seed: "), std::string::npos);
}

TEST(Serialization, FailedRowsLeaveBlankCells) {
  ConvergenceReport r;
  r.model = Model::Temp;
  r.fields = field_names(Model::Temp);
  LevelRow ok;
  ok.n = 4;
  ok.ok = true;
  ok.errors = {1e-2, 2e-2, 3e-2, 4e-2, 5e-2};
  ok.orders.assign(5, std::nullopt);
  LevelRow bad;
  bad.n = 8;
  bad.failure = "step_flow: singular";
  bad.orders.assign(5, std::nullopt);
  r.rows = {ok, bad};
  EXPECT_FALSE(r.all_ok());
  const auto csv = to_csv(r);
  EXPECT_NE(csv.find("4,1.000e-02,2.000e-02,3.000e-02,4.000e-02,5.000e-02,,,,,\r\n"), std::string::npos);
  EXPECT_NE(csv.find("8,,,,,,,,,,\r\n"), std::string::npos);
  EXPECT_NE(to_markdown(r).find("N=8 failed: step_flow: singular"), std::string::npos);
}

TEST(Logging, OneLinePerSolveInLevelOrder) {
  StudyConfig c;
  c.model = Model::Temp;
  c.levels = {2, 4};
  std::ostringstream log;
  c.log = &log;
  run_convergence(c);
  const std::string s = log.str();
  int lines = 0;
  for (char ch : s) lines += ch == '\n';
  EXPECT_EQ(lines, 3 * (2 + 4));
  EXPECT_EQ(s.rfind("N=2 step=1 t=0.5 field=u,p residual=", 0), 0u);
  EXPECT_LT(s.find("N=2 "), s.find("N=4 "));
}
