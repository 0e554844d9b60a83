#include <gtest/gtest.h>

#include <sstream>

#include "outbreak/error.hpp"
#include "outbreak/io.hpp"

using namespace outbreak;

TEST(Params, NondimensionalJsonRoundTrip)
{
    NondimParams p = reference_params();
    p.sigma1 = 0.011;
    p.sigma2 = 0.013;
    const nlohmann::json j = to_json(p);
    for (const char* key : {"beta", "d", "h", "eps", "sigma1", "sigma2"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    const NondimParams q = params_from_json(j);
    EXPECT_EQ(q.beta, p.beta);
    EXPECT_EQ(q.h, p.h);
    EXPECT_EQ(q.sigma2, p.sigma2);
}

TEST(Params, DimensionalJsonIsNondimensionalized)
{
    const DimensionalParams d = canonical_dimensional_preset();
    const nlohmann::json j = to_json(d);
    EXPECT_TRUE(j.contains("zeta1"));
    const NondimParams from_json = params_from_json(j);
    const NondimParams direct = nondimensionalize(d);
    EXPECT_DOUBLE_EQ(from_json.h, direct.h);
    EXPECT_DOUBLE_EQ(from_json.eps, direct.eps);
    EXPECT_DOUBLE_EQ(from_json.sigma1, direct.sigma1);
}

TEST(Params, RejectsIncompleteOrInvalid)
{
    EXPECT_THROW(params_from_json(nlohmann::json{{"beta", 0.25}}), InvalidParameter);
    EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"foo": 1})")), InvalidParameter);
    EXPECT_THROW(params_from_json(nlohmann::json{
                     {"beta", 0.25}, {"d", 0.25}, {"h", 0.9}, {"eps", 0.5}}),
                 InvalidParameter);
    EXPECT_NO_THROW(params_from_json(
        nlohmann::json{{"beta", 0.25}, {"d", 0.25}, {"h", 0.9}, {"eps", 0.5}}, EpsPolicy::warn));
}

TEST(TrajectoryCsv, RoundTripIsExact)
{
    const NondimParams p = [] {
        NondimParams q = reference_params();
        q.sigma1 = q.sigma2 = 0.02;
        return q;
    }();
    const Trajectory a = milstein_path(p, {1e-3, 2.0, 3, 7, {0.4, 0.3}});
    const Trajectory b = milstein_path(p, {1e-3, 2.0, 4, 7, {0.4, 0.3}});
    std::stringstream ss;
    write_trajectory_csv(ss, a, true);
    write_trajectory_csv(ss, b, true, false);
    std::string header;
    std::getline(std::stringstream(ss.str()), header);
    EXPECT_EQ(header, "seed,t,x,y");
    const auto back = read_trajectory_csv(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].seed, 3u);
    EXPECT_EQ(back[1].seed, 4u);
    EXPECT_EQ(back[0].times, a.times);
    EXPECT_EQ(back[1].states, b.states);
}

TEST(TrajectoryCsv, NormalFormHeaderAndMalformedInput)
{
    Trajectory t;
    t.coords = Coordinates::lz;
    t.times = {0.0, 0.5};
    t.states = {{1.0, -2.0}, {1.5, -2.5}};
    std::stringstream ss;
    write_trajectory_csv(ss, t);
    EXPECT_EQ(ss.str().substr(0, 6), "t,l,z\n");
    const auto back = read_trajectory_csv(ss);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].coords, Coordinates::lz);
    EXPECT_EQ(back[0].states, t.states);

    std::stringstream bad("t,q,r\n0,1,2\n");
    EXPECT_THROW(read_trajectory_csv(bad), InvalidParameter);
}

TEST(SweepCsv, HeaderAndShape)
{
    SweepConfig cfg;
    cfg.axis1 = parse_axis("mu:0.002:0.03:2");
    cfg.axis2 = parse_axis("sigma:0.01:0.04:3");
    cfg.sim.t_end = 5.0;
    const SweepResult r = run_sweep(cfg);
    std::stringstream ss;
    write_sweep_csv(ss, r);
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "axis1,axis2,h,mu,sigma1,sigma2,Sigma_mean,Sigma_std,phi_neg_kappa");
    int rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 6);

    std::stringstream m;
    write_sweep_matrix(m, r);
    int mrows = 0;
    while (std::getline(m, line)) {
        std::istringstream ls(line);
        double v;
        int cols = 0;
        while (ls >> v) {
            ++cols;
        }
        EXPECT_EQ(cols, 3);
        ++mrows;
    }
    EXPECT_EQ(mrows, 2);
}
