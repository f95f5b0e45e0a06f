#include <gtest/gtest.h>

#include "support.hpp"
#include "treenet/io.hpp"

using namespace treenet;
using namespace treenet::testing;

TEST(Config, DefaultsAndOverrides) {
    const auto cfg = parse_config("# limits\nmin_residual_head_m = 12.5\nmax_loss_gradient=0.004\n"
                                  "hazen_williams_coeff = 120\nseed = 77\ndrone_count = 30\nspermatheca_capacity = 20\n"
                                  "mutation_rate = 0.1\nmax_combinations = 5000\n");
    EXPECT_DOUBLE_EQ(cfg.limits.min_residual_head, 12.5);
    EXPECT_DOUBLE_EQ(cfg.limits.max_loss_gradient, 0.004);
    EXPECT_DOUBLE_EQ(cfg.hydraulics.hazen_williams, 120);
    EXPECT_DOUBLE_EQ(cfg.hydraulics.fitting_loss, 1.15);
    EXPECT_EQ(cfg.hbmo.seed, 77u);
    EXPECT_EQ(cfg.hbmo.drone_count, 30u);
    EXPECT_EQ(cfg.hbmo.brood_count, 50u);
    EXPECT_DOUBLE_EQ(cfg.hbmo.mutation_rate, 0.1);
    EXPECT_EQ(cfg.budget.max_combinations, 5000u);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("colour = blue\n"), ParseError);
    EXPECT_THROW(parse_config("seed = 1\nseed = 2\n"), ParseError);
    EXPECT_THROW(parse_config("seed 1\n"), ParseError);
    EXPECT_THROW(parse_config("seed = -1\n"), ParseError);
    EXPECT_THROW(parse_config("min_residual_head_m = 10,5\n"), ParseError);
    EXPECT_THROW(parse_config("min_residual_head_m = 0\n"), DomainError);
    EXPECT_THROW(parse_config("fitting_loss_coeff = 0.5\n"), DomainError);
}

TEST(Config, BundledConfigIsCaseStudy) {
    const auto cfg = parse_config(read_file(data_dir() / "warapitiya" / "config.txt"));
    EXPECT_DOUBLE_EQ(cfg.limits.min_residual_head, 10);
    EXPECT_DOUBLE_EQ(cfg.limits.max_loss_gradient, 0.005);
    EXPECT_DOUBLE_EQ(cfg.hydraulics.hazen_williams, 130);
    EXPECT_DOUBLE_EQ(cfg.hydraulics.fitting_loss, 1.15);
}

TEST(Diameters, ParsesIntoCanonicalOrder) {
    const auto net = fig3();
    const auto d = parse_diameters("pipe_id,diameter_mm\nP3,79\nP1,140\nP2,97\nP4,55\nP6,246\nP5,198\n", net);
    EXPECT_EQ(d, (DiameterAssignment{140, 97, 79, 55, 198, 246}));
}

TEST(Diameters, Errors) {
    const auto net = load_network("warapitiya");
    EXPECT_THROW(parse_diameters(read_file(TREENET_TEST_FIXTURES "/diameters_23.csv"), net), DimensionError);
    const auto small = single_pipe();
    EXPECT_THROW(parse_diameters("pipe_id,diameter_mm\nP9,55\n", small), ParseError);
    EXPECT_THROW(parse_diameters("pipe_id,diameter_mm\nP1,55\nP1,79\n", small), ParseError);
    EXPECT_THROW(parse_diameters("P1,55\n", small), ParseError);
    EXPECT_THROW(parse_diameters("pipe_id,diameter_mm\nP1,0\n", small), ParseError);
}

TEST(Reports, FourDecimalFormatting) {
    const auto net = load_network("warapitiya");
    const auto d = load_diameters(net, "diameters_hbmo.csv");
    const auto s = simulate(net, d, HydraulicParams{});
    const auto r = evaluate_constraints(s, DesignLimits{});
    const auto pipes = format_pipe_report(net, d, s, r);
    EXPECT_NE(pipes.find("P1,198,2052.2400,0.0040,yes\n"), std::string::npos);
    const auto nodes = format_node_report(net, s, r);
    EXPECT_NE(nodes.find("N1,505.0088,20.0088,yes\n"), std::string::npos);
    EXPECT_EQ(format_pipe_report(net, d, s, r), pipes);
    EXPECT_NE(format_pipe_report(net, d, s, r, Precision::Full).find("P1,198,2052.24"), std::string::npos);
}

TEST(Reports, ZeroDemandGradients) {
    const auto net = fig3(std::vector<double>(6, 0.0));
    const std::vector<double> d(6, 55.0);
    const auto s = simulate(net, d, HydraulicParams{});
    const auto text = format_pipe_report(net, d, s, evaluate_constraints(s, DesignLimits{}));
    std::size_t count = 0;
    for (auto pos = text.find(",0.0000,yes"); pos != std::string::npos; pos = text.find(",0.0000,yes", pos + 1)) ++count;
    EXPECT_EQ(count, 6u);
}

TEST(Reports, DiametersRoundTrip) {
    const auto net = load_network("warapitiya");
    const auto d = load_diameters(net, "diameters_nwsdb.csv");
    EXPECT_EQ(parse_diameters(format_diameters(net, d), net), d);
}

TEST(Files, MissingFileReported) { EXPECT_THROW(read_file("/nonexistent/treenet.txt"), MissingFileError); }
