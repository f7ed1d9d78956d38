#include "orlicz/descriptors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace orlicz;

TEST(PhiDescriptor, StringForms) {
    EXPECT_EQ(parse_phi("power:2").name(), "power:2");
    EXPECT_EQ(parse_phi(" exp_minus ").kind(), OrliczFunction::Kind::ExpMinus);
    const OrliczFunction f = parse_phi("flat_then_power:1,2");
    EXPECT_EQ(f.zero_bound(), 1);
    EXPECT_EQ(parse_phi("pwl:0,0,1,0,2,1").zero_bound(), 1);
    EXPECT_EQ(parse_phi(parse_phi("flat_then_power:0.5,3").name()).name(), "flat_then_power:0.5,3");
}

TEST(PhiDescriptor, JsonForms) {
    EXPECT_DOUBLE_EQ(parse_phi(R"({"kind":"power","q":2})")(3), 9);
    EXPECT_DOUBLE_EQ(parse_phi(R"({"kind":"flat_then_power","a":1,"q":2})")(3), 4);
    EXPECT_EQ(parse_phi(R"({"kind":"exp_minus"})").kind(), OrliczFunction::Kind::ExpMinus);
    EXPECT_DOUBLE_EQ(parse_phi(R"({"kind":"pwl","points":[[0,0],[1,0],[2,1]]})")(1.5), 0.5);
}

TEST(PhiDescriptor, Errors) {
    EXPECT_THROW(parse_phi("bogus"), InputError);
    EXPECT_THROW(parse_phi("power"), InputError);
    EXPECT_THROW(parse_phi("power:2,3"), InputError);
    EXPECT_THROW(parse_phi("power:x"), InputError);
    EXPECT_THROW(parse_phi("power:2x"), InputError);
    EXPECT_THROW(parse_phi("power:0.5"), InputError); // constructor rejection
    EXPECT_THROW(parse_phi("pwl:0,0,1"), InputError);
    EXPECT_THROW(parse_phi("pwl:0,0,1,2,2,3"), InputError); // concave
    EXPECT_THROW(parse_phi("{not json"), InputError);
    EXPECT_THROW(parse_phi(R"({"kind":"power"})"), InputError);
}

TEST(PlanarNormDescriptor, Forms) {
    EXPECT_EQ(parse_planar_norm("l1").kind(), PlanarNorm::Kind::L1);
    EXPECT_EQ(parse_planar_norm("linf").kind(), PlanarNorm::Kind::LInf);
    EXPECT_DOUBLE_EQ(parse_planar_norm("lq:2")(3, 4), 5);
    EXPECT_DOUBLE_EQ(parse_planar_norm(R"({"kind":"lq","q":2})")(3, 4), 5);
    const PlanarNorm b =
        parse_planar_norm(R"({"kind":"boundary","samples":[[0,1],[0.7853981633974483,1],[1.5707963267948966,1]]})");
    EXPECT_NEAR(b(3, 4), 5, 1e-12);
    EXPECT_THROW(parse_planar_norm("l2"), InputError);
    EXPECT_THROW(parse_planar_norm("lq:0.5"), InputError);
    EXPECT_THROW(parse_planar_norm(R"({"kind":"boundary","samples":[[0,1]]})"), InputError);
}

TEST(SpaceDescriptor, Forms) {
    EXPECT_EQ(parse_space("counting:4")->size(), 4u);
    EXPECT_TRUE(parse_space("counting:4")->is_counting());
    const auto w = parse_space("weights:1,0.25,inf");
    EXPECT_EQ(w->size(), 3u);
    EXPECT_TRUE(w->is_infinite(2));
    EXPECT_EQ(w->weight(1), 0.25L);
    const auto j = parse_space(R"({"atoms":[{"w":1},{"w":0.25},{"w":"inf"}]})");
    EXPECT_TRUE(j->is_infinite(2));
    EXPECT_THROW(parse_space("counting:0"), InputError);
    EXPECT_THROW(parse_space("counting:2.5"), InputError);
    EXPECT_THROW(parse_space("weights:1,-1"), InputError);
    EXPECT_THROW(parse_space("grid:3"), InputError);
    EXPECT_THROW(parse_space(R"({"atoms":[{"v":1}]})"), InputError);
}

TEST(ValuesDescriptor, Forms) {
    EXPECT_EQ(parse_values("3,4"), (std::vector<double>{3, 4}));
    EXPECT_EQ(parse_values("[3, -4.5]"), (std::vector<double>{3, -4.5}));
    EXPECT_EQ(parse_values(R"({"values":[1,2]})"), (std::vector<double>{1, 2}));
    EXPECT_THROW(parse_values("1,,2"), InputError);
    EXPECT_THROW(parse_values("1,inf"), InputError);
    EXPECT_THROW(parse_values(R"(["a"])"), InputError);
}

TEST(GridDescriptor, Forms) {
    const auto g = parse_grid("0.1:0.9:9");
    ASSERT_EQ(g.size(), 9u);
    EXPECT_DOUBLE_EQ(g.front(), 0.1);
    EXPECT_DOUBLE_EQ(g.back(), 0.9);
    EXPECT_NEAR(g[4], 0.5, 1e-15);
    EXPECT_EQ(parse_grid("0.6"), std::vector<double>{0.6});
    EXPECT_EQ(parse_grid("0.2,0.4"), (std::vector<double>{0.2, 0.4}));
    EXPECT_THROW(parse_grid("0.1:0.9"), InputError);
    EXPECT_THROW(parse_grid("0.1:0.9:0"), InputError);
    EXPECT_THROW(parse_grid(""), InputError);
}
