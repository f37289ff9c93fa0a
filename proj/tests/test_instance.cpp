#include <gtest/gtest.h>

#include "addmatch/error.hpp"
#include "addmatch/instance.hpp"

using namespace addmatch;

TEST(Instance, GroupLiteral) {
  const auto inst = parse_instance("Z15 A={5,6,7} B={1,2,3}");
  ASSERT_TRUE(inst.is_group());
  EXPECT_EQ(inst.group->order(), 15u);
  EXPECT_EQ(inst.subset("A").size(), 3u);
  EXPECT_TRUE(inst.subset("B").contains(2));
  EXPECT_EQ(print_instance(inst), "Z15 A={5,6,7} B={1,2,3}");
}

TEST(Instance, FieldLiteral) {
  const auto inst = parse_instance("GF(2^4|x^4+x+1) A=<1,g^5> B=<g*1,g*g^5>");
  ASSERT_TRUE(inst.is_field());
  const auto& e = *inst.field;
  const FieldElem g = e.generator();
  EXPECT_EQ(inst.subspace("A").space, span(e, {1, e.pow(g, 5)}));
  EXPECT_EQ(inst.subspace("B").space, scale(e, g, inst.subspace("A").space));
  EXPECT_EQ(inst.subspace("A").generators, (std::vector<FieldElem>{1, e.pow(g, 5)}));
}

TEST(Instance, RoundTrip) {
  for (const char* text : {"Z15 A={7,5,6} B={3,1,2}", "Z2xZ4 A={(1,3),(0,1)} B={(1,0)}",
                           "GF(3^3) A=<g^2-1,2*g,#5> B=<g^7>", "GF(2^6) n=2", "Z9 A={} max=4"}) {
    const auto once = print_instance(parse_instance(text));
    EXPECT_EQ(print_instance(parse_instance(once)), once) << text;
  }
}

TEST(Instance, Errors) {
  try {
    parse_instance("Z15 A={5,6,99}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
    EXPECT_EQ(e.position(), 11u);
  }
  try {
    parse_instance("GF(2^4|x^4+x^2+1)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReducibleModulus);
  }
  try {
    parse_instance("Z15 A={5,6");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.position(), 10u);
  }
  EXPECT_THROW(parse_instance("GF(4^2)"), Error);
  EXPECT_THROW(parse_instance("Q7"), ParseError);
}

TEST(Instance, Helpers) {
  EXPECT_EQ(parse_cyclic_range("Z4..Z10"), std::make_pair(4u, 10u));
  EXPECT_THROW(parse_cyclic_range("Z10..Z4"), Error);
  const auto e = parse_field("GF(2^4)");
  EXPECT_EQ(e.modulus_to_string(), "x^4+x+1");
  EXPECT_EQ(parse_field_element(e, "g^4"), parse_field_element(e, "g+1"));
  EXPECT_EQ(parse_field_element(e, "#3"), parse_field_element(e, "g+1"));
}
