#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "progec/code.hpp"
#include "progec/serialize.hpp"

using namespace progec;

TEST_CASE("rotation_perm") {
  CHECK(rotation_perm(0, 4) == Perm{0, 1, 2, 3});
  CHECK(rotation_perm(1, 4) == Perm{1, 2, 3, 0});
  CHECK(rotation_perm(3, 4) == Perm{3, 0, 1, 2});
  CHECK_THROWS_AS(rotation_perm(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(rotation_perm(-1, 4), std::invalid_argument);

  SECTION("composing with the inverse gives the identity") {
    for (int l = 0; l < 7; ++l) {
      Perm p = rotation_perm(l, 7), q = inverse_perm(p);
      for (int t = 0; t < 7; ++t) CHECK(q[p[t]] == t);
    }
  }
}

TEST_CASE("the (6,3) rotation code matches its construction table") {
  CodeSpec s = fixtures::code63();
  REQUIRE(s.L == 4);
  REQUIRE(s.m() == 3);

  // parity, row -> the three (node, block, coeff) terms
  struct Cell { int j, t; std::vector<EqTerm> want; };
  const std::vector<Cell> cells = {
      {0, 0, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}}},
      {0, 1, {{0, 1, 1}, {1, 1, 1}, {2, 1, 1}}},
      {0, 2, {{0, 2, 1}, {1, 2, 1}, {2, 2, 1}}},
      {0, 3, {{0, 3, 1}, {1, 3, 1}, {2, 3, 1}}},
      {1, 0, {{0, 0, 1}, {1, 1, 2}, {2, 3, 3}}},
      {1, 1, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}}},
      {1, 2, {{0, 2, 1}, {1, 3, 2}, {2, 1, 3}}},
      {1, 3, {{0, 3, 1}, {1, 0, 2}, {2, 2, 3}}},
      {2, 0, {{0, 0, 1}, {1, 2, 4}, {2, 1, 5}}},
      {2, 1, {{0, 1, 1}, {1, 3, 4}, {2, 2, 5}}},
      {2, 2, {{0, 2, 1}, {1, 0, 4}, {2, 3, 5}}},
      {2, 3, {{0, 3, 1}, {1, 1, 4}, {2, 0, 5}}},
  };
  for (const auto& c : cells) {
    auto eq = parity_equation(s, c.j, c.t);
    REQUIRE(eq.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CAPTURE(c.j, c.t, i);
      CHECK(eq[i].sys_index == c.want[i].sys_index);
      CHECK(eq[i].block == c.want[i].block);
      CHECK(eq[i].coeff == c.want[i].coeff);
    }
  }
  CHECK_THROWS_AS(parity_equation(s, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(parity_equation(s, 0, 4), std::out_of_range);
}

TEST_CASE("digit indexing round-trips") {
  for (int r : {2, 3, 7})
    for (int k : {1, 2, 3}) {
      int L = 1;
      for (int i = 0; i < k; ++i) L *= r;
      for (int t = 0; t < L; ++t) CHECK(index_of(digits_of(t, r, k), r) == t);
    }
}

TEST_CASE("the (5,2) permutation code matches its construction table") {
  CodeSpec s = fixtures::perm52();
  REQUIRE(s.L == 9);
  REQUIRE(s.m() == 3);
  const auto& F = s.field();
  const Symbol l1 = 2, l2 = 3;

  // expected a/b source blocks per parity row
  const int pa[3][9] = {{0, 1, 2, 3, 4, 5, 6, 7, 8},
                        {3, 4, 5, 6, 7, 8, 0, 1, 2},
                        {6, 7, 8, 0, 1, 2, 3, 4, 5}};
  const int pb[3][9] = {{0, 1, 2, 3, 4, 5, 6, 7, 8},
                        {1, 2, 0, 4, 5, 3, 7, 8, 6},
                        {2, 0, 1, 5, 3, 4, 8, 6, 7}};
  for (int j = 0; j < 3; ++j)
    for (int t = 0; t < 9; ++t) {
      CAPTURE(j, t);
      auto eq = parity_equation(s, j, t);
      REQUIRE(eq.size() == 2);
      CHECK(eq[0].block == pa[j][t]);
      CHECK(eq[0].coeff == F.pow(l1, j + 1));
      CHECK(eq[1].block == pb[j][t]);
      CHECK(eq[1].coeff == F.pow(l2, j + 1));
    }
}

TEST_CASE("the (4,2) permutation code matches its construction table") {
  CodeSpec s = fixtures::perm42();
  REQUIRE(s.L == 4);
  REQUIRE(s.m() == 2);
  const auto& F = s.field();

  const int pa[2][4] = {{0, 1, 2, 3}, {2, 3, 0, 1}};
  const int pb[2][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}};
  for (int j = 0; j < 2; ++j)
    for (int t = 0; t < 4; ++t) {
      CAPTURE(j, t);
      auto eq = parity_equation(s, j, t);
      CHECK(eq[0].block == pa[j][t]);
      CHECK(eq[0].coeff == F.pow(2, j + 1));
      CHECK(eq[1].block == pb[j][t]);
      CHECK(eq[1].coeff == F.pow(3, j + 1));
    }
}

TEST_CASE("encode agrees with the symbolic parity equations") {
  for (const CodeSpec& s : {fixtures::code63(), fixtures::perm52(),
                            build_rs_code(6, 3, 4, 16)}) {
    CAPTURE(to_string(s.kind), s.w);
    auto sys = fixtures::random_data(s, 5, 42);
    auto parity = encode(s, sys);
    REQUIRE(int(parity.size()) == s.m());
    const auto& F = s.field();
    for (int j = 0; j < s.m(); ++j)
      for (int t = 0; t < s.L; ++t) {
        Block want(5, 0);
        for (const auto& term : parity_equation(s, j, t))
          block_scale_add(F, want, term.coeff, sys[term.sys_index].blocks[term.block]);
        REQUIRE(parity[j].blocks[t] == want);
      }
  }
}

TEST_CASE("encode is linear and maps zero to zero") {
  CodeSpec s = fixtures::code63();
  auto x = fixtures::random_data(s, 8, 1);
  auto y = fixtures::random_data(s, 8, 2);
  auto px = encode(s, x);
  auto py = encode(s, y);

  auto xy = x;
  for (int i = 0; i < s.k; ++i)
    for (int t = 0; t < s.L; ++t)
      for (std::size_t v = 0; v < xy[i].blocks[t].size(); ++v)
        xy[i].blocks[t][v] ^= y[i].blocks[t][v];
  auto pxy = encode(s, xy);
  for (int j = 0; j < s.m(); ++j)
    for (int t = 0; t < s.L; ++t)
      for (std::size_t v = 0; v < pxy[j].blocks[t].size(); ++v)
        REQUIRE(pxy[j].blocks[t][v] == (px[j].blocks[t][v] ^ py[j].blocks[t][v]));

  auto zero = fixtures::random_data(s, 8, 3);
  for (auto& node : zero)
    for (auto& b : node.blocks) b.assign(b.size(), 0);
  for (const auto& p : encode(s, zero))
    for (const auto& b : p.blocks)
      for (Symbol v : b) REQUIRE(v == 0);
}

TEST_CASE("reed-solomon baseline") {
  CodeSpec s = build_rs_code(6, 3, 4, 8);
  SECTION("identity rotations: every term reads its own row") {
    for (int j = 0; j < s.m(); ++j)
      for (int t = 0; t < s.L; ++t)
        for (const auto& term : parity_equation(s, j, t)) CHECK(term.block == t);
  }
  SECTION("coefficients nonzero and rows pairwise distinct") {
    for (int j = 0; j < s.m(); ++j)
      for (int i = 0; i < s.k; ++i) CHECK(s.lambdas[j][i] != 0);
    CHECK(s.lambdas[0] != s.lambdas[1]);
  }
  SECTION("field size limits n") {
    CHECK_THROWS_AS(build_rs_code(300, 2, 4, 8), std::invalid_argument);
    CHECK_NOTHROW(build_rs_code(300, 2, 4, 16));
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_rotation_code_shifts(6, 3, 4, {{0, 0, 0}, {0, 1, 3}, {0, 2, 1}},
                                             {{1, 1, 1}, {1, 0, 3}, {1, 4, 5}}, 8),
                  std::invalid_argument);  // zero coefficient
  CHECK_THROWS_AS(build_rotation_code_shifts(6, 3, 4, {{0, 0}, {0, 1}, {0, 2}},
                                             {{1, 1, 1}, {1, 2, 3}, {1, 4, 5}}, 8),
                  std::invalid_argument);  // row shape
  CHECK_THROWS_AS(build_rotation_code_shifts(6, 3, 4, {{0, 0, 0}, {0, 1, 3}},
                                             {{1, 1, 1}, {1, 2, 3}}, 8),
                  std::invalid_argument);  // wrong parity count

  CodeSpec s = fixtures::code63();
  s.rotations[1][2][0] = 1;  // duplicate target: no longer a permutation
  CHECK_THROWS_AS(validate_spec(s), std::invalid_argument);

  s = fixtures::code63();
  s.kind = CodeKind::permutation;  // L=4 != 3^3
  CHECK_THROWS_AS(validate_spec(s), std::invalid_argument);

  s = fixtures::code63();
  s.poly = 0x11B;
  CHECK_THROWS_AS(validate_spec(s), std::invalid_argument);
}

TEST_CASE("json round trip") {
  for (const CodeSpec& s : {fixtures::code63(), fixtures::perm52(),
                            build_rs_code(6, 3, 4, 32)}) {
    auto j = to_json(s);
    CodeSpec back = spec_from_json(j);
    CHECK(back.kind == s.kind);
    CHECK(back.n == s.n);
    CHECK(back.k == s.k);
    CHECK(back.L == s.L);
    CHECK(back.w == s.w);
    CHECK(back.poly == s.poly);
    CHECK(back.lambdas == s.lambdas);
    CHECK(back.rotations == s.rotations);
    CHECK(to_json(back) == j);
    CHECK(spec_hash(back) == spec_hash(s));
  }

  SECTION("distinct specs hash differently") {
    CHECK(spec_hash(fixtures::code63()) != spec_hash(fixtures::perm52()));
  }

  SECTION("corrupt documents are rejected") {
    auto j = to_json(fixtures::code63());
    j["lambdas"][0][0] = 0;
    CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
    j = to_json(fixtures::code63());
    j["kind"] = "mystery";
    CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
    j = to_json(fixtures::code63());
    j["rotations"][0][0] = std::vector<int>{0, 0, 1, 2};
    CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
  }

  SECTION("file round trip") {
    std::string path = "roundtrip_spec.json";
    save_spec(fixtures::perm52(), path);
    CodeSpec back = load_spec(path);
    CHECK(to_json(back) == to_json(fixtures::perm52()));
    std::remove(path.c_str());
  }
}
