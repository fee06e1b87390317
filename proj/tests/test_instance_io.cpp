#include <cmath>
#include <string>

#include <doctest.h>

#include "lqham/error.hpp"
#include "lqham/instance_io.hpp"
#include "test_util.hpp"

using namespace lqham;
using lqham::testing::Rng;

namespace {

const char* kScalar = R"({
  "n": 1, "m": 1, "kf": 2,
  "A": [[0.5]], "B": [[1]], "Q": [[1]], "R": [[1]], "S": [[0]]
})";

ErrorKind parse_kind(const std::string& text, std::string* message = nullptr) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("parse a scalar instance") {
  const ProblemInstance inst = parse_instance(kScalar);
  CHECK(inst.n == 1);
  CHECK(inst.kf == 2);
  CHECK(inst.A(0, 0) == 0.5);
}

TEST_CASE("parse diagnostics") {
  std::string msg;
  CHECK(parse_kind(R"({"n": 1, "m": 1, "kf": 2, "A": [[0.5]], "B": [[1, 2]],
                      "Q": [[1]], "R": [[1]], "S": [[0]]})",
                   &msg) == ErrorKind::kParseError);
  CHECK(msg.find("'B'") != std::string::npos);

  CHECK(parse_kind("{\n  \"n\": 1,\n  \"m\": \n}", &msg) == ErrorKind::kParseError);
  CHECK(msg.find("line 4") != std::string::npos);

  CHECK(parse_kind(R"({"n": 1, "m": 1, "kf": 2, "A": [[0.5]], "B": [[1]],
                      "Q": [[1]], "R": [[1]]})",
                   &msg) == ErrorKind::kParseError);
  CHECK(msg.find("'S'") != std::string::npos);

  CHECK(parse_kind(R"({"n": -1, "m": 1, "kf": 2})") == ErrorKind::kParseError);
  CHECK(parse_kind(R"({"n": 1, "m": 1, "kf": 2, "A": [["x"]], "B": [[1]],
                      "Q": [[1]], "R": [[1]], "S": [[0]]})") ==
        ErrorKind::kParseError);

  CHECK(parse_kind(R"({"n": 2, "m": 1, "kf": 2, "A": [[0.5, 0], [0, 0.5]],
                      "B": [[1], [0]], "Q": [[1, 0.5], [0, 1]], "R": [[1]],
                      "S": [[0], [0]]})") == ErrorKind::kInstanceInvalid);
}

TEST_CASE("17-digit serialization round-trips exactly") {
  Rng rng(13);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ProblemInstance inst =
        generate_instance(seed, rng.index(1, 5), rng.index(1, 3), rng.index(1, 12));
    const std::string text = serialize_instance(inst);
    const ProblemInstance back = parse_instance(text);
    CHECK(back.A == inst.A);
    CHECK(back.B == inst.B);
    CHECK(back.Q == inst.Q);
    CHECK(back.R == inst.R);
    CHECK(back.S == inst.S);
    CHECK(back.kf == inst.kf);
    CHECK(serialize_instance(back) == text);
  }
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(rng.uniform(), static_cast<int>(rng.index(0, 80)) - 40);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("generate_instance is deterministic and seed sensitive") {
  const std::string a = serialize_instance(generate_instance(1, 2, 1, 4));
  const std::string b = serialize_instance(generate_instance(1, 2, 1, 4));
  CHECK(a == b);
  const ProblemInstance one = generate_instance(1, 2, 1, 4);
  const ProblemInstance two = generate_instance(2, 2, 1, 4);
  CHECK_FALSE(one.A == two.A);
  CHECK(spectral_radius_estimate(one.A) == doctest::Approx(0.9).epsilon(1e-6));
  CHECK_THROWS_AS(generate_instance(1, 0, 1, 4), Error);
}
