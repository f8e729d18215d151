#include <doctest.h>

#include <dfakit/channel.hpp>
#include <dfakit/channel_io.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "fixtures.hpp"

using namespace dfakit;
using fixtures::dephasing;

TEST_CASE("format and parse round trip bit for bit") {
  const KrausChannel ch = random_channel(RandomKind::Luders, 3, 2, 12345);
  const std::string text = format_channel(ch);
  const KrausChannel back = parse_channel(text);
  REQUIRE(back.dim() == ch.dim());
  REQUIRE(back.num_kraus() == ch.num_kraus());
  for (Eigen::Index i = 0; i < ch.num_kraus(); ++i) {
    CHECK((back.kraus()[i] - ch.kraus()[i]).norm() == 0.0);
  }
  CHECK(format_channel(back) == text);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "dfakit_io_test.json";
  const KrausChannel ch = random_channel(RandomKind::MixedUnitary, 2, 3, 999);
  write_channel(path, ch);
  const KrausChannel back = read_channel(path);
  const std::string again_path_text = format_channel(back);
  CHECK(again_path_text == format_channel(ch));
  std::filesystem::remove(path);
}

TEST_CASE("floats carry 17 significant digits") {
  ComplexMatrix a(1, 1);
  a(0, 0) = Complex(1.0 / 3.0, 0.0);
  const KrausChannel ch(1, {a});
  const std::string text = format_channel(ch);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("formatted output matches the documented layout") {
  const std::string text = format_channel(dephasing());
  const std::string expected =
      "{\n"
      "  \"dim\": 2,\n"
      "  \"kraus\": [\n"
      "    {\"re\": [[1, 0], [0, 0]], \"im\": [[0, 0], [0, 0]]},\n"
      "    {\"re\": [[0, 0], [0, 1]], \"im\": [[0, 0], [0, 0]]}\n"
      "  ]\n"
      "}\n";
  CHECK(text == expected);
}

TEST_CASE("parse_channel rejects malformed input") {
  CHECK_THROWS_AS(parse_channel("not json"), ParseError);
  CHECK_THROWS_AS(parse_channel("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_channel("{\"dim\": 2}"), ParseError);
  CHECK_THROWS_AS(parse_channel("{\"kraus\": []}"), ParseError);
  CHECK_THROWS_AS(parse_channel("{\"dim\": 2, \"kraus\": []}"), ParseError);
  CHECK_THROWS_AS(parse_channel("{\"dim\": 0, \"kraus\": [{\"re\": [[1]], \"im\": [[0]]}]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_channel("{\"dim\": 2.5, \"kraus\": [{\"re\": [[1]], \"im\": [[0]]}]}"),
                  ParseError);
  // shape mismatch between dim and the matrices
  CHECK_THROWS_AS(parse_channel("{\"dim\": 2, \"kraus\": [{\"re\": [[1]], \"im\": [[0]]}]}"),
                  ParseError);
  // ragged rows
  CHECK_THROWS_AS(
      parse_channel("{\"dim\": 2, \"kraus\": [{\"re\": [[1, 0], [0]], "
                    "\"im\": [[0, 0], [0, 0]]}]}"),
      ParseError);
  // missing imaginary part
  CHECK_THROWS_AS(parse_channel("{\"dim\": 1, \"kraus\": [{\"re\": [[1]]}]}"), ParseError);
  // non-numeric entry
  CHECK_THROWS_AS(
      parse_channel("{\"dim\": 1, \"kraus\": [{\"re\": [[\"x\"]], \"im\": [[0]]}]}"),
      ParseError);
}

TEST_CASE("parse_channel accepts integer-valued entries") {
  const KrausChannel ch =
      parse_channel("{\"dim\": 2, \"kraus\": [{\"re\": [[1, 0], [0, 1]], "
                    "\"im\": [[0, 0], [0, 0]]}]}");
  CHECK(ch.dim() == 2);
  CHECK((ch.kraus()[0] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("read_channel reports a missing file") {
  CHECK_THROWS_AS(read_channel("/nonexistent/dfakit/missing.json"), ParseError);
}
