#include "dfakit/channel_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dfakit {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void append_matrix_part(std::ostringstream& out, const ComplexMatrix& a, bool imag) {
  out << '[';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (i > 0) out << ", ";
    out << '[';
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ", ";
      out << format_double(imag ? a(i, j).imag() : a(i, j).real());
    }
    out << ']';
  }
  out << ']';
}

ComplexMatrix matrix_from_json(const nlohmann::json& entry, Eigen::Index n) {
  if (!entry.is_object() || !entry.contains("re") || !entry.contains("im")) {
    throw ParseError("kraus entry must be an object with re and im");
  }
  const auto& re = entry["re"];
  const auto& im = entry["im"];
  if (!re.is_array() || !im.is_array() ||
      re.size() != static_cast<std::size_t>(n) ||
      im.size() != static_cast<std::size_t>(n)) {
    throw ParseError("matrix parts must be dim x dim arrays");
  }
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& re_row = re[static_cast<std::size_t>(i)];
    const auto& im_row = im[static_cast<std::size_t>(i)];
    if (!re_row.is_array() || !im_row.is_array() ||
        re_row.size() != static_cast<std::size_t>(n) ||
        im_row.size() != static_cast<std::size_t>(n)) {
      throw ParseError("matrix parts must be dim x dim arrays");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& re_val = re_row[static_cast<std::size_t>(j)];
      const auto& im_val = im_row[static_cast<std::size_t>(j)];
      if (!re_val.is_number() || !im_val.is_number()) {
        throw ParseError("matrix entries must be numbers");
      }
      const double x = re_val.get<double>();
      const double y = im_val.get<double>();
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ParseError("matrix entries must be finite");
      }
      a(i, j) = Complex(x, y);
    }
  }
  return a;
}

}  // namespace

std::string format_channel(const KrausChannel& ch) {
  std::ostringstream out;
  out << "{\n  \"dim\": " << ch.dim() << ",\n  \"kraus\": [\n";
  for (std::size_t i = 0; i < ch.kraus().size(); ++i) {
    out << "    {\"re\": ";
    append_matrix_part(out, ch.kraus()[i], false);
    out << ", \"im\": ";
    append_matrix_part(out, ch.kraus()[i], true);
    out << '}';
    if (i + 1 < ch.kraus().size()) out << ',';
    out << '\n';
  }
  out << "  ]\n}\n";
  return out.str();
}

KrausChannel parse_channel(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("kraus")) {
    throw ParseError("channel file must be an object with dim and kraus");
  }
  if (!doc["dim"].is_number_integer()) {
    throw ParseError("dim must be an integer");
  }
  const auto dim = doc["dim"].get<std::int64_t>();
  if (dim < 1) throw ParseError("dim must be positive");
  if (!doc["kraus"].is_array() || doc["kraus"].empty()) {
    throw ParseError("kraus must be a non-empty array");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(doc["kraus"].size());
  for (const auto& entry : doc["kraus"]) {
    kraus.push_back(matrix_from_json(entry, n));
  }
  try {
    return KrausChannel(n, std::move(kraus));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

KrausChannel read_channel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read " + path.string());
  return parse_channel(buf.str());
}

void write_channel(const std::filesystem::path& path, const KrausChannel& ch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << format_channel(ch);
  out.flush();
  if (!out) throw ParseError("cannot write " + path.string());
}

}  // namespace dfakit
