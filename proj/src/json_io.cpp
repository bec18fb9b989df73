#include "theta4/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "theta4/errors.hpp"

namespace theta4 {

namespace {

void dump_string(std::ostringstream& os, const std::string& s) {
  os << Json(s).dump();
}

void dump(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_string(os, it.key());
        os << ": ";
        dump(os, it.value(), depth + 1);
      }
      os << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& x) {
        return x.is_structured();
      });
      os << '[';
      bool first = true;
      for (const auto& x : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) os << '\n' << pad;
        dump(os, x, depth + 1);
      }
      if (!flat) os << '\n' << close_pad;
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

std::uint32_t parse_uint(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s) {
  const std::string text(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("expected a number, got '" + text + "'");
  }
  while (used < text.size() && text[used] == ' ') ++used;
  if (used != text.size()) throw InputError("expected a number, got '" + text + "'");
  return v;
}

std::vector<int> bits_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("characteristic half must be an array of bits");
  std::vector<int> out;
  for (const auto& b : j) {
    if (!b.is_number_integer()) throw InputError("characteristic bits must be integers");
    out.push_back(b.get<int>());
  }
  return out;
}

Eigen::MatrixXd real_matrix_from_json(const Json& j, int g, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != g) {
    throw InputError(std::string("period matrix '") + name + "' must have " + std::to_string(g) +
                     " rows");
  }
  Eigen::MatrixXd m(g, g);
  for (int i = 0; i < g; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != g) {
      throw InputError(std::string("period matrix '") + name + "' row has wrong length");
    }
    for (int k = 0; k < g; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number()) {
        throw InputError(std::string("period matrix '") + name + "' has a non-numeric entry");
      }
      m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return m;
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json characteristics_to_json(const std::vector<Characteristic>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::ostringstream os;
  dump(os, j, 0);
  os << '\n';
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move report into place at " + path.string() + ": " + ec.message());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("re") && j.contains("im") && j["re"].is_number() &&
      j["im"].is_number()) {
    return {j["re"].get<double>(), j["im"].get<double>()};
  }
  throw InputError("complex number must be a number, [re, im] or {\"re\", \"im\"}");
}

Json to_json(const Characteristic& c) { return {{"a1", c.a1_bits()}, {"a2", c.a2_bits()}}; }

Characteristic characteristic_from_json(const Json& j, int g) {
  if (j.is_object()) {
    if (!j.contains("a1") || !j.contains("a2")) {
      throw InputError("characteristic object needs keys a1 and a2");
    }
    auto c = Characteristic::from_bits(bits_from_json(j["a1"]), bits_from_json(j["a2"]));
    if (c.genus() != g) throw InputError("characteristic genus does not match");
    return c;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer() &&
      j[0].get<std::int64_t>() >= 0 && j[1].get<std::int64_t>() >= 0) {
    return {g, j[0].get<std::uint32_t>(), j[1].get<std::uint32_t>()};
  }
  throw InputError("characteristic must be {\"a1\": [...], \"a2\": [...]} or [a1, a2]");
}

Characteristic parse_characteristic(std::string_view text, int g) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw InputError("characteristic must be written \"a1,a2\"");
  }
  return {g, parse_uint(text.substr(0, comma)), parse_uint(text.substr(comma + 1))};
}

Json to_json(const PeriodMatrix& tau) {
  return {{"g", tau.genus()},
          {"re", real_matrix_to_json(tau.tau().real())},
          {"im", real_matrix_to_json(tau.tau().imag())}};
}

PeriodMatrix period_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("re") || !j.contains("im")) {
    throw InputError("period matrix must be {\"g\": G, \"re\": [[...]], \"im\": [[...]]}");
  }
  if (!j["g"].is_number_integer()) throw InputError("period matrix genus must be an integer");
  const int g = j["g"].get<int>();
  if (g < 1 || g > kMaxCharGenus) throw InputError("period matrix genus out of range");
  ComplexMatrix tau(g, g);
  tau.real() = real_matrix_from_json(j["re"], g, "re");
  tau.imag() = real_matrix_from_json(j["im"], g, "im");
  return PeriodMatrix(std::move(tau));
}

PeriodMatrix load_period_matrix(const std::filesystem::path& path) {
  return period_matrix_from_json(read_json_file(path));
}

Json to_json(const Point& z) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) out.push_back(to_json(z[i]));
  return out;
}

Point parse_point(std::string_view text) {
  std::vector<Complex> coords;
  while (true) {
    const auto semi = text.find(';');
    const std::string_view part = text.substr(0, semi);
    const auto comma = part.find(',');
    if (comma == std::string_view::npos) {
      coords.emplace_back(parse_double(part), 0.0);
    } else {
      coords.emplace_back(parse_double(part.substr(0, comma)), parse_double(part.substr(comma + 1)));
    }
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  Point z(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) z[static_cast<Eigen::Index>(i)] = coords[i];
  return z;
}

Json to_json(const SignMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j));
    entries.push_back(std::move(row));
  }
  return {{"g", m.genus()}, {"dim", m.dim()}, {"entries", std::move(entries)}};
}

Json to_json(const MMatrixVerification& v) {
  return {{"g", v.g},
          {"dim", v.dim},
          {"symmetric", v.symmetric},
          {"unit_diagonal", v.unit_diagonal},
          {"row_sums", v.row_sums},
          {"quadratic_identity", v.quadratic_identity},
          {"inverse_right", v.inverse_right},
          {"inverse_left", v.inverse_left},
          {"ok", v.ok()}};
}

Json to_json(const TruncationPolicy& p) {
  return {{"target_eps", p.target_eps}, {"max_radius", p.max_radius}};
}

Json to_json(const IdentityResidual& r) {
  return {{"characteristic", to_json(r.characteristic)},
          {"z", to_json(r.z)},
          {"lhs", to_json(r.lhs)},
          {"rhs", to_json(r.rhs)},
          {"abs_residual", r.abs_residual},
          {"rel_residual", r.rel_residual},
          {"term_scale", r.term_scale},
          {"scaled_residual", r.scaled_residual},
          {"policy", to_json(r.policy)}};
}

Json to_json(const std::vector<NullValue>& nulls, double null_threshold) {
  double largest = 0.0;
  for (const auto& n : nulls) largest = std::max(largest, std::abs(n.value));
  Json values = Json::array();
  Json vanishing = Json::array();
  for (const auto& n : nulls) {
    const double rel = largest > 0.0 ? std::abs(n.value) / largest : 0.0;
    values.push_back({{"characteristic", to_json(n.characteristic)},
                      {"value", to_json(n.value)},
                      {"relative_modulus", rel}});
    if (rel < null_threshold) vanishing.push_back(to_json(n.characteristic));
  }
  return {{"nulls", std::move(values)},
          {"null_threshold", null_threshold},
          {"vanishing_nulls", std::move(vanishing)}};
}

Json to_json(const BasisReport& r) {
  Json out = {
      {"tau", to_json(r.tau)},
      {"kappa0", to_json(r.kappa0)},
      {"dim", r.dim},
      {"null_threshold", r.null_threshold},
      {"nulls", to_json(r.nulls, r.null_threshold)["nulls"]},
      {"vanishing_nulls", characteristics_to_json(r.vanishing_nulls)},
      {"near_vanishing_nulls", characteristics_to_json(r.near_vanishing_nulls)},
      {"ev_matrix_rank", r.ev_matrix_rank},
      {"ev_singular_values", vector_to_json(r.ev_singular_values)},
      {"fourth_power_rank", r.fourth_power_rank},
      {"fourth_power_singular_values", vector_to_json(r.fourth_power_singular_values)},
      {"m_deviation", r.m_deviation ? Json(*r.m_deviation) : Json(nullptr)},
      {"theorem11_verdict", r.theorem11_verdict},
      {"theorem12_verdict", r.theorem12_verdict},
      {"corank_law", r.corank_law},
      {"rank_stable", r.rank_stable},
      {"truncation", to_json(r.policy)},
      {"rel_sv_threshold", r.rank_policy.rel_sv_threshold},
      {"seed", r.seed},
      {"n_samples", r.n_samples},
      {"status", to_string(r.status)},
  };
  return out;
}

}  // namespace theta4
