#include "jacobi_lab/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "jacobi_lab/errors.hpp"

namespace jacobi {

namespace {

constexpr std::array<const char*, 8> kShapeKeys{"beta1", "beta2", "x0", "x1", "x2", "y0", "y1", "y2"};

double literal_value(const std::string& literal) {
  parse_decimal(literal);  // rejects anything but a plain decimal literal
  return std::strtod(literal.c_str(), nullptr);
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

RemainderModel::Kind kind_from_string(const std::string& s) {
  if (s == "None") return RemainderModel::Kind::None;
  if (s == "Deterministic") return RemainderModel::Kind::Deterministic;
  if (s == "SeededNoise") return RemainderModel::Kind::SeededNoise;
  throw ParseError("unknown remainder kind '" + s + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
  }
  return v;
}

}  // namespace

PowerAsymptotics descriptor_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("descriptor must be a JSON object");
  static const std::array<const char*, 11> known{"beta1", "beta2", "x0", "x1", "x2", "y0",
                                                 "y1", "y2", "epsilon", "remainder", "order"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
      throw ParseError("unknown descriptor key '" + key + "'");
    }
  }
  if (!j.contains("beta1") || !j.contains("beta2")) throw ParseError("descriptor requires beta1 and beta2");

  PowerAsymptotics p;
  const std::array<double*, 8> slots{&p.beta1, &p.beta2, &p.x0, &p.x1, &p.x2, &p.y0, &p.y1, &p.y2};
  const std::array<const char*, 8> defaults{"0", "0", "1", "0", "0", "1", "0", "0"};
  std::array<std::string, 8> literals;
  bool all_strings = true;
  for (std::size_t i = 0; i < kShapeKeys.size(); ++i) {
    const char* key = kShapeKeys[i];
    if (!j.contains(key)) {
      all_strings = false;
      literals[i] = defaults[i];
      *slots[i] = std::strtod(defaults[i], nullptr);
      continue;
    }
    const Json& v = j.at(key);
    if (v.is_string()) {
      literals[i] = v.get<std::string>();
      *slots[i] = literal_value(literals[i]);
    } else if (v.is_number()) {
      all_strings = false;
      *slots[i] = v.get<double>();
    } else {
      throw ParseError(std::string("descriptor field '") + key + "' must be a number or decimal string");
    }
  }
  if (j.contains("epsilon")) {
    const Json& v = j.at("epsilon");
    if (v.is_number()) p.epsilon = v.get<double>();
    else if (v.is_string()) p.epsilon = literal_value(v.get<std::string>());
    else throw ParseError("epsilon must be a number");
  }
  if (j.contains("order")) {
    const Json& v = j.at("order");
    if (!v.is_string()) throw ParseError("order must be \"FirstOrder\" or \"SecondOrder\"");
    const auto s = v.get<std::string>();
    if (s == "FirstOrder") p.order = AsymptoticOrder::FirstOrder;
    else if (s == "SecondOrder") p.order = AsymptoticOrder::SecondOrder;
    else throw ParseError("order must be \"FirstOrder\" or \"SecondOrder\"");
  }
  if (j.contains("remainder")) {
    const Json& r = j.at("remainder");
    if (!r.is_object()) throw ParseError("remainder must be an object");
    if (r.contains("kind")) {
      if (!r.at("kind").is_string()) throw ParseError("remainder.kind must be a string");
      p.remainder.kind = kind_from_string(r.at("kind").get<std::string>());
    }
    if (r.contains("amplitude")) {
      if (!r.at("amplitude").is_number()) throw ParseError("remainder.amplitude must be a number");
      p.remainder.amplitude = r.at("amplitude").get<double>();
    }
    if (r.contains("seed")) {
      if (!r.at("seed").is_number_unsigned()) throw ParseError("remainder.seed must be a nonnegative integer");
      p.remainder.seed = r.at("seed").get<std::uint64_t>();
    }
  }
  if (all_strings) {
    ExactShape e;
    const std::array<Rational*, 8> exact_slots{&e.beta1, &e.beta2, &e.x0, &e.x1, &e.x2, &e.y0, &e.y1, &e.y2};
    for (std::size_t i = 0; i < 8; ++i) *exact_slots[i] = parse_decimal(literals[i]);
    e.text = literals;
    p.exact = std::move(e);
  }
  validate(p);
  return p;
}

PowerAsymptotics parse_descriptor(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return descriptor_from_json(j);
}

Json to_json(const PowerAsymptotics& p) {
  Json j;
  const std::array<double, 8> values{p.beta1, p.beta2, p.x0, p.x1, p.x2, p.y0, p.y1, p.y2};
  for (std::size_t i = 0; i < 8; ++i) {
    if (p.exact) j[kShapeKeys[i]] = p.exact->text[i];
    else j[kShapeKeys[i]] = values[i];
  }
  j["epsilon"] = p.epsilon;
  j["remainder"] = {{"kind", to_string(p.remainder.kind)},
                    {"amplitude", p.remainder.amplitude},
                    {"seed", p.remainder.seed}};
  j["order"] = to_string(p.order);
  return j;
}

JacobiSequence read_sequence_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty sequence file");
  ++line_no;
  if (split_csv_line(line) != std::vector<std::string>{"n", "rho", "q"}) {
    throw ParseError("sequence CSV header must be \"n,rho,q\"");
  }
  std::vector<double> rho, q;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected 3 columns");
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), n);
    if (ec != std::errc() || ptr != cells[0].data() + cells[0].size() || n != rho.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": n must count up from 0");
    }
    rho.push_back(parse_number(cells[1], line_no));
    q.push_back(parse_number(cells[2], line_no));
  }
  if (rho.empty()) throw ParseError("sequence file has no rows");
  return JacobiSequence(std::move(rho), std::move(q));
}

JacobiSequence read_sequence_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_sequence_csv(in);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_solution_csv(std::ostream& out, const PolySolution& sol) {
  out << "n,P,Q\n";
  for (std::size_t n = 0; n <= sol.N; ++n) {
    out << n << ',' << format_double(sol.P[n]) << ',' << format_double(sol.Q[n]) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, std::span<const double> eigenvalues) {
  out << "index,lambda\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out << i << ',' << format_double(eigenvalues[i]) << '\n';
}

void write_counting_csv(std::ostream& out, std::span<const double> radii, std::span<const std::size_t> counts) {
  if (radii.size() != counts.size()) throw DomainError("write_counting_csv: size mismatch");
  out << "r,count\n";
  for (std::size_t i = 0; i < radii.size(); ++i) out << format_double(radii[i]) << ',' << counts[i] << '\n';
}

void write_hamburger_csv(std::ostream& out, const HamburgerData& data) {
  out << "n,l,dphi\n";
  for (std::size_t n = 0; n < data.dphi.size(); ++n) {
    out << n << ',' << format_double(data.l[n]) << ',' << format_double(data.dphi[n]) << '\n';
  }
}

void write_zeros_csv(std::ostream& out, std::span<const double> zeros) {
  out << "index,zero\n";
  for (std::size_t i = 0; i < zeros.size(); ++i) out << i << ',' << format_double(zeros[i]) << '\n';
}

void write_max_modulus_csv(std::ostream& out, std::span<const double> radii, std::span<const double> log_M) {
  if (radii.size() != log_M.size()) throw DomainError("write_max_modulus_csv: size mismatch");
  out << "r,log_max_modulus\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    out << format_double(radii[i]) << ',' << format_double(log_M[i]) << '\n';
  }
}

Json to_json(const Classification& c) {
  Json j;
  j["regime"] = to_string(c.regime);
  j["case"] = c.case_label;
  if (c.predicted_exponent) {
    j["predicted_exponent"] = {{"lo", c.predicted_exponent->lo}, {"hi", c.predicted_exponent->hi}};
  } else {
    j["predicted_exponent"] = nullptr;
  }
  j["density_lower"] = optional_number(c.density_lower);
  j["density_upper"] = optional_number(c.density_upper);
  j["a"] = optional_number(c.a_constant);
  j["z1"] = optional_number(c.z1);
  j["z2"] = optional_number(c.z2);
  j["d"] = optional_number(c.d);
  j["notes"] = c.notes;
  j["summary"] = summary_line(c);
  return j;
}

Json to_json(const CriterionVerdict& v) {
  return {{"name", v.name}, {"applies", v.applies}, {"conclusion", to_string(v.conclusion)}, {"evidence", v.evidence}};
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["descriptor"] = to_json(r.descriptor);
  j["classification"] = to_json(r.classification);
  Json crit = Json::array();
  for (const auto& v : r.criteria) crit.push_back(to_json(v));
  j["criteria"] = crit;
  return j;
}

Json to_json(const ExponentFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"stderr", f.slope_stderr},
          {"r_squared", f.r_squared},
          {"window", {f.window.first, f.window.last}}};
}

Json to_json(const OrderType& o) {
  return {{"order", o.order},
          {"type", o.type},
          {"order_naive", o.order_naive},
          {"type_naive", o.type_naive},
          {"window", {o.window.first, o.window.last}},
          {"r_squared", o.fit_r_squared}};
}

Json to_json(const MaxModulusFit& f) {
  return {{"order", f.order},
          {"type", f.type},
          {"stderr", f.fit.slope_stderr},
          {"r_squared", f.fit.r_squared},
          {"first_point", f.first_point}};
}

Json to_json(const GrowthEstimate& g) {
  Json j;
  j["order"] = g.order;
  j["type"] = g.type_at_order;
  j["exponent"] = g.convergence_exponent;
  j["exponent_stderr"] = g.exponent_stderr;
  j["density"] = g.upper_density;
  j["zero_count"] = g.zero_count;
  j["windows"] = {{"N", g.N}, {"r_max", g.r_max}, {"max_modulus", to_json(g.max_modulus)}};
  j["notes"] = g.notes;
  return j;
}

Json to_json(const DeltaExponents& d) {
  return {{"delta_l", d.delta_l},
          {"delta_phi", d.delta_phi},
          {"sum", d.delta_l + d.delta_phi},
          {"delta_l_stderr", d.delta_l_stderr},
          {"delta_phi_stderr", d.delta_phi_stderr},
          {"window", {d.window.first, d.window.last}}};
}

Json to_json(const StabilizedCount& s) {
  return {{"N", s.Ns}, {"counts", s.counts}, {"stabilized", s.stabilized}};
}

std::string git_blob_hash(std::string_view bytes) {
  const std::string header = "blob " + std::to_string(bytes.size()) + std::string(1, '\0');
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace jacobi
