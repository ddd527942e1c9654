#pragma once

// JSON descriptors and reports, CSV tables, content hashing.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/classifier.hpp"
#include "jacobi_lab/growth.hpp"
#include "jacobi_lab/hamburger.hpp"
#include "jacobi_lab/recurrence.hpp"
#include "jacobi_lab/spectrum.hpp"

namespace jacobi {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Keys beta1, beta2, x0, x1, x2, y0, y1, y2, epsilon, remainder {kind,
/// amplitude, seed}, order. Numbers or decimal strings; when all eight shape
/// fields are strings the exact data is retained. Throws ParseError on
/// malformed input, DomainError on invalid values.
PowerAsymptotics descriptor_from_json(const Json& j);
PowerAsymptotics parse_descriptor(std::string_view text);
Json to_json(const PowerAsymptotics& p);

/// Header "n,rho,q", n = 0, 1, 2, ... in order.
JacobiSequence read_sequence_csv(std::istream& in);
JacobiSequence read_sequence_csv_file(const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_solution_csv(std::ostream& out, const PolySolution& sol);
void write_spectrum_csv(std::ostream& out, std::span<const double> eigenvalues);
void write_counting_csv(std::ostream& out, std::span<const double> radii, std::span<const std::size_t> counts);
void write_hamburger_csv(std::ostream& out, const HamburgerData& data);
void write_zeros_csv(std::ostream& out, std::span<const double> zeros);
void write_max_modulus_csv(std::ostream& out, std::span<const double> radii, std::span<const double> log_M);

Json to_json(const Classification& c);
Json to_json(const CriterionVerdict& v);
Json to_json(const ClassificationReport& r);
Json to_json(const ExponentFit& f);
Json to_json(const OrderType& o);
Json to_json(const MaxModulusFit& f);
Json to_json(const GrowthEstimate& g);
Json to_json(const DeltaExponents& d);
Json to_json(const StabilizedCount& s);

/// Hex SHA-1 of "blob <size>\0" + bytes, as git hash-object computes it.
std::string git_blob_hash(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace jacobi
