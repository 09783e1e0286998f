#ifndef TWODESCENT_REPORT_IO_HPP
#define TWODESCENT_REPORT_IO_HPP

// Serialization of descent reports (JSON and text) and the Cremona
// allgens line format.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twodescent/descent.hpp"
#include "twodescent/families.hpp"

namespace twodescent {

enum ExitCode { exit_ok = 0, exit_internal = 1, exit_invalid = 2, exit_mismatch = 3 };

/// Flattened, serializable view of a DescentReport.
struct ReportDocument {
  int schema_version = 1;
  std::array<Int, 3> curve;
  std::array<Int, 3> isogenous_curve;
  Int discriminant;
  std::vector<Int> selmer_phi, selmer_phi_hat, image_phi, image_phi_hat;
  int rank_lower = 0;
  int rank_upper = 0;
  std::string rank_exactness;  // "exact" or "interval"
  std::array<unsigned, 2> sha_dims{};
  std::vector<unsigned> torsion_structure;
  std::vector<std::array<Int, 4>> torsion_generators;  // x_num, x_den, y_num, y_den
  std::vector<std::array<Int, 4>> generators;
  Int search_height;
  double timings_ms = 0;

  bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_document(const DescentReport& r, double timings_ms = 0);

/// Integers beyond 2^53 in magnitude are written as decimal strings.
std::string to_json(const ReportDocument& doc, int indent = 2);
ReportDocument document_from_json(const std::string& text);

/// Text report in the shape of a "Results:" block.
std::string render_text(const DescentReport& r);

std::string table_to_json(const std::vector<TableRow>& rows, int indent = 2);

struct CremonaLine {
  Int conductor;
  std::string class_label;
  Int number;
  std::array<Int, 5> ainv;  // a1, a2, a3, a4, a6
  int rank = 0;
  std::vector<unsigned> torsion_invariants;
  std::vector<std::array<Int, 3>> generators;  // [x:y:z]

  bool operator==(const CremonaLine&) const = default;
};

/// Throws DomainError with a description of the first problem.
CremonaLine parse_cremona_line(const std::string& line);

struct CremonaCheck {
  enum class Status { ok, mismatch, skipped };
  Status status = Status::ok;
  std::vector<std::string> messages;
};

/// Generators on the curve, torsion invariants, stated rank within the
/// descent interval. Lines with a1 or a3 nonzero are skipped.
CremonaCheck verify_cremona(const CremonaLine& line, const Int& height = 20);

}  // namespace twodescent

#endif  // TWODESCENT_REPORT_IO_HPP
