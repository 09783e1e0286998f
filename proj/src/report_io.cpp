#include "twodescent/report_io.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"
#include "twodescent/error.hpp"

namespace twodescent {

namespace {

using json = nlohmann::ordered_json;

const Int& json_exact_limit() {
  static const Int limit = Int(1) << 53;
  return limit;
}

json int_to_json(const Int& v) {
  if (abs(v) <= json_exact_limit()) return json(v.get_si());
  return json(v.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_string()) {
    Int v;
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || v.set_str(s, 10) != 0) throw DomainError("expected an integer, got " + j.dump());
    return v;
  }
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  throw DomainError("expected an integer, got " + j.dump());
}

std::vector<Int> reps_sorted(const SelmerSet& set) {
  std::vector<Int> out;
  for (const SquareClass& c : set) out.push_back(c.rep());
  return out;
}

json ints_to_json(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

std::vector<Int> ints_from_json(const json& j) {
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

std::array<Int, 4> point_coords(const Point& P) {
  if (P.is_infinity()) throw DomainError("point at infinity has no affine coordinates");
  return {P.x().get_num(), P.x().get_den(), P.y().get_num(), P.y().get_den()};
}

json points_to_json(const std::vector<std::array<Int, 4>>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(ints_to_json({p.begin(), p.end()}));
  return out;
}

std::vector<std::array<Int, 4>> points_from_json(const json& j) {
  std::vector<std::array<Int, 4>> out;
  for (const auto& p : j) {
    std::vector<Int> v = ints_from_json(p);
    if (v.size() != 4) throw DomainError("point must have 4 integers");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  return out;
}

std::string set_str(const SelmerSet& s) {
  std::string out = "{";
  bool first = true;
  for (const SquareClass& c : s) {
    out += (first ? "" : ", ") + c.str();
    first = false;
  }
  return out + "}";
}

std::string status_label(ClassStatus s) {
  switch (s) {
    case ClassStatus::global_point:
      return "Found small global point";
    case ClassStatus::locally_soluble_no_point:
      return "ELS without small global points";
    case ClassStatus::not_locally_soluble:
      return "Not ELS";
  }
  return "";
}

std::string pow2(unsigned e) { return Int(Int(1) << e).get_str(); }

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Int parse_int(const std::string& s, const std::string& what) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw DomainError("bad integer for " + what + ": '" + s + "'");
  return v;
}

}  // namespace

// JSON ---------------------------------------------------------------------------

ReportDocument make_document(const DescentReport& r, double timings_ms) {
  ReportDocument d;
  d.curve = {r.curve.a2(), r.curve.a4(), r.curve.a6()};
  d.isogenous_curve = {r.isogenous.a2(), r.isogenous.a4(), r.isogenous.a6()};
  d.discriminant = discriminant(r.curve);
  d.selmer_phi = reps_sorted(r.selmer_phi);
  d.selmer_phi_hat = reps_sorted(r.selmer_phi_hat);
  d.image_phi = reps_sorted(r.image_phi);
  d.image_phi_hat = reps_sorted(r.image_phi_hat);
  d.rank_lower = r.rank_lower;
  d.rank_upper = r.rank_upper;
  d.rank_exactness = r.rank_exact() ? "exact" : "interval";
  d.sha_dims = {r.sha_phi_dim_upper, r.sha_phi_hat_dim_upper};
  d.torsion_structure = r.torsion.invariants;
  for (const Point& g : r.torsion.generators) d.torsion_generators.push_back(point_coords(g));
  for (const Point& g : r.generators) d.generators.push_back(point_coords(g));
  d.search_height = r.search_height;
  d.timings_ms = timings_ms;
  return d;
}

std::string to_json(const ReportDocument& d, int indent) {
  json j;
  j["schema_version"] = d.schema_version;
  j["curve"] = ints_to_json({d.curve.begin(), d.curve.end()});
  j["isogenous_curve"] = ints_to_json({d.isogenous_curve.begin(), d.isogenous_curve.end()});
  j["discriminant"] = int_to_json(d.discriminant);
  j["selmer_phi"] = ints_to_json(d.selmer_phi);
  j["selmer_phi_hat"] = ints_to_json(d.selmer_phi_hat);
  j["image_phi"] = ints_to_json(d.image_phi);
  j["image_phi_hat"] = ints_to_json(d.image_phi_hat);
  j["rank_lower"] = d.rank_lower;
  j["rank_upper"] = d.rank_upper;
  j["rank_exactness"] = d.rank_exactness;
  j["sha_dims"] = {d.sha_dims[0], d.sha_dims[1]};
  j["torsion"] = {{"structure", d.torsion_structure}, {"generators", points_to_json(d.torsion_generators)}};
  j["generators"] = points_to_json(d.generators);
  j["search_height"] = int_to_json(d.search_height);
  j["timings_ms"] = d.timings_ms;
  return j.dump(indent);
}

ReportDocument document_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
  try {
    ReportDocument d;
    d.schema_version = j.at("schema_version").get<int>();
    if (d.schema_version != 1) throw DomainError("unsupported schema_version " + std::to_string(d.schema_version));
    auto triple = [](const json& x) {
      std::vector<Int> v = ints_from_json(x);
      if (v.size() != 3) throw DomainError("curve must have 3 coefficients");
      return std::array<Int, 3>{v[0], v[1], v[2]};
    };
    d.curve = triple(j.at("curve"));
    d.isogenous_curve = triple(j.at("isogenous_curve"));
    d.discriminant = int_from_json(j.at("discriminant"));
    d.selmer_phi = ints_from_json(j.at("selmer_phi"));
    d.selmer_phi_hat = ints_from_json(j.at("selmer_phi_hat"));
    d.image_phi = ints_from_json(j.at("image_phi"));
    d.image_phi_hat = ints_from_json(j.at("image_phi_hat"));
    d.rank_lower = j.at("rank_lower").get<int>();
    d.rank_upper = j.at("rank_upper").get<int>();
    d.rank_exactness = j.at("rank_exactness").get<std::string>();
    d.sha_dims = {j.at("sha_dims").at(0).get<unsigned>(), j.at("sha_dims").at(1).get<unsigned>()};
    d.torsion_structure = j.at("torsion").at("structure").get<std::vector<unsigned>>();
    d.torsion_generators = points_from_json(j.at("torsion").at("generators"));
    d.generators = points_from_json(j.at("generators"));
    d.search_height = int_from_json(j.at("search_height"));
    d.timings_ms = j.at("timings_ms").get<double>();
    return d;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed report: ") + e.what());
  }
}

std::string table_to_json(const std::vector<TableRow>& rows, int indent) {
  json out = json::array();
  for (const TableRow& r : rows) {
    json row;
    row["p"] = int_to_json(r.p);
    row["sel_phi_dim"] = r.sel_phi_dim;
    row["sel_phi_hat_dim"] = r.sel_phi_hat_dim;
    row["rank_sha_dim"] = r.rank_sha_dim;
    row["rank"] = {{"kind", kind_name(r.rank.kind)}, {"lo", r.rank.lo}, {"hi", r.rank.hi}, {"note", r.rank.note}};
    out.push_back(row);
  }
  return out.dump(indent);
}

// Text ---------------------------------------------------------------------------

std::string render_text(const DescentReport& r) {
  std::ostringstream os;
  os << "Elliptic curve:  " << r.curve.str() << "\n";
  os << "Isogenous curve: " << r.isogenous.str() << "\n";
  os << "Discriminant: " << discriminant(r.curve) << "\n";
  os << "Torsion: " << r.torsion.name();
  for (const Point& g : r.torsion.generators) os << " " << g.str();
  os << "\n\n";
  auto classes = [&](const std::string& title, const std::vector<ClassRecord>& recs) {
    os << title << "\n";
    for (const ClassRecord& c : recs) {
      os << "  d = " << c.d.str() << ": " << status_label(c.status) << ", quartic " << c.quartic.str();
      if (c.status != ClassStatus::global_point || c.detail.rfind("(z, w)", 0) == 0) os << " [" << c.detail << "]";
      os << "\n";
    }
  };
  classes("Homogeneous spaces for phi (on " + r.curve.str() + "):", r.phi_classes);
  classes("Homogeneous spaces for phi' (on " + r.isogenous.str() + "):", r.phi_hat_classes);

  const std::size_t g = r.image_phi.size(), s = r.selmer_phi.size();
  const std::size_t gh = r.image_phi_hat.size(), sh = r.selmer_phi_hat.size();
  os << "\nResults:\n";
  os << gh << " <= #E(Q)/phi'(E'(Q)) <= " << sh << "\n";
  os << g << " <= #E'(Q)/phi(E(Q)) <= " << s << "\n";
  os << "#Sel^(phi')(E'/Q) = " << sh << "\n";
  os << "#Sel^(phi)(E/Q) = " << s << "\n";
  os << "1 <= #Sha(E'/Q)[phi'] <= " << pow2(r.sha_phi_hat_dim_upper) << "\n";
  os << "1 <= #Sha(E/Q)[phi] <= " << pow2(r.sha_phi_dim_upper) << "\n";
  os << "1 <= #Sha(E/Q)[2], #Sha(E'/Q)[2] <= " << pow2(r.sha_phi_dim_upper + r.sha_phi_hat_dim_upper) << "\n";
  os << r.rank_lower << " <= rank of E(Q) = rank of E'(Q) <= " << r.rank_upper << "\n";
  os << "(" << gh << ", " << sh << ", " << g << ", " << s << ")\n";
  os << "Sel^(phi)(E/Q) = " << set_str(r.selmer_phi) << "\n";
  os << "Sel^(phi')(E'/Q) = " << set_str(r.selmer_phi_hat) << "\n";
  os << "Rank: " << (r.rank_exact() ? "exactly " + std::to_string(r.rank_lower)
                                      : "in [" + std::to_string(r.rank_lower) + ", " +
                                            std::to_string(r.rank_upper) + "]")
     << " (search height " << r.search_height << ")\n";
  if (!r.generators.empty()) {
    os << "Generators:";
    for (const Point& P : r.generators) os << " " << P.str();
    os << "\n";
  }
  if (r.parity_flag) os << "Note: " << r.parity_note << "\n";
  return os.str();
}

// Cremona lines ------------------------------------------------------------------

CremonaLine parse_cremona_line(const std::string& line) {
  // Words outside brackets, and bracket groups with inner spaces removed.
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '[') {
      std::size_t close = line.find(']', i);
      if (close == std::string::npos) throw DomainError("unclosed '[' at column " + std::to_string(i + 1));
      tokens.push_back(strip_spaces(line.substr(i, close - i + 1)));
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '[') ++j;
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  if (tokens.size() < 6) throw DomainError("expected at least 6 fields, found " + std::to_string(tokens.size()));

  auto inner = [](const std::string& tok, const std::string& what) {
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']') {
      throw DomainError(what + " must be a bracketed list, got '" + tok + "'");
    }
    return tok.substr(1, tok.size() - 2);
  };

  CremonaLine c;
  c.conductor = parse_int(tokens[0], "conductor");
  c.class_label = tokens[1];
  for (char ch : c.class_label) {
    if (!std::isalpha(static_cast<unsigned char>(ch))) throw DomainError("bad class label '" + c.class_label + "'");
  }
  c.number = parse_int(tokens[2], "curve number");
  std::vector<std::string> a = split(inner(tokens[3], "a-invariants"), ',');
  if (a.size() != 5) throw DomainError("expected 5 a-invariants, found " + std::to_string(a.size()));
  for (int k = 0; k < 5; ++k) c.ainv[k] = parse_int(a[k], "a-invariant");
  Int rank = parse_int(tokens[4], "rank");
  if (rank < 0 || !rank.fits_sint_p()) throw DomainError("bad rank " + tokens[4]);
  c.rank = static_cast<int>(rank.get_si());
  std::string t = inner(tokens[5], "torsion");
  if (!t.empty()) {
    for (const std::string& x : split(t, ',')) {
      Int v = parse_int(x, "torsion invariant");
      if (v < 1 || !v.fits_uint_p()) throw DomainError("bad torsion invariant " + x);
      if (v > 1) c.torsion_invariants.push_back(static_cast<unsigned>(v.get_ui()));
    }
  }
  for (std::size_t k = 6; k < tokens.size(); ++k) {
    std::vector<std::string> xyz = split(inner(tokens[k], "generator"), ':');
    if (xyz.size() != 3) throw DomainError("generator must be [x:y:z], got " + tokens[k]);
    c.generators.push_back({parse_int(xyz[0], "x"), parse_int(xyz[1], "y"), parse_int(xyz[2], "z")});
  }
  return c;
}

CremonaCheck verify_cremona(const CremonaLine& line, const Int& height) {
  CremonaCheck out;
  if (line.ainv[0] != 0 || line.ainv[2] != 0) {
    out.status = CremonaCheck::Status::skipped;
    out.messages.push_back("skipped (unsupported shape)");
    return out;
  }
  const Int &a2 = line.ainv[1], &a4 = line.ainv[3], &a6 = line.ainv[4];
  std::optional<Curve> E;
  try {
    E.emplace(a2, a4, a6);
  } catch (const DomainError& e) {
    out.status = CremonaCheck::Status::mismatch;
    out.messages.push_back(std::string("invalid curve: ") + e.what());
    return out;
  }
  auto fail = [&](const std::string& m) {
    out.status = CremonaCheck::Status::mismatch;
    out.messages.push_back(m);
  };

  for (const auto& g : line.generators) {
    const Int &x = g[0], &y = g[1], &z = g[2];
    const std::string label = "[" + x.get_str() + ":" + y.get_str() + ":" + z.get_str() + "]";
    bool on = y * y * z == x * x * x + a2 * x * x * z + a4 * x * z * z + a6 * z * z * z &&
              !(x == 0 && y == 0 && z == 0);
    if (on) {
      out.messages.push_back("generator " + label + " on curve");
    } else {
      fail("generator " + label + " is not on the curve");
    }
  }

  const TorsionGroup T = torsion_subgroup(*E);
  auto inv_str = [](const std::vector<unsigned>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "]";
  };
  if (T.invariants == line.torsion_invariants) {
    out.messages.push_back("torsion " + inv_str(T.invariants) + " confirmed");
  } else {
    fail("torsion mismatch: stated " + inv_str(line.torsion_invariants) + ", computed " + inv_str(T.invariants));
  }

  // Descent needs a rational 2-torsion point moved to (0, 0).
  std::vector<Int> roots = integer_roots_monic_cubic(a2, a4, a6);
  if (roots.empty()) {
    out.messages.push_back("rank not checked (no rational 2-torsion point)");
    return out;
  }
  const Int& e = roots.front();
  const Curve shifted(3 * e + a2, 3 * e * e + 2 * a2 * e + a4, 0);
  const DescentReport r = descent_report(shifted, height);
  const std::string interval = "[" + std::to_string(r.rank_lower) + ", " + std::to_string(r.rank_upper) + "]";
  if (line.rank >= r.rank_lower && line.rank <= r.rank_upper) {
    out.messages.push_back("rank " + std::to_string(line.rank) + " in " + interval + " confirmed");
  } else {
    fail("rank " + std::to_string(line.rank) + " outside descent interval " + interval);
  }
  return out;
}

}  // namespace twodescent
