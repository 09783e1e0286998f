// Command-line front end: descent reports, family queries, table sweeps and
// Cremona-line verification.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twodescent/error.hpp"
#include "twodescent/families.hpp"
#include "twodescent/report_io.hpp"

using namespace twodescent;
using json = nlohmann::ordered_json;

namespace {

Int parse_int(const std::string& s, const std::string& what) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw DomainError("invalid integer for " + what + ": '" + s + "'");
  return v;
}

std::string set_str(const SelmerSet& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ", ") + it->str();
  return out + "}";
}

// Same convention as the report schema: strings beyond 2^53.
json int_json(const Int& v) {
  if (abs(v) <= (Int(1) << 53)) return json(v.get_si());
  return json(v.get_str());
}

json set_json(const SelmerSet& s) {
  json out = json::array();
  for (const SquareClass& c : s) out.push_back(int_json(c.rep()));
  return out;
}

json torsion_json(const TorsionGroup& T) {
  json gens = json::array();
  for (const Point& P : T.generators) gens.push_back({P.x().get_str(), P.y().get_str()});
  return {{"structure", T.invariants}, {"name", T.name()}, {"generators", gens}};
}

std::string torsion_text(const TorsionGroup& T) {
  std::string s = T.name();
  for (const Point& P : T.generators) s += " " + P.str();
  return s;
}

// D must be k-th-power-free; with --reduce it is reduced with a notice.
Int normal_form(const Int& D, unsigned k, bool reduce, const char* what) {
  if (is_power_free(D, k)) return D;
  if (!reduce) {
    throw DomainError("D = " + D.get_str() + " is not " + what + "-power-free (pass --reduce)");
  }
  auto [r, u] = reduce_power_free(D, k);
  std::cerr << "note: D = " << D << " reduced to " << r << " (removed " << u << "^" << k << ")\n";
  return r;
}

int cmd_descent(const std::string& a2, const std::string& a4, const std::string& a6, const std::string& height,
                bool as_json) {
  const Curve E(parse_int(a2, "--a2"), parse_int(a4, "--a4"), parse_int(a6, "--a6"));
  const Int H = parse_int(height, "--height");
  const auto t0 = std::chrono::steady_clock::now();
  const DescentReport r = descent_report(E, H);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (as_json) {
    std::cout << to_json(make_document(r, ms)) << "\n";
  } else {
    std::cout << render_text(r);
  }
  return exit_ok;
}

int cmd_family(const std::string& which, const std::string& param, const std::string& height, bool as_json,
               bool reduce) {
  const Int N = parse_int(param, "family parameter");
  const Int H = parse_int(height, "--height");
  json j;
  std::ostringstream text;
  if (which == "ep") {
    const auto [sel, sel_hat] = ep_selmer(N);
    const RankResult rank = ep_rank(N, H);
    const TorsionGroup T = torsion_subgroup(Curve(0, N, 0));
    j = {{"family", "ep"},
         {"p", int_json(N)},
         {"selmer_phi", set_json(sel)},
         {"selmer_phi_hat", set_json(sel_hat)},
         {"selmer_dims", {dim2(sel), dim2(sel_hat)}},
         {"rank_plus_sha_dim", ep_rank_sha_dim(N)},
         {"rank", {{"kind", kind_name(rank.kind)}, {"lo", rank.lo}, {"hi", rank.hi}, {"note", rank.note}}},
         {"torsion", torsion_json(T)}};
    text << "E_p: y^2 = x^3 + " << N << "x\n"
         << "Sel^(phi) = " << set_str(sel) << "  (dim " << dim2(sel) << ")\n"
         << "Sel^(phi') = " << set_str(sel_hat) << "  (dim " << dim2(sel_hat) << ")\n"
         << "rank + dim Sha[2] = " << ep_rank_sha_dim(N) << "\n"
         << "rank: " << kind_name(rank.kind) << " ";
    if (rank.lo == rank.hi) {
      text << rank.lo;
    } else {
      text << "[" << rank.lo << ", " << rank.hi << "]";
    }
    text << " (" << rank.note << ")\n"
         << "torsion: " << torsion_text(T) << "\n";
  } else if (which == "edx") {
    const Int D = normal_form(N, 4, reduce, "fourth");
    const TorsionGroup T = edx_torsion(D);
    const TorsionGroup direct = torsion_subgroup(Curve(0, D, 0));
    const bool agree = T.invariants == direct.invariants;
    j = {{"family", "edx"},
         {"D", int_json(D)},
         {"torsion", torsion_json(T)},
         {"torsion_engine_agrees", agree},
         {"rank_upper", edx_rank_upper(D)}};
    text << "E_D: y^2 = x^3 + " << D << "x\n"
         << "torsion: " << torsion_text(T) << (agree ? "  (engine agrees)" : "  (ENGINE DISAGREES)") << "\n"
         << "rank <= " << edx_rank_upper(D) << "\n";
    if (!agree) {
      std::cout << (as_json ? j.dump(2) + "\n" : text.str());
      return exit_mismatch;
    }
  } else if (which == "edconst") {
    const Int D = normal_form(N, 6, reduce, "sixth");
    const TorsionGroup T = edconst_torsion(D);
    const TorsionGroup direct = torsion_subgroup(Curve(0, 0, D));
    const bool agree = T.invariants == direct.invariants;
    j = {{"family", "edconst"}, {"D", int_json(D)}, {"torsion", torsion_json(T)}, {"torsion_engine_agrees", agree}};
    text << "y^2 = x^3 + " << D << "\n"
         << "torsion: " << torsion_text(T) << (agree ? "  (engine agrees)" : "  (ENGINE DISAGREES)") << "\n";
    Int c;
    if (mpz_root(c.get_mpz_t(), D.get_mpz_t(), 3) != 0) {
      const DescentReport r = descent_report(from_cubic_const(c), H);
      j["shifted_curve"] = {r.curve.a2().get_si(), r.curve.a4().get_si(), r.curve.a6().get_si()};
      j["rank_lower"] = r.rank_lower;
      j["rank_upper"] = r.rank_upper;
      text << "shifted model: " << r.curve.str() << "\n"
           << r.rank_lower << " <= rank <= " << r.rank_upper << "\n";
    }
    if (!agree) {
      std::cout << (as_json ? j.dump(2) + "\n" : text.str());
      return exit_mismatch;
    }
  } else {
    throw DomainError("unknown family '" + which + "' (expected ep, edx or edconst)");
  }
  std::cout << (as_json ? j.dump(2) + "\n" : text.str());
  return exit_ok;
}

TableOptions parse_filter(const std::string& filter) {
  TableOptions o;
  if (filter.empty()) return o;
  std::stringstream ss(filter);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("filter item must be key=value: '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "mod8") {
      Int m = parse_int(value, "mod8");
      if (m < 0 || m > 7) throw DomainError("mod8 must be in 0..7");
      o.mod8 = static_cast<int>(m.get_si());
    } else if (key == "quartic2") {
      if (value != "true" && value != "false") throw DomainError("quartic2 must be true or false");
      o.quartic2 = value == "true";
    } else {
      throw DomainError("unknown filter key '" + key + "'");
    }
  }
  return o;
}

int cmd_table(const std::string& family, const std::string& max, const std::string& filter, unsigned jobs,
              const std::string& height, const std::string& out, bool as_json) {
  if (family != "ep") throw DomainError("only the ep family has a table");
  TableOptions o = parse_filter(filter);
  o.jobs = jobs;
  o.height = parse_int(height, "--height");
  const std::vector<TableRow> rows = ep_table(parse_int(max, "--max"), o);
  const std::string doc = table_to_json(rows);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw DomainError("cannot write " + out);
    f << doc << "\n";
  }
  if (as_json) {
    std::cout << doc << "\n";
    return exit_ok;
  }
  for (const TableRow& r : rows) {
    std::cout << "p= " << r.p << "  sel=(" << r.sel_phi_dim << "," << r.sel_phi_hat_dim << ")  rank+sha="
              << r.rank_sha_dim << "  rank=";
    if (r.rank.lo == r.rank.hi) {
      std::cout << r.rank.lo;
    } else {
      std::cout << "[" << r.rank.lo << "," << r.rank.hi << "]";
    }
    std::cout << " " << kind_name(r.rank.kind) << "\n";
  }
  std::cout << rows.size() << " rows\n";
  return exit_ok;
}

int cmd_verify(const std::string& path, const std::string& height) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  const Int H = parse_int(height, "--height");
  std::string line;
  unsigned lineno = 0, lines = 0, ok = 0, mismatch = 0, skipped = 0, bad = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    ++lines;
    CremonaLine c;
    try {
      c = parse_cremona_line(line);
    } catch (const DomainError& e) {
      ++bad;
      std::cout << "line " << lineno << ": parse error: " << e.what() << "\n";
      continue;
    }
    const CremonaCheck r = verify_cremona(c, H);
    const char* label = r.status == CremonaCheck::Status::ok         ? "ok"
                        : r.status == CremonaCheck::Status::mismatch ? "MISMATCH"
                                                                     : "skipped";
    std::cout << "line " << lineno << ": " << label;
    for (const std::string& m : r.messages) std::cout << "; " << m;
    std::cout << "\n";
    if (r.status == CremonaCheck::Status::ok) ++ok;
    if (r.status == CremonaCheck::Status::mismatch) ++mismatch;
    if (r.status == CremonaCheck::Status::skipped) ++skipped;
  }
  std::cout << lines << " lines: " << ok << " ok, " << mismatch << " mismatch, " << skipped << " skipped, " << bad
            << " parse errors\n";
  if (mismatch > 0) return exit_mismatch;
  if (bad > 0) return exit_invalid;
  return exit_ok;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("TWODESCENT_JOBS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-isogeny descent for y^2 = x^3 + a x^2 + b x"};
  app.require_subcommand(1);

  std::string a2, a4, a6 = "0", height = "20";
  bool as_json = false;
  auto* descent = app.add_subcommand("descent", "Selmer groups and rank bounds for one curve");
  descent->add_option("--a2", a2, "coefficient of x^2")->required();
  descent->add_option("--a4", a4, "coefficient of x")->required();
  descent->add_option("--a6", a6, "constant term (must be 0)");
  descent->add_option("--height", height, "point search height");
  descent->add_flag("--json", as_json, "JSON output");

  std::string family, param;
  bool reduce = false;
  auto* fam = app.add_subcommand("family", "closed forms for ep P, edx D, edconst D");
  fam->add_option("family", family, "ep, edx or edconst")->required();
  fam->add_option("parameter", param, "p or D")->required();
  fam->add_option("--height", height, "point search height");
  fam->add_flag("--json", as_json, "JSON output");
  fam->add_flag("--reduce", reduce, "reduce D to its power-free normal form");

  std::string table_family, max, filter, out;
  unsigned jobs = default_jobs();
  auto* table = app.add_subcommand("table", "sweep the ep family over primes");
  table->add_option("family", table_family, "family (ep)")->required();
  table->add_option("--max", max, "largest p")->required();
  table->add_option("--filter", filter, "e.g. mod8=1,quartic2=true");
  table->add_option("--jobs", jobs, "worker threads (default TWODESCENT_JOBS or 1)");
  table->add_option("--height", height, "point search height");
  table->add_option("--out", out, "write the JSON array here");
  table->add_flag("--json", as_json, "print JSON instead of text rows");

  std::string file;
  auto* verify = app.add_subcommand("verify-cremona", "check Cremona allgens lines");
  verify->add_option("file", file, "input file")->required();
  verify->add_option("--height", height, "point search height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (*descent) return cmd_descent(a2, a4, a6, height, as_json);
    if (*fam) return cmd_family(family, param, height, as_json, reduce);
    if (*table) return cmd_table(table_family, max, filter, jobs, height, out, as_json);
    if (*verify) return cmd_verify(file, height);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_internal;
}
