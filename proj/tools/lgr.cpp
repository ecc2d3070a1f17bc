// lgr: batch front-end for the linkgrass engine.
//
// Every subcommand writes one report (JSON by default, CSV where a table
// form exists) to stdout or --out. Exit codes: 0 ok, 2 invalid input,
// 3 budget exceeded, 4 a verified property failed. Diagnostics go to stderr
// as a single JSON object.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "linkgrass/io.hpp"

using namespace linkgrass;

namespace {

constexpr int kOk = 0, kInvalid = 2, kBudget = 3, kViolation = 4;

struct Options {
  std::string chain_kind = "standard";
  std::string chain_file;
  std::size_t n = 2, d = 2, d1 = 1, r = 1, m = 0;
  std::int64_t s = 0, g = 0;
  u32 p = 2;
  u64 budget = Budget::kDefaultLimit;
  unsigned workers = 1;
  std::string format = "json";
  std::string out;
  std::string point, vy, vz, basis, points;
  std::vector<std::string> ram, alpha;
  std::size_t index = 0;
  std::optional<u64> seed;
};

struct Outcome {
  Json report;
  std::string csv;  ///< empty when the command has no table form
  int status = kOk;
};

std::string read_arg(const std::string& text) {
  if (text.empty() || text[0] != '@') return text;
  std::ifstream in(text.substr(1));
  if (!in) throw InvalidInput("cannot read " + text.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(read_arg(text));
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed JSON for ") + what + ": " + e.what());
  }
}

LinkedChain make_chain(const Options& o) {
  if (o.chain_kind == "standard") return make_standard_chain(o.n, o.d, o.d1, Fp::from_signed(o.s, checked_prime(o.p)), o.r);
  if (o.chain_kind == "section") return build_section_chain(o.d, o.p, o.r);
  if (o.chain_kind == "file") {
    if (o.chain_file.empty()) throw InvalidInput("--chain file needs --chain-file");
    return parse_json("@" + o.chain_file, "chain").get<LinkedChain>();
  }
  throw InvalidInput("unknown chain kind '" + o.chain_kind + "'");
}

/// Either {"spaces": [...]} or a list of levels, each a list of integer vectors.
ChainPoint parse_point(const std::string& text, const LinkedChain& c) {
  const Json j = parse_json(text, "point");
  if (j.is_object()) return j.get<ChainPoint>();
  ChainPoint pt;
  for (const auto& level : j) {
    std::vector<Vec> vs;
    for (const auto& v : level) vs.push_back(vec_from_ints(v.get<std::vector<std::int64_t>>(), c.p));
    pt.spaces.push_back(Subspace::span(vs, c.d, c.p));
  }
  return pt;
}

/// A list of coefficient lists (ascending degree), padded to degree m.
Subspace parse_poly_space(const std::string& text, std::size_t m, u32 p) {
  const Json j = parse_json(text, "polynomial basis");
  std::vector<Vec> vs;
  for (const auto& row : j) {
    auto coeffs = row.get<std::vector<std::int64_t>>();
    if (coeffs.size() > m + 1) throw InvalidInput("polynomial degree exceeds m");
    coeffs.resize(m + 1, 0);
    vs.push_back(vec_from_ints(coeffs, p));
  }
  return Subspace::span(vs, m + 1, p);
}

std::vector<LinePoint> parse_points(const std::string& text, u32 p) {
  if (text.empty()) return all_rational_points(p);
  std::vector<LinePoint> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf") {
      out.push_back(LinePoint::infinity());
      continue;
    }
    try {
      const auto v = std::stoul(tok);
      if (v >= p) throw InvalidInput("point " + tok + " is not in GF(p)");
      out.push_back(LinePoint::at(static_cast<u32>(v)));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad point '" + tok + "'");
    }
  }
  return out;
}

/// "Y:0:0,1" or "Z:inf:2": side, point, minimum ramification indices.
RamificationConstraint parse_ram(const std::string& text, u32 p) {
  const auto a = text.find(':'), b = text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos) throw InvalidInput("ramification constraint must be SIDE:POINT:ALPHAS");
  RamificationConstraint rc;
  const auto side = text.substr(0, a);
  if (side != "Y" && side != "Z") throw InvalidInput("constraint side must be Y or Z");
  rc.on_y = side == "Y";
  rc.point = parse_points(text.substr(a + 1, b - a - 1), p).at(0);
  std::stringstream ss(text.substr(b + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) rc.min_alpha.push_back(std::stoull(tok));
  return rc;
}

Json limit_series_json(const std::vector<LimitSeriesPoint>& pts) {
  Json a = Json::array();
  for (const auto& pt : pts) a.push_back(pt);
  return a;
}

/// A complement of V made of random vectors (seeded), for independence checks.
Subspace random_complement(const Subspace& v, std::mt19937_64& rng) {
  const u32 p = v.modulus();
  const std::size_t d = v.ambient_dim();
  std::vector<Vec> extra;
  Subspace cur = v;
  std::uniform_int_distribution<u32> digit(0, p - 1);
  while (cur.dim() < d) {
    Vec w(d, Fp::zero(p));
    for (auto& x : w) x = Fp(digit(rng), p);
    if (cur.contains(w)) continue;
    extra.push_back(w);
    cur = sum(cur, Subspace::span({w}, d, p));
  }
  return Subspace::span(extra, d, p);
}

void add_chain_options(CLI::App* sub, Options& o) {
  sub->add_option("--chain", o.chain_kind, "standard | section | file")->capture_default_str();
  sub->add_option("--chain-file", o.chain_file, "JSON chain (with --chain file)");
  sub->add_option("--n", o.n, "levels (standard)")->capture_default_str();
  sub->add_option("--d", o.d, "ambient dimension (standard) or degree (section)")->capture_default_str();
  sub->add_option("--d1", o.d1, "rank of f (standard, s = 0)")->capture_default_str();
  sub->add_option("--s", o.s, "scalar s (standard)")->capture_default_str();
  sub->add_option("--p", o.p, "prime")->capture_default_str();
  sub->add_option("--r", o.r, "subspace rank (standard) or series rank (section)")->capture_default_str();
}

void add_common(CLI::App* sub, Options& o, bool enumerates, bool csv) {
  sub->add_option("--out", o.out, "output file (default stdout)");
  if (csv)
    sub->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  if (enumerates) {
    sub->add_option("--budget", o.budget, "candidate subspaces examined, at most")->capture_default_str();
    sub->add_option("--workers", o.workers, "enumeration threads")->check(CLI::PositiveNumber)->capture_default_str();
  }
}

void emit(const Options& o, const Outcome& res) {
  const std::string text = (o.format == "csv" && !res.csv.empty()) ? res.csv : res.report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + o.out);
    f << text;
  }
}

int diagnose(const std::string& kind, const std::string& message, int status) {
  std::cerr << Json{{"error", kind}, {"message", message}, {"exit_code", status}}.dump() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linkgrass: linked Grassmannians and limit linear series over finite fields"};
  app.set_config("--config", "", "TOML config; command-line flags take precedence");
  app.require_subcommand(1);
  Options o;
  std::function<Outcome()> run;

  auto* validate = app.add_subcommand("validate-chain", "check the chain axioms");
  add_chain_options(validate, o);
  add_common(validate, o, false, false);
  validate->callback([&] {
    run = [&] {
      const auto rep = validate_chain(make_chain(o));
      return Outcome{rep, "", rep.valid() ? kOk : kViolation};
    };
  });

  auto* census_cmd = app.add_subcommand("census", "count points, exact points, signatures, tangent dimensions");
  add_chain_options(census_cmd, o);
  add_common(census_cmd, o, true, true);
  census_cmd->callback([&] {
    run = [&] {
      Budget b(o.budget);
      const auto rep = census(make_chain(o), b, o.workers);
      const bool ok = rep.rank_law_violations == 0 && rep.tangent_law_violations == 0;
      return Outcome{rep, census_csv(rep), ok ? kOk : kViolation};
    };
  });

  auto* tangent = app.add_subcommand("tangent", "tangent dimension at one point or at every point");
  add_chain_options(tangent, o);
  add_common(tangent, o, true, false);
  tangent->add_option("--point", o.point, "point JSON (or @file); all points if omitted");
  tangent->add_option("--seed", o.seed, "also solve with a seeded random complement");
  tangent->callback([&] {
    run = [&] {
      const auto c = make_chain(o);
      std::mt19937_64 rng(o.seed.value_or(0));
      int status = kOk;
      auto one = [&](const ChainPoint& pt) {
        if (!is_linked_point(c, pt)) throw InvalidPoint("point is not linked");
        Json row{{"point", pt}, {"tangent", tangent_dimension(c, pt)}, {"signature", signature(c, pt)}};
        if (o.seed) {
          std::vector<Subspace> comps;
          for (const auto& v : pt.spaces) comps.push_back(random_complement(v, rng));
          const auto alt = tangent_dimension(c, pt, &comps);
          row["tangent_random_complement"] = alt;
          if (alt != row["tangent"].get<std::size_t>()) status = kViolation;
        }
        return row;
      };
      Json rows = Json::array();
      if (!o.point.empty()) {
        rows.push_back(one(parse_point(o.point, c)));
      } else {
        Budget b(o.budget);
        for_each_point(c, b, [&](const ChainPoint& pt) {
          rows.push_back(one(pt));
          return true;
        });
      }
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"chain", c}, {"floor", grassmannian_dimension(c.d, c.r)},
                          {"points", rows}},
                     "", status};
    };
  });

  auto* comps = app.add_subcommand("components-n2", "component count of a two-step chain against exact signatures");
  comps->add_option("--d", o.d, "ambient dimension")->required();
  comps->add_option("--r", o.r, "subspace rank")->required();
  comps->add_option("--d1", o.d1, "rank of f")->required();
  comps->add_option("--p", o.p, "prime")->capture_default_str();
  add_common(comps, o, true, true);
  comps->callback([&] {
    run = [&] {
      Budget b(o.budget);
      const auto rep = components_n2(o.d, o.r, o.d1, checked_prime(o.p), b);
      return Outcome{rep, components_csv(rep), rep.match ? kOk : kViolation};
    };
  });

  auto* lls = app.add_subcommand("enum-lls", "enumerate limit linear series on the nodal model");
  lls->add_option("--d", o.d, "degree")->required();
  lls->add_option("--r", o.r, "series rank")->required();
  lls->add_option("--p", o.p, "prime")->capture_default_str();
  lls->add_option("--ram", o.ram, "constraint SIDE:POINT:ALPHAS, e.g. Y:0:2 (repeatable)")->allow_extra_args(false);
  add_common(lls, o, true, false);
  lls->callback([&] {
    run = [&] {
      const u32 p = checked_prime(o.p);
      std::vector<RamificationConstraint> rcs;
      for (const auto& t : o.ram) rcs.push_back(parse_ram(t, p));
      Budget b(o.budget);
      const auto pts = enumerate_limit_series(o.d, o.r, p, rcs, b);
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"d", o.d}, {"r", o.r}, {"p", p}, {"count", pts.size()},
                          {"points", limit_series_json(pts)}},
                     "", kOk};
    };
  });

  auto* fr = app.add_subcommand("fr-image", "compare the image of FR with the crude pairs");
  fr->add_option("--d", o.d, "degree")->required();
  fr->add_option("--r", o.r, "series rank")->required();
  fr->add_option("--p", o.p, "prime")->capture_default_str();
  add_common(fr, o, true, false);
  fr->callback([&] {
    run = [&] {
      Budget b(o.budget);
      const auto rep = fr_image_report(o.d, o.r, checked_prime(o.p), b);
      const bool ok = rep.sets_equal && rep.refined_unique && rep.reconstruct_matches && rep.lift_failures == 0;
      return Outcome{rep, "", ok ? kOk : kViolation};
    };
  });

  auto pair_options = [&](CLI::App* sub) {
    sub->add_option("--d", o.d, "degree")->required();
    sub->add_option("--p", o.p, "prime")->capture_default_str();
    sub->add_option("--vy", o.vy, "Y-aspect basis: JSON list of coefficient lists")->required();
    sub->add_option("--vz", o.vz, "Z-aspect basis: JSON list of coefficient lists")->required();
    add_common(sub, o, false, false);
  };
  auto parse_pair = [&] {
    const u32 p = checked_prime(o.p);
    return make_eh_pair(parse_poly_space(o.vy, o.d, p), parse_poly_space(o.vz, o.d, p));
  };

  auto* recon = app.add_subcommand("reconstruct", "the unique point over a refined pair");
  pair_options(recon);
  recon->callback([&] {
    run = [&] {
      const auto e = parse_pair();
      const auto pt = reconstruct_refined(e);
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"pair", e}, {"point", pt}}, "", kOk};
    };
  });

  auto* lift = app.add_subcommand("lift-crude", "a point over a crude pair");
  pair_options(lift);
  lift->callback([&] {
    run = [&] {
      const auto e = parse_pair();
      const auto pt = lift_crude(e);
      const bool round_trip = forgetful_FR(pt) == e;
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"pair", e}, {"point", pt}, {"round_trip", round_trip}},
                     "", round_trip ? kOk : kViolation};
    };
  });

  auto poly_options = [&](CLI::App* sub, bool csv) {
    sub->add_option("--basis", o.basis, "JSON list of coefficient lists")->required();
    sub->add_option("--m", o.m, "degree bound")->required();
    sub->add_option("--p", o.p, "prime")->capture_default_str();
    sub->add_option("--points", o.points, "comma list of points, e.g. 0,1,inf (default: all rational points)");
    add_common(sub, o, false, csv);
  };

  auto* plucker = app.add_subcommand("plucker", "Pluecker certificate for a space of polynomials");
  poly_options(plucker, false);
  plucker->add_option("--g", o.g, "genus")->capture_default_str();
  plucker->callback([&] {
    run = [&] {
      const u32 p = checked_prime(o.p);
      const auto cert = plucker_check(parse_poly_space(o.basis, o.m, p), o.g, parse_points(o.points, p));
      return Outcome{cert, "", cert.separable && !cert.within_bound ? kViolation : kOk};
    };
  });

  auto* vanish = app.add_subcommand("vanishing", "vanishing and ramification sequences");
  poly_options(vanish, true);
  vanish->callback([&] {
    run = [&] {
      const u32 p = checked_prime(o.p);
      const auto v = parse_poly_space(o.basis, o.m, p);
      std::vector<RamificationData> rows;
      for (const auto& pt : parse_points(o.points, p)) rows.push_back(vanishing_sequence(v, pt, o.m));
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"m", o.m}, {"p", p}, {"points", rows}},
                     vanishing_csv(rows), kOk};
    };
  });

  auto* rho_cmd = app.add_subcommand("rho", "Brill-Noether number");
  rho_cmd->add_option("--g", o.g, "genus")->required();
  rho_cmd->add_option("--r", o.r, "rank")->required();
  rho_cmd->add_option("--d", o.d, "degree")->required();
  rho_cmd->add_option("--alpha", o.alpha, "ramification sequence as JSON list (repeatable)")->allow_extra_args(false);
  add_common(rho_cmd, o, false, false);
  rho_cmd->callback([&] {
    run = [&] {
      std::vector<std::vector<std::int64_t>> alphas;
      for (const auto& a : o.alpha) alphas.push_back(parse_json(a, "alpha").get<std::vector<std::int64_t>>());
      const auto value = rho(o.g, static_cast<std::int64_t>(o.r), static_cast<std::int64_t>(o.d), alphas);
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"g", o.g}, {"r", o.r}, {"d", o.d}, {"alpha", alphas},
                          {"rho", value}},
                     "", kOk};
    };
  });

  auto* dual = app.add_subcommand("dual-probe", "node vanishing of the first-order family over GF(p)[e]");
  dual->add_option("--p", o.p, "prime")->capture_default_str();
  add_common(dual, o, false, false);
  dual->callback([&] {
    run = [&] {
      const auto rep = dual_probe(first_order_node_point(checked_prime(o.p)));
      return Outcome{rep, "", rep.linked && rep.d_minus_one_inequality ? kOk : kViolation};
    };
  });

  auto point_command = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    add_chain_options(sub, o);
    add_common(sub, o, false, false);
    sub->add_option("--point", o.point, "point JSON (or @file)")->required();
    return sub;
  };

  auto* dec = point_command("decompose", "block decomposition of one level of a point");
  dec->add_option("--index", o.index, "level")->capture_default_str();
  dec->callback([&] {
    run = [&] {
      const auto c = make_chain(o);
      return Outcome{decompose(c, parse_point(o.point, c), o.index), "", kOk};
    };
  });

  auto* ext = point_command("extend", "complete a point of a truncated chain");
  ext->callback([&] {
    run = [&] {
      const auto c = make_chain(o);
      const auto full = extend_truncation(c, parse_point(o.point, c));
      return Outcome{Json{{"schema_version", kSchemaVersion}, {"point", full}}, "", kOk};
    };
  });

  auto* exf = point_command("exactify", "two exact points specialising to a non-exact point");
  exf->callback([&] {
    run = [&] {
      const auto c = make_chain(o);
      const auto pt = parse_point(o.point, c);
      const auto [keep_f, keep_g] = exactify(c, pt);
      return Outcome{Json{{"schema_version", kSchemaVersion},
                          {"input", signature(c, pt)},
                          {"keep_f", {{"point", keep_f}, {"signature", signature(c, keep_f)}}},
                          {"keep_g", {{"point", keep_g}, {"signature", signature(c, keep_g)}}}},
                     "", kOk};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return diagnose("invalid-input", e.what(), kInvalid);
  }

  try {
    const auto res = run();
    emit(o, res);
    return res.status;
  } catch (const BudgetExceeded& e) {
    return diagnose(e.kind(), e.what(), kBudget);
  } catch (const Error& e) {
    return diagnose(e.kind(), e.what(), kInvalid);
  } catch (const Json::exception& e) {
    return diagnose("invalid-input", e.what(), kInvalid);
  } catch (const std::exception& e) {
    return diagnose("internal", e.what(), 1);
  }
}
