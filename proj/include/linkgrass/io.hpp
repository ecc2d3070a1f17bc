#pragma once

// JSON and CSV forms of every value and report. Requires nlohmann/json
// ("json.hpp") on the include path. Objects are key-sorted, so dumps are
// byte-for-byte deterministic.

#include <sstream>
#include <string>

#include "json.hpp"
#include "linkgrass.hpp"

namespace linkgrass {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {
inline Json ring_json(u32 p, bool dual) { return Json{{"p", p}, {"dual", dual}}; }
inline u32 json_prime(const Json& j) { return checked_prime(j.at("p").get<u64>()); }
inline Json vec_json(std::span<const Fp> v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x.value());
  return a;
}
inline Vec vec_from_json(const Json& j, u32 p) {
  Vec v;
  for (const auto& x : j) v.push_back(Fp::from_signed(x.get<std::int64_t>(), p));
  return v;
}
}  // namespace detail

// ---- matrices and subspaces ----

inline void to_json(Json& j, const FpMatrix& m) {
  Json entries = Json::array();
  for (auto x : m.entries()) entries.push_back(x.value());
  j = Json{{"ring", detail::ring_json(m.modulus(), false)}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline void to_json(Json& j, const DualMatrix& m) {
  Json entries = Json::array();
  for (auto x : m.entries()) entries.push_back(Json::array({x.constant().value(), x.nilpotent().value()}));
  j = Json{{"ring", detail::ring_json(m.modulus(), true)}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

template <Scalar R>
Matrix<R> matrix_from_json(const Json& j) {
  const u32 p = detail::json_prime(j.at("ring"));
  const bool dual = j.at("ring").at("dual").get<bool>();
  if (dual != std::is_same_v<R, Dual>) throw InvalidInput("matrix ring mismatch");
  const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
  const auto& e = j.at("entries");
  if (e.size() != rows * cols) throw ShapeError("matrix entry count does not match its shape");
  Matrix<R> m(rows, cols, p);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if constexpr (std::is_same_v<R, Dual>)
      m(k / cols, k % cols) = Dual(Fp::from_signed(e[k].at(0).get<std::int64_t>(), p),
                                   Fp::from_signed(e[k].at(1).get<std::int64_t>(), p));
    else
      m(k / cols, k % cols) = Fp::from_signed(e[k].get<std::int64_t>(), p);
  }
  return m;
}

inline void from_json(const Json& j, FpMatrix& m) { m = matrix_from_json<Fp>(j); }
inline void from_json(const Json& j, DualMatrix& m) { m = matrix_from_json<Dual>(j); }

inline void to_json(Json& j, const Subspace& s) {
  j = Json{{"ambient_dim", s.ambient_dim()}, {"rank", s.dim()}, {"basis", s.basis()}};
}

inline void from_json(const Json& j, Subspace& s) {
  const auto basis = j.at("basis").get<FpMatrix>();
  if (basis.cols() != j.at("ambient_dim").get<std::size_t>()) throw ShapeError("subspace basis width mismatch");
  s = Subspace::span(basis);
  if (s.dim() != j.at("rank").get<std::size_t>()) throw InvalidInput("subspace rank does not match its basis");
}

// ---- chains and points ----

inline void to_json(Json& j, const LinkedChain& c) {
  j = Json{{"n", c.n}, {"d", c.d}, {"r", c.r}, {"p", c.p}, {"s", c.s.value()}, {"f", c.f}, {"g", c.g}};
}

inline void from_json(const Json& j, LinkedChain& c) {
  const u32 p = detail::json_prime(j);
  c = LinkedChain(j.at("n").get<std::size_t>(), j.at("d").get<std::size_t>(), j.at("r").get<std::size_t>(),
                  j.at("f").get<std::vector<FpMatrix>>(), j.at("g").get<std::vector<FpMatrix>>(),
                  Fp::from_signed(j.at("s").get<std::int64_t>(), p));
}

inline void to_json(Json& j, const ChainPoint& pt) { j = Json{{"spaces", pt.spaces}}; }
inline void from_json(const Json& j, ChainPoint& pt) { pt.spaces = j.at("spaces").get<std::vector<Subspace>>(); }

inline void to_json(Json& j, const Violation& v) {
  j = Json{{"condition", v.condition}, {"index", v.index}, {"detail", v.detail}, {"witness", detail::vec_json(v.witness)}};
}

inline void to_json(Json& j, const ValidationReport& r) {
  j = Json{{"schema_version", kSchemaVersion}, {"valid", r.valid()}, {"violations", r.violations}};
}

inline void to_json(Json& j, const SignatureReport& s) {
  j = Json{{"f_ranks", s.f_ranks}, {"g_ranks", s.g_ranks}, {"exact", s.exact}};
}
inline void from_json(const Json& j, SignatureReport& s) {
  s.f_ranks = j.at("f_ranks").get<std::vector<std::size_t>>();
  s.g_ranks = j.at("g_ranks").get<std::vector<std::size_t>>();
  s.exact = j.at("exact").get<bool>();
}

inline void to_json(Json& j, const DecompositionReport& d) {
  j = Json{{"index", d.index},
           {"incoming", d.incoming},
           {"kernel_block", d.kernel_block},
           {"complement", d.complement},
           {"block_dim", d.block_dim()}};
}
inline void from_json(const Json& j, DecompositionReport& d) {
  d.index = j.at("index").get<std::size_t>();
  d.incoming = j.at("incoming").get<Subspace>();
  d.kernel_block = j.at("kernel_block").get<Subspace>();
  d.complement = j.at("complement").get<Subspace>();
}

namespace detail {
inline Json sig_table(const std::map<SignatureKey, u64>& t) {
  Json a = Json::array();
  for (const auto& [k, v] : t) a.push_back(Json::array({Json::array({k.first, k.second}), v}));
  return a;
}
inline std::map<SignatureKey, u64> sig_table_from(const Json& j) {
  std::map<SignatureKey, u64> t;
  for (const auto& row : j)
    t[{row.at(0).at(0).get<std::vector<std::size_t>>(), row.at(0).at(1).get<std::vector<std::size_t>>()}] =
        row.at(1).get<u64>();
  return t;
}
}  // namespace detail

inline void to_json(Json& j, const CensusReport& c) {
  Json hist = Json::array();
  for (const auto& [k, v] : c.tangent_histogram) hist.push_back(Json::array({k, v}));
  j = Json{{"schema_version", kSchemaVersion},
           {"chain", c.chain},
           {"q", c.q},
           {"points", c.points},
           {"exact", c.exact},
           {"signatures", detail::sig_table(c.signatures)},
           {"nonexact_signatures", detail::sig_table(c.nonexact_signatures)},
           {"tangent_histogram", hist},
           {"tangent_floor", grassmannian_dimension(c.chain.d, c.chain.r)},
           {"rank_law_violations", c.rank_law_violations},
           {"tangent_law_violations", c.tangent_law_violations}};
}

inline void from_json(const Json& j, CensusReport& c) {
  c.chain = j.at("chain").get<LinkedChain>();
  c.q = j.at("q").get<u32>();
  c.points = j.at("points").get<u64>();
  c.exact = j.at("exact").get<u64>();
  c.signatures = detail::sig_table_from(j.at("signatures"));
  c.nonexact_signatures = detail::sig_table_from(j.at("nonexact_signatures"));
  c.tangent_histogram.clear();
  for (const auto& row : j.at("tangent_histogram")) c.tangent_histogram[row.at(0).get<std::size_t>()] = row.at(1).get<u64>();
  c.rank_law_violations = j.at("rank_law_violations").get<u64>();
  c.tangent_law_violations = j.at("tangent_law_violations").get<u64>();
}

/// One row per signature: kind,f_ranks,g_ranks,count (ranks joined by ';').
inline std::string census_csv(const CensusReport& c) {
  std::ostringstream out;
  auto join = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + std::to_string(v[k]);
    return s;
  };
  out << "kind,f_ranks,g_ranks,count\n";
  for (const auto& [k, v] : c.signatures) out << "exact," << join(k.first) << ',' << join(k.second) << ',' << v << '\n';
  for (const auto& [k, v] : c.nonexact_signatures)
    out << "nonexact," << join(k.first) << ',' << join(k.second) << ',' << v << '\n';
  return out.str();
}

// ---- polynomials and ramification ----

inline void to_json(Json& j, const Poly& f) { j = detail::vec_json(f.coeffs()); }

inline void to_json(Json& j, const LinePoint& pt) { j = pt.label(); }
inline void from_json(const Json& j, LinePoint& pt) {
  const auto s = j.get<std::string>();
  pt = s == "inf" ? LinePoint::infinity() : LinePoint::at(static_cast<u32>(std::stoul(s)));
}

inline void to_json(Json& j, const RamificationData& r) {
  j = Json{{"point", r.point}, {"vanishing", r.vanishing}, {"ramification", r.ramification}, {"tame", r.tame}};
}
inline void from_json(const Json& j, RamificationData& r) {
  r.point = j.at("point").get<LinePoint>();
  r.vanishing = j.at("vanishing").get<std::vector<u64>>();
  r.ramification = j.at("ramification").get<std::vector<u64>>();
  r.tame = j.at("tame").get<bool>();
}

inline std::string vanishing_csv(const std::vector<RamificationData>& rows) {
  std::ostringstream out;
  out << "point,j,a_j,alpha_j,tame\n";
  for (const auto& r : rows)
    for (std::size_t j = 0; j < r.vanishing.size(); ++j)
      out << r.point.label() << ',' << j << ',' << r.vanishing[j] << ',' << r.ramification[j] << ','
          << (r.tame ? "true" : "false") << '\n';
  return out.str();
}

inline void to_json(Json& j, const PointCheck& pc) {
  j = Json{{"data", pc.data}, {"wronskian_order", pc.wronskian_order}};
}
inline void from_json(const Json& j, PointCheck& pc) {
  pc.data = j.at("data").get<RamificationData>();
  pc.wronskian_order = j.at("wronskian_order").get<u64>();
}

inline void to_json(Json& j, const PluckerCertificate& c) {
  j = Json{{"schema_version", kSchemaVersion},
           {"g", c.g},
           {"r", c.r},
           {"m", c.m},
           {"p", c.wronskian.modulus()},
           {"bound", c.bound},
           {"found_weight", c.found_weight},
           {"separable", c.separable},
           {"all_inspected_tame", c.all_inspected_tame},
           {"within_bound", c.within_bound},
           {"equality", c.equality},
           {"wronskian_splits", c.wronskian_splits},
           {"wronskian", c.wronskian},
           {"points", c.points}};
}
inline void from_json(const Json& j, PluckerCertificate& c) {
  const u32 p = checked_prime(j.at("p").get<u64>());
  c.g = j.at("g").get<std::int64_t>();
  c.r = j.at("r").get<std::size_t>();
  c.m = j.at("m").get<std::size_t>();
  c.bound = j.at("bound").get<std::int64_t>();
  c.found_weight = j.at("found_weight").get<u64>();
  c.separable = j.at("separable").get<bool>();
  c.all_inspected_tame = j.at("all_inspected_tame").get<bool>();
  c.within_bound = j.at("within_bound").get<bool>();
  c.equality = j.at("equality").get<bool>();
  c.wronskian_splits = j.at("wronskian_splits").get<bool>();
  c.wronskian = Poly(detail::vec_from_json(j.at("wronskian"), p), p);
  c.points = j.at("points").get<std::vector<PointCheck>>();
}

// ---- limit series ----

namespace detail {
/// Basis of a space of polynomials as coefficient lists.
inline Json poly_space_json(const Subspace& s) {
  Json a = Json::array();
  for (const auto& v : s.basis_vectors()) a.push_back(Poly(v, s.modulus()));
  return a;
}
inline Subspace poly_space_from(const Json& j, std::size_t d, u32 p) {
  std::vector<Vec> vs;
  for (const auto& row : j) {
    auto v = vec_from_json(row, p);
    if (v.size() > d + 1) throw InvalidInput("polynomial degree exceeds d");
    v.resize(d + 1, Fp::zero(p));
    vs.push_back(std::move(v));
  }
  return Subspace::span(vs, d + 1, p);
}
}  // namespace detail

inline void to_json(Json& j, const EHPair& e) {
  j = Json{{"d", e.d},
           {"r", e.r},
           {"p", e.vy.modulus()},
           {"vy", detail::poly_space_json(e.vy)},
           {"vz", detail::poly_space_json(e.vz)},
           {"ay", e.ay},
           {"az", e.az},
           {"crude", is_crude(e)},
           {"refined", is_refined(e)}};
}
inline void from_json(const Json& j, EHPair& e) {
  const auto d = j.at("d").get<std::size_t>();
  const u32 p = detail::json_prime(j);
  e = make_eh_pair(detail::poly_space_from(j.at("vy"), d, p), detail::poly_space_from(j.at("vz"), d, p));
}

/// Levels as lists of section pairs [a, b] (coefficient lists).
inline void to_json(Json& j, const LimitSeriesPoint& pt) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < pt.point.size(); ++i) {
    Json level = Json::array();
    for (const auto& v : pt.point[i].basis_vectors()) {
      const auto [a, b] = pt.model.decode(i, v);
      level.push_back(Json::array({a, b}));
    }
    levels.push_back(level);
  }
  j = Json{{"d", pt.model.d}, {"p", pt.model.p}, {"r", pt.r}, {"levels", levels}};
}
inline void from_json(const Json& j, LimitSeriesPoint& pt) {
  const NodalModel m(j.at("d").get<std::size_t>(), detail::json_prime(j));
  pt.model = m;
  pt.r = j.at("r").get<std::size_t>();
  pt.point.spaces.clear();
  const auto& levels = j.at("levels");
  if (levels.size() != m.d + 1) throw InvalidPoint("limit series point needs d + 1 levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::vector<Vec> vs;
    for (const auto& pair : levels[i])
      vs.push_back(m.encode(i, Poly(detail::vec_from_json(pair.at(0), m.p), m.p),
                            Poly(detail::vec_from_json(pair.at(1), m.p), m.p)));
    pt.point.spaces.push_back(Subspace::span(vs, m.dim(), m.p));
  }
}

inline void to_json(Json& j, const ImageReport& r) {
  j = Json{{"schema_version", kSchemaVersion},
           {"d", r.d},
           {"r", r.r},
           {"q", r.q},
           {"points", r.points},
           {"image_size", r.image_size},
           {"crude_size", r.crude_size},
           {"refined_size", r.refined_size},
           {"sets_equal", r.sets_equal},
           {"image_not_crude", r.image_not_crude},
           {"crude_not_image", r.crude_not_image},
           {"refined_unique", r.refined_unique},
           {"reconstruct_matches", r.reconstruct_matches},
           {"lift_failures", r.lift_failures},
           {"refined_nonexact", r.refined_nonexact},
           {"nonrefined_with_exact", r.nonrefined_with_exact},
           {"nonrefined_without_exact", r.nonrefined_without_exact}};
}
inline void from_json(const Json& j, ImageReport& r) {
  r.d = j.at("d").get<std::size_t>();
  r.r = j.at("r").get<std::size_t>();
  r.q = j.at("q").get<u32>();
  r.points = j.at("points").get<u64>();
  r.image_size = j.at("image_size").get<u64>();
  r.crude_size = j.at("crude_size").get<u64>();
  r.refined_size = j.at("refined_size").get<u64>();
  r.sets_equal = j.at("sets_equal").get<bool>();
  r.image_not_crude = j.at("image_not_crude").get<std::vector<EHPair>>();
  r.crude_not_image = j.at("crude_not_image").get<std::vector<EHPair>>();
  r.refined_unique = j.at("refined_unique").get<bool>();
  r.reconstruct_matches = j.at("reconstruct_matches").get<bool>();
  r.lift_failures = j.at("lift_failures").get<u64>();
  r.refined_nonexact = j.at("refined_nonexact").get<u64>();
  r.nonrefined_with_exact = j.at("nonrefined_with_exact").get<u64>();
  r.nonrefined_without_exact = j.at("nonrefined_without_exact").get<u64>();
}

inline bool operator==(const ImageReport& a, const ImageReport& b) { return Json(a) == Json(b); }

inline void to_json(Json& j, const DualProbeReport& r) {
  j = Json{{"schema_version", kSchemaVersion},
           {"p", r.p},
           {"d", r.d},
           {"linked", r.linked},
           {"ay", r.ay},
           {"az", r.az},
           {"ay_mod_epsilon", r.ay_mod},
           {"az_mod_epsilon", r.az_mod},
           {"d_inequality", r.d_inequality},
           {"d_minus_one_inequality", r.d_minus_one_inequality},
           {"closed_point_crude", r.closed_point_crude},
           {"closed_point_refined", r.closed_point_refined}};
}
inline void from_json(const Json& j, DualProbeReport& r) {
  r.p = j.at("p").get<u32>();
  r.d = j.at("d").get<std::size_t>();
  r.linked = j.at("linked").get<bool>();
  r.ay = j.at("ay").get<std::vector<u64>>();
  r.az = j.at("az").get<std::vector<u64>>();
  r.ay_mod = j.at("ay_mod_epsilon").get<std::vector<u64>>();
  r.az_mod = j.at("az_mod_epsilon").get<std::vector<u64>>();
  r.d_inequality = j.at("d_inequality").get<bool>();
  r.d_minus_one_inequality = j.at("d_minus_one_inequality").get<bool>();
  r.closed_point_crude = j.at("closed_point_crude").get<bool>();
  r.closed_point_refined = j.at("closed_point_refined").get<bool>();
}

inline void to_json(Json& j, const ComponentsReport& c) {
  j = Json{{"schema_version", kSchemaVersion},
           {"d", c.d},
           {"r", c.r},
           {"d1", c.d1},
           {"d2", c.d2},
           {"q", c.q},
           {"expected", c.expected},
           {"admissible", Json::array({c.admissible.first, c.admissible.second})},
           {"observed", c.observed_f_ranks.size()},
           {"observed_f_ranks", c.observed_f_ranks},
           {"match", c.match}};
}
inline void from_json(const Json& j, ComponentsReport& c) {
  c.d = j.at("d").get<std::size_t>();
  c.r = j.at("r").get<std::size_t>();
  c.d1 = j.at("d1").get<std::size_t>();
  c.d2 = j.at("d2").get<std::size_t>();
  c.q = j.at("q").get<u32>();
  c.expected = j.at("expected").get<std::size_t>();
  c.admissible = {j.at("admissible").at(0).get<std::size_t>(), j.at("admissible").at(1).get<std::size_t>()};
  c.observed_f_ranks = j.at("observed_f_ranks").get<std::vector<std::size_t>>();
  c.match = j.at("match").get<bool>();
}

inline std::string components_csv(const ComponentsReport& c) {
  std::ostringstream out;
  out << "d,r,d1,d2,q,expected,observed,match\n"
      << c.d << ',' << c.r << ',' << c.d1 << ',' << c.d2 << ',' << c.q << ',' << c.expected << ','
      << c.observed_f_ranks.size() << ',' << (c.match ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace linkgrass
