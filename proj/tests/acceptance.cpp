// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "linkgrass/linkgrass.hpp"

using namespace linkgrass;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

/// Chains at the exhaustive scale: standard chains with n <= 3 and ambient
/// dimension <= 3, plus section chains whose ambient dimension d + 1 <= 3.
std::vector<LinkedChain> small_chains(u32 p) {
  std::vector<LinkedChain> out;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t d = 2; d <= 3; ++d)
      for (std::size_t d1 = 1; d1 < d; ++d1)
        for (std::size_t r = 0; r <= d; ++r) out.push_back(make_standard_chain(n, d, d1, Fp::zero(p), r));
  for (std::size_t d = 1; d <= 2; ++d)
    for (std::size_t r = 0; r <= d; ++r) out.push_back(build_section_chain(d, p, r));
  return out;
}

std::string describe(const LinkedChain& c) {
  return "n=" + std::to_string(c.n) + " d=" + std::to_string(c.d) + " r=" + std::to_string(c.r);
}

Check crossing_census() {
  Check ch;
  const auto c = crossing_chain(2);
  ch.require(validate_chain(c).valid(), "chain invalid");
  Budget b;
  const auto pts = enumerate_points(c, b);
  ch.require(pts.size() == 5, "expected 5 points, got " + std::to_string(pts.size()));
  std::size_t nonexact = 0;
  for (const auto& pt : pts) {
    const bool exact = is_exact(c, pt);
    const auto tan = tangent_dimension(c, pt);
    if (!exact) {
      ++nonexact;
      ch.require(pt.spaces[0].contains(unit_vec(2, 1, 2)) && pt.spaces[1].contains(unit_vec(2, 0, 2)),
                 "the non-exact point is not the node");
    }
    ch.require(tan == (exact ? 1u : 2u), "tangent dimension " + std::to_string(tan));
  }
  ch.require(nonexact == 1, "expected one non-exact point");
  return ch;
}

Check gaussian_collapse() {
  Check ch;
  for (u32 q : {2u, 3u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t d = 1; d <= 4; ++d)
        for (std::size_t r = 0; r < d; ++r) {
          const auto c = make_standard_chain(n, d, 1, Fp::one(q), r);
          Budget b;
          const auto rep = census(c, b);
          ch.require(BigInt(rep.points) == gaussian_binomial(d, r, q),
                     describe(c) + " q=" + std::to_string(q) + ": count " + std::to_string(rep.points));
          ch.require(rep.exact == rep.points, describe(c) + ": non-exact point");
        }
  return ch;
}

Check component_law() {
  Check ch;
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t d1 = 1; d1 < d; ++d1)
      for (std::size_t r = 1; r < d; ++r) {
        Budget b;
        const auto rep = components_n2(d, r, d1, 2, b);
        ch.require(rep.match, "d=" + std::to_string(d) + " r=" + std::to_string(r) + " d1=" + std::to_string(d1));
      }
  return ch;
}

/// Visits every linked point of every small chain over GF(2).
void for_each_small_point(const std::function<void(const LinkedChain&, const ChainPoint&)>& fn) {
  for (const auto& c : small_chains(2)) {
    Budget b;
    for_each_point(c, b, [&](const ChainPoint& pt) {
      fn(c, pt);
      return true;
    });
  }
}

Check tangent_dichotomy() {
  Check ch;
  std::size_t exact = 0, nonexact = 0;
  for_each_small_point([&](const LinkedChain& c, const ChainPoint& pt) {
    const auto floor = grassmannian_dimension(c.d, c.r);
    const auto tan = tangent_dimension(c, pt);
    if (is_exact(c, pt)) {
      ++exact;
      ch.require(tan == floor, describe(c) + ": exact point with tangent " + std::to_string(tan));
    } else {
      ++nonexact;
      ch.require(tan > floor, describe(c) + ": non-exact point with tangent " + std::to_string(tan));
    }
  });
  ch.require(exact > 0 && nonexact > 0, "sweep found no points of one kind");
  return ch;
}

Check fr_image() {
  Check ch;
  for (auto [d, r, q] : std::vector<std::tuple<std::size_t, std::size_t, u32>>{
           {1, 0, 2}, {1, 0, 3}, {2, 0, 2}, {2, 0, 3}, {3, 1, 2}}) {
    Budget b;
    const auto rep = fr_image_report(d, r, q, b);
    const auto tag = "d=" + std::to_string(d) + " r=" + std::to_string(r) + " q=" + std::to_string(q) + ": ";
    ch.require(rep.sets_equal, tag + "image differs from crude pairs");
    ch.require(rep.refined_unique, tag + "refined pair with several preimages");
    ch.require(rep.reconstruct_matches, tag + "reconstruction differs from the preimage");
    ch.require(rep.lift_failures == 0, tag + std::to_string(rep.lift_failures) + " lift failures");
  }
  return ch;
}

Check dual_probe_check() {
  Check ch;
  for (u32 p : {2u, 3u, 5u}) {
    const auto rep = dual_probe(first_order_node_point(p));
    const auto tag = "p=" + std::to_string(p) + ": ";
    ch.require(rep.linked, tag + "not linked");
    ch.require(rep.ay == std::vector<u64>{1} && rep.az == std::vector<u64>{0}, tag + "family sequences");
    ch.require(rep.ay_mod == std::vector<u64>{2} && rep.az_mod == std::vector<u64>{1}, tag + "closed-point sequences");
    ch.require(!rep.d_inequality && rep.d_minus_one_inequality, tag + "inequalities");
  }
  return ch;
}

Check plucker_suite() {
  Check ch;
  for (u32 p : {2u, 3u, 5u})
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t r = 0; r <= std::min<std::size_t>(1, m); ++r) {
        Budget b;
        for_each_subspace(m + 1, r + 1, p, b, [&](const Subspace& v) {
          const auto cert = plucker_check(v);
          const auto limit = static_cast<std::int64_t>((r + 1) * m) - static_cast<std::int64_t>(r * (r + 1));
          if (cert.separable)
            ch.require(static_cast<std::int64_t>(cert.found_weight) <= limit,
                       "p=" + std::to_string(p) + " m=" + std::to_string(m) + ": weight above bound");
          return true;
        });
      }
  for (u32 p : {2u, 3u, 5u}) {
    const auto v = Subspace::span({vec_from_ints({1, 0, 0}, p), vec_from_ints({0, 0, 1}, p)}, 3, p);
    const auto cert = plucker_check(v);
    if (p == 2) {
      ch.require(!cert.separable, "span{1, y^2} separable at p = 2");
    } else {
      ch.require(cert.separable && cert.bound == 2 && cert.found_weight == 2 && cert.equality,
                 "span{1, y^2} at p=" + std::to_string(p) + ": no equality");
      ch.require(cert.all_inspected_tame, "span{1, y^2} at p=" + std::to_string(p) + ": wild point");
    }
  }
  return ch;
}

Check truncation_lifting() {
  Check ch;
  for (const auto& c : small_chains(2))
    for (std::size_t k = 1; k < c.n; ++k) {
      Budget b;
      for_each_point(c.truncated(k), b, [&](const ChainPoint& pt) {
        const auto full = extend_truncation(c, pt);
        ch.require(is_linked_point(c, full) && full.truncated(k) == pt, describe(c) + ": bad extension");
        ch.require(extend_truncation(c, pt) == full, describe(c) + ": extension not deterministic");
        return true;
      });
    }
  return ch;
}

Check exactify_check() {
  Check ch;
  std::size_t seen = 0;
  for_each_small_point([&](const LinkedChain& c, const ChainPoint& pt) {
    const auto sig = signature(c, pt);
    if (sig.exact) return;
    ++seen;
    const auto [keep_f, keep_g] = exactify(c, pt);
    const auto sf = signature(c, keep_f), sg = signature(c, keep_g);
    ch.require(is_linked_point(c, keep_f) && is_linked_point(c, keep_g), describe(c) + ": output not linked");
    ch.require(sf.exact && sg.exact, describe(c) + ": output not exact");
    ch.require(sf.f_ranks == sig.f_ranks, describe(c) + ": f-ranks not preserved");
    ch.require(sg.g_ranks == sig.g_ranks, describe(c) + ": g-ranks not preserved");
    ch.require(sf != sg, describe(c) + ": outputs share a signature");
  });
  ch.require(seen > 0, "no non-exact points at this scale");
  return ch;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"crossing-chain census", crossing_census},
      {"invertible-s Gaussian collapse", gaussian_collapse},
      {"two-step component law", component_law},
      {"tangent dichotomy", tangent_dichotomy},
      {"FR image and reconstruction", fr_image},
      {"dual-number node probe", dual_probe_check},
      {"Pluecker bound and equality case", plucker_suite},
      {"truncation lifting", truncation_lifting},
      {"exactify signatures", exactify_check},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Check ch;
    try {
      ch = criteria[k].second();
    } catch (const std::exception& e) {
      ch.ok = false;
      ch.why << "exception: " << e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (ch.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " (" << ms
              << " ms)";
    if (!ch.ok) std::cout << " -- " << ch.why.str();
    std::cout << "\n";
    all = all && ch.ok;
  }
  return all ? 0 : 1;
}
