// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rbloch/bloch.hpp"
#include "rbloch/chebotarev.hpp"
#include "rbloch/chi_module.hpp"
#include "rbloch/errors.hpp"
#include "rbloch/gw.hpp"
#include "rbloch/smith.hpp"
#include "rbloch/specialize.hpp"

using namespace rbloch;

namespace {

// Pinned tolerances and budgets.
constexpr double kPreBlochBudgetS = 10.0;
constexpr double kGWBudgetS = 5.0;
constexpr double kSpecializeBudgetS = 120.0;
constexpr double kChebBudgetS = 5.0;
constexpr double kChebRelativeTolerance = 0.30;
constexpr std::uint64_t kChebBound = 100000;
constexpr std::size_t kRandomSmithCount = 500;
constexpr long kMaxBruteForceOrder = 200;
constexpr std::uint64_t kSpecializeSeed = 20240601;

const std::vector<std::uint64_t> kFieldOrders = {5, 7, 9, 11, 13, 25, 27};

struct Outcome {
  bool passed = true;
  std::string detail;
  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::string str(std::uint64_t q) { return std::to_string(q); }

Outcome pre_bloch_orders() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  for (auto q : kFieldOrders) {
    auto p = PreBloch::build(FiniteField::with_order(q));
    auto n = p.group().order();
    if (!n || *n != Int(static_cast<unsigned long>(q + 1)))
      o.fail("q=" + str(q) + ": " + p.group().describe());
  }
  double s = seconds_since(start);
  if (s >= kPreBlochBudgetS) o.fail("runtime " + fmt_seconds(s));
  if (o.passed) o.detail = "q in {5,7,9,11,13,25,27}, " + fmt_seconds(s);
  return o;
}

Outcome odd_localization() {
  Outcome o;
  for (auto q : kFieldOrders) {
    auto loc = localize_away_2(PreBloch::build(FiniteField::with_order(q)).group());
    Int expected = odd_part(Int(static_cast<unsigned long>(q + 1)));
    bool cyclic = loc.invariant_factors().size() <= 1 && loc.order() && *loc.order() == expected;
    if (!cyclic) o.fail("q=" + str(q) + ": " + loc.describe());
    auto pred = predicted_kernel(q);
    if (!pred.group.isomorphic(loc)) o.fail("q=" + str(q) + ": predicted " + pred.group.describe());
  }
  return o;
}

Outcome constant_element() {
  Outcome o;
  for (auto q : kFieldOrders) {
    auto k = FiniteField::with_order(q);
    auto p = PreBloch::build(k);
    auto c = p.constant_element();
    if (!p.group().is_zero(scale(6, c))) o.fail("q=" + str(q) + ": 6C != 0");
    for (auto x : k.nonzero_elements())
      if (x != k.one() && !p.group().equal(p.constant_element(x), c))
        o.fail("q=" + str(q) + ": C depends on x=" + k.to_string(x));
  }
  return o;
}

Outcome psi_laws() {
  Outcome o;
  for (auto q : kFieldOrders) {
    auto k = FiniteField::with_order(q);
    auto p = PreBloch::build(k);
    const auto& g = p.group();
    for (auto x : k.nonzero_elements()) {
      if (!g.is_zero(scale(2, p.psi(x)))) o.fail("q=" + str(q) + ": 2psi(" + k.to_string(x) + ") != 0");
      for (auto y : k.nonzero_elements())
        if (!g.equal(p.psi(k.mul(x, y)), add(p.psi(x), p.psi(y))))
          o.fail("q=" + str(q) + ": psi not additive at " + k.to_string(x) + ", " + k.to_string(y));
    }
  }
  return o;
}

Outcome gw_structure() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t q : {5, 7, 9, 13}) {
    auto gw = GWRing::of_field(FiniteField::with_order(q));
    const auto& g = gw.group();
    if (g.free_rank() != 1 || g.torsion_factors() != IntVector{2}) o.fail("q=" + str(q) + ": " + g.describe());
    auto rep = gw_consistency(gw);
    if (rep.checks.size() != 4) o.fail("q=" + str(q) + ": expected four identity families");
    for (const auto& c : rep.checks)
      if (!c.passed()) o.fail("q=" + str(q) + " " + c.name + ": " + c.witness);
  }
  double s = seconds_since(start);
  if (s >= kGWBudgetS) o.fail("runtime " + fmt_seconds(s));
  if (o.passed) o.detail = fmt_seconds(s);
  return o;
}

Outcome lambda_well_defined() {
  Outcome o;
  for (auto q : kFieldOrders) {
    auto k = FiniteField::with_order(q);
    auto rp = RefinedPreBloch::build(k);
    LambdaMap lam = [&] {
      try {
        return lambda_map(rp);
      } catch (const NotWellDefined& e) {
        o.fail("q=" + str(q) + ": " + e.what());
        throw;
      }
    }();
    auto rel = RefinedPreBloch::relation_matrix(k);
    const auto& target = lam.hom.target();
    for (std::size_t i = 0; i < rel.rows(); ++i)
      if (!target.is_zero(lam.hom.apply(rel.row(i)))) {
        o.fail("q=" + str(q) + ": relation row " + std::to_string(i));
        break;
      }
  }
  return o;
}

Outcome refined_bloch_kernel() {
  Outcome o;
  for (auto q : kFieldOrders) {
    auto b = refined_bloch(FiniteField::with_order(q));
    if (!b.bloch.is_finite()) o.fail("q=" + str(q) + ": B infinite");
    for (std::size_t i = 0; i < b.reduction_kernel.generator_count(); ++i) {
      auto x = b.reduction_kernel_inclusion.apply(b.reduction_kernel.generator(i));
      if (!b.bloch.is_zero(scale(4, x))) o.fail("q=" + str(q) + ": kernel element not killed by 4");
    }
    if (!localize_away_2(b.bloch).isomorphic(localize_away_2(b.reduced)))
      o.fail("q=" + str(q) + ": odd parts differ");
  }
  return o;
}

Outcome k2_cokernel() {
  Outcome o;
  for (std::uint64_t q : {5, 9, 13}) {
    auto seq = sym_square_and_k2(PreBloch::build(FiniteField::with_order(q)));
    if (!seq.cokernel.is_trivial()) o.fail("q=" + str(q) + ": cokernel " + seq.cokernel.describe());
  }
  return o;
}

Outcome specialization_suite() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  for (std::uint32_t q : {5u, 7u})
    for (auto phi : {Twist::Trivial, Twist::Parity}) {
      WdOptions opt;
      opt.q = q;
      opt.phi = phi;
      opt.relation_trials = 200;
      opt.psi_trials = 50;
      opt.equivariance_trials = 50;
      opt.seed = kSpecializeSeed;
      opt.max_place_degree = 2;
      auto rep = wd_suite(opt);
      checked += rep.relations_checked + rep.psi_checked + rep.equivariance_checked;
      if (!rep.passed())
        o.fail("q=" + std::to_string(q) + " phi=" + to_string(phi) + ": " + rep.violations.front());
    }
  double s = seconds_since(start);
  if (s >= kSpecializeBudgetS) o.fail("runtime " + fmt_seconds(s));
  if (o.passed) o.detail = std::to_string(checked) + " checks, " + fmt_seconds(s);
  return o;
}

Outcome steinberg_witness() {
  Outcome o;
  for (std::uint32_t q : {5u, 9u}) {
    auto w = cor_val_witness(q);
    bool odd_vals = w.valuation_pi_inverse % 2 != 0 && w.valuation_one_minus_pi_inverse % 2 != 0;
    bool signs = w.sign_pi_inverse == -1 && w.sign_one_minus_pi_inverse == -1 && w.scalar == 4;
    if (!odd_vals || !signs) o.fail("q=" + str(q) + ": sign pattern");
    if (!w.steinberg_is_4y || !w.steinberg_nonzero || !w.sixteen_y) o.fail("q=" + str(q) + ": 4y check");
    if (w.y_order <= 1 || w.y_order % 2 == 0) o.fail("q=" + str(q) + ": y of order " + w.y_order.get_str());
  }
  try {
    cor_val_witness(7);
    o.fail("q=7 produced a witness");
  } catch (const DomainError& e) {
    if (std::string(e.what()).find("no odd witness") == std::string::npos) o.fail(e.what());
  }
  return o;
}

// Odd divisibility chains d1 | d2 | ... of length <= 3 with entries in [3, 99].
void odd_chains(std::vector<IntVector>& out, IntVector& cur) {
  out.push_back(cur);
  if (cur.size() == 3) return;
  long last = cur.empty() ? 1 : cur.back().get_si();
  for (long d = last == 1 ? 3 : last; d <= 99; d += (last == 1 ? 2 : last)) {
    if (d % 2 == 0) continue;
    cur.emplace_back(d);
    odd_chains(out, cur);
    cur.pop_back();
  }
}

Outcome chi_modules() {
  Outcome o;
  std::vector<IntVector> chains;
  IntVector cur;
  odd_chains(chains, cur);
  std::size_t cases = 0;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t rank = 1; rank <= 3; ++rank) {
    auto v = SquareClassGroup::abstract(rank);
    GroupRing ring(v);
    for (std::uint32_t chi = 0; chi < v.size(); ++chi)
      for (const auto& inv : chains) {
        ChiModule m(v, chi, FPGroup::from_invariants(inv));
        for (std::size_t a = 1; a < v.size(); ++a)
          for (std::size_t b = 1; b < v.size(); ++b) {
            if (m.chi(a) != -1 || m.chi(b) != -1) continue;
            auto act = mchi_action(m, ring.mul(ring.pfister(a), ring.pfister(b)));
            ++cases;
            if (act.scalar != 4 || !act.bijective)
              o.fail("rank " + std::to_string(rank) + " chi " + std::to_string(chi) + " on " +
                     m.module().describe());
          }
      }
  }
  if (o.passed)
    o.detail = std::to_string(chains.size()) + " modules, " + std::to_string(cases) + " cases, " +
               fmt_seconds(seconds_since(start));
  return o;
}

Outcome chebotarev() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  if (chebotarev_search(3, 30).primes != std::vector<std::uint64_t>{2, 5, 11, 17, 23, 29}) o.fail("l=3 bound=30");
  std::ostringstream dev;
  for (std::uint64_t ell : {3, 5, 7}) {
    auto r = chebotarev_search(ell, kChebBound);
    if (!(r.relative_deviation <= kChebRelativeTolerance)) o.fail("l=" + str(ell) + " deviation " + std::to_string(r.relative_deviation));
    dev << " l=" << ell << ":" << r.relative_deviation;
  }
  double s = seconds_since(start);
  if (s >= kChebBudgetS) o.fail("runtime " + fmt_seconds(s));
  if (o.passed) o.detail = "deviations" + dev.str() + ", " + fmt_seconds(s);
  return o;
}

Outcome core_algebra() {
  Outcome o;
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> entry(-12, 12);
  for (std::size_t t = 0; t < kRandomSmithCount; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, entry(rng));
    auto s = smith_normal_form(m);
    if (!(s.u * m * s.v == s.d) || abs(determinant(s.u)) != 1 || abs(determinant(s.v)) != 1) {
      o.fail("SNF identity, matrix " + m.to_string());
      break;
    }
  }
  std::size_t groups = 0;
  for (std::size_t t = 0; groups < 200 && t < 5000; ++t) {
    std::size_t k = 1 + rng() % 2;
    long n = 2 + rng() % 13;
    std::vector<oracle::Vec> rows;
    for (std::size_t i = 0; i < k; ++i) {
      oracle::Vec row(k, 0);
      row[i] = n;
      rows.push_back(row);
    }
    for (std::size_t e = rng() % 3; e > 0; --e) {
      oracle::Vec row(k);
      for (auto& x : row) x = entry(rng);
      rows.push_back(row);
    }
    long expected = oracle::quotient_order(rows, n, k);
    if (expected > kMaxBruteForceOrder) continue;
    std::vector<IntVector> rel;
    for (const auto& row : rows) {
      IntVector v;
      for (long x : row) v.emplace_back(x);
      rel.push_back(std::move(v));
    }
    FPGroup g(std::vector<std::string>(k, "g"), IntMatrix::from_rows(rel, k));
    ++groups;
    if (!g.order() || *g.order() != expected) o.fail("order mismatch for " + g.relations().to_string());
  }
  if (o.passed) o.detail = std::to_string(kRandomSmithCount) + " SNFs, " + std::to_string(groups) + " groups";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pre-Bloch orders q+1", pre_bloch_orders},
      {"odd localization cyclic of order (q+1)'", odd_localization},
      {"constant element of order dividing 6", constant_element},
      {"psi laws", psi_laws},
      {"GW structure and identities", gw_structure},
      {"Lambda well-defined", lambda_well_defined},
      {"refined Bloch reduction kernel", refined_bloch_kernel},
      {"K2 cokernel trivial", k2_cokernel},
      {"specialization suite", specialization_suite},
      {"Steinberg obstruction witness", steinberg_witness},
      {"chi-module Steinberg action", chi_modules},
      {"Chebotarev density", chebotarev},
      {"core algebra properties", core_algebra},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  return failures ? 1 : 0;
}
