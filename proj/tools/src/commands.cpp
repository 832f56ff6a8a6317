#include "rbloch_cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "rbloch/bloch.hpp"
#include "rbloch/chebotarev.hpp"
#include "rbloch/chi_module.hpp"
#include "rbloch/errors.hpp"
#include "rbloch/expression.hpp"
#include "rbloch/formal.hpp"
#include "rbloch/gw.hpp"
#include "rbloch/smith.hpp"
#include "rbloch/specialize.hpp"
#include "rbloch_cli/cache.hpp"
#include "rbloch_cli/report.hpp"

namespace rbloch::cli {

namespace {

// Input the user got wrong; exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

Json describe(const FPGroup& g) {
  Json j;
  j["description"] = g.describe();
  j["invariant_factors"] = to_json(g.invariant_factors());
  auto order = g.order();
  j["order"] = order ? to_json(*order) : Json("infinite");
  return j;
}

std::string show(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string field_key(const FiniteField& f, const std::string& what) {
  return what + "-p" + std::to_string(f.characteristic()) + "-f" + std::to_string(f.degree());
}

FiniteField field_for(std::uint64_t q) {
  try {
    return FiniteField::with_order(q);
  } catch (const UnsupportedField& e) {
    throw InputError(e.what());
  }
}

// Presentations shared by the sections of one invocation.
struct Workspace {
  PresentationCache cache;

  PreBloch pre_bloch(const FiniteField& f) {
    return PreBloch::from_group(
        f, cache.fetch(field_key(f, "pb"), PreBloch::generator_labels(f), PreBloch::relation_matrix(f)));
  }
  RefinedPreBloch refined(const FiniteField& f) {
    return RefinedPreBloch::from_group(f, cache.fetch(field_key(f, "rpb"), RefinedPreBloch::generator_labels(f),
                                                      RefinedPreBloch::relation_matrix(f)));
  }
};

Json pb_section(Workspace& ws, const FiniteField& f, Report& r, const std::string& tag) {
  PreBloch p = ws.pre_bloch(f);
  FPGroup odd = localize_away_2(p.group());
  Int expected = Int(f.order()) + 1;
  Int odd_expected = odd_part(expected);
  Json j;
  j["q"] = f.order();
  j["field"] = f.name();
  j["generators"] = p.group().generator_count();
  j["relations"] = p.group().relations().rows();
  j["group"] = describe(p.group());
  j["odd_part"] = describe(odd);
  auto order = p.group().order();
  r.check(tag + "pb order = q+1", order && *order == expected,
          "order " + (order ? order->get_str() : std::string("infinite")) + ", expected " + expected.get_str());
  bool cyclic = odd.invariant_factors().size() <= 1 && odd.order() && *odd.order() == odd_expected;
  r.check(tag + "pb[1/2] cyclic of order (q+1)'", cyclic, odd.describe() + ", expected Z/" + odd_expected.get_str());
  return j;
}

Json rpb_section(Workspace& ws, const FiniteField& f, Report& r, const std::string& tag) {
  RefinedPreBloch rp = ws.refined(f);
  PreBloch p = ws.pre_bloch(f);
  FPGroup co = rp.coinvariants();
  Json j;
  j["q"] = f.order();
  j["generators"] = rp.group().generator_count();
  j["relations"] = rp.group().relations().rows();
  j["group"] = describe(rp.group());
  j["coinvariants"] = describe(co);
  r.check(tag + "rpb coinvariants = P", co.isomorphic(p.group()), co.describe() + " vs " + p.group().describe());

  std::size_t bad = rp.group().relations().rows();
  for (std::size_t i = 0; i < rp.group().relations().rows(); ++i)
    if (!rp.group().is_zero(rp.group().relations().row(i))) {
      bad = i;
      break;
    }
  r.check(tag + "rpb translated relations vanish", bad == rp.group().relations().rows(),
          bad == rp.group().relations().rows() ? "" : "relation row " + std::to_string(bad));
  try {
    FPHom n = rp.action(1);
    FPHom nn = n.then(n);
    bool involution = true;
    for (std::size_t i = 0; i < rp.group().generator_count() && involution; ++i)
      involution = rp.group().equal(nn.apply(rp.group().generator(i)), rp.group().generator(i));
    r.check(tag + "rpb <n> acts as an involution", involution);
  } catch (const NotWellDefined& e) {
    r.check(tag + "rpb <n> acts as an involution", false, e.what());
  }
  return j;
}

Json gw_section(const FiniteField& f, Report& r, const std::string& tag) {
  GWRing gw = GWRing::of_field(f);
  const GroupRing& ring = gw.ring();
  Json j;
  j["q"] = f.order();
  j["group"] = describe(gw.group());
  j["generators"] = gw.group().labels();
  Json table = Json::array();
  for (const auto& row : gw.multiplication_table()) {
    Json jr = Json::array();
    for (std::size_t k : row) jr.push_back(ring.group().label(k));
    table.push_back(std::move(jr));
  }
  j["multiplication_table"] = std::move(table);
  Json dims = Json::array();
  for (std::size_t v = 0; v < ring.dimension(); ++v) dims.push_back(to_json(gw.dim(ring.basis(v))));
  j["dim"] = std::move(dims);
  Json gens = Json::array();
  for (const auto& g : gw.steinberg_generators()) gens.push_back(ring.to_string(g));
  j["steinberg_generators"] = std::move(gens);

  GWConsistencyReport rep = gw_consistency(gw);
  Json flags = Json::object();
  for (const auto& c : rep.checks) {
    flags[c.name] = c.passed();
    r.check(tag + "gw identity " + c.name + " (" + std::to_string(c.checked) + " cases)", c.passed(), c.witness);
  }
  j["consistency"] = std::move(flags);
  IdealLattice i2 = IdealLattice::augmentation(ring).power(2);
  r.check(tag + "gw J in I^2", i2.contains(gw.ideal()));
  bool aug = true;
  for (const auto& g : gw.steinberg_generators()) aug = aug && ring.augmentation(g) == 0;
  r.check(tag + "gw dim kills J", aug);
  return j;
}

Json bloch_section(Workspace& ws, const FiniteField& f, Report& r, const std::string& tag) {
  PreBloch p = ws.pre_bloch(f);
  const FPGroup& pg = p.group();
  TildeQuotient pt = quotient_tilde(p);
  RefinedPreBloch rp = ws.refined(f);
  TildeQuotient rpt = quotient_tilde(rp);
  auto units = f.nonzero_elements();
  Json j;
  j["q"] = f.order();
  j["pre_bloch"] = describe(pg);
  j["pre_bloch_tilde"] = describe(pt.group);
  j["refined_pre_bloch"] = describe(rp.group());
  j["refined_pre_bloch_tilde"] = describe(rpt.group);

  IntVector c = p.constant_element();
  j["constant"] = {{"normal_form", to_json(pg.normal_form(c))}, {"order", to_json(*pg.element_order(c))}};
  r.check(tag + "6C = 0", pg.is_zero(scale(6, c)));
  std::string moved;
  for (FFElement x : units)
    if (x != f.one() && !pg.equal(p.constant_element(x), c)) {
      moved = "x=" + f.to_string(x);
      break;
    }
  r.check(tag + "C independent of x", moved.empty(), moved);

  std::string bad2, badmul, badtilde;
  for (FFElement x : units) {
    if (bad2.empty() && !pg.is_zero(scale(2, p.psi(x)))) bad2 = "x=" + f.to_string(x);
    if (badtilde.empty() && !pt.group.is_zero(pt.projection.apply(p.psi(x)))) badtilde = "x=" + f.to_string(x);
    for (FFElement y : units)
      if (badmul.empty() && !pg.equal(p.psi(f.mul(x, y)), add(p.psi(x), p.psi(y))))
        badmul = "x=" + f.to_string(x) + ", y=" + f.to_string(y);
  }
  r.check(tag + "2 psi(x) = 0", bad2.empty(), bad2);
  r.check(tag + "psi(xy) = psi(x) + psi(y)", badmul.empty(), badmul);
  r.check(tag + "psi vanishes in P~", badtilde.empty(), badtilde);
  FPGroup odd_p = localize_away_2(pg), odd_pt = localize_away_2(pt.group);
  r.check(tag + "P[1/2] = P~[1/2]", odd_p.isomorphic(odd_pt), odd_p.describe() + " vs " + odd_pt.describe());

  K2Sequence k2 = sym_square_and_k2(p);
  j["sym_square"] = describe(k2.s2.group);
  j["k2_cokernel"] = describe(k2.cokernel);
  r.check(tag + "coker(P -> S2) = 0", k2.cokernel.is_trivial(), k2.cokernel.describe());

  std::optional<LambdaMap> lam;
  try {
    lam = lambda_map(rp);
    r.check(tag + "Lambda kills every refined relation", true);
  } catch (const NotWellDefined& e) {
    r.check(tag + "Lambda kills every refined relation", false,
            "relation row " + std::to_string(e.relation_index()) + ": " + e.what());
    return j;
  }
  const FPGroup& cod = lam->hom.target();
  std::string noneq;
  for (std::size_t i = 0; i < rp.group().generator_count() && noneq.empty(); ++i) {
    IntVector g = rp.group().generator(i);
    for (std::size_t v = 0; v < rp.ring().dimension(); ++v)
      if (!cod.equal(lam->hom.apply(rp.act(v, g)), lam->act_on_codomain(v, lam->hom.apply(g))))
        noneq = rp.group().labels()[i] + " under " + rp.ring().group().label(v);
  }
  r.check(tag + "Lambda is V-equivariant", noneq.empty(), noneq);
  j["lambda_codomain"] = describe(cod);

  RefinedBloch rb = refined_bloch(*lam, rpt);
  j["bloch"] = describe(rb.bloch);
  j["bloch_tilde"] = describe(rb.reduced);
  j["reduction_kernel"] = describe(rb.reduction_kernel);
  r.check(tag + "B finite", rb.bloch.is_finite(), rb.bloch.describe());
  r.check(tag + "4 kills ker(B -> RB~)", rb.kernel_killed_by_4, rb.reduction_kernel.describe());
  r.check(tag + "B[1/2] = RB~[1/2]", rb.odd_parts_isomorphic,
          rb.bloch.describe() + " vs " + rb.reduced.describe());
  return j;
}

Json predict_section(Workspace& ws, std::uint64_t q, Report& r, const std::string& tag) {
  KernelPrediction k;
  try {
    k = predicted_kernel(q);
  } catch (const UnsupportedField& e) {
    throw InputError(e.what());
  }
  Json j;
  j["q"] = k.q;
  j["order"] = to_json(k.order);
  j["group"] = k.group.describe();
  if (k.q <= 243) {
    PreBloch p = ws.pre_bloch(FiniteField::with_order(q));
    bool ok = cross_validate(k, p);
    j["cross_check"] = ok ? "pass" : "fail";
    r.check(tag + "predicted kernel = P[1/2]", ok, localize_away_2(p.group()).describe() + " vs " + k.group.describe());
  } else {
    j["cross_check"] = "skipped";
  }
  return j;
}

Json corval_section(std::uint32_t q, Report& r, const std::string& tag) {
  Json j;
  j["q"] = q;
  try {
    CorValWitness w = cor_val_witness(q);
    j["odd_order"] = to_json(w.odd_order);
    j["residue_field"] = w.residue_field;
    j["xi"] = w.xi;
    j["y"] = to_json(w.y);
    j["y_order"] = to_json(w.y_order);
    j["valuations"] = {w.valuation_pi_inverse, w.valuation_one_minus_pi_inverse};
    j["signs"] = {w.sign_pi_inverse, w.sign_one_minus_pi_inverse};
    j["scalar"] = to_json(w.scalar);
    j["steinberg_value"] = to_json(w.steinberg_value);
    r.check(tag + "corval valuations odd",
            w.valuation_pi_inverse % 2 != 0 && w.valuation_one_minus_pi_inverse % 2 != 0);
    r.check(tag + "corval Steinberg image = 4y", w.steinberg_is_4y);
    r.check(tag + "corval 4y != 0", w.steinberg_nonzero, "y = " + show(w.y));
    r.check(tag + "corval (-2)(-2)4y = 16y", w.sixteen_y);
  } catch (const DomainError& e) {
    bool expected = odd_part(Int(q) + 1) == 1;
    j["witness"] = nullptr;
    j["reason"] = e.what();
    r.check(tag + "corval reports no odd witness", expected, expected ? "" : e.what());
  }
  return j;
}

Json wd_section(const Specializer& sp, WdOptions o, Report& r, const std::string& tag) {
  WdReport w = wd_suite(sp, o);
  Json j;
  j["q"] = o.q;
  j["phi"] = to_string(o.phi);
  j["seed"] = o.seed;
  j["max_place_degree"] = o.max_place_degree;
  j["relations"] = w.relations_checked;
  j["psi1"] = w.psi_checked;
  j["equivariance"] = w.equivariance_checked;
  j["violations"] = w.violations;
  r.check(tag + "S_phi suite phi=" + to_string(o.phi) + " (" +
              std::to_string(w.relations_checked + w.psi_checked + w.equivariance_checked) + " cases)",
          w.passed(), w.violations.empty() ? "" : w.violations.front());
  return j;
}

Json core_section(std::uint64_t seed, Report& r) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-10, 10);
  std::uniform_int_distribution<std::size_t> dim(0, 6);
  std::size_t trials = 100, bad = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = dim(rng), n = dim(rng);
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k) a.set(i, k, entry(rng));
    SmithForm s = smith_normal_form(a);
    bool ok = s.u * a * s.v == s.d && abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1;
    std::size_t diag = std::min(m, n);
    for (std::size_t i = 0; i + 1 < diag && ok; ++i) {
      Int x = s.d.at(i, i), y = s.d.at(i + 1, i + 1);
      ok = x >= 0 && (x == 0 ? y == 0 : y % x == 0);
    }
    if (!ok) ++bad;
  }
  r.check("core: Smith identities on random matrices", bad == 0, std::to_string(bad) + " failures");
  return {{"smith_trials", trials}, {"seed", seed}};
}

Json mchi_section(Report& r) {
  std::size_t cases = 0;
  std::string bad;
  std::vector<IntVector> modules = {{3}, {5}, {3, 15}, {9, 45}, {3, 3, 3}};
  for (std::size_t rank = 1; rank <= 2; ++rank) {
    SquareClassGroup v = SquareClassGroup::abstract(rank);
    GroupRing ring(v);
    for (std::uint32_t chi = 0; chi < v.size(); ++chi)
      for (const auto& mod : modules) {
        ChiModule m(v, chi, FPGroup::from_invariants(mod));
        for (std::size_t a = 1; a < v.size(); ++a)
          for (std::size_t b = 1; b < v.size(); ++b) {
            if (m.chi(a) != -1 || m.chi(b) != -1) continue;
            ChiAction act = mchi_action(m, ring.mul(ring.pfister(a), ring.pfister(b)));
            ++cases;
            if (bad.empty() && (act.scalar != 4 || !act.bijective))
              bad = "rank " + std::to_string(rank) + " chi " + std::to_string(chi) + " " + m.module().describe();
          }
      }
  }
  r.check("mchi: Steinberg elements act as 4, bijectively", bad.empty(), bad);
  return {{"cases", cases}};
}

Json cheb_section(std::uint64_t ell, std::uint64_t bound, Report& r, bool list_primes) {
  ChebotarevReport c;
  try {
    c = chebotarev_search(ell, bound);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  Json j;
  j["ell"] = c.ell;
  j["bound"] = c.bound;
  j["count"] = c.primes.size();
  j["prime_count"] = c.prime_count;
  j["density"] = c.density;
  j["expected"] = c.expected;
  j["relative_deviation"] = c.relative_deviation;
  if (list_primes) j["primes"] = c.primes;
  if (bound >= 10000)
    r.check("cheb l=" + std::to_string(ell) + " density within 30% of 1/(l-1)", c.relative_deviation <= 0.30,
            std::to_string(c.density) + " vs " + std::to_string(c.expected));
  return j;
}

// specialize input files.
struct SpecializeInput {
  RationalFunctionField field;
  Twist phi = Twist::Parity;
  std::vector<ValuedPlace> places;
  std::vector<std::pair<std::string, FunctionFormal>> elements;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool starts_with_word(const std::string& line, const std::string& word) {
  return line.rfind(word, 0) == 0 && (line.size() == word.size() || std::isspace(static_cast<unsigned char>(line[word.size()])));
}

SpecializeInput read_specialize_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read '" + path + "'");
  std::optional<SpecializeInput> in;
  std::vector<std::string> place_specs;
  std::size_t place_line = 0;
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) { throw InputError(path + ":" + std::to_string(lineno) + ": " + msg); };
  try {
    while (std::getline(f, raw)) {
      ++lineno;
      std::string line = trim(raw.substr(0, raw.find('#')));
      if (line.empty()) continue;
      if (!in) {
        FieldHeader h = parse_field_header(line);
        if (!h.rational_function_field) fail("specialize needs a rational function field header, e.g. 'field F5(t)'");
        in.emplace(SpecializeInput{RationalFunctionField(h.field), Twist::Parity, {}, {}});
        continue;
      }
      if (starts_with_word(line, "phi")) {
        in->phi = parse_twist(trim(line.substr(3)));
      } else if (starts_with_word(line, "places")) {
        std::stringstream ss(line.substr(6));
        std::string item;
        while (std::getline(ss, item, ',')) place_specs.push_back(trim(item));
        place_line = lineno;
      } else {
        FunctionDomain d(in->field);
        in->elements.push_back({line, parse_formal(d, line)});
      }
    }
    if (!in) fail("missing field header");
    lineno = place_line;
    if (place_specs.empty()) place_specs.push_back("all<=1");
    for (const auto& spec : place_specs) {
      if (spec.rfind("all<=", 0) == 0) {
        int d = std::stoi(spec.substr(5));
        if (d < 1 || d > 4) fail("place degree bound must be between 1 and 4");
        for (auto& p : places_up_to(in->field, static_cast<std::size_t>(d))) in->places.push_back(std::move(p));
      } else if (spec == "inf") {
        in->places.push_back(ValuedPlace::infinite(in->field));
      } else {
        auto e = parse_function_element(in->field, spec);
        if (e.den.degree() != 0) fail("place '" + spec + "' is not a polynomial");
        try {
          in->places.push_back(ValuedPlace::finite(in->field, e.num));
        } catch (const DomainError& err) {
          fail("place '" + spec + "': " + err.what());
        }
      }
    }
    std::vector<ValuedPlace> distinct;
    for (auto& p : in->places) {
      bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const ValuedPlace& d) { return d.name() == p.name(); });
      if (!seen) distinct.push_back(std::move(p));
    }
    in->places = std::move(distinct);
  } catch (const ParseError& e) {
    fail(e.what());
  } catch (const UnsupportedField& e) {
    fail(e.what());
  } catch (const std::invalid_argument&) {
    fail("malformed place list");
  }
  return std::move(*in);
}

Json specialize_section(const std::string& path, Report& r) {
  SpecializeInput in = read_specialize_input(path);
  Specializer sp(in.field);
  Json j;
  j["field"] = in.field.name();
  j["phi"] = to_string(in.phi);
  Json places = Json::array();
  for (const auto& p : in.places) places.push_back(p.name());
  j["places"] = std::move(places);
  Table t{"components", {"element", "place", "residue_field", "normal_form", "zero"}, {}};
  Json elems = Json::array();
  for (std::size_t i = 0; i < in.elements.size(); ++i) {
    const auto& [text, xi] = in.elements[i];
    Json e;
    e["input"] = text;
    e["normalized"] = format_formal(sp.domain(), xi);
    Json comps = Json::array();
    std::vector<TwistedValue> vals;
    try {
      vals = ufd_residues(sp, xi, in.places, in.phi);
    } catch (const UnsupportedField& err) {
      throw InputError(err.what());
    }
    for (const auto& v : vals) {
      comps.push_back({{"place", v.place},
                       {"residue_field", v.residue_field},
                       {"normal_form", to_json(v.normal_form)},
                       {"zero", v.is_zero}});
      t.rows.push_back({std::to_string(i), v.place, v.residue_field, show(v.normal_form), v.is_zero ? "1" : "0"});
    }
    e["components"] = std::move(comps);
    elems.push_back(std::move(e));
  }
  j["elements"] = std::move(elems);
  r.tables.push_back(std::move(t));
  return j;
}

Json eval_section(Workspace& ws, const FiniteField& f, const std::string& text) {
  FiniteDomain d(f);
  FormalBlochElement<FFElement> xi;
  try {
    xi = parse_formal(d, text);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
  RefinedPreBloch rp = ws.refined(f);
  PreBloch p = ws.pre_bloch(f);
  IntVector in_rp = evaluate(rp, xi);
  Json j;
  j["input"] = text;
  j["normalized"] = format_formal(d, xi);
  j["refined_pre_bloch"] = to_json(rp.group().normal_form(in_rp));
  j["pre_bloch"] = to_json(p.group().normal_form(evaluate(p, xi)));
  LambdaMap lam = lambda_map(rp);
  IntVector img = lam.hom.apply(in_rp);
  j["lambda"] = to_json(lam.hom.target().normal_form(img));
  j["in_bloch"] = lam.hom.target().is_zero(img);
  return j;
}

struct CommonOptions {
  std::string json_path;
  std::string csv_path;
  std::string cache_dir;
  bool no_cache = false;
  bool no_runtime = false;
  bool quiet = false;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--json", o.json_path, "Write the JSON report to PATH ('-' for stdout)");
  sub->add_option("--csv", o.csv_path, "Write tabular sections as CSV to PATH ('-' for stdout)");
  sub->add_option("--cache-dir", o.cache_dir, "Presentation cache directory (default: $RBLOCH_CACHE_DIR)");
  sub->add_flag("--no-cache", o.no_cache, "Bypass the presentation cache");
  sub->add_flag("--no-runtime", o.no_runtime, "Omit timing and cache counters from the JSON report");
  sub->add_flag("--quiet", o.quiet, "Do not print the text report");
}

std::string echo(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pre-Bloch, refined Bloch and Grothendieck-Witt computations over finite fields", "rbloch"};
  app.require_subcommand(1);
  CommonOptions common;
  std::vector<std::uint64_t> qs;
  std::uint64_t q = 0, ell = 0, bound = 0, seed = 20240601;
  std::size_t trials = 200, jobs = 0;
  std::string input, eval_expr;

  auto* pb = app.add_subcommand("pb", "Pre-Bloch group P(F_q)");
  pb->add_option("--q", qs, "Field order(s)")->required()->delimiter(',');
  auto* rpb = app.add_subcommand("rpb", "Refined pre-Bloch group RP(F_q)");
  rpb->add_option("--q", qs, "Field order(s)")->required()->delimiter(',');
  auto* gw = app.add_subcommand("gw", "Grothendieck-Witt ring Z[V]/J");
  gw->add_option("--q", qs, "Field order(s)")->required()->delimiter(',');
  auto* bl = app.add_subcommand("bloch", "Lambda, refined Bloch group and related checks");
  bl->add_option("--q", q, "Field order")->required();
  bl->add_option("--eval", eval_expr, "Formal element to evaluate in RP(F_q)");
  auto* sp = app.add_subcommand("specialize", "Specialization maps on formal elements over F_q(t)");
  sp->add_option("--in", input, "Input file")->required();
  auto* pk = app.add_subcommand("predict-kernel", "Predicted kernel: cyclic of order (q+1)'");
  pk->add_option("--q", q, "Residue field order")->required();
  auto* ch = app.add_subcommand("cheb", "Primes p <= bound with l | p+1");
  ch->add_option("--l", ell, "Odd prime l")->required();
  ch->add_option("--bound", bound, "Search bound")->required();
  auto* su = app.add_subcommand("suite", "Run every check for a list of fields");
  su->add_option("--seed", seed, "Seed for randomized checks");
  su->add_option("--q-list", qs, "Field orders (default 5,7,9,13,25)")->delimiter(',');
  su->add_option("--trials", trials, "Random five-term relations per S_phi suite");
  su->add_option("--jobs", jobs, "Worker threads (default: hardware concurrency)");
  for (auto* s : {pb, rpb, gw, bl, sp, pk, ch, su}) add_common(s, common);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  report.command = echo(args);
  Workspace ws{PresentationCache::configure(common.cache_dir, common.no_cache)};
  auto start = std::chrono::steady_clock::now();
  try {
    if (pb->parsed()) {
      Table t{"pre_bloch", {"q", "order", "odd_part"}, {}};
      Json list = Json::array();
      for (auto qq : qs) {
        FiniteField f = field_for(qq);
        Json j = pb_section(ws, f, report, f.name() + ": ");
        t.rows.push_back({std::to_string(f.order()), j["group"]["order"].dump(), j["odd_part"]["order"].dump()});
        list.push_back(std::move(j));
      }
      report.results["pre_bloch"] = std::move(list);
      report.tables.push_back(std::move(t));
    } else if (rpb->parsed()) {
      Json list = Json::array();
      for (auto qq : qs) {
        FiniteField f = field_for(qq);
        list.push_back(rpb_section(ws, f, report, f.name() + ": "));
      }
      report.results["refined_pre_bloch"] = std::move(list);
    } else if (gw->parsed()) {
      Table t{"gw", {"q", "invariant_factors"}, {}};
      Json list = Json::array();
      for (auto qq : qs) {
        FiniteField f = field_for(qq);
        Json j = gw_section(f, report, f.name() + ": ");
        t.rows.push_back({std::to_string(f.order()), j["group"]["invariant_factors"].dump()});
        list.push_back(std::move(j));
      }
      report.results["gw"] = std::move(list);
      report.tables.push_back(std::move(t));
    } else if (bl->parsed()) {
      FiniteField f = field_for(q);
      report.results["bloch"] = bloch_section(ws, f, report, f.name() + ": ");
      if (!eval_expr.empty()) report.results["eval"] = eval_section(ws, f, eval_expr);
    } else if (sp->parsed()) {
      report.results["specialize"] = specialize_section(input, report);
    } else if (pk->parsed()) {
      report.results["prediction"] = predict_section(ws, q, report, "");
    } else if (ch->parsed()) {
      Json j = cheb_section(ell, bound, report, true);
      Table t{"primes", {"p"}, {}};
      for (const auto& p : j["primes"]) t.rows.push_back({p.dump()});
      report.tables.push_back(std::move(t));
      report.results["chebotarev"] = std::move(j);
    } else if (su->parsed()) {
      if (qs.empty()) qs = {5, 7, 9, 13, 25};
      report.seed = seed;
      std::vector<FiniteField> fields;
      for (auto qq : qs) fields.push_back(field_for(qq));
      std::size_t workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());

      auto per_field = [&](const FiniteField& f) {
        Report part;
        std::string tag = f.name() + ": ";
        Json j;
        j["pre_bloch"] = pb_section(ws, f, part, tag);
        j["refined_pre_bloch"] = rpb_section(ws, f, part, tag);
        j["gw"] = gw_section(f, part, tag);
        j["bloch"] = bloch_section(ws, f, part, tag);
        j["prediction"] = predict_section(ws, f.order(), part, tag);
        j["cor_val"] = corval_section(f.order(), part, tag);
        if (f.order() <= 13) {
          Specializer spz(RationalFunctionField{f});
          Json wd = Json::array();
          for (Twist phi : {Twist::Trivial, Twist::Parity}) {
            WdOptions o;
            o.q = f.order();
            o.phi = phi;
            o.seed = seed;
            o.relation_trials = trials;
            o.psi_trials = std::max<std::size_t>(1, trials / 4);
            o.equivariance_trials = std::max<std::size_t>(1, trials / 4);
            o.max_place_degree = f.order() <= 9 ? 2 : 1;
            wd.push_back(wd_section(spz, o, part, tag));
          }
          j["specialization"] = std::move(wd);
        }
        part.results = std::move(j);
        return part;
      };

      std::vector<Report> parts(fields.size());
      for (std::size_t start_i = 0; start_i < fields.size(); start_i += workers) {
        std::vector<std::future<Report>> batch;
        for (std::size_t i = start_i; i < std::min(fields.size(), start_i + workers); ++i)
          batch.push_back(std::async(std::launch::async, per_field, std::cref(fields[i])));
        for (std::size_t i = 0; i < batch.size(); ++i) parts[start_i + i] = batch[i].get();
      }
      Table t{"pre_bloch", {"q", "order", "odd_part"}, {}};
      Json fj = Json::object();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        for (auto& c : parts[i].checks) report.checks.push_back(std::move(c));
        const Json& pj = parts[i].results["pre_bloch"];
        t.rows.push_back({std::to_string(fields[i].order()), pj["group"]["order"].dump(), pj["odd_part"]["order"].dump()});
        fj[fields[i].name()] = std::move(parts[i].results);
      }
      report.results["fields"] = std::move(fj);
      report.results["core"] = core_section(seed, report);
      report.results["mchi"] = mchi_section(report);
      Json cj = cheb_section(3, 30, report, true);
      std::vector<std::uint64_t> expect = {2, 5, 11, 17, 23, 29};
      report.check("cheb l=3 bound=30 primes", cj["primes"].get<std::vector<std::uint64_t>>() == expect,
                   cj["primes"].dump());
      report.results["chebotarev"] = std::move(cj);
      report.tables.push_back(std::move(t));
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.cache_hits = ws.cache.hits();
  report.cache_misses = ws.cache.misses();

  try {
    if (!common.quiet) out << report.to_text();
    if (!common.json_path.empty()) write_file(common.json_path, report.to_json(!common.no_runtime).dump(2) + "\n", out);
    if (!common.csv_path.empty()) write_file(common.csv_path, report.to_csv(), out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return report.passed() ? 0 : 1;
}

}  // namespace rbloch::cli
