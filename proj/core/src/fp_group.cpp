#include "rbloch/fp_group.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "rbloch/errors.hpp"

namespace rbloch {

struct FPGroup::Data {
  std::vector<std::string> labels;
  IntMatrix relations;
  ColumnSmith smith;
  std::vector<std::size_t> nontrivial;  // Smith indices with d != 1
  IntVector invariants;                 // d at each nontrivial index
};

namespace {

std::shared_ptr<FPGroup::Data> finish(std::shared_ptr<FPGroup::Data> d) {
  // Smith order puts units first, then the torsion chain, then zeros.
  for (std::size_t i = 0; i < d->smith.diagonal.size(); ++i) {
    if (d->smith.diagonal[i] == 1) continue;
    d->nontrivial.push_back(i);
    d->invariants.push_back(d->smith.diagonal[i]);
  }
  return d;
}

std::vector<std::string> default_labels(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

FPGroup::FPGroup() : FPGroup(std::vector<std::string>{}, IntMatrix(0, 0)) {}

FPGroup::FPGroup(std::vector<std::string> labels, IntMatrix relations) {
  if (relations.cols() != labels.size())
    throw StructuralError("relation width " + std::to_string(relations.cols()) +
                          " does not match generator count " + std::to_string(labels.size()));
  auto d = std::make_shared<Data>();
  d->smith = smith_column_transform(relations);
  relations.compact();
  d->labels = std::move(labels);
  d->relations = std::move(relations);
  d_ = finish(std::move(d));
}

FPGroup FPGroup::with_smith(std::vector<std::string> labels, IntMatrix relations, ColumnSmith smith) {
  std::size_t n = labels.size();
  if (relations.cols() != n || smith.diagonal.size() != n || smith.v.rows() != n ||
      smith.v.cols() != n || smith.v_inverse.rows() != n || smith.v_inverse.cols() != n)
    throw StructuralError("Smith data shape does not match the presentation");
  if (!(smith.v * smith.v_inverse == IntMatrix::identity(n)))
    throw StructuralError("Smith transforms are not mutually inverse");
  // Every relation must vanish in the claimed quotient.
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    IntVector y = smith.v.left_multiply(relations.row(r));
    for (std::size_t i = 0; i < n; ++i)
      if (floor_mod(y[i], smith.diagonal[i]) != 0)
        throw StructuralError("Smith data does not annihilate relation " + std::to_string(r));
  }
  // ... and the claimed torsion must already lie in the relation lattice.
  HermiteBasis lattice = hermite_basis(relations);
  for (std::size_t i = 0; i < n; ++i) {
    if (smith.diagonal[i] == 0) continue;
    IntVector t = scale(smith.diagonal[i], smith.v_inverse.row(i));
    if (!solve_in_lattice(lattice, t))
      throw StructuralError("Smith data claims torsion outside the relation lattice");
  }
  auto d = std::make_shared<Data>();
  relations.compact();
  d->labels = std::move(labels);
  d->relations = std::move(relations);
  d->smith = std::move(smith);
  return FPGroup(finish(std::move(d)));
}

FPGroup FPGroup::free(std::size_t rank, const std::string& prefix) {
  return FPGroup(default_labels(rank, prefix), IntMatrix(0, rank));
}

FPGroup FPGroup::from_invariants(std::span<const Int> factors, const std::string& prefix) {
  IntMatrix rel(0, factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] == 0) continue;
    IntVector row(factors.size());
    row[i] = factors[i];
    rel.append_row(row);
  }
  return FPGroup(default_labels(factors.size(), prefix), std::move(rel));
}

std::size_t FPGroup::generator_count() const { return d_->labels.size(); }
const std::vector<std::string>& FPGroup::labels() const { return d_->labels; }
const IntMatrix& FPGroup::relations() const { return d_->relations; }
const ColumnSmith& FPGroup::smith() const { return d_->smith; }
const IntVector& FPGroup::invariant_factors() const { return d_->invariants; }

IntVector FPGroup::torsion_factors() const {
  IntVector out;
  for (const auto& d : d_->invariants)
    if (d != 0) out.push_back(d);
  return out;
}

std::size_t FPGroup::free_rank() const {
  std::size_t r = 0;
  for (const auto& d : d_->invariants) r += (d == 0);
  return r;
}

std::optional<Int> FPGroup::order() const {
  Int n = 1;
  for (const auto& d : d_->invariants) {
    if (d == 0) return std::nullopt;
    n *= d;
  }
  return n;
}

bool FPGroup::is_trivial() const { return d_->invariants.empty(); }

std::string FPGroup::describe() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (std::size_t r = free_rank(); r > 0) {
    os << 'Z';
    if (r > 1) os << '^' << r;
    first = false;
  }
  for (const auto& d : torsion_factors()) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

IntVector FPGroup::smith_coordinates(std::span<const Int> element) const {
  if (element.size() != generator_count())
    throw StructuralError("element length " + std::to_string(element.size()) +
                          " does not match generator count " + std::to_string(generator_count()));
  IntVector y = d_->smith.v.left_multiply(element);
  IntVector out;
  out.reserve(d_->nontrivial.size());
  for (std::size_t i : d_->nontrivial) out.push_back(std::move(y[i]));
  return out;
}

IntVector FPGroup::smith_generator(std::size_t i) const {
  return d_->smith.v_inverse.row(d_->nontrivial.at(i));
}

IntVector FPGroup::normal_form(std::span<const Int> element) const {
  IntVector y = smith_coordinates(element);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = floor_mod(y[i], d_->invariants[i]);
  return y;
}

bool FPGroup::is_zero(std::span<const Int> element) const { return rbloch::is_zero(normal_form(element)); }

bool FPGroup::equal(std::span<const Int> a, std::span<const Int> b) const {
  return normal_form(a) == normal_form(b);
}

std::optional<Int> FPGroup::element_order(std::span<const Int> element) const {
  IntVector y = normal_form(element);
  Int order = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    const Int& d = d_->invariants[i];
    if (d == 0) return std::nullopt;
    Int g = gcd(d, y[i]);
    order = lcm(order, Int(d / g));
  }
  return order;
}

IntVector FPGroup::representative(std::span<const Int> canonical) const {
  if (canonical.size() != d_->nontrivial.size())
    throw StructuralError("canonical coordinate count mismatch");
  IntVector x(generator_count());
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    if (canonical[i] == 0) continue;
    auto e = smith_generator(i);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += canonical[i] * e[k];
  }
  return x;
}

IntVector FPGroup::generator(std::size_t index) const {
  if (index >= generator_count()) throw StructuralError("generator index out of range");
  IntVector e(generator_count());
  e[index] = 1;
  return e;
}

IntVector FPGroup::zero() const { return IntVector(generator_count()); }

FPGroup FPGroup::with_relations(const IntMatrix& extra) const {
  if (extra.cols() != generator_count()) throw StructuralError("extra relation width mismatch");
  IntMatrix rel = d_->relations;
  for (std::size_t r = 0; r < extra.rows(); ++r) rel.append_row(extra.row(r));
  return FPGroup(d_->labels, std::move(rel));
}

bool FPGroup::isomorphic(const FPGroup& other) const {
  return invariant_factors() == other.invariant_factors();
}

FPGroup localize_away_2(const FPGroup& g) {
  IntVector factors;
  for (const auto& d : g.invariant_factors()) factors.push_back(d == 0 ? Int(0) : odd_part(d));
  return FPGroup::from_invariants(factors);
}

FPGroup direct_sum(const FPGroup& a, const FPGroup& b) {
  std::size_t na = a.generator_count(), nb = b.generator_count();
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  IntMatrix rel(0, na + nb);
  for (std::size_t r = 0; r < a.relations().rows(); ++r) {
    IntVector row = a.relations().row(r);
    row.resize(na + nb);
    rel.append_row(row);
  }
  for (std::size_t r = 0; r < b.relations().rows(); ++r) {
    IntVector row(na);
    auto rb = b.relations().row(r);
    row.insert(row.end(), rb.begin(), rb.end());
    rel.append_row(row);
  }
  return FPGroup(std::move(labels), std::move(rel));
}

FPHom::FPHom(FPGroup source, FPGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != source_.generator_count() || matrix_.cols() != target_.generator_count())
    throw StructuralError("homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", expected " +
                          std::to_string(source_.generator_count()) + "x" +
                          std::to_string(target_.generator_count()));
  const IntMatrix& rel = source_.relations();
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    if (!target_.is_zero(matrix_.left_multiply(rel.row(r))))
      throw NotWellDefined(r, "homomorphism is not well-defined: source relation " + std::to_string(r) +
                                  " maps to a nonzero element");
  }
}

IntVector FPHom::apply(std::span<const Int> element) const { return matrix_.left_multiply(element); }

FPHom FPHom::then(const FPHom& next) const {
  if (next.source_.generator_count() != target_.generator_count())
    throw StructuralError("composition through mismatched groups");
  return FPHom(source_, next.target_, matrix_ * next.matrix_);
}

FPHom FPHom::identity(const FPGroup& g) {
  return FPHom(g, g, IntMatrix::identity(g.generator_count()));
}

FPHom FPHom::zero(const FPGroup& source, const FPGroup& target) {
  return FPHom(source, target, IntMatrix(source.generator_count(), target.generator_count()));
}

KernelImageCokernel kernel_image_cokernel(const FPHom& h) {
  const FPGroup& A = h.source();
  const FPGroup& B = h.target();
  const IntVector& dA = A.invariant_factors();
  const IntVector& dB = B.invariant_factors();
  std::size_t a = dA.size(), b = dB.size();

  // Images of A's Smith generators in B's unreduced Smith coordinates.
  std::vector<IntVector> gen_a(a), image_rows(a), reduced(a);
  for (std::size_t i = 0; i < a; ++i) {
    gen_a[i] = A.smith_generator(i);
    image_rows[i] = h.apply(gen_a[i]);
    reduced[i] = B.smith_coordinates(image_rows[i]);
  }

  // Left kernel of [M'; diag(dB)], projected to the M' rows, is
  // K' = {x : x M' lies in B's relation lattice}.
  IntMatrix stacked(0, b);
  for (const auto& r : reduced) stacked.append_row(r);
  for (std::size_t j = 0; j < b; ++j) {
    IntVector row(b);
    row[j] = dB[j];
    stacked.append_row(row);
  }
  HermiteBasis lk = left_kernel(stacked);
  std::vector<IntVector> projected;
  for (const auto& r : lk.rows) projected.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(a));
  HermiteBasis kb = hermite_basis(projected, a);

  // Kernel: K' modulo A's relations, expressed in the basis of K'.
  IntMatrix ker_rel(0, kb.rank());
  for (std::size_t i = 0; i < a; ++i) {
    if (dA[i] == 0) continue;
    IntVector target(a);
    target[i] = dA[i];
    auto coeffs = solve_in_lattice(kb, target);
    if (!coeffs) throw NotWellDefined(i, "source torsion relation escapes the kernel lattice");
    ker_rel.append_row(*coeffs);
  }
  IntMatrix ker_incl(kb.rank(), A.generator_count());
  for (std::size_t k = 0; k < kb.rank(); ++k) {
    IntVector x(A.generator_count());
    for (std::size_t i = 0; i < a; ++i)
      if (kb.rows[k][i] != 0)
        for (std::size_t c = 0; c < x.size(); ++c) x[c] += kb.rows[k][i] * gen_a[i][c];
    for (std::size_t c = 0; c < x.size(); ++c) ker_incl.set(k, c, x[c]);
  }
  FPGroup kernel(default_labels(kb.rank(), "ker"), std::move(ker_rel));

  // Image: Z^a / K', included through the images of A's Smith generators.
  FPGroup image(default_labels(a, "im"), kb.matrix());
  IntMatrix im_incl = IntMatrix::from_rows(image_rows, B.generator_count());

  // Cokernel: B's Smith presentation with the images added.
  IntMatrix coker_rel = stacked;
  FPGroup cokernel(default_labels(b, "coker"), std::move(coker_rel));
  IntMatrix proj(B.generator_count(), b);
  for (std::size_t g = 0; g < B.generator_count(); ++g) {
    IntVector y = B.smith_coordinates(B.generator(g));
    for (std::size_t j = 0; j < b; ++j) proj.set(g, j, y[j]);
  }

  return KernelImageCokernel{
      kernel, FPHom(kernel, A, std::move(ker_incl)),
      image,  FPHom(image, B, std::move(im_incl)),
      cokernel, FPHom(B, cokernel, std::move(proj)),
  };
}

namespace {

void write_row(std::ostream& os, const IntVector& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
  os << '\n';
}

void write_matrix(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) write_row(os, m.row(r));
}

std::string expect_line(std::istream& is, const std::string& what) {
  std::string line;
  if (!std::getline(is, line)) throw StructuralError("truncated group record: expected " + what);
  return line;
}

IntVector parse_row(const std::string& line, std::size_t width) {
  std::istringstream ls(line);
  IntVector row;
  std::string tok;
  while (ls >> tok) {
    Int v;
    if (v.set_str(tok, 10) != 0) throw StructuralError("bad integer in group record: " + tok);
    row.push_back(v);
  }
  if (row.size() != width) throw StructuralError("group record row has wrong width");
  return row;
}

IntMatrix read_matrix(std::istream& is, std::size_t rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (std::size_t r = 0; r < rows; ++r) m.append_row(parse_row(expect_line(is, "matrix row"), cols));
  return m;
}

std::size_t parse_count(const std::string& line, const std::string& key) {
  std::istringstream ls(line);
  std::string k;
  long long n = -1;
  if (!(ls >> k >> n) || k != key || n < 0) throw StructuralError("group record: expected '" + key + " <count>'");
  return static_cast<std::size_t>(n);
}

}  // namespace

void write_record(std::ostream& os, const FPGroup& g, bool include_smith) {
  os << "fpgroup 1\n";
  os << "generators " << g.generator_count() << '\n';
  for (const auto& l : g.labels()) os << l << '\n';
  os << "relations " << g.relations().rows() << ' ' << g.relations().cols() << '\n';
  write_matrix(os, g.relations());
  os << "invariants " << g.invariant_factors().size() << '\n';
  write_row(os, g.invariant_factors());
  os << "smith " << (include_smith ? 1 : 0) << '\n';
  if (include_smith) {
    write_row(os, g.smith().diagonal);
    write_matrix(os, g.smith().v);
    write_matrix(os, g.smith().v_inverse);
  }
  os << "end\n";
}

FPGroup read_record(std::istream& is) {
  if (expect_line(is, "header") != "fpgroup 1") throw StructuralError("not a group record");
  std::size_t n = parse_count(expect_line(is, "generators"), "generators");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(expect_line(is, "label"));
  std::istringstream rl(expect_line(is, "relations"));
  std::string key;
  long long rows = -1, cols = -1;
  if (!(rl >> key >> rows >> cols) || key != "relations" || rows < 0 || cols != static_cast<long long>(n))
    throw StructuralError("group record: bad relations header");
  IntMatrix rel = read_matrix(is, static_cast<std::size_t>(rows), n);
  std::size_t k = parse_count(expect_line(is, "invariants"), "invariants");
  IntVector invariants = parse_row(expect_line(is, "invariant list"), k);
  std::size_t has_smith = parse_count(expect_line(is, "smith"), "smith");
  FPGroup g;
  if (has_smith == 1) {
    ColumnSmith s;
    s.diagonal = parse_row(expect_line(is, "diagonal"), n);
    s.v = read_matrix(is, n, n);
    s.v_inverse = read_matrix(is, n, n);
    g = FPGroup::with_smith(std::move(labels), std::move(rel), std::move(s));
  } else {
    g = FPGroup(std::move(labels), std::move(rel));
  }
  if (expect_line(is, "end") != "end") throw StructuralError("group record: missing end marker");
  if (g.invariant_factors() != invariants) throw StructuralError("group record: invariant factors do not match");
  return g;
}

}  // namespace rbloch
