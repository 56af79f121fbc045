#include "perverse/complexes.hpp"

#include <algorithm>
#include <string>

namespace perverse {
namespace {

std::string deg(int k) { return "degree " + std::to_string(k); }

int sign(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

ChainComplex::ChainComplex(int lo, std::vector<Index> dims, std::vector<RationalMatrix> differentials)
    : lo_(lo), dims_(std::move(dims)), d_(std::move(differentials)) {
  for (Index n : dims_)
    if (n < 0) throw Error(ErrorCode::invalid_complex, "chain complex: negative dimension");
  const std::size_t steps = dims_.empty() ? 0 : dims_.size() - 1;
  if (d_.empty()) {
    for (std::size_t i = 0; i < steps; ++i) d_.push_back(RationalMatrix::Zero(dims_[i + 1], dims_[i]));
  }
  if (d_.size() != steps)
    throw Error(ErrorCode::invalid_complex, "chain complex: expected " + std::to_string(steps) + " differentials");
  for (std::size_t i = 0; i < steps; ++i)
    if (d_[i].rows() != dims_[i + 1] || d_[i].cols() != dims_[i])
      throw Error(ErrorCode::invalid_complex, "chain complex: differential out of " +
                                                  deg(lo_ + static_cast<int>(i)) + " has the wrong shape");
  for (std::size_t i = 0; i + 1 < steps; ++i)
    if (!is_zero(RationalMatrix(d_[i + 1] * d_[i])))
      throw Error(ErrorCode::invalid_complex,
                  "chain complex: d o d != 0 out of " + deg(lo_ + static_cast<int>(i)));
}

ChainComplex ChainComplex::formal(int lo, std::vector<Index> dims) { return ChainComplex(lo, std::move(dims)); }

ChainComplex ChainComplex::concentrated(int k, Index dim) { return ChainComplex(k, {dim}); }

Index ChainComplex::dim(int k) const {
  if (k < lo_ || k > hi()) return 0;
  return dims_[static_cast<std::size_t>(k - lo_)];
}

RationalMatrix ChainComplex::d(int k) const {
  if (k < lo_ || k >= hi()) return RationalMatrix::Zero(dim(k + 1), dim(k));
  return d_[static_cast<std::size_t>(k - lo_)];
}

Index ChainComplex::total_dim() const {
  Index t = 0;
  for (Index n : dims_) t += n;
  return t;
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<RationalMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
  const auto expected = static_cast<std::size_t>(std::max(0, source_.hi() - source_.lo() + 1));
  if (f_.size() != expected)
    throw Error(ErrorCode::invalid_map, "chain map: expected " + std::to_string(expected) + " components");
  for (int k = source_.lo(); k <= source_.hi(); ++k) {
    const auto& m = f_[static_cast<std::size_t>(k - source_.lo())];
    if (m.rows() != target_.dim(k) || m.cols() != source_.dim(k))
      throw Error(ErrorCode::invalid_map, "chain map: component in " + deg(k) + " has the wrong shape");
  }
  const int lo = std::min(source_.lo(), target_.lo()) - 1;
  const int hi = std::max(source_.hi(), target_.hi());
  for (int k = lo; k <= hi; ++k)
    if (target_.d(k) * component(k) != component(k + 1) * source_.d(k))
      throw Error(ErrorCode::invalid_map, "chain map: does not commute with d out of " + deg(k));
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::vector<RationalMatrix> f;
  for (int k = c.lo(); k <= c.hi(); ++k) f.push_back(RationalMatrix::Identity(c.dim(k), c.dim(k)));
  return ChainMap(c, c, std::move(f));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  std::vector<RationalMatrix> f;
  for (int k = source.lo(); k <= source.hi(); ++k) f.push_back(RationalMatrix::Zero(target.dim(k), source.dim(k)));
  return ChainMap(source, target, std::move(f));
}

RationalMatrix ChainMap::component(int k) const {
  if (k < source_.lo() || k > source_.hi()) return RationalMatrix::Zero(target_.dim(k), source_.dim(k));
  return f_[static_cast<std::size_t>(k - source_.lo())];
}

Cohomology::Cohomology(const ChainComplex& c) : lo_(c.lo()) {
  for (int k = c.lo(); k <= c.hi(); ++k) {
    Degree g;
    g.cycles = Subspace::span(kernel_basis(c.d(k)));
    const RationalMatrix boundaries = c.d(k - 1);
    g.chart = quotient_chart(Subspace::span(g.cycles.coordinates(boundaries)));
    degrees_.push_back(std::move(g));
  }
}

Index Cohomology::dim(int k) const {
  if (k < lo_ || k > hi()) return 0;
  return degrees_[static_cast<std::size_t>(k - lo_)].chart.section.cols();
}

RationalMatrix Cohomology::representatives(int k) const {
  if (k < lo_ || k > hi()) return RationalMatrix(0, 0);
  const auto& g = degrees_[static_cast<std::size_t>(k - lo_)];
  return g.cycles.basis() * g.chart.section;
}

RationalMatrix Cohomology::classes(int k, const RationalMatrix& cycles) const {
  if (k < lo_ || k > hi()) return RationalMatrix(0, cycles.cols());
  const auto& g = degrees_[static_cast<std::size_t>(k - lo_)];
  return g.chart.projection * g.cycles.coordinates(cycles);
}

std::map<int, Index> Cohomology::dims() const {
  std::map<int, Index> out;
  for (int k = lo_; k <= hi(); ++k)
    if (dim(k) != 0) out[k] = dim(k);
  return out;
}

Cohomology cohomology(const ChainComplex& c) { return Cohomology(c); }

RationalMatrix induced_on_cohomology(const ChainMap& f, int k) {
  const Cohomology hs(f.source());
  const Cohomology ht(f.target());
  if (hs.dim(k) == 0) return RationalMatrix::Zero(ht.dim(k), 0);
  return ht.classes(k, f.component(k) * hs.representatives(k));
}

ChainComplex truncate(const ChainComplex& c, TruncationMode mode, int k) {
  if (mode == TruncationMode::at_most) {
    if (k < c.lo()) return ChainComplex();
    const int top = std::min(k, c.hi());
    std::vector<Index> dims;
    std::vector<RationalMatrix> ds;
    for (int j = c.lo(); j <= top; ++j) dims.push_back(c.dim(j));
    for (int j = c.lo(); j < top; ++j) ds.push_back(c.d(j));
    if (top == k) {
      const Subspace cycles = Subspace::span(kernel_basis(c.d(k)));
      dims.back() = cycles.dim();
      if (!ds.empty()) ds.back() = cycles.coordinates(ds.back());
    }
    return ChainComplex(c.lo(), std::move(dims), std::move(ds));
  }
  if (k > c.hi()) return ChainComplex();
  const int bottom = std::max(k, c.lo());
  std::vector<Index> dims;
  std::vector<RationalMatrix> ds;
  for (int j = bottom; j <= c.hi(); ++j) dims.push_back(c.dim(j));
  for (int j = bottom; j < c.hi(); ++j) ds.push_back(c.d(j));
  if (bottom == k) {
    const auto chart = quotient_chart(Subspace::span(c.d(k - 1)));
    dims.front() = chart.section.cols();
    if (!ds.empty()) ds.front() = ds.front() * chart.section;
  }
  return ChainComplex(bottom, std::move(dims), std::move(ds));
}

ChainMap truncation_inclusion(const ChainComplex& c, int k) {
  ChainComplex t = truncate(c, TruncationMode::at_most, k);
  std::vector<RationalMatrix> f;
  for (int j = t.lo(); j <= t.hi(); ++j) {
    if (j == k)
      f.push_back(kernel_basis(c.d(k)));
    else
      f.push_back(RationalMatrix::Identity(c.dim(j), c.dim(j)));
  }
  return ChainMap(std::move(t), c, std::move(f));
}

ChainMap truncation_projection(const ChainComplex& c, int k) {
  ChainComplex t = truncate(c, TruncationMode::at_least, k);
  std::vector<RationalMatrix> f;
  for (int j = c.lo(); j <= c.hi(); ++j) {
    if (j < k)
      f.push_back(RationalMatrix::Zero(t.dim(j), c.dim(j)));
    else if (j == k)
      f.push_back(quotient_chart(Subspace::span(c.d(k - 1))).projection);
    else
      f.push_back(RationalMatrix::Identity(c.dim(j), c.dim(j)));
  }
  return ChainMap(c, std::move(t), std::move(f));
}

ChainComplex shift(const ChainComplex& c, int l) {
  std::vector<RationalMatrix> ds;
  for (int k = c.lo(); k < c.hi(); ++k) ds.push_back(Rational(sign(l)) * c.d(k));
  return ChainComplex(c.lo() - l, c.dims(), std::move(ds));
}

ChainMap shift(const ChainMap& f, int l) {
  std::vector<RationalMatrix> comps;
  for (int k = f.source().lo(); k <= f.source().hi(); ++k) comps.push_back(f.component(k));
  return ChainMap(shift(f.source(), l), shift(f.target(), l), std::move(comps));
}

ChainComplex cone(const ChainMap& f) {
  const ChainComplex& a = f.source();
  const ChainComplex& b = f.target();
  if (a.total_dim() == 0 && b.total_dim() == 0) return ChainComplex();
  const int lo = std::min(b.lo(), a.lo() - 1);
  const int hi = std::max(b.hi(), a.hi() - 1);
  std::vector<Index> dims;
  std::vector<RationalMatrix> ds;
  for (int k = lo; k <= hi; ++k) dims.push_back(b.dim(k) + a.dim(k + 1));
  for (int k = lo; k < hi; ++k) {
    RationalMatrix d = RationalMatrix::Zero(b.dim(k + 1) + a.dim(k + 2), b.dim(k) + a.dim(k + 1));
    d.topLeftCorner(b.dim(k + 1), b.dim(k)) = b.d(k);
    d.topRightCorner(b.dim(k + 1), a.dim(k + 1)) = f.component(k + 1);
    d.bottomRightCorner(a.dim(k + 2), a.dim(k + 1)) = -a.d(k + 1);
    ds.push_back(std::move(d));
  }
  return ChainComplex(lo, std::move(dims), std::move(ds));
}

ChainMap cone_inclusion(const ChainMap& f) {
  ChainComplex c = cone(f);
  const ChainComplex& b = f.target();
  std::vector<RationalMatrix> comps;
  for (int k = b.lo(); k <= b.hi(); ++k) {
    RationalMatrix m = RationalMatrix::Zero(c.dim(k), b.dim(k));
    m.topRows(b.dim(k)) = RationalMatrix::Identity(b.dim(k), b.dim(k));
    comps.push_back(std::move(m));
  }
  return ChainMap(b, std::move(c), std::move(comps));
}

ChainMap cone_projection(const ChainMap& f) {
  ChainComplex c = cone(f);
  ChainComplex a1 = shift(f.source(), 1);
  std::vector<RationalMatrix> comps;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    RationalMatrix m = RationalMatrix::Zero(a1.dim(k), c.dim(k));
    m.rightCols(a1.dim(k)) = RationalMatrix::Identity(a1.dim(k), a1.dim(k));
    comps.push_back(std::move(m));
  }
  return ChainMap(std::move(c), std::move(a1), std::move(comps));
}

ChainComplex dualize(const ChainComplex& c, int r) {
  if (c.hi() < c.lo()) return ChainComplex();
  const int lo = -c.hi() - 2 * r;
  const int hi = -c.lo() - 2 * r;
  std::vector<Index> dims;
  std::vector<RationalMatrix> ds;
  for (int k = lo; k <= hi; ++k) dims.push_back(c.dim(-k - 2 * r));
  for (int k = lo; k < hi; ++k) ds.push_back(Rational(sign(k)) * c.d(-k - 2 * r - 1).transpose());
  return ChainComplex(lo, std::move(dims), std::move(ds));
}

ChainComplex minimal_model(const ChainComplex& c) {
  if (c.hi() < c.lo()) return ChainComplex();
  const Cohomology h(c);
  std::vector<Index> dims;
  for (int k = c.lo(); k <= c.hi(); ++k) dims.push_back(h.dim(k));
  return ChainComplex::formal(c.lo(), std::move(dims));
}

bool same_cohomology_dims(const ChainComplex& a, const ChainComplex& b) {
  return Cohomology(a).dims() == Cohomology(b).dims();
}

}  // namespace perverse
