#include "bellnet/qcore.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bellnet {

std::uint64_t
DeriveSeed (std::uint64_t master, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t> (master), static_cast<std::uint32_t> (master >> 32),
                    static_cast<std::uint32_t> (index), static_cast<std::uint32_t> (index >> 32)};
  std::uint32_t words[2];
  seq.generate (words, words + 2);
  return (static_cast<std::uint64_t> (words[0]) << 32) | words[1];
}

// ---------------------------------------------------------------- SpaceLabel

SpaceLabel::SpaceLabel (std::vector<Subsystem> subsystems)
  : m_subsystems (std::move (subsystems))
{
  std::set<std::string_view> names;
  m_totalDim = 1;
  for (const auto &s : m_subsystems)
    {
      if (s.dim == 0)
        throw std::invalid_argument ("subsystem '" + s.name + "' has dimension 0");
      if (!names.insert (s.name).second)
        throw std::invalid_argument ("duplicate subsystem name '" + s.name + "'");
      m_totalDim *= s.dim;
    }
}

SpaceLabel
SpaceLabel::Single (std::string name, std::size_t dim)
{
  return SpaceLabel ({{std::move (name), dim}});
}

std::size_t
SpaceLabel::Position (std::string_view name) const
{
  for (std::size_t i = 0; i < m_subsystems.size (); ++i)
    if (m_subsystems[i].name == name)
      return i;
  throw std::out_of_range ("unknown subsystem '" + std::string (name) + "'");
}

bool
SpaceLabel::Contains (std::string_view name) const
{
  return std::any_of (m_subsystems.begin (), m_subsystems.end (),
                      [&] (const Subsystem &s) { return s.name == name; });
}

std::size_t
SpaceLabel::DimOf (std::string_view name) const
{
  return m_subsystems[Position (name)].dim;
}

std::size_t
SpaceLabel::Stride (std::size_t pos) const
{
  std::size_t stride = 1;
  for (std::size_t i = pos + 1; i < m_subsystems.size (); ++i)
    stride *= m_subsystems[i].dim;
  return stride;
}

std::vector<std::size_t>
SpaceLabel::Digits (std::size_t flatIndex) const
{
  std::vector<std::size_t> digits (m_subsystems.size ());
  for (std::size_t i = m_subsystems.size (); i-- > 0;)
    {
      digits[i] = flatIndex % m_subsystems[i].dim;
      flatIndex /= m_subsystems[i].dim;
    }
  return digits;
}

std::size_t
SpaceLabel::FlatIndex (std::span<const std::size_t> digits) const
{
  if (digits.size () != m_subsystems.size ())
    throw std::invalid_argument ("digit count does not match subsystem count");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size (); ++i)
    {
      if (digits[i] >= m_subsystems[i].dim)
        throw std::out_of_range ("level index out of range for '" + m_subsystems[i].name + "'");
      idx = idx * m_subsystems[i].dim + digits[i];
    }
  return idx;
}

SpaceLabel
SpaceLabel::Concat (const SpaceLabel &other) const
{
  auto all = m_subsystems;
  all.insert (all.end (), other.m_subsystems.begin (), other.m_subsystems.end ());
  return SpaceLabel (std::move (all));
}

SpaceLabel
SpaceLabel::Without (std::size_t pos) const
{
  auto rest = m_subsystems;
  rest.erase (rest.begin () + static_cast<std::ptrdiff_t> (pos));
  return SpaceLabel (std::move (rest));
}

// --------------------------------------------------------------- StateVector

namespace {

double
SquaredNormOf (std::span<const Complex> amp)
{
  double sum = 0.0;
  for (const auto &a : amp)
    sum += std::norm (a);
  return sum;
}

// Walks the (outer, level, inner) decomposition of a flat index around the
// subsystem at `pos`.
struct Layout
{
  std::size_t outer;
  std::size_t dim;
  std::size_t inner;

  Layout (const SpaceLabel &space, std::size_t pos)
    : outer (space.TotalDim () / (space.Subsystems ()[pos].dim * space.Stride (pos))),
      dim (space.Subsystems ()[pos].dim),
      inner (space.Stride (pos))
  {
  }

  std::size_t Index (std::size_t o, std::size_t level, std::size_t i) const
  {
    return (o * dim + level) * inner + i;
  }
};

std::vector<bool>
LevelMask (std::size_t dim, std::span<const std::size_t> levels)
{
  if (levels.empty ())
    throw std::invalid_argument ("empty level set");
  std::vector<bool> mask (dim, false);
  for (auto l : levels)
    {
      if (l >= dim)
        throw std::out_of_range ("level index out of range");
      mask[l] = true;
    }
  return mask;
}

} // namespace

Complex
StateVector::Amplitude (std::initializer_list<std::size_t> digits) const
{
  return m_amp[m_space.FlatIndex (std::span<const std::size_t> (digits.begin (), digits.size ()))];
}

double
StateVector::SquaredNorm () const
{
  return SquaredNormOf (m_amp);
}

StateVector
MakeState (SpaceLabel space, std::vector<Complex> amplitudes)
{
  if (amplitudes.size () != space.TotalDim ())
    throw std::invalid_argument ("amplitude count " + std::to_string (amplitudes.size ())
                                 + " does not match space dimension "
                                 + std::to_string (space.TotalDim ()));
  const double n2 = SquaredNormOf (amplitudes);
  if (!(n2 > 0.0) || !std::isfinite (n2))
    throw std::invalid_argument ("cannot normalize a zero or non-finite vector");
  const double scale = 1.0 / std::sqrt (n2);
  for (auto &a : amplitudes)
    a *= scale;
  return StateVector (std::move (space), std::move (amplitudes));
}

StateVector
FromUnitaryImage (SpaceLabel space, std::vector<Complex> amplitudes)
{
  if (amplitudes.size () != space.TotalDim ())
    throw std::invalid_argument ("amplitude count does not match space dimension");
  if (std::abs (SquaredNormOf (amplitudes) - 1.0) > kExactTol)
    throw std::logic_error ("norm drifted beyond tolerance");
  return StateVector (std::move (space), std::move (amplitudes));
}

StateVector
BasisState (SpaceLabel space, std::initializer_list<std::size_t> levels)
{
  std::vector<Complex> amp (space.TotalDim ());
  amp[space.FlatIndex (std::span<const std::size_t> (levels.begin (), levels.size ()))] = 1.0;
  return MakeState (std::move (space), std::move (amp));
}

StateVector
Tensor (const StateVector &s1, const StateVector &s2)
{
  for (const auto &sub : s2.Space ().Subsystems ())
    if (s1.Space ().Contains (sub.name))
      throw std::invalid_argument ("subsystem name collision: '" + sub.name + "'");
  SpaceLabel space = s1.Space ().Concat (s2.Space ());
  std::vector<Complex> amp;
  amp.reserve (space.TotalDim ());
  for (const auto &a : s1.Amplitudes ())
    for (const auto &b : s2.Amplitudes ())
      amp.push_back (a * b);
  return FromUnitaryImage (std::move (space), std::move (amp));
}

// ------------------------------------------------------------------ Operator

Operator::Operator (std::size_t dim) : m_dim (dim), m_m (dim * dim) {}

Operator::Operator (std::size_t dim, std::vector<Complex> rowMajor)
  : m_dim (dim), m_m (std::move (rowMajor))
{
  if (m_m.size () != dim * dim)
    throw std::invalid_argument ("operator matrix is not dim x dim");
}

Operator
Operator::Identity (std::size_t dim)
{
  Operator id (dim);
  for (std::size_t i = 0; i < dim; ++i)
    id (i, i) = 1.0;
  return id;
}

Operator
Operator::Adjoint () const
{
  Operator out (m_dim);
  for (std::size_t r = 0; r < m_dim; ++r)
    for (std::size_t c = 0; c < m_dim; ++c)
      out (c, r) = std::conj ((*this) (r, c));
  return out;
}

Operator
Operator::operator* (const Operator &rhs) const
{
  if (rhs.m_dim != m_dim)
    throw std::invalid_argument ("operator dimension mismatch");
  Operator out (m_dim);
  for (std::size_t r = 0; r < m_dim; ++r)
    for (std::size_t k = 0; k < m_dim; ++k)
      {
        const Complex a = (*this) (r, k);
        if (a == Complex{})
          continue;
        for (std::size_t c = 0; c < m_dim; ++c)
          out (r, c) += a * rhs (k, c);
      }
  return out;
}

double
Operator::UnitarityError () const
{
  return (Adjoint () * (*this)).MaxAbsDiff (Identity (m_dim));
}

double
Operator::MaxAbsDiff (const Operator &other) const
{
  if (other.m_dim != m_dim)
    throw std::invalid_argument ("operator dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < m_m.size (); ++i)
    worst = std::max (worst, std::abs (m_m[i] - other.m_m[i]));
  return worst;
}

Operator
TwoLevelRotation (std::size_t dim, std::size_t u, std::size_t v, double area, double phase)
{
  if (u >= dim || v >= dim)
    throw std::out_of_range ("rotation level index out of range");
  if (u == v)
    throw std::invalid_argument ("rotation needs two distinct levels");
  Operator op = Operator::Identity (dim);
  const double c = std::cos (area / 2.0);
  const double s = std::sin (area / 2.0);
  const Complex minusI{0.0, -1.0};
  op (u, u) = c;
  op (v, v) = c;
  op (v, u) = minusI * std::polar (1.0, -phase) * s;
  op (u, v) = minusI * std::polar (1.0, phase) * s;
  return op;
}

// ---------------------------------------------------------------- operations

StateVector
Apply (const StateVector &state, const Operator &op, std::string_view target)
{
  const auto &space = state.Space ();
  const std::size_t pos = space.Position (target);
  if (space.Subsystems ()[pos].dim != op.Dim ())
    throw std::invalid_argument ("operator dimension does not match subsystem '"
                                 + std::string (target) + "'");
  const Layout lay (space, pos);
  const auto in = state.Amplitudes ();
  std::vector<Complex> out (in.size ());
  for (std::size_t o = 0; o < lay.outer; ++o)
    for (std::size_t i = 0; i < lay.inner; ++i)
      for (std::size_t r = 0; r < lay.dim; ++r)
        {
          Complex acc{};
          for (std::size_t c = 0; c < lay.dim; ++c)
            acc += op (r, c) * in[lay.Index (o, c, i)];
          out[lay.Index (o, r, i)] = acc;
        }
  return FromUnitaryImage (space, std::move (out));
}

double
Population (const StateVector &state, std::string_view target, std::span<const std::size_t> levels)
{
  const auto &space = state.Space ();
  const std::size_t pos = space.Position (target);
  const Layout lay (space, pos);
  const auto mask = LevelMask (lay.dim, levels);
  const auto amp = state.Amplitudes ();
  double p = 0.0;
  for (std::size_t o = 0; o < lay.outer; ++o)
    for (std::size_t l = 0; l < lay.dim; ++l)
      if (mask[l])
        for (std::size_t i = 0; i < lay.inner; ++i)
          p += std::norm (amp[lay.Index (o, l, i)]);
  return p;
}

namespace {

MeasureResult
Collapse (const StateVector &state, std::string_view target, std::span<const std::size_t> levels,
          Projection outcome, double pIn)
{
  const double prob = outcome == Projection::In ? pIn : 1.0 - pIn;
  if (prob < 1e-15)
    throw std::domain_error ("measurement branch has zero probability");
  const auto &space = state.Space ();
  const Layout lay (space, space.Position (target));
  const auto mask = LevelMask (lay.dim, levels);
  const bool keepIn = outcome == Projection::In;
  std::vector<Complex> amp (state.Amplitudes ().begin (), state.Amplitudes ().end ());
  for (std::size_t o = 0; o < lay.outer; ++o)
    for (std::size_t l = 0; l < lay.dim; ++l)
      if (mask[l] != keepIn)
        for (std::size_t i = 0; i < lay.inner; ++i)
          amp[lay.Index (o, l, i)] = 0.0;
  return {outcome, prob, MakeState (space, std::move (amp))};
}

} // namespace

MeasureResult
ProjectMeasure (const StateVector &state, std::string_view target, std::span<const std::size_t> levels,
                Rng &rng)
{
  const double pIn = std::clamp (Population (state, target, levels), 0.0, 1.0);
  const Projection outcome = Bernoulli (rng, pIn) ? Projection::In : Projection::Out;
  return Collapse (state, target, levels, outcome, pIn);
}

MeasureResult
ProjectMeasure (const StateVector &state, std::string_view target, std::span<const std::size_t> levels,
                Projection forced)
{
  const double pIn = std::clamp (Population (state, target, levels), 0.0, 1.0);
  return Collapse (state, target, levels, forced, pIn);
}

double
Slice::Weight () const
{
  return SquaredNormOf (amplitudes);
}

Slice
Contract (const StateVector &state, std::string_view target, std::span<const Complex> bra)
{
  const auto &space = state.Space ();
  const std::size_t pos = space.Position (target);
  const Layout lay (space, pos);
  if (bra.size () != lay.dim)
    throw std::invalid_argument ("bra dimension does not match subsystem");
  const auto amp = state.Amplitudes ();
  Slice out{space.Without (pos), std::vector<Complex> (lay.outer * lay.inner)};
  for (std::size_t o = 0; o < lay.outer; ++o)
    for (std::size_t i = 0; i < lay.inner; ++i)
      {
        Complex acc{};
        for (std::size_t l = 0; l < lay.dim; ++l)
          acc += std::conj (bra[l]) * amp[lay.Index (o, l, i)];
        out.amplitudes[o * lay.inner + i] = acc;
      }
  return out;
}

StateVector
ConditionOn (const StateVector &state, std::string_view target, std::size_t level)
{
  const std::size_t dim = state.Space ().DimOf (target);
  if (level >= dim)
    throw std::out_of_range ("level index out of range");
  std::vector<Complex> bra (dim);
  bra[level] = 1.0;
  Slice s = Contract (state, target, bra);
  if (s.Weight () < 1e-15)
    throw std::domain_error ("conditioning on an unpopulated level");
  return MakeState (std::move (s.space), std::move (s.amplitudes));
}

double
Fidelity (const StateVector &a, const StateVector &b)
{
  if (!(a.Space () == b.Space ()))
    throw std::invalid_argument ("fidelity between states on different spaces");
  Complex overlap{};
  const auto x = a.Amplitudes ();
  const auto y = b.Amplitudes ();
  for (std::size_t i = 0; i < x.size (); ++i)
    overlap += std::conj (x[i]) * y[i];
  return std::clamp (std::norm (overlap), 0.0, 1.0);
}

} // namespace bellnet
