#ifndef BELLNET_QCORE_H
#define BELLNET_QCORE_H

#include "bellnet/random.h"

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/*
 * Dense state-vector algebra over small labeled composite qudit spaces.
 *
 * Basis ordering is row-major over the subsystem list: the first subsystem
 * is the most significant digit of the flat amplitude index. All values are
 * immutable once built; every operation returns a fresh object.
 */

namespace bellnet {

using Complex = std::complex<double>;

/// Tolerance for checks that should hold in exact arithmetic.
inline constexpr double kExactTol = 1e-12;

class SpaceLabel
{
public:
  struct Subsystem
  {
    std::string name;
    std::size_t dim;
    bool operator== (const Subsystem &) const = default;
  };

  SpaceLabel () = default;
  /// Throws std::invalid_argument on duplicate names or zero dimensions.
  explicit SpaceLabel (std::vector<Subsystem> subsystems);

  static SpaceLabel Single (std::string name, std::size_t dim);

  const std::vector<Subsystem> &Subsystems () const { return m_subsystems; }
  std::size_t Size () const { return m_subsystems.size (); }
  std::size_t TotalDim () const { return m_totalDim; }

  /// Position of the named subsystem; throws std::out_of_range if absent.
  std::size_t Position (std::string_view name) const;
  bool Contains (std::string_view name) const;
  std::size_t DimOf (std::string_view name) const;

  /// Flat-index distance between consecutive levels of subsystem `pos`.
  std::size_t Stride (std::size_t pos) const;

  std::vector<std::size_t> Digits (std::size_t flatIndex) const;
  std::size_t FlatIndex (std::span<const std::size_t> digits) const;

  SpaceLabel Concat (const SpaceLabel &other) const;
  SpaceLabel Without (std::size_t pos) const;

  bool operator== (const SpaceLabel &) const = default;

private:
  std::vector<Subsystem> m_subsystems;
  std::size_t m_totalDim = 1;
};

class StateVector
{
public:
  const SpaceLabel &Space () const { return m_space; }
  std::span<const Complex> Amplitudes () const { return m_amp; }
  Complex Amplitude (std::size_t flatIndex) const { return m_amp.at (flatIndex); }
  Complex Amplitude (std::initializer_list<std::size_t> digits) const;
  double SquaredNorm () const;

private:
  StateVector (SpaceLabel space, std::vector<Complex> amp)
    : m_space (std::move (space)), m_amp (std::move (amp))
  {
  }

  SpaceLabel m_space;
  std::vector<Complex> m_amp;

  friend StateVector MakeState (SpaceLabel, std::vector<Complex>);
  friend StateVector FromUnitaryImage (SpaceLabel, std::vector<Complex>);
};

/// Normalized copy of `amplitudes`. Throws on length mismatch or zero norm.
StateVector MakeState (SpaceLabel space, std::vector<Complex> amplitudes);

/// Product basis state with the given per-subsystem levels.
StateVector BasisState (SpaceLabel space, std::initializer_list<std::size_t> levels);

/// Wraps amplitudes that are already normalized (outputs of unitaries and
/// permutations). Checks the norm against kExactTol but does not rescale.
StateVector FromUnitaryImage (SpaceLabel space, std::vector<Complex> amplitudes);

/// s1 ⊗ s2; subsystem order is s1's followed by s2's.
StateVector Tensor (const StateVector &s1, const StateVector &s2);

/// Square matrix on a single subsystem of dimension Dim().
class Operator
{
public:
  Operator () = default;
  explicit Operator (std::size_t dim);
  Operator (std::size_t dim, std::vector<Complex> rowMajor);

  static Operator Identity (std::size_t dim);

  std::size_t Dim () const { return m_dim; }
  Complex operator() (std::size_t row, std::size_t col) const { return m_m[row * m_dim + col]; }
  Complex &operator() (std::size_t row, std::size_t col) { return m_m[row * m_dim + col]; }

  Operator Adjoint () const;
  /// Matrix product: (*this) * rhs, i.e. rhs acts first.
  Operator operator* (const Operator &rhs) const;

  /// max |(U†U − I)_ij|
  double UnitarityError () const;
  /// max |A_ij − B_ij|
  double MaxAbsDiff (const Operator &other) const;

private:
  std::size_t m_dim = 0;
  std::vector<Complex> m_m;
};

/**
 * Two-level rotation between levels u and v of a dim-level system:
 *
 *   |u> -> cos(area/2)|u> - i e^{-i phase} sin(area/2)|v>
 *   |v> -> -i e^{i phase} sin(area/2)|u> + cos(area/2)|v>
 *
 * Identity on every other level.
 */
Operator TwoLevelRotation (std::size_t dim, std::size_t u, std::size_t v, double area, double phase);

/// Applies `op` to subsystem `target`, identity elsewhere.
StateVector Apply (const StateVector &state, const Operator &op, std::string_view target);

/// Total population of `levels` on subsystem `target`.
double Population (const StateVector &state, std::string_view target, std::span<const std::size_t> levels);

enum class Projection
{
  In,
  Out
};

struct MeasureResult
{
  Projection outcome;
  double probability;     ///< probability of `outcome`
  StateVector collapsed;  ///< renormalized post-measurement state
};

/// Projective two-outcome measurement {P_levels, 1 − P_levels}, outcome drawn from `rng`.
MeasureResult ProjectMeasure (const StateVector &state, std::string_view target,
                              std::span<const std::size_t> levels, Rng &rng);

/// Same measurement with the outcome imposed. Throws std::domain_error if
/// that outcome has probability below 1e-15.
MeasureResult ProjectMeasure (const StateVector &state, std::string_view target,
                              std::span<const std::size_t> levels, Projection forced);

/// Unnormalized remainder (<bra|_target ⊗ I) |state> on the other subsystems.
struct Slice
{
  SpaceLabel space;
  std::vector<Complex> amplitudes;
  double Weight () const;
};

Slice Contract (const StateVector &state, std::string_view target, std::span<const Complex> bra);

/// Conditions on subsystem `target` being in basis level `level` and drops it.
/// Throws std::domain_error if that level is unpopulated.
StateVector ConditionOn (const StateVector &state, std::string_view target, std::size_t level);

/// |<a|b>|^2. Throws std::invalid_argument if the spaces differ.
double Fidelity (const StateVector &a, const StateVector &b);

} // namespace bellnet

#endif
