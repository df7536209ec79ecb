#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace waybell::quantum {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for the 2x2 / 4x4 spin
/// algebra used throughout; not a general linear-algebra type.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }

  Complex& at(int row, int col) { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
  const Complex& at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;
  double max_abs_diff(const ComplexMatrix& other) const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex scale, const ComplexMatrix& m);

 private:
  int dim_;
  std::vector<Complex> entries_;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// sin(alpha) sigma_x + cos(alpha) sigma_z: spin observable along the
/// xz-plane axis at angle alpha from z. Hermitian, squares to identity.
ComplexMatrix spin_observable(double alpha);

/// Kronecker product; dim(result) = dim(a) * dim(b).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// a b - b a. Anti-Hermitian whenever a and b are Hermitian.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// y component of total angular momentum, (sigma_y (x) I + I (x) sigma_y) / 2,
/// in units of hbar.
ComplexMatrix total_jy();

enum class StateKind { singlet, triplet_psi_plus, triplet_phi_minus, custom };

/// Pure two-qubit state with amplitudes in basis order |00>, |01>, |10>, |11>.
struct TwoQubitState {
  std::array<Complex, 4> amplitudes{};
  StateKind kind = StateKind::custom;

  /// Singlet or one of the two unit-spin triplets. Throws for custom.
  static TwoQubitState bell(StateKind kind);
  /// Custom state from explicit amplitudes; must be normalized within 1e-12.
  static TwoQubitState custom(const std::array<Complex, 4>& amplitudes);

  double norm() const;
};

/// Fold an angle into [0, 2pi).
double fold_angle(double angle);

/// Detector-angle pair; theta is always derived, never stored.
struct MeasurementAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double theta() const;  // |alpha - beta| folded to [0, 2pi)
};

/// <state|obs|state> for a Hermitian observable. The residual imaginary part
/// must be below 1e-10 and is discarded.
double expectation(const ComplexMatrix& obs, std::span<const Complex> state);
double expectation(const ComplexMatrix& obs, const TwoQubitState& state);

/// <state| sigma_alpha (x) sigma_beta |state>. For the singlet this equals
/// -cos(alpha - beta).
double qm_correlation(StateKind kind, double alpha, double beta);

/// Standard deviation of total J_y in the given Bell state: 0 for the
/// singlet, 1 for both triplets.
double delta_L_state(StateKind kind);

/// Magnitude of the conservation commutator difference between the
/// post-measurement outcome ensemble and the initial state:
///   | <[sigma_a (x) sigma_a, J_y]>_post - <[sigma_a (x) sigma_b, J_y]>_pre |.
/// The post ensemble mixes the two anticorrelated outcome states
/// |alpha^+- > (x) |beta^-+ > with renormalized Born weights; the probe
/// records which branch occurred, so branches add incoherently. For the
/// singlet the result equals |sin(alpha - beta)|. Only the singlet is
/// supported.
double way_numerator(StateKind kind, double alpha, double beta);

/// Eigenvector of spin_observable(alpha) with eigenvalue +1 (outcome = +1)
/// or -1 (outcome = -1).
std::array<Complex, 2> spin_eigenstate(double alpha, int outcome);

}  // namespace waybell::quantum
