#include "waybell/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace waybell::quantum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHermitianTol = 1e-10;
constexpr double kNormTol = 1e-12;

// <v| m |v> without any Hermiticity requirement; may be complex.
Complex bilinear_form(const ComplexMatrix& m, std::span<const Complex> v) {
  Complex acc{};
  for (int i = 0; i < m.dim(); ++i) {
    Complex row{};
    for (int j = 0; j < m.dim(); ++j) {
      row += m.at(i, j) * v[static_cast<std::size_t>(j)];
    }
    acc += std::conj(v[static_cast<std::size_t>(i)]) * row;
  }
  return acc;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::conj(a[i]) * b[i];
  }
  return acc;
}

std::array<Complex, 4> product_state(const std::array<Complex, 2>& first,
                                     const std::array<Complex, 2>& second) {
  return {first[0] * second[0], first[0] * second[1], first[1] * second[0],
          first[1] * second[1]};
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim <= 0) {
    throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  }
  entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{});
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m.at(i, i) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      m.at(i, j) = std::conj(at(j, i));
    }
  }
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) {
        return false;
      }
    }
  }
  return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) {
    throw std::invalid_argument("matrix addition: dimension mismatch");
  }
  ComplexMatrix m(a.dim_);
  for (std::size_t i = 0; i < m.entries_.size(); ++i) {
    m.entries_[i] = a.entries_[i] + b.entries_[i];
  }
  return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) {
    throw std::invalid_argument("matrix subtraction: dimension mismatch");
  }
  ComplexMatrix m(a.dim_);
  for (std::size_t i = 0; i < m.entries_.size(); ++i) {
    m.entries_[i] = a.entries_[i] - b.entries_[i];
  }
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) {
    throw std::invalid_argument("matrix product: dimension mismatch");
  }
  ComplexMatrix m(a.dim_);
  for (int i = 0; i < a.dim_; ++i) {
    for (int k = 0; k < a.dim_; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{}) {
        continue;
      }
      for (int j = 0; j < a.dim_; ++j) {
        m.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return m;
}

ComplexMatrix operator*(Complex scale, const ComplexMatrix& m) {
  ComplexMatrix out(m.dim_);
  for (std::size_t i = 0; i < out.entries_.size(); ++i) {
    out.entries_[i] = scale * m.entries_[i];
  }
  return out;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2);
  m.at(0, 1) = Complex{0.0, -1.0};
  m.at(1, 0) = Complex{0.0, 1.0};
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

ComplexMatrix spin_observable(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("spin_observable: alpha must be finite");
  }
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  ComplexMatrix m(2);
  m.at(0, 0) = c;
  m.at(0, 1) = s;
  m.at(1, 0) = s;
  m.at(1, 1) = -c;
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      for (int k = 0; k < b.dim(); ++k) {
        for (int l = 0; l < b.dim(); ++l) {
          m.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
        }
      }
    }
  }
  return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix total_jy() {
  const ComplexMatrix sy = pauli_y();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return Complex{0.5, 0.0} * (tensor(sy, id) + tensor(id, sy));
}

TwoQubitState TwoQubitState::bell(StateKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  TwoQubitState state;
  state.kind = kind;
  switch (kind) {
    case StateKind::singlet:
      state.amplitudes = {Complex{}, Complex{r}, Complex{-r}, Complex{}};
      return state;
    case StateKind::triplet_psi_plus:
      state.amplitudes = {Complex{}, Complex{r}, Complex{r}, Complex{}};
      return state;
    case StateKind::triplet_phi_minus:
      state.amplitudes = {Complex{r}, Complex{}, Complex{}, Complex{-r}};
      return state;
    case StateKind::custom:
      break;
  }
  throw std::invalid_argument(
      "bell: custom states are built from explicit amplitudes");
}

TwoQubitState TwoQubitState::custom(const std::array<Complex, 4>& amplitudes) {
  TwoQubitState state;
  state.kind = StateKind::custom;
  state.amplitudes = amplitudes;
  if (std::abs(state.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("custom state is not normalized");
  }
  return state;
}

double TwoQubitState::norm() const {
  double n2 = 0.0;
  for (const Complex& a : amplitudes) {
    n2 += std::norm(a);
  }
  return std::sqrt(n2);
}

double fold_angle(double angle) {
  double folded = std::fmod(angle, 2.0 * kPi);
  if (folded < 0.0) {
    folded += 2.0 * kPi;
  }
  return folded;
}

double MeasurementAngles::theta() const { return fold_angle(std::abs(alpha - beta)); }

double expectation(const ComplexMatrix& obs, std::span<const Complex> state) {
  if (state.size() != static_cast<std::size_t>(obs.dim())) {
    throw std::invalid_argument("expectation: observable/state dimension mismatch");
  }
  if (!obs.is_hermitian(kHermitianTol)) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  const Complex value = bilinear_form(obs, state);
  if (std::abs(value.imag()) > kHermitianTol) {
    throw std::runtime_error("expectation: imaginary residue exceeds tolerance");
  }
  return value.real();
}

double expectation(const ComplexMatrix& obs, const TwoQubitState& state) {
  return expectation(obs, std::span<const Complex>{state.amplitudes});
}

double qm_correlation(StateKind kind, double alpha, double beta) {
  const TwoQubitState state = TwoQubitState::bell(kind);
  return expectation(tensor(spin_observable(alpha), spin_observable(beta)), state);
}

double delta_L_state(StateKind kind) {
  const TwoQubitState state = TwoQubitState::bell(kind);
  const ComplexMatrix jy = total_jy();
  const std::span<const Complex> amps{state.amplitudes};
  const double first = bilinear_form(jy, amps).real();
  const double second = bilinear_form(jy * jy, amps).real();
  return std::sqrt(std::max(second - first * first, 0.0));
}

std::array<Complex, 2> spin_eigenstate(double alpha, int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("spin_eigenstate: outcome must be +1 or -1");
  }
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);
  if (outcome == 1) {
    return {Complex{c}, Complex{s}};
  }
  return {Complex{-s}, Complex{c}};
}

double way_numerator(StateKind kind, double alpha, double beta) {
  if (kind != StateKind::singlet) {
    throw std::invalid_argument("way_numerator: only the singlet ensemble is supported");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("way_numerator: angles must be finite");
  }
  const TwoQubitState psi = TwoQubitState::bell(kind);
  const std::span<const Complex> psi_amps{psi.amplitudes};
  const ComplexMatrix jy = total_jy();
  const ComplexMatrix pointer_comm =
      commutator(tensor(spin_observable(alpha), spin_observable(alpha)), jy);
  const ComplexMatrix target_comm =
      commutator(tensor(spin_observable(alpha), spin_observable(beta)), jy);

  const Complex pre = bilinear_form(target_comm, psi_amps);

  Complex post{};
  Complex branch_average{};
  double weight = 0.0;
  for (int outcome : {1, -1}) {
    const std::array<Complex, 4> branch =
        product_state(spin_eigenstate(alpha, outcome), spin_eigenstate(beta, -outcome));
    const std::span<const Complex> branch_span{branch};
    const double born = std::norm(inner(branch_span, psi_amps));
    const Complex value = bilinear_form(pointer_comm, branch_span);
    post += born * value;
    branch_average += 0.5 * value;
    weight += born;
  }
  // At theta = pi both anticorrelated branches have zero Born weight; the
  // renormalized ensemble degenerates to the plain branch average.
  post = weight > 1e-30 ? post / weight : branch_average;

  return std::abs(post - pre);
}

}  // namespace waybell::quantum
