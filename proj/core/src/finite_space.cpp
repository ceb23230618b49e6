#include "heatlab/finite_space.hpp"

#include <cmath>
#include <queue>

namespace heatlab {

namespace {

constexpr int kMaxStates = 2048;  // dense spectral decomposition cap

void check_connected(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y = 0; y < n; ++y) {
      if (!seen[y] && w(x, y) > 0.0) {
        seen[y] = 1;
        ++count;
        q.push(y);
      }
    }
  }
  if (count != n) {
    throw std::invalid_argument("conductance graph is not connected");
  }
}

}  // namespace

FiniteWeightedSpace::FiniteWeightedSpace(Eigen::VectorXd m, Eigen::MatrixXd w)
    : n_(static_cast<int>(m.size())), m_(std::move(m)), w_(std::move(w)) {
  if (n_ < 1 || n_ > kMaxStates) {
    throw std::invalid_argument("state count out of range");
  }
  if (w_.rows() != n_ || w_.cols() != n_) {
    throw std::invalid_argument("conductance table has wrong shape");
  }
  if (std::abs(m_.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("state masses must sum to 1");
  }
  for (int x = 0; x < n_; ++x) {
    if (!(m_(x) > 0.0) || !std::isfinite(m_(x))) {
      throw std::invalid_argument("state masses must be positive and finite");
    }
    if (w_(x, x) != 0.0) {
      throw std::invalid_argument("conductance diagonal must be zero");
    }
    for (int y = 0; y < n_; ++y) {
      if (w_(x, y) != w_(y, x)) {
        throw std::invalid_argument("conductance table must be symmetric");
      }
      if (w_(x, y) < 0.0 || !std::isfinite(w_(x, y))) {
        throw std::invalid_argument("conductances must be nonnegative finite");
      }
    }
  }
  if (n_ > 1) check_connected(w_);

  sqrt_m_ = m_.cwiseSqrt();

  // Symmetrized generator S = M^{-1/2} (W - D) M^{-1/2}, D = diag(row sums).
  Eigen::VectorXd deg = w_.rowwise().sum();
  Eigen::MatrixXd S = w_;
  S -= deg.asDiagonal();
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      S(x, y) /= sqrt_m_(x) * sqrt_m_(y);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectral decomposition failed");
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

void FiniteWeightedSpace::check_field(const FieldFn& f) const {
  if (f.size() != n_) {
    throw std::invalid_argument("field length does not match state count");
  }
  if (!f.allFinite()) {
    throw std::invalid_argument("field values must be finite");
  }
}

void FiniteWeightedSpace::check_set(const StateSet& A) const {
  for (int x : A) {
    if (x < 0 || x >= n_) {
      throw std::invalid_argument("state index out of range");
    }
  }
}

double FiniteWeightedSpace::total_mass(const StateSet& A) const {
  check_set(A);
  double s = 0.0;
  for (int x : A) s += m_(x);
  return s;
}

FieldFn FiniteWeightedSpace::indicator(const StateSet& A) const {
  check_set(A);
  FieldFn f = FieldFn::Zero(n_);
  for (int x : A) f(x) = 1.0;
  return f;
}

FieldFn FiniteWeightedSpace::semigroup_apply(double t, const FieldFn& f) const {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be >= 0");
  check_field(f);
  // T_t = M^{-1/2} V e^{t Lambda} V^T M^{1/2}
  Eigen::VectorXd c = evecs_.transpose() * (sqrt_m_.asDiagonal() * f);
  c.array() *= (t * evals_.array()).exp();
  return (evecs_ * c).cwiseQuotient(sqrt_m_);
}

double FiniteWeightedSpace::pt_mass(const StateSet& A, const StateSet& B,
                                    double t, bool* empty_flag) const {
  if (!(t > 0.0)) throw std::invalid_argument("pt_mass needs t > 0");
  check_set(A);
  check_set(B);
  if (empty_flag) *empty_flag = A.empty() || B.empty();
  if (A.empty() || B.empty()) return 0.0;
  FieldFn u = semigroup_apply(t, indicator(B));
  double s = 0.0;
  for (int x : A) s += m_(x) * u(x);
  return s;
}

double FiniteWeightedSpace::fdd_mass(const std::vector<double>& times,
                                     const std::vector<StateSet>& sets) const {
  if (times.size() != sets.size() || times.size() < 2) {
    throw std::invalid_argument("fdd_mass needs one set per time, n >= 1");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("fdd_mass times must be strictly increasing");
    }
  }
  for (const auto& A : sets) {
    check_set(A);
    if (A.empty()) return 0.0;
  }
  // Backward chain: v <- 1_{A_n}; v <- 1_{A_i} .* T_{dt_i} v.
  FieldFn v = indicator(sets.back());
  for (std::size_t i = sets.size() - 1; i >= 1; --i) {
    v = semigroup_apply(times[i] - times[i - 1], v);
    v = v.cwiseProduct(indicator(sets[i - 1]));
  }
  return m_.dot(v);
}

FiniteWeightedSpace FiniteWeightedSpace::two_state() {
  Eigen::VectorXd m(2);
  m << 0.5, 0.5;
  Eigen::MatrixXd w(2, 2);
  w << 0.0, 1.0, 1.0, 0.0;
  return FiniteWeightedSpace(m, w);
}

FiniteWeightedSpace FiniteWeightedSpace::path_graph(int N, double sigma) {
  if (N < 2) throw std::invalid_argument("path graph needs N >= 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  Eigen::VectorXd m = Eigen::VectorXd::Constant(N, 1.0 / N);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(N, N);
  const double c = sigma * sigma * (N - 1.0) * (N - 1.0) / (2.0 * N);
  for (int i = 0; i + 1 < N; ++i) {
    w(i, i + 1) = c;
    w(i + 1, i) = c;
  }
  return FiniteWeightedSpace(m, w);
}

double energy(const FiniteWeightedSpace& space, const FieldFn& f,
              const FieldFn& g) {
  space.check_field(f);
  space.check_field(g);
  const Eigen::MatrixXd& w = space.conductance();
  const int n = space.size();
  double acc = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (w(x, y) != 0.0) {
        acc += w(x, y) * (f(x) - f(y)) * (g(x) - g(y));
      }
    }
  }
  return acc;  // 1/2 of the double sum = sum over unordered pairs
}

double i_functional(const FiniteWeightedSpace& space, const FieldFn& f,
                    const FieldFn& g, const FieldFn& h) {
  return energy(space, g.cwiseProduct(h), f) +
         energy(space, f.cwiseProduct(h), g) -
         energy(space, f.cwiseProduct(g), h);
}

FieldFn gamma_density(const FiniteWeightedSpace& space, const FieldFn& f) {
  space.check_field(f);
  const Eigen::MatrixXd& w = space.conductance();
  const int n = space.size();
  FieldFn g = FieldFn::Zero(n);
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    for (int y = 0; y < n; ++y) {
      if (w(x, y) != 0.0) {
        const double d = f(x) - f(y);
        acc += w(x, y) * d * d;
      }
    }
    g(x) = acc / space.mass()(x);
  }
  return g;
}

bool in_D0(const FiniteWeightedSpace& space, const FieldFn& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
  return gamma_density(space, f).maxCoeff() <= 1.0 + tol;
}

}  // namespace heatlab
