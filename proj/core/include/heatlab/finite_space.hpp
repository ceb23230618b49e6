#pragma once

// Finite weighted state space: probability weights m, symmetric conductances
// w, the graph Dirichlet form E(f,g) = 1/2 sum_{x,y} w(x,y) df dg, and the
// associated semigroup T_t = exp(tL) with Lf(x) = (1/m(x)) sum_y w(x,y)
// (f(y)-f(x)), evaluated through the dense spectral decomposition of the
// m-symmetrized generator (cached eagerly at construction).
//
// Note: this graph form is Markovian but NOT local, so it deliberately
// violates the diffusion-type hypothesis of the continuum estimates; the
// davies module carries the corresponding expected-failure check.

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace heatlab {

using FieldFn = Eigen::VectorXd;
using StateSet = std::vector<int>;

class FiniteWeightedSpace {
 public:
  // m: positive weights summing to 1 (1e-12); w: symmetric, nonnegative,
  // zero diagonal, connected. Throws std::invalid_argument otherwise.
  FiniteWeightedSpace(Eigen::VectorXd m, Eigen::MatrixXd w);

  int size() const { return n_; }
  const Eigen::VectorXd& mass() const { return m_; }
  const Eigen::MatrixXd& conductance() const { return w_; }

  double total_mass(const StateSet& A) const;
  FieldFn indicator(const StateSet& A) const;
  FieldFn constant(double c) const { return FieldFn::Constant(n_, c); }

  // Generator eigensystem in L^2(m): L = M^{-1/2} S M^{1/2} with S symmetric;
  // eigenvalues are <= 0 with 0 simple (connected graph).
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

  // T_t f = exp(tL) f. t >= 0.
  FieldFn semigroup_apply(double t, const FieldFn& f) const;

  // P_t(A,B) = <1_A, T_t 1_B>_{L^2(m)}. Symmetric in A,B. t > 0.
  // Empty A or B yields 0; *empty_flag is set if provided.
  double pt_mass(const StateSet& A, const StateSet& B, double t,
                 bool* empty_flag = nullptr) const;

  // P(X_{t_0} in A_0, ..., X_{t_n} in A_n) for the stationary chain started
  // in m: alternating semigroup steps and indicator masks.
  double fdd_mass(const std::vector<double>& times,
                  const std::vector<StateSet>& sets) const;

  void check_field(const FieldFn& f) const;
  void check_set(const StateSet& A) const;

  // Two-state space m=(1/2,1/2), w(a,b)=1: the standing small example.
  static FiniteWeightedSpace two_state();

  // Path graph with N vertices discretizing [0,1], calibrated so that
  // Gamma(f)(x_i) -> sigma^2 f'(x_i)^2 at interior vertices and the
  // endpoint intrinsic distance converges to 1/sigma:
  //   m_i = 1/N,  w_{i,i+1} = sigma^2 (N-1)^2 / (2N).
  // (Interior: Gamma = N.w.((f' h)^2 + (f' h)^2) = sigma^2 f'^2 with
  // h = 1/(N-1); the boundary vertex sees only one edge, giving an O(1/N)
  // one-sided deficit that vanishes under refinement.)
  static FiniteWeightedSpace path_graph(int N, double sigma);

 private:
  int n_;
  Eigen::VectorXd m_;
  Eigen::MatrixXd w_;
  Eigen::VectorXd sqrt_m_;
  Eigen::VectorXd evals_;    // eigenvalues of the symmetrized generator
  Eigen::MatrixXd evecs_;    // orthonormal eigenvectors (columns)
};

// Dirichlet form E(f,g) = 1/2 sum_{x,y} w(x,y)(f(x)-f(y))(g(x)-g(y)).
double energy(const FiniteWeightedSpace& space, const FieldFn& f,
              const FieldFn& g);

// I(f,g;h) = E(gh,f) + E(fh,g) - E(fg,h), computed literally.
double i_functional(const FiniteWeightedSpace& space, const FieldFn& f,
                    const FieldFn& g, const FieldFn& h);

// Energy density Gamma(f)(x) = (1/m(x)) sum_y w(x,y)(f(x)-f(y))^2, the
// field with I(f,f;h) = sum_x h(x) Gamma(f)(x) m(x) for every h.
FieldFn gamma_density(const FiniteWeightedSpace& space, const FieldFn& f);

// Membership in the intrinsic-metric test class: max_x Gamma(f)(x) <= 1+tol.
bool in_D0(const FiniteWeightedSpace& space, const FieldFn& f, double tol);

}  // namespace heatlab
