#include "spectral4/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "spectral4/errors.hpp"
#include "spectral4/regularization.hpp"

namespace spectral4 {

namespace {

// Dormand-Prince 8(5,3) tableau (Hairer, Norsett & Wanner).
namespace dop853 {
constexpr std::array<double, 12> c = {0.0,
                                      0.526001519587677318785587544488e-01,
                                      0.789002279381515978178381316732e-01,
                                      0.118350341907227396726757197510e+00,
                                      0.281649658092772603273242802490e+00,
                                      0.333333333333333333333333333333e+00,
                                      0.25e+00,
                                      0.307692307692307692307692307692e+00,
                                      0.651282051282051282051282051282e+00,
                                      0.6e+00,
                                      0.857142857142857142857142857142e+00,
                                      1.0};

constexpr double a[12][12] = {
    {},
    {5.26001519587677318785587544488e-2},
    {1.97250569845378994544595329183e-2, 5.91751709536136983633785987549e-2},
    {2.95875854768068491816892993775e-2, 0.0, 8.87627564304205475450678981324e-2},
    {2.41365134159266685502369798665e-1, 0.0, -8.84549479328286085344864962717e-1,
     9.24834003261792003115737966543e-1},
    {3.7037037037037037037037037037e-2, 0.0, 0.0, 1.70828608729473871279604482173e-1,
     1.25467687566822425016691814123e-1},
    {3.7109375e-2, 0.0, 0.0, 1.70252211019544039314978060272e-1, 6.02165389804559606850219397283e-2,
     -1.7578125e-2},
    {3.70920001185047927108779319836e-2, 0.0, 0.0, 1.70383925712239993810214054705e-1,
     1.07262030446373284651809199168e-1, -1.53194377486244017527936158236e-2,
     8.27378916381402288758473766002e-3},
    {6.24110958716075717114429577812e-1, 0.0, 0.0, -3.36089262944694129406857109825e0,
     -8.68219346841726006818189891453e-1, 2.75920996994467083049415600797e1, 2.01540675504778934086186788979e1,
     -4.34898841810699588477366255144e1},
    {4.77662536438264365890433908527e-1, 0.0, 0.0, -2.48811461997166764192642586468e0,
     -5.90290826836842996371446475743e-1, 2.12300514481811942347288949897e1, 1.52792336328824235832596922938e1,
     -3.32882109689848629194453265587e1, -2.03312017085086261358222928593e-2},
    {-9.3714243008598732571704021658e-1, 0.0, 0.0, 5.18637242884406370830023853209e0,
     1.09143734899672957818500254654e0, -8.14978701074692612513997267357e0, -1.85200656599969598641566180701e1,
     2.27394870993505042818970056734e1, 2.49360555267965238987089396762e0, -3.0467644718982195003823669022e0},
    {2.27331014751653820792359768449e0, 0.0, 0.0, -1.05344954667372501984066689879e1,
     -2.00087205822486249909675718444e0, -1.79589318631187989172765950534e1, 2.79488845294199600508499808837e1,
     -2.85899827713502369474065508674e0, -8.87285693353062954433549289258e0, 1.23605671757943030647266201528e1,
     6.43392746015763530355970484046e-1},
};

constexpr std::array<double, 12> b = {5.42937341165687622380535766363e-2,
                                      0.0,
                                      0.0,
                                      0.0,
                                      0.0,
                                      4.45031289275240888144113950566e0,
                                      1.89151789931450038304281599044e0,
                                      -5.8012039600105847814672114227e0,
                                      3.1116436695781989440891606237e-1,
                                      -1.52160949662516078556178806805e-1,
                                      2.01365400804030348374776537501e-1,
                                      4.47106157277725905176885569043e-2};

// Fifth-order error weights.
constexpr std::array<double, 12> e5 = {0.1312004499419488073250102996e-01,
                                       0.0,
                                       0.0,
                                       0.0,
                                       0.0,
                                       -0.1225156446376204440720569753e+01,
                                       -0.4957589496572501915214079952e+00,
                                       0.1664377182454986536961530415e+01,
                                       -0.3503288487499736816886487290e+00,
                                       0.3341791187130174790297318841e+00,
                                       0.8192320648511571246570742613e-01,
                                       -0.2235530786388629525884427845e-01};

// Third-order embedded weights on stages 1, 9, 12.
constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;
}  // namespace dop853

constexpr double kRenormHigh = 1e2;
constexpr double kRenormLow = 1e-2;

// Linear system Y' = M(x) Y on [0,1], where Y stacks a primary block of
// `n` rows and, optionally, its lambda-derivative block:
//   M = [[G, 0], [G_lambda, G]].
// G(x) is rebuilt at every stage from the associated matrix.
class LinearFlow {
 public:
  LinearFlow(const Primitives& p, Complex lambda, const ExteriorPower* ext, bool with_derivative, double tol)
      : p_(p), lambda_(lambda), ext_(ext), with_derivative_(with_derivative), tol_(tol) {
    if (!(tol > 0.0)) throw InputError("integration tolerance must be positive");
    n_ = ext_ ? ext_->dim() : 4;
    const double r = rho_balance(lambda);
    weights_.resize(n_);
    for (int i = 0; i < n_; ++i) weights_[i] = std::pow(r, -(ext_ ? ext_->degree(i) : i));
    Matrix4c e41 = Matrix4c::Zero();
    e41(3, 0) = 1.0;
    if (ext_)
      ext_->compound(e41, g_lambda_);
    else
      g_lambda_ = e41;
  }

  // Returns the scaled state at x = 1; y holds the initial data on entry.
  double run(MatrixXc& y) {
    const int rows = static_cast<int>(y.rows());
    const int cols = static_cast<int>(y.cols());
    for (auto& k : k_) k.resize(rows, cols);
    y_stage_.resize(rows, cols);
    y_new_.resize(rows, cols);

    double log_scale = 0.0;
    renormalize(y, log_scale, true);

    double h = std::min(0.05, 0.5 / (1.0 + std::pow(std::abs(lambda_), 0.25)));
    std::size_t steps = 0;
    for (std::size_t cell = 0; cell < p_.cells(); ++cell) {
      const double x0 = p_.node(cell);
      const double x1 = (cell + 1 == p_.cells()) ? 1.0 : p_.node(cell + 1);
      const double width = x1 - x0;
      double x = x0;
      while (x < x1) {
        bool last = false;
        double step = h;
        if (x + step >= x1 - 1e-14 * width) {
          step = x1 - x;
          last = true;
        }
        if (step < 1e-13 * std::max(1.0, std::abs(x)) || ++steps > kMaxSteps)
          throw IntegrationError("step size underflow in the fundamental-system integrator", x);

        const double err = attempt(cell, x0, width, x, step, y);
        const double fac11 = std::pow(std::max(err, 1e-300), 0.125);
        double fac = std::clamp(fac11 / 0.9, 1.0 / 6.0, 1.0 / 0.333);
        if (err <= 1.0) {
          y.swap(y_new_);
          renormalize(y, log_scale, false);
          x = last ? x1 : x + step;
          const double proposal = step / fac;
          // A step clipped to a cell boundary says nothing about the next cell.
          h = last ? std::max(h, proposal) : proposal;
        } else {
          h = step / std::min(1.0 / 0.333, fac11 / 0.9);
        }
      }
    }
    normalize_to_unit(y, log_scale);
    return log_scale;
  }

 private:
  static constexpr std::size_t kMaxSteps = 5'000'000;

  void generator(std::size_t cell, double t, MatrixXc& g) const {
    Matrix4c a = assemble_F_in_cell(p_, cell, t);
    a(3, 0) += lambda_;
    if (ext_)
      ext_->compound(a, g);
    else
      g = a;
  }

  void apply(std::size_t cell, double t, const MatrixXc& y, MatrixXc& out) {
    generator(cell, t, g_);
    if (!with_derivative_) {
      out.noalias() = g_ * y;
      return;
    }
    out.topRows(n_).noalias() = g_ * y.topRows(n_);
    out.bottomRows(n_).noalias() = g_ * y.bottomRows(n_);
    out.bottomRows(n_).noalias() += g_lambda_ * y.topRows(n_);
  }

  // One DOP853 step from x with size `step`; fills y_new_ and returns the
  // scaled error estimate (accept if <= 1).
  double attempt(std::size_t cell, double x0, double width, double x, double step, const MatrixXc& y) {
    using namespace dop853;
    const auto local = [&](double xx) { return std::clamp((xx - x0) / width, 0.0, 1.0); };
    apply(cell, local(x), y, k_[0]);
    for (int s = 1; s < 12; ++s) {
      y_stage_ = y;
      for (int j = 0; j < s; ++j)
        if (a[s][j] != 0.0) y_stage_ += (step * a[s][j]) * k_[j];
      apply(cell, local(x + c[s] * step), y_stage_, k_[s]);
    }
    y_new_ = y;
    MatrixXc incr = MatrixXc::Zero(y.rows(), y.cols());
    for (int s = 0; s < 12; ++s)
      if (b[s] != 0.0) incr += b[s] * k_[s];
    y_new_ += step * incr;

    MatrixXc err5 = MatrixXc::Zero(y.rows(), y.cols());
    for (int s = 0; s < 12; ++s)
      if (e5[s] != 0.0) err5 += e5[s] * k_[s];
    MatrixXc err3 = incr - bhh1 * k_[0] - bhh2 * k_[8] - bhh3 * k_[11];

    double sum5 = 0.0, sum3 = 0.0;
    const int blocks = with_derivative_ ? 2 : 1;
    for (int blk = 0; blk < blocks; ++blk) {
      for (int col = 0; col < y.cols(); ++col) {
        double ref = 0.0;
        for (int i = 0; i < n_; ++i) {
          const int r = blk * n_ + i;
          ref = std::max(ref, weights_[i] * std::max(std::abs(y(r, col)), std::abs(y_new_(r, col))));
        }
        if (ref == 0.0) continue;
        for (int i = 0; i < n_; ++i) {
          const int r = blk * n_ + i;
          const double sk = tol_ * ref / weights_[i];
          sum5 += std::norm(err5(r, col)) / (sk * sk);
          sum3 += std::norm(err3(r, col)) / (sk * sk);
        }
      }
    }
    double deno = sum5 + 0.01 * sum3;
    if (deno <= 0.0) deno = 1.0;
    const double count = static_cast<double>(y.size());
    return std::abs(step) * sum5 * std::sqrt(1.0 / (count * deno));
  }

  double primary_norm(const MatrixXc& y) const {
    double norm = 0.0;
    for (int c = 0; c < y.cols(); ++c)
      for (int i = 0; i < n_; ++i) norm = std::max(norm, std::abs(y(i, c)));
    return norm;
  }

  void renormalize(MatrixXc& y, double& log_scale, bool force) const {
    const double norm = primary_norm(y);
    if (norm == 0.0 || !std::isfinite(norm)) return;
    if (force || norm > kRenormHigh || norm < kRenormLow) {
      y /= norm;
      log_scale += std::log(norm);
    }
  }

  void normalize_to_unit(MatrixXc& y, double& log_scale) const { renormalize(y, log_scale, true); }

  const Primitives& p_;
  Complex lambda_;
  const ExteriorPower* ext_;
  bool with_derivative_;
  double tol_;
  int n_ = 4;
  std::vector<double> weights_;
  MatrixXc g_;
  MatrixXc g_lambda_;
  std::array<MatrixXc, 12> k_;
  MatrixXc y_stage_;
  MatrixXc y_new_;
};

}  // namespace

double rho_balance(Complex lambda) { return std::max(1.0, std::pow(std::abs(lambda), 0.25)); }

double ScaledMatrixSolution::liouville_defect() const {
  return std::log(std::abs(m.determinant())) + 4.0 * log_scale;
}

ScaledMatrixSolution integrate_fundamental_from(const Primitives& p, Complex lambda, const Matrix4c& initial,
                                                double tol) {
  LinearFlow flow(p, lambda, nullptr, false, tol);
  MatrixXc y = initial;
  ScaledMatrixSolution out;
  out.log_scale = flow.run(y);
  out.m = y;
  return out;
}

ScaledMatrixSolution integrate_fundamental(const Primitives& p, Complex lambda, double tol) {
  return integrate_fundamental_from(p, lambda, Matrix4c::Identity(), tol);
}

FundamentalWithDerivative integrate_with_lambda_derivative(const Primitives& p, Complex lambda, double tol) {
  LinearFlow flow(p, lambda, nullptr, true, tol);
  MatrixXc y = MatrixXc::Zero(8, 4);
  y.topRows(4) = Matrix4c::Identity();
  FundamentalWithDerivative out;
  out.sol.log_scale = flow.run(y);
  out.sol.m = y.topRows(4);
  out.dsol = y.bottomRows(4);
  return out;
}

ScaledForm integrate_form(const Primitives& p, Complex lambda, const ExteriorPower& ext, const VectorXc& initial,
                          bool with_derivative, double tol) {
  if (initial.size() != ext.dim()) throw InputError("integrate_form: initial k-vector has the wrong dimension");
  LinearFlow flow(p, lambda, &ext, with_derivative, tol);
  MatrixXc y = MatrixXc::Zero(with_derivative ? 2 * ext.dim() : ext.dim(), 1);
  y.topRows(ext.dim()) = initial;
  ScaledForm out;
  out.log_scale = flow.run(y);
  out.components = y.topRows(ext.dim());
  if (with_derivative) out.derivative = y.bottomRows(ext.dim());
  return out;
}

}  // namespace spectral4
