#include "sopf/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sopf/kkt_factor.hpp"

namespace sopf {

void SolverOptions::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(kkt_tolerance > 0)) fail("kkt_tolerance must be > 0");
  if (!(barrier_initial > 0)) fail("barrier_initial must be > 0");
  if (!(barrier_shrink > 0 && barrier_shrink < 1)) fail("barrier_shrink must lie in (0,1)");
  if (!(fraction_to_boundary > 0 && fraction_to_boundary < 1))
    fail("fraction_to_boundary must lie in (0,1)");
  if (max_iterations < 1) fail("max_iterations must be >= 1");
  if (!(regularization_min > 0) || !(regularization_max >= regularization_min))
    fail("regularization bounds must satisfy 0 < min <= max");
  if (!(bound_relax >= 0)) fail("bound_relax must be >= 0");
  if (!(slack_floor > 0)) fail("slack_floor must be > 0");
}

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible_detected: return "infeasible_detected";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------- DualRecord

DualRecord::DualRecord(std::vector<ConstraintHandle> eq_handles, Eigen::VectorXd eq,
                       std::vector<ConstraintHandle> in_handles, Eigen::VectorXd in)
    : eq_handles_(std::move(eq_handles)),
      in_handles_(std::move(in_handles)),
      eq_(std::move(eq)),
      in_(std::move(in)) {
  if (eq_.size() != static_cast<Eigen::Index>(eq_handles_.size()) ||
      in_.size() != static_cast<Eigen::Index>(in_handles_.size()))
    throw std::invalid_argument("DualRecord: handle/value size mismatch");
  const int me = static_cast<int>(eq_handles_.size());
  index_.reserve(eq_handles_.size() + in_handles_.size());
  for (int i = 0; i < me; ++i) index_.emplace_back(eq_handles_[i], i);
  for (int i = 0; i < static_cast<int>(in_handles_.size()); ++i)
    index_.emplace_back(in_handles_[i], me + i);
  std::stable_sort(index_.begin(), index_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::optional<double> DualRecord::find(const ConstraintHandle& h) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), h,
                             [](const auto& e, const ConstraintHandle& k) { return e.first < k; });
  if (it == index_.end() || it->first != h) return std::nullopt;
  const int row = it->second;
  const int me = static_cast<int>(eq_.size());
  return row < me ? eq_[row] : in_[row - me];
}

double DualRecord::at(const ConstraintHandle& h) const {
  auto v = find(h);
  if (!v) throw std::out_of_range("no multiplier for " + h.to_string());
  return *v;
}

double DualRecord::value_or_zero(const ConstraintHandle& h) const { return find(h).value_or(0.0); }

void DualRecord::set(const ConstraintHandle& h, double value) {
  auto it = std::lower_bound(index_.begin(), index_.end(), h,
                             [](const auto& e, const ConstraintHandle& k) { return e.first < k; });
  if (it == index_.end() || it->first != h)
    throw std::out_of_range("no multiplier for " + h.to_string());
  const int me = static_cast<int>(eq_.size());
  if (it->second < me) eq_[it->second] = value;
  else in_[it->second - me] = value;
}

double DualRecord::lmp(int bus, int t) const {
  return at({RowKind::active_balance, bus, t, RowSide::none});
}

EssMultipliers DualRecord::ess(int n, int t) const {
  auto get = [&](RowKind k) { return value_or_zero({k, n, t, RowSide::none}); };
  EssMultipliers m;
  m.ch1 = get(RowKind::ch_lower);
  m.ch2 = get(RowKind::ch_upper);
  m.dc1 = get(RowKind::dc_lower);
  m.dc2 = get(RowKind::dc_upper);
  m.s1 = get(RowKind::circle_dc);
  m.s2 = get(RowKind::circle_ch);
  m.soc1 = get(RowKind::soc_lower);
  m.soc2 = get(RowKind::soc_upper);
  m.relax = get(RowKind::relax_cut);
  return m;
}

// ---------------------------------------------------------------- residuals

Eigen::VectorXd lagrangian_gradient(const NlpProblem& p, const Eigen::VectorXd& x,
                                    const DualRecord& duals) {
  SparseMatrix je, ji;
  p.jacobians(x, je, ji);
  Eigen::VectorXd r = p.gradient(x);
  if (je.rows() > 0) r += je.transpose() * duals.equality();
  if (ji.rows() > 0) r += ji.transpose() * duals.inequality();
  return r;
}

KktResiduals kkt_residuals(const NlpProblem& p, const Eigen::VectorXd& x,
                           const DualRecord& duals) {
  if (x.size() != p.dimension() || duals.equality().size() != p.equality_count() ||
      duals.inequality().size() != p.inequality_count())
    throw std::invalid_argument("kkt_residuals: dimension mismatch");
  KktResiduals out;
  out.stationarity = lagrangian_gradient(p, x, duals).lpNorm<Eigen::Infinity>();
  Eigen::VectorXd ce, ci;
  p.constraints(x, ce, ci);
  double feas = 0.0;
  if (ce.size() > 0) feas = ce.lpNorm<Eigen::Infinity>();
  for (Eigen::Index i = 0; i < ci.size(); ++i) feas = std::max(feas, ci[i]);
  out.feasibility = feas;
  double comp = 0.0;
  for (Eigen::Index i = 0; i < ci.size(); ++i)
    comp = std::max(comp, std::abs(duals.inequality()[i] * ci[i]));
  out.complementarity = comp;
  return out;
}

// ---------------------------------------------------------------- solver

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kSMax = 100.0;
constexpr double kMuSafeguard = 1e10;  // kappa_Sigma
constexpr double kArmijo = 1e-4;
constexpr double kPenaltyRho = 0.1;
constexpr double kInfeasibleThreshold = 1e-6;
constexpr int kMaxRestorations = 3;
constexpr int kMaxSoc = 4;
constexpr double kMaxConstraintShift = 1e-4;
constexpr double kSocReduction = 0.99;

double inf_norm(const VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }
double one_norm(const VectorXd& v) { return v.size() ? v.lpNorm<1>() : 0.0; }

double violation(const VectorXd& ce, const VectorXd& ci) {
  double v = inf_norm(ce);
  for (Eigen::Index i = 0; i < ci.size(); ++i) v = std::max(v, ci[i]);
  return v;
}

struct Values {
  double f = 0.0;
  VectorXd ce, ci;
};

bool evaluate(const NlpProblem& p, const VectorXd& x, Values& out) {
  try {
    out.f = p.objective(x);
    p.constraints(x, out.ce, out.ci);
  } catch (const EvaluationError&) {
    return false;
  }
  return std::isfinite(out.f) && out.ce.allFinite() && out.ci.allFinite();
}

double max_step(const VectorXd& v, const VectorXd& dv, double tau) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0) alpha = std::min(alpha, -tau * v[i] / dv[i]);
  }
  return alpha;
}

class Solver {
 public:
  Solver(const NlpProblem& p, const SolverOptions& o)
      : p_(p), o_(o), n_(p.dimension()), me_(p.equality_count()), mi_(p.inequality_count()) {
    if (!o_.log_path.empty()) {
      log_.open(o_.log_path);
      if (log_) log_ << "iter\tmu\tobjective\tprimal_inf\tdual_inf\tstep\n";
    }
  }

  SolveResult run(const std::optional<VectorXd>& warm) {
    x_ = warm ? *warm : p_.initial_point();
    if (x_.size() != n_) throw std::invalid_argument("solve: starting point has wrong dimension");
    if (!evaluate(p_, x_, val_)) return finish(SolveStatus::numerical_failure);

    const double gnorm = inf_norm(p_.gradient(x_));
    scale_ = gnorm > 0 ? std::min(1.0, 100.0 / gnorm) : 1.0;
    mu_ = o_.barrier_initial;
    reset_slacks(o_.slack_floor);
    nu_ = VectorXd::Zero(me_);

    for (iter_ = 0; iter_ < o_.max_iterations; ++iter_) {
      derivatives();
      if (converged()) return finish(SolveStatus::optimal);

      while (mu_ > mu_floor() && error(mu_) <= 10.0 * mu_) {
        mu_ = std::max(mu_floor(), std::min(o_.barrier_shrink * mu_, std::pow(mu_, 1.5)));
      }

      if (!compute_step()) return finish(SolveStatus::numerical_failure);
      if (!line_search() || penalty_ > 1e10) {
        const SolveStatus st = restoration();
        if (st != SolveStatus::optimal) return finish(st);
        continue;
      }
    }
    derivatives();
    if (converged()) return finish(SolveStatus::optimal);
    if (violation(val_.ce, val_.ci) > kInfeasibleThreshold) {
      const SolveStatus st = restoration();
      if (st == SolveStatus::infeasible_detected) return finish(st);
    }
    return finish(SolveStatus::max_iter);
  }

 private:
  double mu_floor() const { return o_.kkt_tolerance / 1e4; }

  // The barrier must have reached its floor and the iterate must be centred
  // there, otherwise multipliers of inactive rows stay at the size of the
  // previous mu.
  bool converged() const {
    return mu_ <= mu_floor() && error(0.0) <= o_.kkt_tolerance &&
           violation(val_.ce, val_.ci) <= o_.kkt_tolerance &&
           (mi_ == 0 || s_.cwiseProduct(lambda_).maxCoeff() <= 10.0 * mu_floor());
  }

  void reset_slacks(double floor) {
    s_.resize(mi_);
    for (int i = 0; i < mi_; ++i) s_[i] = std::max(o_.bound_relax - val_.ci[i], floor);
    lambda_ = mu_ * s_.cwiseInverse();
  }

  void derivatives() {
    g_ = scale_ * p_.gradient(x_);
    p_.jacobians(x_, je_, ji_);
    rd_ = g_;
    if (me_) rd_ += je_.transpose() * nu_;
    if (mi_) rd_ += ji_.transpose() * lambda_;
    ri_ = val_.ci - VectorXd::Constant(mi_, o_.bound_relax) + s_;
  }

  // Scaled optimality error of the barrier problem with parameter mu.
  double error(double mu) const {
    const double m = me_ + mi_;
    const double sd =
        m > 0 ? std::max(kSMax, (one_norm(lambda_) + one_norm(nu_)) / m) / kSMax : 1.0;
    const double sc = mi_ > 0 ? std::max(kSMax, one_norm(lambda_) / mi_) / kSMax : 1.0;
    double comp = 0.0;
    for (int i = 0; i < mi_; ++i) comp = std::max(comp, std::abs(s_[i] * lambda_[i] - mu));
    return std::max({inf_norm(rd_) / sd, inf_norm(val_.ce), inf_norm(ri_), comp / sc});
  }

  bool inertia_ok(const Inertia& in) const {
    return in.positive == n_ && in.negative == me_ && in.zero == 0;
  }

  bool compute_step() {
    W_ = p_.lagrangian_hessian(x_, scale_, nu_, lambda_);
    sigma_ = lambda_.cwiseQuotient(s_);
    MatrixXd top = W_;
    if (mi_) {
      Eigen::SparseMatrix<double> jic = ji_;
      Eigen::SparseMatrix<double> prod = jic.transpose() * sigma_.asDiagonal() * jic;
      top += MatrixXd(prod);
    }
    MatrixXd jed = MatrixXd(je_);

    auto assemble = [&](double dw, double dc) {
      MatrixXd K = MatrixXd::Zero(n_ + me_, n_ + me_);
      K.topLeftCorner(n_, n_) = top;
      K.topLeftCorner(n_, n_).diagonal().array() += dw;
      if (me_) {
        K.bottomLeftCorner(me_, n_) = jed;
        K.topRightCorner(n_, me_) = jed.transpose();
        K.bottomRightCorner(me_, me_).diagonal().array() -= dc;
      }
      return K;
    };

    double dw = 0.0, dc = 0.0;
    factor_.factor(assemble(0.0, 0.0));
    if (!inertia_ok(factor_.inertia())) {
      if (factor_.inertia().zero > 0 && me_ > 0) {
        dc = 1e-8 * std::pow(mu_, 0.25);
        factor_.factor(assemble(0.0, dc));
        // Rows made dependent by near-fixed variables need a larger shift.
        while (factor_.inertia().zero > 0 && dc < kMaxConstraintShift) {
          dc *= 100.0;
          factor_.factor(assemble(0.0, dc));
        }
      }
      if (!inertia_ok(factor_.inertia())) {
        const bool first = last_dw_ == 0.0;
        dw = first ? 1e-4 : std::max(o_.regularization_min, last_dw_ / 3.0);
        for (;;) {
          if (dw > o_.regularization_max) return false;
          factor_.factor(assemble(dw, dc));
          if (inertia_ok(factor_.inertia())) break;
          dw *= first ? 100.0 : 8.0;
        }
        last_dw_ = dw;
      }
    }
    dw_ = dw;

    const VectorXd shift = lambda_ - mu_ * s_.cwiseInverse();
    VectorXd rhs(n_ + me_);
    rhs.head(n_) = -rd_;
    if (mi_) rhs.head(n_) -= ji_.transpose() * (sigma_.cwiseProduct(ri_) - shift);
    if (me_) rhs.tail(me_) = -val_.ce;
    const VectorXd sol = factor_.solve(rhs);
    if (!sol.allFinite()) return false;
    dx_ = sol.head(n_);
    dnu_ = sol.tail(me_);
    recover_bound_steps(ri_, shift);
    return true;
  }

  void recover_bound_steps(const VectorXd& ri, const VectorXd& shift) {
    if (mi_) {
      const VectorXd jdx = ji_ * dx_;
      ds_ = -ri - jdx;
      dlambda_ = sigma_.cwiseProduct(jdx + ri) - shift;
    } else {
      ds_.resize(0);
      dlambda_.resize(0);
    }
  }

  double merit(const Values& v, const VectorXd& s) const {
    double barrier = 0.0;
    for (int i = 0; i < mi_; ++i) barrier -= std::log(s[i]);
    const VectorXd ri = v.ci - VectorXd::Constant(mi_, o_.bound_relax) + s;
    return scale_ * v.f + mu_ * barrier + penalty_ * (one_norm(v.ce) + one_norm(ri));
  }

  bool line_search() {
    const double theta = one_norm(val_.ce) + one_norm(ri_);
    double barrier_slope = 0.0;
    for (int i = 0; i < mi_; ++i) barrier_slope -= mu_ * ds_[i] / s_[i];
    const double smooth_slope = g_.dot(dx_) + barrier_slope;
    if (theta > 0) {
      double curv = dx_.dot(W_ * dx_) + dw_ * dx_.squaredNorm();
      if (mi_) curv += ds_.dot(sigma_.cwiseProduct(ds_));
      const double needed = (smooth_slope + 0.5 * std::max(0.0, curv)) / ((1.0 - kPenaltyRho) * theta);
      if (penalty_ < needed) penalty_ = needed + 1.0;
    }
    const double slope = std::min(0.0, smooth_slope - penalty_ * theta);
    const double phi0 = merit(val_, s_);
    const double round = 10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(phi0));

    const double tau = o_.fraction_to_boundary;
    const double alpha_max = mi_ ? max_step(s_, ds_, tau) : 1.0;
    const double alpha_dual = mi_ ? max_step(lambda_, dlambda_, tau) : 1.0;

    Values trial;
    double alpha = alpha_max;
    for (int k = 0; k < 60 && alpha > 1e-16; ++k, alpha *= 0.5) {
      VectorXd xt = x_ + alpha * dx_;
      VectorXd st = s_ + alpha * ds_;
      if (evaluate(p_, xt, trial) && merit(trial, st) <= phi0 + kArmijo * alpha * slope + round) {
        accept(xt, st, trial, alpha, alpha_dual, dnu_, dlambda_);
        return true;
      }
      if (k == 0 && second_order_correction(trial, phi0, slope, round)) return true;
    }
    return false;
  }

  // Up to kMaxSoc corrected steps re-using the current factorization, taken
  // when the full step was rejected. Constraint residuals at each trial
  // point are accumulated into the linearised ones.
  bool second_order_correction(const Values& full, double phi0, double slope, double round) {
    if (me_ + mi_ == 0 || full.ce.size() != me_ || full.ci.size() != mi_) return false;
    const VectorXd dx_keep = dx_, ds_keep = ds_, dl_keep = dlambda_;
    const VectorXd shift = lambda_ - mu_ * s_.cwiseInverse();
    const double tau = o_.fraction_to_boundary;
    VectorXd ri = ri_, ce = val_.ce;
    VectorXd st = s_ + ds_;
    Values trial = full;
    double alpha = 1.0;
    double theta_old = one_norm(val_.ce) + one_norm(ri_);
    for (int k = 0; k < kMaxSoc; ++k) {
      const VectorXd ri_trial = trial.ci - VectorXd::Constant(mi_, o_.bound_relax) + st;
      const double theta_trial = one_norm(trial.ce) + one_norm(ri_trial);
      if (k > 0 && theta_trial > kSocReduction * theta_old) break;
      theta_old = theta_trial;
      ri = alpha * ri + ri_trial;
      ce = alpha * ce + trial.ce;
      VectorXd rhs(n_ + me_);
      rhs.head(n_) = -rd_;
      if (mi_) rhs.head(n_) -= ji_.transpose() * (sigma_.cwiseProduct(ri) - shift);
      if (me_) rhs.tail(me_) = -ce;
      const VectorXd sol = factor_.solve(rhs);
      if (!sol.allFinite()) break;
      dx_ = sol.head(n_);
      const VectorXd dnu = sol.tail(me_);
      recover_bound_steps(ri, shift);
      alpha = mi_ ? max_step(s_, ds_, tau) : 1.0;
      const double alpha_dual = mi_ ? max_step(lambda_, dlambda_, tau) : 1.0;
      const VectorXd xt = x_ + alpha * dx_;
      st = s_ + alpha * ds_;
      if (!evaluate(p_, xt, trial)) break;
      if (merit(trial, st) <= phi0 + kArmijo * slope + round) {
        accept(xt, st, trial, alpha, alpha_dual, dnu, dlambda_);
        return true;
      }
    }
    dx_ = dx_keep;
    ds_ = ds_keep;
    dlambda_ = dl_keep;
    return false;
  }

  void accept(const VectorXd& xt, const VectorXd& st, const Values& v, double alpha,
              double alpha_dual, const VectorXd& dnu, const VectorXd& dlambda) {
    IterationRecord rec;
    rec.iteration = iter_;
    rec.mu = mu_;
    rec.step = alpha;
    rec.min_slack_ratio = 1.0;
    for (int i = 0; i < mi_; ++i) rec.min_slack_ratio = std::min(rec.min_slack_ratio, st[i] / s_[i]);

    x_ = xt;
    val_ = v;
    s_ = st;
    for (int i = 0; i < mi_; ++i) s_[i] = std::max(s_[i], o_.bound_relax - val_.ci[i]);
    if (me_) nu_ += alpha * dnu;
    if (mi_) {
      lambda_ += alpha_dual * dlambda;
      for (int i = 0; i < mi_; ++i) {
        const double lo = mu_ / (kMuSafeguard * s_[i]);
        const double hi = kMuSafeguard * mu_ / s_[i];
        lambda_[i] = std::clamp(lambda_[i], lo, hi);
      }
    }
    rec.min_multiplier = mi_ ? lambda_.minCoeff() : 0.0;
    rec.objective = val_.f;
    rec.primal_infeasibility = violation(val_.ce, val_.ci);
    rec.dual_infeasibility = inf_norm(rd_) / scale_;
    history_.push_back(rec);
    if (log_) {
      log_ << iter_ << '\t' << mu_ << '\t' << rec.objective << '\t' << rec.primal_infeasibility
           << '\t' << rec.dual_infeasibility << '\t' << alpha << '\n';
    }
  }

  // Levenberg-Marquardt on 0.5 ||c_E||^2 + 0.5 ||max(c_I, 0)||^2.
  SolveStatus restoration() {
    if (++restorations_ > kMaxRestorations) return SolveStatus::numerical_failure;
    double lm = 1e-4;
    Values v = val_;
    auto residual = [&](const Values& vv) {
      VectorXd r(me_ + mi_);
      if (me_) r.head(me_) = vv.ce;
      for (int i = 0; i < mi_; ++i) r[me_ + i] = std::max(vv.ci[i], 0.0);
      return r;
    };
    VectorXd r = residual(v);
    bool stationary = false;
    for (int k = 0; k < 500; ++k) {
      if (inf_norm(r) <= 0.1 * o_.kkt_tolerance) break;
      SparseMatrix je, ji;
      p_.jacobians(x_, je, ji);
      MatrixXd J = MatrixXd::Zero(me_ + mi_, n_);
      if (me_) J.topRows(me_) = MatrixXd(je);
      if (mi_) {
        MatrixXd jid = MatrixXd(ji);
        for (int i = 0; i < mi_; ++i)
          if (v.ci[i] > 0) J.row(me_ + i) = jid.row(i);
      }
      const VectorXd grad = J.transpose() * r;
      if (inf_norm(grad) <= 1e-12 * std::max(1.0, r.norm())) {
        stationary = true;
        break;
      }
      const MatrixXd JtJ = J.transpose() * J;
      const double phi = 0.5 * r.squaredNorm();
      bool moved = false;
      while (lm <= 1e12) {
        MatrixXd A = JtJ;
        A.diagonal().array() += lm;
        const VectorXd dx = A.ldlt().solve(-grad);
        Values t;
        const VectorXd xt = x_ + dx;
        if (evaluate(p_, xt, t)) {
          const VectorXd rt = residual(t);
          const double phit = 0.5 * rt.squaredNorm();
          if (phit < phi) {
            if (phi - phit <= 1e-14 * phi && inf_norm(dx) <= 1e-12 * std::max(1.0, inf_norm(x_)))
              stationary = true;
            x_ = xt;
            v = t;
            r = rt;
            lm = std::max(1e-12, lm / 3.0);
            moved = true;
            break;
          }
        }
        lm *= 4.0;
      }
      if (!moved) stationary = true;
      if (stationary) break;
    }
    val_ = v;
    if (violation(val_.ce, val_.ci) > kInfeasibleThreshold) {
      return stationary ? SolveStatus::infeasible_detected : SolveStatus::numerical_failure;
    }
    // Re-enter the barrier problem from the restored point.
    reset_slacks(std::max(mu_, 1e-8));
    nu_.setZero();
    penalty_ = 1.0;
    last_dw_ = 0.0;
    return SolveStatus::optimal;
  }

  SolveResult finish(SolveStatus status) {
    SolveResult out;
    out.solution.x = x_;
    out.solution.objective = val_.f;
    out.solution.primal_infeasibility =
        val_.ce.size() == me_ && val_.ci.size() == mi_ ? violation(val_.ce, val_.ci)
                                                       : std::numeric_limits<double>::infinity();
    out.solution.iterations = iter_;
    out.solution.status = status;
    out.solution.objective_scale = scale_;
    out.solution.kkt_error = rd_.size() == n_ ? error(0.0) : std::numeric_limits<double>::infinity();
    VectorXd nu = nu_.size() == me_ ? VectorXd(nu_ / scale_) : VectorXd::Zero(me_);
    VectorXd lam = lambda_.size() == mi_ ? VectorXd(lambda_ / scale_) : VectorXd::Zero(mi_);
    out.duals = DualRecord(p_.equality_handles(), std::move(nu), p_.inequality_handles(), std::move(lam));
    out.history = std::move(history_);
    out.restorations = restorations_;
    return out;
  }

  const NlpProblem& p_;
  const SolverOptions& o_;
  const int n_, me_, mi_;
  std::ofstream log_;

  VectorXd x_, s_, lambda_, nu_;
  Values val_;
  VectorXd g_, rd_, ri_, sigma_;
  SparseMatrix je_, ji_;
  MatrixXd W_;
  VectorXd dx_, ds_, dnu_, dlambda_;
  SymmetricIndefiniteFactor factor_;

  double scale_ = 1.0;
  double mu_ = 0.1;
  double penalty_ = 1.0;
  double last_dw_ = 0.0;
  double dw_ = 0.0;
  int iter_ = 0;
  int restorations_ = 0;
  std::vector<IterationRecord> history_;
};

}  // namespace

SolveResult solve(const NlpProblem& problem, const SolverOptions& options,
                  const std::optional<Eigen::VectorXd>& warm_start) {
  options.validate();
  Solver solver(problem, options);
  return solver.run(warm_start);
}

}  // namespace sopf
