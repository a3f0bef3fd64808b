#include "sopf/power_flow.hpp"

#include <cmath>

namespace sopf {

std::array<FlowCoefficients, 4> flow_coefficients(const Branch& br, int t) {
  const double tau = br.tap_ratio[t];
  const double g = br.series_conductance;
  const double b = br.series_susceptance;
  const double bsh = b + 0.5 * br.charging_susceptance;
  return {{
      {g / (tau * tau), 0.0, -g / tau, -b / tau},       // P_ij
      {-bsh / (tau * tau), 0.0, b / tau, -g / tau},     // Q_ij
      {0.0, g, -g / tau, b / tau},                      // P_ji
      {0.0, -bsh, b / tau, g / tau},                    // Q_ji
  }};
}

FlowTerm evaluate_flow(const FlowCoefficients& k, double vf, double vt, double thf,
                       double tht, double phi, bool with_hessian) {
  const double d = thf - tht - phi;
  const double cd = std::cos(d), sd = std::sin(d);
  const double h = k.alpha * cd + k.beta * sd;
  const double hp = -k.alpha * sd + k.beta * cd;
  const double vv = vf * vt;

  FlowTerm f;
  f.value = k.c_ff * vf * vf + k.c_tt * vt * vt + vv * h;
  f.grad = {2.0 * k.c_ff * vf + vt * h, 2.0 * k.c_tt * vt + vf * h, vv * hp, -vv * hp};
  if (with_hessian) {
    auto& H = f.hess;
    H[0][0] = 2.0 * k.c_ff;
    H[1][1] = 2.0 * k.c_tt;
    H[0][1] = H[1][0] = h;
    H[0][2] = H[2][0] = vt * hp;
    H[0][3] = H[3][0] = -vt * hp;
    H[1][2] = H[2][1] = vf * hp;
    H[1][3] = H[3][1] = -vf * hp;
    H[2][2] = H[3][3] = -vv * h;
    H[2][3] = H[3][2] = vv * h;
  }
  return f;
}

BranchFlows branch_flows(const Branch& br, int t, double vf, double vt, double thf,
                         double tht, bool with_hessian) {
  const auto k = flow_coefficients(br, t);
  const double phi = br.phase_shift[t];
  return {evaluate_flow(k[0], vf, vt, thf, tht, phi, with_hessian),
          evaluate_flow(k[1], vf, vt, thf, tht, phi, with_hessian),
          evaluate_flow(k[2], vf, vt, thf, tht, phi, with_hessian),
          evaluate_flow(k[3], vf, vt, thf, tht, phi, with_hessian)};
}

namespace {

BranchFlows flows_at(const NetworkCase& c, const VariableLayout& L, std::span<const double> x,
                     int k, int t, bool with_hessian) {
  const Branch& br = c.branches[k];
  return branch_flows(br, t, x[L.v(br.from_bus, t)], x[L.v(br.to_bus, t)],
                      x[L.theta(br.from_bus, t)], x[L.theta(br.to_bus, t)], with_hessian);
}

void add_branch_hessian(const NetworkCase& c, const VariableLayout& L,
                        std::span<const double> x, const NetworkWeights& w, int k, int t,
                        Eigen::MatrixXd& hess) {
  const int nb = c.bus_count();
  const int nbr = static_cast<int>(c.branches.size());
  const Branch& br = c.branches[k];
  const double wpf = w.active[t * nb + br.from_bus];
  const double wqf = w.reactive[t * nb + br.from_bus];
  const double wpt = w.active[t * nb + br.to_bus];
  const double wqt = w.reactive[t * nb + br.to_bus];
  const double ws = w.thermal.empty() ? 0.0 : w.thermal[t * nbr + k];
  const BranchFlows f = flows_at(c, L, x, k, t, true);
  const std::array<int, 4> idx = {L.v(br.from_bus, t), L.v(br.to_bus, t),
                                  L.theta(br.from_bus, t), L.theta(br.to_bus, t)};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double v = wpf * f.p_from.hess[a][b] + wqf * f.q_from.hess[a][b] +
                 wpt * f.p_to.hess[a][b] + wqt * f.q_to.hess[a][b];
      if (ws != 0.0) {
        v += ws * 2.0 *
             (f.p_from.grad[a] * f.p_from.grad[b] + f.p_from.value * f.p_from.hess[a][b] +
              f.q_from.grad[a] * f.q_from.grad[b] + f.q_from.value * f.q_from.hess[a][b]);
      }
      hess(idx[a], idx[b]) += v;
    }
  }
}

void add_shunt_hessian(const NetworkCase& c, const VariableLayout& L, const NetworkWeights& w,
                       int j, int t, Eigen::MatrixXd& hess) {
  const Bus& bus = c.buses[j];
  const int nb = c.bus_count();
  const double v = 2.0 * bus.shunt_conductance * w.active[t * nb + j] -
                   2.0 * bus.shunt_susceptance * w.reactive[t * nb + j];
  if (v != 0.0) hess(L.v(j, t), L.v(j, t)) += v;
}

}  // namespace

std::vector<BranchFlows> evaluate_network_flows(const NetworkCase& c, const VariableLayout& L,
                                                std::span<const double> x, Execution exec) {
  const int T = c.periods();
  const int nbr = static_cast<int>(c.branches.size());
  std::vector<BranchFlows> out(static_cast<std::size_t>(T) * nbr);
  if (exec == Execution::serial) {
    for (int k = 0; k < nbr; ++k) {
      for (int t = 0; t < T; ++t) out[t * nbr + k] = flows_at(c, L, x, k, t, false);
    }
    return out;
  }
#pragma omp parallel for schedule(static)
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < nbr; ++k) out[t * nbr + k] = flows_at(c, L, x, k, t, false);
  }
  return out;
}

void accumulate_network_hessian(const NetworkCase& c, const VariableLayout& L,
                                std::span<const double> x, const NetworkWeights& w,
                                Eigen::MatrixXd& hess, Execution exec) {
  const int T = c.periods();
  const int nbr = static_cast<int>(c.branches.size());
  const int nb = c.bus_count();
  if (exec == Execution::serial) {
    for (int k = 0; k < nbr; ++k) {
      for (int t = 0; t < T; ++t) add_branch_hessian(c, L, x, w, k, t, hess);
    }
    for (int j = 0; j < nb; ++j) {
      for (int t = 0; t < T; ++t) add_shunt_hessian(c, L, w, j, t, hess);
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < nbr; ++k) add_branch_hessian(c, L, x, w, k, t, hess);
    for (int j = 0; j < nb; ++j) add_shunt_hessian(c, L, w, j, t, hess);
  }
}

}  // namespace sopf
