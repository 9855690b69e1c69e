#include "wasep/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wasep/errors.hpp"
#include "wasep/field_theory.hpp"
#include "wasep/kernel.hpp"

namespace wasep {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kTikhonov = 1e-8;

double super_rate_constant(double chi) { return std::sqrt(std::numbers::pi) / (2.0 * std::numbers::sqrt2 * chi); }

void require_chi(double rho, const char* who) {
    if (!(rho > 0.0 && rho < 1.0)) throw DegenerateRegime(std::string(who) + ": rho must lie in (0, 1)");
}

// Step of a uniform grid, or DomainError.
double uniform_step_or_throw(const GridPath& p, const char* who) {
    const double step = p.uniform_step();
    if (!(step > 0.0)) throw DomainError(std::string(who) + ": grid must be uniform with at least two points");
    return step;
}

}  // namespace

void require_rate_regime(const VarianceSpec& spec) {
    require_chi(spec.rho, "rate function");
    if (spec.degenerate()) throw DegenerateRegime("degenerate sub-critical variance (beta < 1, rho = 1/2)");
}

double rate_finite_dim(const Eigen::VectorXd& r, const CovarianceMatrix& A) {
    if (r.size() != A.dim()) throw DomainError("rate_finite_dim: dimension mismatch");
    if (!A.factorized())
        throw SingularMatrix("rate_finite_dim: covariance matrix is singular (degenerate regime such as beta < 1 "
                             "with rho = 1/2)");
    return 0.5 * A.quadratic_form(r);
}

double rate_path_sub(const GridPath& h, const VarianceSpec& spec) {
    if (spec.regime != Regime::sub) throw DomainError("rate_path_sub: requires the sub regime");
    require_rate_regime(spec);
    if (spec.drift() == 0.0) throw DegenerateRegime("rate_path_sub: alpha = 0 gives a degenerate variance");
    double energy = 0.0;
    double t_prev = 0.0;
    double h_prev = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double dt = h.times[i] - t_prev;
        if (dt > 0.0) {
            const double dh = h.values[i] - h_prev;
            energy += dh * dh / dt;
        } else if (h.values[i] != h_prev) {
            throw DomainError("rate_path_sub: path must start from 0 at t = 0");
        }
        t_prev = h.times[i];
        h_prev = h.values[i];
    }
    return energy / (2.0 * spec.chi() * spec.drift());
}

std::vector<double> midpoint_grid(double horizon, int cells) {
    if (!(horizon > 0.0) || cells < 1) throw DomainError("midpoint_grid: need a positive horizon and cell count");
    const double step = horizon / cells;
    std::vector<double> s(static_cast<std::size_t>(cells));
    for (int j = 0; j < cells; ++j) s[static_cast<std::size_t>(j)] = (j + 0.5) * step;
    return s;
}

namespace {

double midpoint_step_or_throw(const GridPath& hdot) {
    if (hdot.size() == 1) {
        if (!(hdot.times[0] > 0.0)) throw DomainError("derivative grid must sit at cell midpoints");
        return 2.0 * hdot.times[0];
    }
    const double step = uniform_step_or_throw(hdot, "derivative grid");
    if (std::fabs(hdot.times[0] - 0.5 * step) > 1e-9 * step)
        throw DomainError("derivative grid must sit at cell midpoints (j + 1/2) D");
    return step;
}

// W(i, j) = K(t_{i+1}, s_j) D for j <= i, with t_i = i D and s_j = (j + 1/2) D.
Eigen::MatrixXd volterra_matrix(std::size_t cells, double step) {
    const auto n = static_cast<Eigen::Index>(cells);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i + 1) * step;
        for (Eigen::Index j = 0; j <= i; ++j) W(i, j) = kernel_K(t, (static_cast<double>(j) + 0.5) * step) * step;
    }
    return W;
}

std::vector<double> node_times(std::size_t cells, double step) {
    std::vector<double> t(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) t[i] = static_cast<double>(i) * step;
    return t;
}

}  // namespace

GridPath volterra_apply(const GridPath& hdot) {
    const double step = midpoint_step_or_throw(hdot);
    const std::size_t cells = hdot.size();
    const Eigen::MatrixXd W = volterra_matrix(cells, step);
    const Eigen::Map<const Eigen::VectorXd> d(hdot.values.data(), static_cast<Eigen::Index>(cells));
    const Eigen::VectorXd h = W.triangularView<Eigen::Lower>() * d;
    std::vector<double> values(cells + 1, 0.0);
    for (std::size_t i = 0; i < cells; ++i) values[i + 1] = h(static_cast<Eigen::Index>(i));
    return GridPath(node_times(cells, step), std::move(values));
}

SuperRate rate_path_super(const GridPath& hdot, const VarianceSpec& spec) {
    require_chi(spec.rho, "rate_path_super");
    const double step = midpoint_step_or_throw(hdot);
    double energy = 0.0;
    for (double v : hdot.values) energy += v * v * step;
    return {super_rate_constant(spec.chi()) * energy, volterra_apply(hdot)};
}

KernelInversion kernel_invert_detail(const GridPath& h) {
    const double step = uniform_step_or_throw(h, "kernel_invert");
    if (h.times.front() != 0.0) throw DomainError("kernel_invert: grid must start at t = 0");
    const double scale = std::max(1.0, Eigen::Map<const Eigen::VectorXd>(h.values.data(),
                                                                         static_cast<Eigen::Index>(h.size()))
                                           .cwiseAbs()
                                           .maxCoeff());
    if (std::fabs(h.values.front()) > 1e-12 * scale) throw DomainError("kernel_invert: h(0) must be 0");

    const std::size_t cells = h.size() - 1;
    const Eigen::MatrixXd W = volterra_matrix(cells, step);
    const auto n = static_cast<Eigen::Index>(cells);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) rhs(i) = h.values[static_cast<std::size_t>(i + 1)];

    const auto lower = W.triangularView<Eigen::Lower>();
    const Eigen::MatrixXd inverse = lower.solve(Eigen::MatrixXd::Identity(n, n));
    const double norm = W.cwiseAbs().colwise().sum().maxCoeff();
    const double inv_norm = inverse.cwiseAbs().colwise().sum().maxCoeff();
    KernelInversion out;
    out.condition = std::isfinite(inv_norm) ? norm * inv_norm : std::numeric_limits<double>::infinity();

    Eigen::VectorXd d;
    if (out.condition <= kConditionLimit) {
        d = lower.solve(rhs);
    } else {
        const double lambda = kTikhonov * norm * norm;
        Eigen::MatrixXd normal = W.transpose() * W;
        normal.diagonal().array() += lambda;
        d = normal.ldlt().solve(W.transpose() * rhs);
        out.regularized = true;
    }
    const std::vector<double> mids = midpoint_grid(static_cast<double>(cells) * step, static_cast<int>(cells));
    out.hdot = GridPath(mids, std::vector<double>(d.data(), d.data() + d.size()));
    return out;
}

GridPath kernel_invert(const GridPath& h) { return kernel_invert_detail(h).hdot; }

double rate_tagged(double rate_current, double rho) {
    if (!(rate_current >= 0.0)) throw DomainError("rate_tagged: rate must be non-negative");
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rate_tagged: rho must lie in [0, 1]");
    return rho * rho * rate_current;
}

GridRateSequence grid_quadratic_forms(const GridPath& h, const std::vector<std::vector<double>>& grids,
                                      const VarianceSpec& spec) {
    GridRateSequence out;
    const std::vector<double>* previous = nullptr;
    for (const auto& grid : grids) {
        if (previous != nullptr) {
            for (double t : *previous) {
                const auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-12 * std::max(1.0, t));
                if (it == grid.end() || std::fabs(*it - t) > 1e-12 * std::max(1.0, t))
                    throw DomainError("grid_quadratic_forms: grids must refine one another");
            }
        }
        const CovarianceMatrix A = covariance_matrix(grid, spec);
        Eigen::VectorXd r(static_cast<Eigen::Index>(grid.size()));
        for (std::size_t i = 0; i < grid.size(); ++i) r(static_cast<Eigen::Index>(i)) = h.at(grid[i]);
        out.values.push_back(rate_finite_dim(r, A));
        previous = &grid;
    }
    if (!out.values.empty()) {
        out.inf = *std::min_element(out.values.begin(), out.values.end());
        out.sup = *std::max_element(out.values.begin(), out.values.end());
    }
    return out;
}

GridRateSequence rate_beta1_grid(const GridPath& h, const std::vector<std::vector<double>>& grids,
                                 const VarianceSpec& spec) {
    if (spec.regime != Regime::critical) throw DomainError("rate_beta1_grid: requires the critical regime");
    return grid_quadratic_forms(h, grids, spec);
}

double q_initial(const GridFunction& phi, double rho) {
    require_chi(rho, "q_initial");
    return phi.squared_norm() / (2.0 * rho * (1.0 - rho));
}

double q_dynamic(const SpaceTimeGridFunction& G, const VarianceSpec& spec) {
    require_chi(spec.rho, "q_dynamic");
    if (spec.regime == Regime::sub) return 0.0;
    return G.dirichlet_form() / (2.0 * spec.chi());
}

CovarianceMatrix field_increment_covariance(const GridFunction& G, const std::vector<double>& times,
                                            const VarianceSpec& spec) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw DomainError("field_increment_covariance: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("field_increment_covariance: times must increase");
    }
    const double base = G.squared_norm();
    auto inner = [&](double r) { return r == 0.0 ? base : field_semigroup_inner(G, r, spec); };
    const auto m = static_cast<Eigen::Index>(times.size());
    std::vector<double> at(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) at[i] = inner(times[i]);
    Eigen::MatrixXd S(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const auto a = static_cast<std::size_t>(i);
            const auto b = static_cast<std::size_t>(j);
            const double v = spec.chi() * (base + inner(times[a] - times[b]) - at[a] - at[b]);
            S(i, j) = v;
            S(j, i) = v;
        }
    return CovarianceMatrix(times, std::move(S));
}

double field_constraint_rate(const Eigen::VectorXd& r, const CovarianceMatrix& Sigma) {
    if (r.size() != Sigma.dim()) throw DomainError("field_constraint_rate: dimension mismatch");
    if (Sigma.factorized()) return 0.5 * Sigma.quadratic_form(r);
    return 0.5 * Sigma.pseudo_quadratic_form(r);
}

LowerBoundCheck current_rate_lower_bound_check(const GridFunction& phi, const std::vector<double>& times,
                                               const VarianceSpec& spec) {
    if (spec.regime != Regime::sub) throw DomainError("current_rate_lower_bound_check: requires the sub regime");
    require_rate_regime(spec);
    LowerBoundCheck out;
    Eigen::VectorXd r(static_cast<Eigen::Index>(times.size()));
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.currents.push_back(macroscopic_current(phi, nullptr, times[i], spec));
        r(static_cast<Eigen::Index>(i)) = out.currents.back();
    }
    out.q = q_initial(phi, spec.rho);
    out.bound = rate_finite_dim(r, covariance_matrix(times, spec));
    out.holds = out.q >= out.bound - 1e-9;
    return out;
}

GridFunction saturating_profile(double t_max, const VarianceSpec& spec, double r) {
    const double v = spec.velocity();
    if (!(t_max > 0.0) || v == 0.0) throw DomainError("saturating_profile: needs t_max > 0 and non-zero transport");
    const double a = std::min(-v * t_max, 0.0);
    const double b = std::max(-v * t_max, 0.0);
    const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / kDefaultGridStep)));
    return GridFunction(a, (b - a) / static_cast<double>(cells), std::vector<double>(cells + 1, r / (v * t_max)));
}

}  // namespace wasep
