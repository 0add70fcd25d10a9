#include "vpatch/vstate.hpp"
#include "vpatch/runtime.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vpatch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace

std::vector<double> boundary_residual(const Contour& c, double omega) {
    const auto& z = c.node_positions();
    const auto& dz = c.node_derivatives();
    const std::size_t n = z.size();
    const double cutoff = 1e-13 * c.diameter();
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            cplx acc{0.0, 0.0};
            const cplx zi = z[i];
            const cplx zbi = std::conj(zi);
            for (std::size_t j = 0; j < n; ++j) {
                const cplx diff = z[j] - zi;
                if (std::abs(diff) < cutoff)
                    acc += std::conj(dz[j]);
                else
                    acc += (std::conj(z[j]) - zbi) / diff * dz[j];
            }
            const cplx cauchy = acc * cplx{0.0, -1.0} / static_cast<double>(n);
            const cplx tau = dz[i] / std::abs(dz[i]);
            out[i] = ((omega * zbi + 0.5 * cauchy) * tau).real();
        }
    });
    return out;
}

double boundary_residual_sup(const Contour& c, double omega) {
    const auto res = boundary_residual(c, omega);
    double sup = 0.0;
    for (double r : res) sup = std::max(sup, std::abs(r));
    return sup;
}

double kirchhoff_omega(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ContourError("semi-axes must be positive");
    return a * b / ((a + b) * (a + b));
}

double bifurcation_omega(int m) {
    if (m < 2) throw ContourError("symmetry must be at least 2");
    return (m - 1) / (2.0 * m);
}

OmegaFit fit_omega(const Contour& c, double lo, double hi) {
    if (!(hi > lo)) throw ContourError("bad omega interval");
    // residual_i(omega) = omega * a_i + b_i; precompute both parts once
    const auto b_part = boundary_residual(c, 0.0);
    auto a_part = boundary_residual(c, 1.0);
    for (std::size_t i = 0; i < a_part.size(); ++i) a_part[i] -= b_part[i];
    auto sup = [&](double omega) {
        double s = 0.0;
        for (std::size_t i = 0; i < a_part.size(); ++i)
            s = std::max(s, std::abs(omega * a_part[i] + b_part[i]));
        return s;
    };
    double a = lo, b = hi;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sup(x1), f2 = sup(x2);
    for (int i = 0; i < 100 && (b - a) > 1e-13; ++i) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sup(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sup(x2);
        }
    }
    const double omega = 0.5 * (a + b);
    return {omega, sup(omega)};
}

namespace {

// Projects the node residual onto the first J mode-m sine harmonics and, when
// omega is free, appends the amplitude pin equation. This square system is what
// Gauss-Newton actually solves. Sine, not cosine: for a reflection-symmetric
// shape the tangential residual is odd in theta, so its cosine projections
// vanish identically and carry no information about the cosine amplitudes.
class ModeSystem {
public:
    ModeSystem(const VStateProblem& p)
        : m_(p.shape.symmetry),
          modes_(static_cast<int>(p.shape.cosines.size())),
          base_(p.shape.base_radius),
          omega_free_(p.omega_free),
          pin_(p.amplitude_pin),
          omega_fixed_(p.omega) {
        if (modes_ < 1) throw ContourError("at least one cosine mode required");
        const int kmax = m_ * modes_ + 1;
        nodes_ = p.node_count > 0 ? p.node_count : std::max(256, 8 * (kmax + 1));
        if (nodes_ % 2) ++nodes_;
        theta_.resize(nodes_);
        for (int i = 0; i < nodes_; ++i) theta_[i] = two_pi * i / nodes_;
    }

    int unknowns() const { return modes_ + (omega_free_ ? 1 : 0); }
    int node_count() const { return nodes_; }

    PolarShape shape_of(const Eigen::VectorXd& u) const {
        PolarShape s;
        s.symmetry = m_;
        s.base_radius = base_;
        s.cosines.assign(u.data(), u.data() + modes_);
        return s;
    }

    double omega_of(const Eigen::VectorXd& u) const {
        return omega_free_ ? u(modes_) : omega_fixed_;
    }

    struct Eval {
        Eigen::VectorXd r;
        double sup;
    };

    Eval eval(const Eigen::VectorXd& u) const {
        const Contour c = shape_of(u).to_contour(nodes_);
        const auto res = boundary_residual(c, omega_of(u));
        Eigen::VectorXd r(unknowns());
        for (int k = 1; k <= modes_; ++k) {
            double acc = 0.0;
            for (int i = 0; i < nodes_; ++i) acc += res[i] * std::sin(k * m_ * theta_[i]);
            r(k - 1) = 2.0 * acc / nodes_;
        }
        double sup = 0.0;
        for (double v : res) sup = std::max(sup, std::abs(v));
        if (omega_free_) r(modes_) = u(0) - pin_;
        return {std::move(r), sup};
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u, double h) const {
        const int n = unknowns();
        Eigen::MatrixXd jac(n, n);
        for (int c = 0; c < n; ++c) {
            Eigen::VectorXd up = u, dn = u;
            up(c) += h;
            dn(c) -= h;
            jac.col(c) = (eval(up).r - eval(dn).r) / (2.0 * h);
        }
        return jac;
    }

private:
    int m_;
    int modes_;
    double base_;
    bool omega_free_;
    double pin_;
    double omega_fixed_;
    int nodes_ = 0;
    std::vector<double> theta_;
};

} // namespace

VStateSolution newton_solve(const VStateProblem& problem, double tol, int max_iter) {
    ModeSystem sys(problem);
    const int n = sys.unknowns();
    Eigen::VectorXd u(n);
    for (std::size_t j = 0; j < problem.shape.cosines.size(); ++j)
        u(static_cast<int>(j)) = problem.shape.cosines[j];
    if (problem.omega_free) u(n - 1) = problem.omega;

    auto cur = sys.eval(u);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (cur.sup <= tol && cur.r.lpNorm<Eigen::Infinity>() <= std::max(tol, 1e-13))
            break;
        const Eigen::MatrixXd jac = sys.jacobian(u, problem.fd_step);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        if (!(smax > 0.0) || smin < 1e-8 * smax)
            throw SingularSystemError(smax > 0.0 ? smin / smax : 0.0);
        const Eigen::VectorXd step = svd.solve(-cur.r);

        const double norm0 = cur.r.norm();
        double lambda = 1.0;
        bool improved = false;
        while (lambda >= 0x1p-10) {
            Eigen::VectorXd trial = u + lambda * step;
            try {
                auto ev = sys.eval(trial);
                if (ev.r.norm() < norm0) {
                    u = std::move(trial);
                    cur = std::move(ev);
                    improved = true;
                    break;
                }
            } catch (const ContourError&) {
                // overshot into a degenerate shape; shorten the step
            }
            lambda *= 0.5;
        }
        if (!improved) throw SolverDivergenceError(cur.sup, iter + 1);
    }
    if (cur.sup > tol) throw SolverDivergenceError(cur.sup, iter);

    VStateSolution sol;
    sol.shape = sys.shape_of(u);
    sol.omega = sys.omega_of(u);
    sol.residual_norm = cur.sup;
    sol.iterations = iter;
    sol.branch_parameter = problem.omega_free ? problem.amplitude_pin : sol.shape.cosines[0];
    return sol;
}

Branch continuation(int symmetry, std::span<const double> amplitudes, int modes,
                    int node_count, double tol) {
    Branch branch;
    VStateProblem p;
    p.shape.symmetry = symmetry;
    p.shape.base_radius = 1.0;
    p.shape.cosines.assign(static_cast<std::size_t>(modes), 0.0);
    p.omega_free = true;
    p.node_count = node_count;
    p.omega = bifurcation_omega(symmetry);
    for (double s : amplitudes) {
        p.amplitude_pin = s;
        p.shape.cosines[0] = s;
        try {
            VStateSolution sol = newton_solve(p, tol);
            p.shape = sol.shape;
            p.omega = sol.omega;
            branch.solutions.push_back(std::move(sol));
        } catch (const ContourError& e) {
            branch.aborted = true;
            branch.abort_reason = e.what();
            branch.failed_amplitude = s;
            break;
        }
    }
    return branch;
}

double linearization_smallest_singular_value(const VStateProblem& problem) {
    VStateProblem fixed = problem;
    fixed.omega_free = false;
    ModeSystem sys(fixed);
    Eigen::VectorXd u(sys.unknowns());
    for (std::size_t j = 0; j < fixed.shape.cosines.size(); ++j)
        u(static_cast<int>(j)) = fixed.shape.cosines[j];
    const Eigen::MatrixXd jac = sys.jacobian(u, fixed.fd_step);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

BifurcationScan bifurcation_scan(int symmetry, double lo, double hi, double step,
                                 int modes, int node_count) {
    if (!(step > 0.0) || !(hi > lo)) throw ContourError("bad scan interval");
    VStateProblem p;
    p.shape.symmetry = symmetry;
    p.shape.base_radius = 1.0;
    p.shape.cosines.assign(static_cast<std::size_t>(modes), 0.0);
    p.node_count = node_count;

    auto sigma = [&](double omega) {
        p.omega = omega;
        return linearization_smallest_singular_value(p);
    };

    BifurcationScan scan;
    for (double w = lo; w <= hi + 1e-12; w += step) {
        scan.omegas.push_back(w);
        scan.sigmas.push_back(sigma(w));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < scan.sigmas.size(); ++i)
        if (scan.sigmas[i] < scan.sigmas[best]) best = i;

    double a = std::max(lo, scan.omegas[best] - step);
    double b = std::min(hi, scan.omegas[best] + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sigma(x1), f2 = sigma(x2);
    for (int i = 0; i < 80 && (b - a) > 1e-12; ++i) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sigma(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sigma(x2);
        }
    }
    scan.estimate = 0.5 * (a + b);
    scan.sigma_at_estimate = sigma(scan.estimate);
    return scan;
}

} // namespace vpatch
