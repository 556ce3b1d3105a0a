/*
   Copyright 2026 The nilpo Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NILPO_OPTIMIZE_HPP
#define NILPO_OPTIMIZE_HPP

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace nilpo::opt {

using Vector = Eigen::VectorXd;
using ResidualFn = std::function<Vector(const Vector&)>;

struct MinimizeResult {
    Vector x;
    double value = 0.0;
    int evaluations = 0;
};

/// Nelder–Mead simplex on f(x) = ‖r(x)‖². Stops after `max_evals` or when the spread of the
/// simplex values drops below `ftol`.
inline MinimizeResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0, double step,
                                  int max_evals, double ftol = 1e-28) {
    const Eigen::Index n = x0.size();
    std::vector<Vector> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> vals(static_cast<std::size_t>(n + 1));
    for (Eigen::Index k = 0; k < n; ++k) pts[static_cast<std::size_t>(k + 1)](k) += step;
    int evals = 0;
    for (std::size_t k = 0; k < pts.size(); ++k, ++evals) vals[k] = f(pts[k]);

    std::vector<std::size_t> order(pts.size());
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
        if (vals[worst] - vals[best] <= ftol) break;

        Vector centroid = Vector::Zero(n);
        for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
        centroid /= static_cast<double>(n);

        const Vector reflected = centroid + (centroid - pts[worst]);
        const double fr = f(reflected);
        ++evals;
        if (fr < vals[best]) {
            const Vector expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                              : Vector(centroid + 0.5 * (pts[worst] - centroid));
            const double fc = f(contracted);
            ++evals;
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = contracted;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    if (k == best) continue;
                    pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
                    vals[k] = f(pts[k]);
                    ++evals;
                }
            }
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return {pts[idx], vals[idx], evals};
}

namespace detail {

struct LeastSquaresFunctor {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    const ResidualFn* fn = nullptr;
    int n_inputs = 0;
    int n_values = 0;

    int inputs() const { return n_inputs; }
    int values() const { return n_values; }

    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
        const Vector r = (*fn)(x);
        out.setZero(n_values);
        out.head(r.size()) = r;
        return 0;
    }
};

}  // namespace detail

/// Levenberg–Marquardt (MINPACK, forward-difference Jacobian) on the residual vector. Residuals
/// are zero-padded so that there are at least as many equations as unknowns.
inline MinimizeResult least_squares_polish(const ResidualFn& r, const Vector& x0, int max_evals = 2000) {
    const Vector r0 = r(x0);
    detail::LeastSquaresFunctor functor;
    functor.fn = &r;
    functor.n_inputs = static_cast<int>(x0.size());
    functor.n_values = static_cast<int>(std::max<Eigen::Index>(r0.size(), x0.size()));
    Eigen::NumericalDiff<detail::LeastSquaresFunctor> numdiff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::LeastSquaresFunctor>> lm(numdiff);
    lm.parameters.maxfev = max_evals;
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    Vector x = x0;
    lm.minimize(x);
    const double v = r(x).squaredNorm();
    const double v0 = r0.squaredNorm();
    if (!(v <= v0)) return {x0, v0, static_cast<int>(lm.nfev)};
    return {x, v, static_cast<int>(lm.nfev)};
}

}  // namespace nilpo::opt

#endif  // NILPO_OPTIMIZE_HPP
