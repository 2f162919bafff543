#include "triconic/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_roots.h>

#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace triconic {

namespace {

struct GslOff {
    gsl_error_handler_t* old;
    GslOff() : old(gsl_set_error_handler_off()) {}
    ~GslOff() { gsl_set_error_handler(old); }
};

double nm_trampoline(const gsl_vector* v, void* params) {
    auto* f = static_cast<const std::function<double(double, double)>*>(params);
    double r = (*f)(gsl_vector_get(v, 0), gsl_vector_get(v, 1));
    return std::isfinite(r) ? r : 1e300;
}

double root_trampoline(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

struct Residual3 {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const std::function<std::array<double, 3>(double, double)>* fn;
    int inputs() const { return 2; }
    int values() const { return 3; }
    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
        auto r = (*fn)(x(0), x(1));
        for (int i = 0; i < 3; ++i) out(i) = r[i];
        return 0;
    }
};

}  // namespace

Minimum2 nelder_mead(const std::function<double(double, double)>& f, std::array<double, 2> x0, double step,
                     int max_iter, double size_tol) {
    GslOff guard;
    gsl_multimin_function fn{nm_trampoline, 2, const_cast<std::function<double(double, double)>*>(&f)};
    gsl_vector* x = gsl_vector_alloc(2);
    gsl_vector* ss = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, x0[0]);
    gsl_vector_set(x, 1, x0[1]);
    gsl_vector_set_all(ss, step);
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(s, &fn, x, ss);
    Minimum2 m;
    int status = GSL_CONTINUE;
    for (m.iterations = 0; m.iterations < max_iter && status == GSL_CONTINUE; ++m.iterations) {
        if (gsl_multimin_fminimizer_iterate(s)) break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol);
    }
    m.converged = status == GSL_SUCCESS;
    m.x = {gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1)};
    m.value = s->fval;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(x);
    gsl_vector_free(ss);
    return m;
}

std::array<double, 2> least_squares_refine(const std::function<std::array<double, 3>(double, double)>& r,
                                           std::array<double, 2> x0, int max_eval) {
    Residual3 functor{&r};
    Eigen::NumericalDiff<Residual3, Eigen::Central> diff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual3, Eigen::Central>> lm(diff);
    lm.parameters.maxfev = max_eval;
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-30;
    lm.parameters.gtol = 0;
    Eigen::VectorXd x(2);
    x << x0[0], x0[1];
    lm.minimize(x);
    return {x(0), x(1)};
}

bool brent_root(const std::function<double(double)>& f, double lo, double hi, double xtol, double& root) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) { root = lo; return true; }
    if (fhi == 0) { root = hi; return true; }
    if ((flo < 0) == (fhi < 0)) return false;
    GslOff guard;
    gsl_function fn{root_trampoline, const_cast<std::function<double(double)>*>(&f)};
    gsl_root_fsolver* s = gsl_root_fsolver_alloc(gsl_root_fsolver_brent);
    gsl_root_fsolver_set(s, &fn, lo, hi);
    int status = GSL_CONTINUE;
    for (int it = 0; it < 200 && status == GSL_CONTINUE; ++it) {
        if (gsl_root_fsolver_iterate(s)) break;
        status = gsl_root_test_interval(gsl_root_fsolver_x_lower(s), gsl_root_fsolver_x_upper(s), xtol, 0);
    }
    root = gsl_root_fsolver_root(s);
    gsl_root_fsolver_free(s);
    return true;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, int iters) {
    bool neg_lo = f(lo) < 0;
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if ((f(mid) < 0) == neg_lo) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace triconic
