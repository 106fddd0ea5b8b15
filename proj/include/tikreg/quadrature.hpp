#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

namespace tikreg {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

// Gauss(7)-Kronrod(15) nodes and weights on [-1, 1], positive half.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& gauss) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double fk = 0.0, fg = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fv;
        if (i == 7) {
            fv = f(c);
            fk += kKronrodWeights[7] * fv;
            fg += kGaussWeights[3] * fv;
        } else {
            const double dx = h * kKronrodNodes[i];
            fv = f(c - dx) + f(c + dx);
            fk += kKronrodWeights[i] * fv;
            if (i % 2 == 1) fg += kGaussWeights[i / 2] * fv;
        }
    }
    kronrod = fk * h;
    gauss = fg * h;
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration. Nodes are interior, so integrable
// endpoint singularities are never evaluated directly.
template <class F>
QuadResult integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                     double abs_tol = 0.0, int max_depth = 60) {
    struct Interval {
        double a, b;
        int depth;
    };
    QuadResult out;
    std::vector<Interval> stack{{a, b, 0}};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        double k, g;
        detail::gk15(f, iv.a, iv.b, k, g);
        out.evaluations += 15;
        const double err = std::abs(k - g);
        const double tol = std::max(abs_tol, rel_tol * std::abs(k));
        if (err <= tol || iv.depth >= max_depth) {
            out.value += k;
            out.error += err;
            if (iv.depth >= max_depth && err > tol) out.converged = false;
        } else {
            const double mid = 0.5 * (iv.a + iv.b);
            stack.push_back({iv.a, mid, iv.depth + 1});
            stack.push_back({mid, iv.b, iv.depth + 1});
        }
    }
    return out;
}

}  // namespace tikreg
