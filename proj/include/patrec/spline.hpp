#pragma once

// Univariate B-spline spaces on clamped uniform knot vectors, with optional
// homogeneous boundary constraints, point evaluation of basis functions and
// derivatives, and exact 1D Gram matrices between two spaces on the same
// interval. These are the atoms every system block is assembled from.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "patrec/gauss.hpp"

namespace patrec {

using SpMat = Eigen::SparseMatrix<double>;

enum class BoundaryConstraint {
    Free,          // full clamped basis
    ZeroBothEnds,  // first and last basis function removed
    ZeroAtLeft     // first basis function removed
};

// Spline space of a given degree on (a,b) with 2^level uniform knot spans and
// maximum smoothness C^{degree-1} at the interior knots. The knot vector is
// clamped: the end knots are repeated degree+1 times, so exactly one basis
// function is nonzero at each interval end. Constraints drop end functions,
// which is how homogeneous Dirichlet conditions and the y(0)=0 multiplier
// space are realized.
struct SplineSpace1D {
    int degree = 2;
    int level = 1;
    double a = 0.0, b = 1.0;
    BoundaryConstraint constraint = BoundaryConstraint::Free;
    std::vector<double> knots;
    int dim = 0;     // retained basis functions
    int offset = 0;  // shift from constrained to unconstrained numbering

    int spans() const { return 1 << level; }
    double mesh_size() const { return (b - a) / static_cast<double>(spans()); }
    int unconstrained_dim() const { return static_cast<int>(knots.size()) - degree - 1; }

    std::vector<double> breakpoints() const {
        std::vector<double> pts(spans() + 1);
        for (int k = 0; k <= spans(); ++k)
            pts[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(spans());
        return pts;
    }

    bool same_interval(const SplineSpace1D& other) const {
        return a == other.a && b == other.b;
    }
};

inline SplineSpace1D make_space(int degree, int level, double a, double b,
                                BoundaryConstraint constraint) {
    if (degree < 1) throw std::invalid_argument("make_space: degree must be >= 1");
    if (level < 1) throw std::invalid_argument("make_space: level must be >= 1");
    if (!(b > a)) throw std::invalid_argument("make_space: interval is inverted or degenerate");

    SplineSpace1D s;
    s.degree = degree;
    s.level = level;
    s.a = a;
    s.b = b;
    s.constraint = constraint;

    const int n_span = 1 << level;
    s.knots.reserve(2 * (degree + 1) + n_span - 1);
    for (int i = 0; i <= degree; ++i) s.knots.push_back(a);
    for (int k = 1; k < n_span; ++k)
        s.knots.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(n_span));
    for (int i = 0; i <= degree; ++i) s.knots.push_back(b);

    const int n_free = n_span + degree;
    switch (constraint) {
        case BoundaryConstraint::Free:
            s.dim = n_free;
            s.offset = 0;
            break;
        case BoundaryConstraint::ZeroBothEnds:
            s.dim = n_free - 2;
            s.offset = 1;
            break;
        case BoundaryConstraint::ZeroAtLeft:
            s.dim = n_free - 1;
            s.offset = 1;
            break;
    }
    if (s.dim < 1) throw std::invalid_argument("make_space: constraint leaves an empty basis");
    return s;
}

namespace detail {

// Knot span index mu with t_mu <= x < t_{mu+1}, clamped so the returned span
// is a nonempty one; x == b maps to the last span (left-limit convention).
inline int find_span(const std::vector<double>& knots, int degree, int n_basis, double x) {
    if (x >= knots[n_basis]) return n_basis - 1;
    if (x <= knots[degree]) return degree;
    auto it = std::upper_bound(knots.begin() + degree, knots.begin() + n_basis + 1, x);
    return static_cast<int>(it - knots.begin()) - 1;
}

// Values and derivatives of the degree+1 basis functions that are nonzero on
// span mu, evaluated at x. Row r of the result holds the r-th derivatives of
// N_{mu-degree},...,N_{mu}. Standard triangular-table recursion.
inline Eigen::MatrixXd ders_basis(const std::vector<double>& knots, int degree, int mu,
                                  double x, int n_der) {
    const int p = degree;
    Eigen::MatrixXd ndu(p + 1, p + 1);
    std::vector<double> left(p + 1), right(p + 1);
    ndu(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - knots[mu + 1 - j];
        right[j] = knots[mu + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right[r + 1] + left[j - r];
            const double temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu(j, j) = saved;
    }

    Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(n_der + 1, p + 1);
    for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

    Eigen::MatrixXd a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = 1.0;
        for (int k = 1; k <= n_der; ++k) {
            double d = 0.0;
            const int rk = r - k, pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            ders(k, r) = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= n_der; ++k) {
        for (int j = 0; j <= p; ++j) ders(k, j) *= factor;
        factor *= (p - k);
    }
    return ders;
}

}  // namespace detail

// The nonzero basis functions at one point: values[i] belongs to constrained
// index first+i. Functions removed by the constraint are dropped, so values
// can be shorter than degree+1 (or empty near a constrained end).
struct LocalBasis {
    int first = 0;
    Eigen::VectorXd values;
};

// Evaluates the deriv-th derivative (deriv in {0,1,2}) of all basis functions
// nonzero at x. At interior knots the value is the right-limit; at x == b the
// left-limit. For deriv <= degree-1 both limits coincide (the space is
// C^{degree-1}), so the convention only matters for the top derivative.
inline LocalBasis eval_basis(const SplineSpace1D& s, double x, int deriv) {
    if (x < s.a || x > s.b) throw std::invalid_argument("eval_basis: x outside the interval");
    if (deriv < 0 || deriv > 2) throw std::invalid_argument("eval_basis: deriv must be 0, 1 or 2");
    const int n_free = s.unconstrained_dim();
    const int mu = detail::find_span(s.knots, s.degree, n_free, x);
    const Eigen::MatrixXd ders = detail::ders_basis(s.knots, s.degree, mu, x, deriv);

    LocalBasis out;
    std::vector<double> vals;
    vals.reserve(s.degree + 1);
    int first = -1;
    for (int k = 0; k <= s.degree; ++k) {
        const int iu = mu - s.degree + k;
        const int ic = iu - s.offset;
        if (ic < 0 || ic >= s.dim) continue;
        if (first < 0) first = ic;
        vals.push_back(ders(deriv, k));
    }
    out.first = std::max(first, 0);
    out.values = Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
    return out;
}

// All basis values (or derivative values) at one point as a dense vector;
// carries the t=0 traces and the face evaluations of the assembly.
inline Eigen::VectorXd boundary_vector(const SplineSpace1D& s, double point, int deriv) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dim);
    const LocalBasis lb = eval_basis(s, point, deriv);
    for (int k = 0; k < lb.values.size(); ++k) v[lb.first + k] = lb.values[k];
    return v;
}

// Gram matrix between two spaces on a shared interval:
//   entry (i,j) = integral over [sub_a,sub_b] of phi_i^(deriv_row) phi_j^(deriv_col).
struct GramMatrix1D {
    int deriv_row = 0, deriv_col = 0;
    double sub_a = 0.0, sub_b = 0.0;
    SpMat values;
};

// Exact per-piece Gauss assembly. Pieces are the union of both spaces' knot
// spans clipped to the subinterval, so every piece is a polynomial patch for
// both factors; n_gauss = 0 picks the smallest exact rule.
inline GramMatrix1D gram_1d(const SplineSpace1D& row_space, const SplineSpace1D& col_space,
                            int deriv_row, int deriv_col, double sub_a, double sub_b,
                            int n_gauss = 0) {
    if (!row_space.same_interval(col_space))
        throw std::invalid_argument("gram_1d: spaces live on different intervals");
    if (sub_a < row_space.a - 1e-14 || sub_b > row_space.b + 1e-14 || !(sub_b > sub_a))
        throw std::invalid_argument("gram_1d: subinterval outside the interval");
    if (deriv_row < 0 || deriv_row > 2 || deriv_col < 0 || deriv_col > 2)
        throw std::invalid_argument("gram_1d: derivative order must be 0, 1 or 2");
    sub_a = std::max(sub_a, row_space.a);
    sub_b = std::min(sub_b, row_space.b);

    std::vector<double> cuts{sub_a, sub_b};
    for (const auto& sp : {row_space, col_space})
        for (double t : sp.breakpoints())
            if (t > sub_a + 1e-14 && t < sub_b - 1e-14) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double u, double v) { return std::abs(u - v) < 1e-14; }),
               cuts.end());

    if (n_gauss <= 0) n_gauss = (row_space.degree + col_space.degree) / 2 + 1;
    const GaussRule ref = gauss_legendre(n_gauss);

    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> nodes, weights;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        if (cuts[c + 1] - cuts[c] < 1e-15) continue;
        map_rule(ref, cuts[c], cuts[c + 1], nodes, weights);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const LocalBasis r = eval_basis(row_space, nodes[q], deriv_row);
            const LocalBasis cb = eval_basis(col_space, nodes[q], deriv_col);
            for (int i = 0; i < r.values.size(); ++i)
                for (int j = 0; j < cb.values.size(); ++j)
                    trips.emplace_back(r.first + i, cb.first + j,
                                       weights[q] * r.values[i] * cb.values[j]);
        }
    }

    GramMatrix1D g;
    g.deriv_row = deriv_row;
    g.deriv_col = deriv_col;
    g.sub_a = sub_a;
    g.sub_b = sub_b;
    g.values.resize(row_space.dim, col_space.dim);
    g.values.setFromTriplets(trips.begin(), trips.end());
    return g;
}

inline GramMatrix1D gram_1d(const SplineSpace1D& row_space, const SplineSpace1D& col_space,
                            int deriv_row, int deriv_col, int n_gauss = 0) {
    return gram_1d(row_space, col_space, deriv_row, deriv_col, row_space.a, row_space.b, n_gauss);
}

}  // namespace patrec
