#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace sica {

// Monic polynomial x^k + c[0] x^{k-1} + ... + c[k-1].
struct Polynomial {
    std::vector<double> c;

    std::size_t degree() const { return c.size(); }

    double eval(double x) const {
        double v = 1.0;
        for (double ci : c) v = v * x + ci;
        return v;
    }
};

// Dense row-major matrix for the small (dimension <= 8) determinant work
// in the stability criterion. Not a general linear-algebra type.
struct SmallMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    static SmallMatrix zero(std::size_t dim) { return {dim, std::vector<double>(dim * dim, 0.0)}; }

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n; ++i) t += at(i, i);
        return t;
    }

    // Cofactor expansion along the first row; exact-formula determinants
    // keep the criterion free of pivoting artifacts at these sizes.
    double det() const {
        if (n == 0) return 1.0;
        if (n == 1) return a[0];
        if (n == 2) return a[0] * a[3] - a[1] * a[2];
        double sum = 0.0;
        double sign = 1.0;
        for (std::size_t j = 0; j < n; ++j, sign = -sign) {
            SmallMatrix minor = SmallMatrix::zero(n - 1);
            for (std::size_t r = 1; r < n; ++r) {
                std::size_t cc = 0;
                for (std::size_t col = 0; col < n; ++col) {
                    if (col == j) continue;
                    minor.at(r - 1, cc++) = at(r, col);
                }
            }
            sum += sign * at(0, j) * minor.det();
        }
        return sum;
    }
};

inline SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y) {
    SmallMatrix z = SmallMatrix::zero(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            const double v = x.at(i, k);
            for (std::size_t j = 0; j < x.n; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

// The inners of a matrix: the matrix itself, then the submatrices obtained
// by repeatedly deleting the first and last row and column, down to
// dimension 2 or 1.
inline std::vector<SmallMatrix> inners(const SmallMatrix& m) {
    std::vector<SmallMatrix> out{m};
    while (out.back().n > 2) {
        const SmallMatrix& b = out.back();
        SmallMatrix s = SmallMatrix::zero(b.n - 2);
        for (std::size_t i = 0; i < s.n; ++i)
            for (std::size_t j = 0; j < s.n; ++j) s.at(i, j) = b.at(i + 1, j + 1);
        out.push_back(std::move(s));
    }
    return out;
}

// B^{+-}_{k-1} = L +- H for p(x) = x^k + p1 x^{k-1} + ... + pk, where L is
// unit lower triangular with L(i,j) = p_{i-j} below the diagonal and
// H(i,j) = p_{2k-i-j} whenever that index lies in [2, k] (1-based indices).
inline SmallMatrix jury_matrix(const Polynomial& poly, int sign) {
    const std::size_t k = poly.degree();
    if (k < 2) throw InvalidParams("jury_matrix requires degree >= 2");
    SmallMatrix b = SmallMatrix::zero(k - 1);
    for (std::size_t i = 1; i <= k - 1; ++i)
        for (std::size_t j = 1; j <= k - 1; ++j) {
            double l = 0.0;
            if (i == j) l = 1.0;
            else if (i > j) l = poly.c[i - j - 1];
            double h = 0.0;
            const std::size_t m = 2 * k - i - j;
            if (m >= 2 && m <= k) h = poly.c[m - 1];
            b.at(i - 1, j - 1) = l + static_cast<double>(sign) * h;
        }
    return b;
}

enum class DiskVerdict { Inside, Outside, Borderline };

inline const char* to_string(DiskVerdict v) {
    switch (v) {
        case DiskVerdict::Inside: return "Inside";
        case DiskVerdict::Outside: return "Outside";
        default: return "Borderline";
    }
}

// Any test quantity this close to zero makes the verdict Borderline.
inline constexpr double kBorderlineTol = 1e-9;

struct SchurCohnResult {
    double p_at_1;            // p(1)
    double signed_p_at_m1;    // (-1)^k p(-1)
    std::vector<double> inner_dets;  // determinants of all inners of B+ and B-
    bool cond_p1;             // p(1) > 0
    bool cond_pm1;            // (-1)^k p(-1) > 0
    bool cond_inners;         // every inner determinant > 0
    DiskVerdict verdict;
};

// Schur-Cohn root-location test: all roots lie strictly inside the unit
// disk iff p(1) > 0, (-1)^k p(-1) > 0, and both B+-_{k-1} are positive
// innerwise. For k = 1 the innerwise condition is vacuous.
inline SchurCohnResult schur_cohn(const Polynomial& poly) {
    const std::size_t k = poly.degree();
    if (k < 1) throw InvalidParams("schur_cohn requires degree >= 1");
    SchurCohnResult r;
    r.p_at_1 = poly.eval(1.0);
    const double pm1 = poly.eval(-1.0);
    r.signed_p_at_m1 = (k % 2 == 0) ? pm1 : -pm1;
    if (k >= 2)
        for (int sign : {+1, -1})
            for (const SmallMatrix& inner : inners(jury_matrix(poly, sign)))
                r.inner_dets.push_back(inner.det());

    r.cond_p1 = r.p_at_1 > 0.0;
    r.cond_pm1 = r.signed_p_at_m1 > 0.0;
    r.cond_inners = true;
    for (double d : r.inner_dets)
        if (!(d > 0.0)) r.cond_inners = false;

    bool outside = false;
    bool borderline = false;
    auto classify = [&](double q) {
        if (q < -kBorderlineTol) outside = true;
        else if (std::abs(q) <= kBorderlineTol) borderline = true;
    };
    classify(r.p_at_1);
    classify(r.signed_p_at_m1);
    for (double d : r.inner_dets) classify(d);
    r.verdict = outside ? DiskVerdict::Outside
              : borderline ? DiskVerdict::Borderline
              : DiskVerdict::Inside;
    return r;
}

// Coefficients of the degree-4 characteristic polynomial at the
// disease-free equilibrium, in closed form.
struct CharPoly4 {
    double p1;
    double p2;
    double p3;
    double p4;

    Polynomial poly() const { return Polynomial{{p1, p2, p3, p4}}; }
};

// Jacobian of the model at the disease-free equilibrium, ordered (S,I,C,A).
inline SmallMatrix jacobian_dfe(const ModelParams& p) {
    const DerivedConstants dc = derived_constants(p);
    SmallMatrix j = SmallMatrix::zero(4);
    j.at(0, 0) = -p.mu;
    j.at(0, 1) = -p.beta;
    j.at(0, 2) = -p.beta * p.eta_C;
    j.at(0, 3) = -p.beta * p.eta_A;
    j.at(1, 1) = p.beta - dc.C1;
    j.at(1, 2) = p.beta * p.eta_C + p.omega;
    j.at(1, 3) = p.beta * p.eta_A + p.alpha;
    j.at(2, 1) = p.phi;
    j.at(2, 2) = -dc.C3;
    j.at(3, 1) = p.rho;
    j.at(3, 3) = -dc.C2;
    return j;
}

inline CharPoly4 char_poly_dfe(const ModelParams& p) {
    const DerivedConstants dc = derived_constants(p);
    const double inner = (dc.C1 - p.beta) * (dc.C2 + dc.C3) + dc.C2 * dc.C3 -
                         (p.beta * p.eta_A + p.alpha) * p.rho -
                         (p.beta * p.eta_C + p.omega) * p.phi;
    const double tail = dc.D_script * (1.0 - dc.r0());  // D_script - N_script
    CharPoly4 cp;
    cp.p1 = dc.C1 + dc.C2 + dc.C3 + p.mu - p.beta;
    cp.p2 = p.mu * (dc.C1 + dc.C2 + dc.C3 - p.beta) + inner;
    cp.p3 = p.mu * inner + tail;
    cp.p4 = p.mu * tail;
    return cp;
}

// Characteristic polynomial of an arbitrary matrix by the trace recursion
// M1 = A, c1 = -tr M1, Mk = A (M_{k-1} + c_{k-1} I), ck = -tr(Mk)/k.
// Independent of the closed forms above; used to cross-check them.
inline std::vector<double> char_poly_faddeev(const SmallMatrix& a) {
    const std::size_t n = a.n;
    if (n == 0) throw InvalidParams("char_poly_faddeev requires a nonempty matrix");
    std::vector<double> c(n);
    SmallMatrix m = a;
    c[0] = -m.trace();
    for (std::size_t k = 2; k <= n; ++k) {
        SmallMatrix t = m;
        for (std::size_t i = 0; i < n; ++i) t.at(i, i) += c[k - 2];
        m = a * t;
        c[k - 1] = -m.trace() / static_cast<double>(k);
    }
    return c;
}

// One inequality of the stability theorem. rhs_defined is false when the
// bound itself does not exist for these parameters (for example the beta
// bound when C2 >= 1); holds is then false and rhs is meaningless.
struct Condition {
    bool holds;
    double lhs;
    double rhs;
    bool rhs_defined;
};

enum class Verdict { LocallyStable, Unstable, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::LocallyStable: return "LocallyStable";
        case Verdict::Unstable: return "Unstable";
        default: return "Inconclusive";
    }
}

struct StabilityReport {
    double r0;
    CharPoly4 char_poly;
    SchurCohnResult schur;
    Condition c2_lt_1;         // C2 < 1
    Condition c3_lt_1;         // C3 < 1
    Condition beta_bound;      // beta < C2 C3 / ((1-C2)(1-C3))
    Condition p2_bound;        // p2 < 1 + p4
    Condition sandwich_lower;  // lower half of the p4 p1 - p3 sandwich
    Condition sandwich_upper;  // upper half of the p4 p1 - p3 sandwich
    Condition mu_bound;        // mu < 1 / (D (1 - R0))
    Condition lemma_beta;      // beta < C1, implied by R0 < 1
    Verdict verdict;
};

// Local stability analysis of the disease-free equilibrium. The verdict
// orders the evidence: R0 > 1 or a failed root-location test is Unstable;
// LocallyStable needs R0 < 1, all roots strictly inside the unit disk, and
// every theorem inequality strict; anything borderline or mixed (the
// theorem conditions are sufficient, not necessary) is Inconclusive.
inline StabilityReport dfe_local_stability(const ModelParams& p) {
    const DerivedConstants dc = derived_constants(p);
    StabilityReport rep;
    rep.r0 = dc.r0();
    rep.char_poly = char_poly_dfe(p);
    rep.schur = schur_cohn(rep.char_poly.poly());

    const double p1 = rep.char_poly.p1;
    const double p2 = rep.char_poly.p2;
    const double p3 = rep.char_poly.p3;
    const double p4 = rep.char_poly.p4;

    rep.c2_lt_1 = {dc.C2 < 1.0, dc.C2, 1.0, true};
    rep.c3_lt_1 = {dc.C3 < 1.0, dc.C3, 1.0, true};
    if (dc.C2 < 1.0 && dc.C3 < 1.0) {
        const double bound = dc.C2 * dc.C3 / ((1.0 - dc.C2) * (1.0 - dc.C3));
        rep.beta_bound = {p.beta < bound, p.beta, bound, true};
    } else {
        rep.beta_bound = {false, p.beta, 0.0, false};
    }
    rep.p2_bound = {p2 < 1.0 + p4, p2, 1.0 + p4, true};

    // Sandwich on m = p4 p1 - p3. Each side divides by p1 + p3 or p1 - p3;
    // when a divisor is nonpositive or vanishes within 1e-12 the side falls
    // back to the multiplied-out determinant form |B3+-| > 0.
    const double m = p4 * p1 - p3;
    const double div_lo = p1 + p3;
    const double div_hi = p1 - p3;
    const double b3_plus = (1.0 - p4 * p4) * (1.0 + p2 + p4) + (p1 + p3) * m;
    const double b3_minus = (1.0 - p4) * (1.0 - p4) * (1.0 + p4 - p2) - (p1 - p3) * m;
    if (div_lo > 1e-12) {
        const double lo = -(1.0 - p4 * p4) * (1.0 + p2 + p4) / div_lo;
        rep.sandwich_lower = {lo < m, lo, m, true};
    } else {
        rep.sandwich_lower = {b3_plus > 0.0, 0.0, b3_plus, true};
    }
    if (div_hi > 1e-12) {
        const double hi = (1.0 - p4) * (1.0 - p4) * (1.0 + p4 - p2) / div_hi;
        rep.sandwich_upper = {m < hi, m, hi, true};
    } else {
        rep.sandwich_upper = {b3_minus > 0.0, 0.0, b3_minus, true};
    }

    if (rep.r0 < 1.0) {
        const double bound = 1.0 / (dc.D_script * (1.0 - rep.r0));
        rep.mu_bound = {p.mu < bound, p.mu, bound, true};
    } else {
        rep.mu_bound = {false, p.mu, 0.0, false};
    }
    rep.lemma_beta = {p.beta < dc.C1, p.beta, dc.C1, true};

    if (rep.r0 > 1.0) {
        rep.verdict = Verdict::Unstable;
    } else if (rep.schur.verdict == DiskVerdict::Outside) {
        rep.verdict = Verdict::Unstable;
    } else if (rep.r0 < 1.0 && rep.schur.verdict == DiskVerdict::Inside &&
               rep.c2_lt_1.holds && rep.c3_lt_1.holds && rep.beta_bound.holds &&
               rep.p2_bound.holds && rep.sandwich_lower.holds && rep.sandwich_upper.holds &&
               rep.mu_bound.holds) {
        rep.verdict = Verdict::LocallyStable;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
    return rep;
}

} // namespace sica
