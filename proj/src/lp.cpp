#include "semistatic/lp.hpp"

#include <optional>

#include "semistatic/errors.hpp"
#include "semistatic/linalg.hpp"

namespace semistatic {

void LinearProgram::add_row(Vector coefficients, RowSense sense, Rational rhs)
{
    if (coefficients.size() != variables) throw ShapeMismatch("LinearProgram::add_row: wrong width");
    rows.push_back(Row{std::move(coefficients), sense, std::move(rhs)});
}

namespace {

// Standard form min c.z, Az = b, z >= 0, b >= 0.
struct StandardForm {
    Matrix a;
    Vector b;
    Vector c;
    std::vector<Rational> row_sign;   // +1 or -1 applied to original row
    std::vector<std::size_t> pos;     // column of x_j (or x_j^+)
    std::vector<std::optional<std::size_t>> neg;  // column of x_j^- for free vars
};

StandardForm standardize(const LinearProgram& lp)
{
    StandardForm s;
    std::size_t cols = 0;
    s.pos.resize(lp.variables);
    s.neg.resize(lp.variables);
    for (std::size_t j = 0; j < lp.variables; ++j) {
        s.pos[j] = cols++;
        if (lp.free[j]) s.neg[j] = cols++;
    }
    std::vector<std::optional<std::size_t>> slack(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
        if (lp.rows[i].sense != RowSense::Equal) slack[i] = cols++;

    const std::size_t m = lp.rows.size();
    s.a = Matrix(m, cols);
    s.b = zeros(m);
    s.c = zeros(cols);
    s.row_sign.assign(m, Rational(1));
    for (std::size_t j = 0; j < lp.variables; ++j) {
        s.c[s.pos[j]] = lp.objective[j];
        if (s.neg[j]) s.c[*s.neg[j]] = -lp.objective[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        const Rational sign = sgn(row.rhs) < 0 ? Rational(-1) : Rational(1);
        s.row_sign[i] = sign;
        for (std::size_t j = 0; j < lp.variables; ++j) {
            s.a(i, s.pos[j]) = sign * row.coefficients[j];
            if (s.neg[j]) s.a(i, *s.neg[j]) = -sign * row.coefficients[j];
        }
        if (slack[i]) s.a(i, *slack[i]) = sign * (row.sense == RowSense::LessEqual ? 1 : -1);
        s.b[i] = sign * row.rhs;
    }
    return s;
}

class Simplex {
public:
    Simplex(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)), m_(a_.rows()) {}

    std::size_t m() const { return m_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Vector& basic_values() const { return xb_; }
    const Matrix& inverse() const { return binv_; }

    void start(std::vector<std::size_t> basis)
    {
        basis_ = std::move(basis);
        binv_ = Matrix(m_, m_);
        for (std::size_t i = 0; i < m_; ++i) binv_(i, i) = 1;
        xb_ = b_;
    }

    Vector duals(const Vector& c) const
    {
        Vector y = zeros(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            const Rational& cb = c[basis_[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t i = 0; i < m_; ++i) y[i] += cb * binv_(r, i);
        }
        return y;
    }

    Vector column(std::size_t j) const
    {
        Vector u = zeros(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            const Rational& akj = a_(k, j);
            if (sgn(akj) == 0) continue;
            for (std::size_t r = 0; r < m_; ++r) u[r] += binv_(r, k) * akj;
        }
        return u;
    }

    void pivot(std::size_t r, std::size_t entering, const Vector& u)
    {
        const Rational inv = 1 / u[r];
        for (std::size_t k = 0; k < m_; ++k) binv_(r, k) *= inv;
        xb_[r] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || sgn(u[i]) == 0) continue;
            const Rational f = u[i];
            for (std::size_t k = 0; k < m_; ++k) binv_(i, k) -= f * binv_(r, k);
            xb_[i] -= f * xb_[r];
        }
        basis_[r] = entering;
    }

    // Returns false when unbounded. Columns >= allowed_cols never enter.
    bool optimize(const Vector& c, std::size_t allowed_cols)
    {
        for (;;) {
            const Vector y = duals(c);
            std::optional<std::size_t> entering;
            std::vector<bool> in_basis(a_.cols(), false);
            for (auto j : basis_) in_basis[j] = true;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (in_basis[j]) continue;
                Rational d = c[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (sgn(a_(i, j)) != 0) d -= y[i] * a_(i, j);
                if (sgn(d) < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return true;
            const Vector u = column(*entering);
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t r = 0; r < m_; ++r) {
                if (sgn(u[r]) <= 0) continue;
                const Rational theta = xb_[r] / u[r];
                if (!leave || theta < best || (theta == best && basis_[r] < basis_[*leave])) {
                    leave = r;
                    best = theta;
                }
            }
            if (!leave) return false;
            pivot(*leave, *entering, u);
        }
    }

private:
    Matrix a_;
    Vector b_;
    std::size_t m_;
    std::vector<std::size_t> basis_;
    Matrix binv_;
    Vector xb_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp)
{
    if (lp.objective.size() != lp.variables || lp.free.size() != lp.variables)
        throw ShapeMismatch("solve_lp: objective or sign vector has wrong length");
    const StandardForm s = standardize(lp);
    const std::size_t m = s.a.rows();
    const std::size_t n = s.a.cols();

    Matrix ext(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) ext(i, j) = s.a(i, j);
        ext(i, n + i) = 1;
    }
    Vector phase1 = zeros(n + m);
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;

    Simplex simplex(ext, s.b);
    std::vector<std::size_t> start(m);
    for (std::size_t i = 0; i < m; ++i) start[i] = n + i;
    simplex.start(start);
    simplex.optimize(phase1, n + m);

    LpSolution sol;
    Rational infeas = 0;
    for (std::size_t r = 0; r < m; ++r)
        if (simplex.basis()[r] >= n) infeas += simplex.basic_values()[r];
    if (sgn(infeas) > 0) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    // Drive zero-level artificials out where a structural column can replace them.
    for (std::size_t r = 0; r < m; ++r) {
        if (simplex.basis()[r] < n) continue;
        std::vector<bool> in_basis(n, false);
        for (auto j : simplex.basis())
            if (j < n) in_basis[j] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (in_basis[j]) continue;
            const Vector u = simplex.column(j);
            if (sgn(u[r]) != 0) {
                simplex.pivot(r, j, u);
                break;
            }
        }
    }

    Vector c2 = zeros(n + m);
    for (std::size_t j = 0; j < n; ++j) c2[j] = s.c[j];
    if (!simplex.optimize(c2, n)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    Vector z = zeros(n);
    for (std::size_t r = 0; r < m; ++r)
        if (simplex.basis()[r] < n) z[simplex.basis()[r]] = simplex.basic_values()[r];
    sol.status = LpStatus::Optimal;
    sol.x = zeros(lp.variables);
    for (std::size_t j = 0; j < lp.variables; ++j) {
        sol.x[j] = z[s.pos[j]];
        if (s.neg[j]) sol.x[j] -= z[*s.neg[j]];
    }
    sol.value = dot(lp.objective, sol.x);
    const Vector y = simplex.duals(c2);
    sol.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = y[i] * s.row_sign[i];
    return sol;
}

}  // namespace semistatic
