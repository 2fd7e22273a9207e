#include "semistatic/polytope.hpp"

#include <algorithm>
#include <sstream>

#include "semistatic/errors.hpp"

namespace semistatic {

std::string describe(const RowLabel& label)
{
    std::ostringstream os;
    if (const auto* m = std::get_if<MartingaleRow>(&label))
        os << "martingale(k=" << m->k << ", cell=" << m->cell << ", asset=" << m->asset << ")";
    else if (const auto* c = std::get_if<CalibrationRow>(&label))
        os << "calibration(claim=" << c->claim << ")";
    else
        os << "normalization";
    return os.str();
}

ConstraintSystem build_constraints(const FilteredModel& model)
{
    const std::size_t n = model.atom_count();
    std::vector<Vector> rows;
    ConstraintSystem cs;
    for (std::size_t k = 1; k <= model.steps(); ++k) {
        for (std::size_t c = 0; c < model.cells(k - 1).size(); ++c) {
            for (std::size_t j = 0; j < model.assets(); ++j) {
                const Vector inc = model.increment(j, k);
                Vector row = zeros(n);
                for (auto a : model.cells(k - 1)[c]) row[a] = inc[a];
                rows.push_back(std::move(row));
                cs.labels.emplace_back(MartingaleRow{k, c, j});
                cs.rhs.emplace_back(0);
            }
        }
    }
    for (std::size_t i = 0; i < model.claim_count(); ++i) {
        rows.push_back(model.claims()[i]);
        cs.labels.emplace_back(CalibrationRow{i});
        cs.rhs.emplace_back(0);
    }
    rows.push_back(Vector(n, Rational(1)));
    cs.labels.emplace_back(NormalizationRow{});
    cs.rhs.emplace_back(1);
    cs.matrix = Matrix::from_rows(rows, n);
    cs.allowed = model.allowed();
    return cs;
}

std::vector<Measure> VertexSet::measures() const
{
    std::vector<Measure> out;
    for (const auto& v : vertices) out.push_back(v.measure);
    return out;
}

bool canonical_less(const Vector& a, const Vector& b)
{
    Cell sa, sb;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0) sa.push_back(i);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (sgn(b[i]) != 0) sb.push_back(i);
    if (sa != sb) return sa < sb;
    return a < b;
}

bool member(const Vector& q, const ConstraintSystem& cs)
{
    if (q.size() != cs.atoms()) return false;
    for (std::size_t a = 0; a < q.size(); ++a) {
        if (sgn(q[a]) < 0) return false;
        if (sgn(q[a]) != 0 && !cs.allowed[a]) return false;
    }
    return cs.matrix.multiply(q) == cs.rhs;
}

bool member(const Measure& q, const ConstraintSystem& cs) { return member(q.weights(), cs); }

namespace {

ExtremalityCertificate certify(const Cell& support, const ConstraintSystem& cs)
{
    ExtremalityCertificate cert;
    cert.support = support;
    const Matrix cols = cs.matrix.select_columns(support);
    const EchelonForm rows = reduced_row_echelon(cols.transpose());
    cert.rank = rows.pivots.size();
    cert.extreme = cert.rank == support.size();
    if (cert.extreme) {
        cert.witness_rows = rows.pivots;
    } else {
        const Vector local = primitive_oriented(null_space(cols).front());
        cert.direction = zeros(cs.atoms());
        for (std::size_t i = 0; i < support.size(); ++i) cert.direction[support[i]] = local[i];
    }
    return cert;
}

}  // namespace

ExtremalityCertificate is_extreme(const Measure& q, const ConstraintSystem& cs)
{
    if (!member(q, cs)) throw ConstraintViolation("measure does not satisfy the constraint system");
    return certify(q.support(), cs);
}

namespace {

struct Ray {
    Vector x;
    std::vector<bool> zero;
};

Ray make_ray(Vector x)
{
    x = primitive(x);
    Ray r{std::move(x), {}};
    r.zero.resize(r.x.size());
    for (std::size_t i = 0; i < r.x.size(); ++i) r.zero[i] = sgn(r.x[i]) == 0;
    return r;
}

bool adjacent(const std::vector<Ray>& rays, std::size_t p, std::size_t n)
{
    const std::size_t d = rays[p].zero.size();
    std::vector<bool> common(d);
    for (std::size_t i = 0; i < d; ++i) common[i] = rays[p].zero[i] && rays[n].zero[i];
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (r == p || r == n) continue;
        bool covers = true;
        for (std::size_t i = 0; i < d && covers; ++i)
            if (common[i] && !rays[r].zero[i]) covers = false;
        if (covers) return false;
    }
    return true;
}

}  // namespace

VertexSet enumerate_extreme_points(const ConstraintSystem& cs)
{
    const std::size_t n = cs.atoms();
    const std::size_t m = cs.matrix.rows();

    // Homogenized variables: allowed atoms, then t. Row i reads A_i q - b_i t = 0.
    std::vector<std::size_t> vars;
    for (std::size_t a = 0; a < n; ++a)
        if (cs.allowed[a]) vars.push_back(a);
    std::vector<bool> alive(vars.size() + 1, true);

    auto homogeneous = [&](std::size_t i) {
        Vector row;
        for (std::size_t v = 0; v < vars.size(); ++v)
            if (alive[v]) row.push_back(cs.matrix(i, vars[v]));
        if (alive[vars.size()]) row.push_back(-cs.rhs[i]);
        return row;
    };
    auto live_columns = [&] {
        std::vector<std::size_t> idx;
        for (std::size_t v = 0; v < alive.size(); ++v)
            if (alive[v]) idx.push_back(v);
        return idx;
    };

    // Strip coordinates forced to zero by a same-signed reduced row.
    for (bool changed = true; changed;) {
        changed = false;
        const auto idx = live_columns();
        if (idx.empty()) break;
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < m; ++i) rows.push_back(homogeneous(i));
        const EchelonForm e = reduced_row_echelon(Matrix::from_rows(rows, idx.size()));
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            int sign = 0;
            bool mixed = false;
            for (std::size_t c = 0; c < idx.size(); ++c) {
                const int s = sgn(e.reduced(r, c));
                if (s == 0) continue;
                if (sign == 0) sign = s;
                else if (s != sign) mixed = true;
            }
            if (mixed) continue;
            for (std::size_t c = 0; c < idx.size(); ++c)
                if (sgn(e.reduced(r, c)) != 0) {
                    alive[idx[c]] = false;
                    changed = true;
                }
        }
    }

    VertexSet out;
    if (!alive[vars.size()]) return out;
    const auto idx = live_columns();
    const std::size_t d = idx.size();

    std::vector<Ray> rays;
    for (std::size_t i = 0; i < d; ++i) rays.push_back(make_ray(unit(d, i)));

    for (std::size_t i = 0; i < m && !rays.empty(); ++i) {
        const Vector a = homogeneous(i);
        std::vector<Rational> val(rays.size());
        bool all_zero = true;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(a, rays[r].x);
            all_zero &= sgn(val[r]) == 0;
        }
        if (all_zero) continue;
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (sgn(val[r]) == 0) next.push_back(rays[r]);
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (sgn(val[p]) <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (sgn(val[q]) >= 0 || !adjacent(rays, p, q)) continue;
                next.push_back(make_ray(subtract(scale(rays[q].x, val[p]), scale(rays[p].x, val[q]))));
            }
        }
        rays = std::move(next);
    }

    for (const auto& ray : rays) {
        const Rational& t = ray.x.back();
        if (sgn(t) <= 0) continue;
        Vector q = zeros(n);
        for (std::size_t c = 0; c + 1 < d; ++c) q[vars[idx[c]]] = ray.x[c] / t;
        Measure measure(std::move(q));
        ExtremalityCertificate cert = certify(measure.support(), cs);
        out.vertices.push_back(Vertex{std::move(measure), std::move(cert)});
    }
    std::sort(out.vertices.begin(), out.vertices.end(), [](const Vertex& a, const Vertex& b) {
        return canonical_less(a.measure.weights(), b.measure.weights());
    });
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end(),
                                   [](const Vertex& a, const Vertex& b) { return a.measure == b.measure; }),
                       out.vertices.end());
    return out;
}

}  // namespace semistatic
