#include "hopfu/action.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace hopfu::action {

namespace {

Matrix from_coords(const Field& f, std::size_t g, std::span<const Elem> coords, const Subspace& basis) {
    Matrix m(f, g, g);
    std::vector<Elem> flat(g * g, 0);
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k]) gf::axpy(f, flat, coords[k], basis.basis().row(k));
    for (std::size_t r = 0; r < g; ++r)
        for (std::size_t c = 0; c < g; ++c) m.set(r, c, flat[r * g + c]);
    return m;
}

void decode(std::uint64_t code, std::uint32_t q, std::vector<Elem>& out) {
    for (auto& e : out) {
        e = static_cast<Elem>(code % q);
        code /= q;
    }
}

bool less_solution(const ActionSolution& a, const ActionSolution& b) {
    if (auto c = compare_entries(a.rho_u, b.rho_u); c != 0) return c < 0;
    return compare_entries(a.rho_w, b.rho_w) < 0;
}

}  // namespace

bool preserves_relations(const QuadAlgebra& a, const Matrix& x) {
    const std::size_t g = a.n_gens();
    if (x.rows() != g || x.cols() != g) throw Error(ErrorKind::DimensionMismatch, "matrix size differs from dim V");
    const Field& f = a.field();
    const auto id = Matrix::identity(f, g);
    const Matrix ext = gf::kron(x, id) + gf::kron(id, x);
    const auto& rel = a.relations();
    for (std::size_t r = 0; r < rel.dim(); ++r)
        if (!rel.contains(ext.apply(rel.basis().row(r)))) return false;
    return true;
}

UAction UAction::make(QuadAlgebra a, Matrix rho_u, Matrix rho_w) {
    const std::size_t g = a.n_gens();
    for (const Matrix* m : {&rho_u, &rho_w}) {
        if (m->rows() != g || m->cols() != g) {
            throw Error(ErrorKind::DimensionMismatch, "action matrices must be " + std::to_string(g) + " x " + std::to_string(g));
        }
        if (!(m->field() == a.field())) throw Error(ErrorKind::FieldMismatch, "action matrices over a different field");
    }
    if (auto bad = umod::failing_identity(rho_u, rho_w)) throw Error(ErrorKind::NotUModule, "fails " + *bad + " on V");
    if (!preserves_relations(a, rho_u)) throw Error(ErrorKind::RelationsNotPreserved, "u does not preserve R");
    if (!preserves_relations(a, rho_w)) throw Error(ErrorKind::RelationsNotPreserved, "w does not preserve R");
    auto v = umod::UModule::make(std::move(rho_u), std::move(rho_w));
    return UAction(std::move(a), std::move(v));
}

bool is_inner_faithful(const UAction& act) { return !act.rho_u().is_zero(); }

Matrix induced_derivation(const QuadAlgebra& a, const Matrix& x, std::size_t n) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    Matrix cur(f, 1, 1);  // T_0
    for (std::size_t k = 1; k <= n; ++k) {
        const auto pc = a.piece(k);
        const std::size_t prev_dim = cur.rows();
        Matrix next(f, pc->dim, pc->dim);
        std::vector<Elem> col(pc->dim);
        for (std::size_t t = 0; t < pc->dim; ++t) {
            const std::size_t s = pc->parent(t), letter = pc->letter(t);
            std::fill(col.begin(), col.end(), 0);
            // D(y x_a) = D(y) x_a + y X(x_a)
            for (std::size_t sigma = 0; sigma < prev_dim; ++sigma)
                pc->add_class_of_coord(f, col, sigma * g + letter, cur(sigma, s));
            for (std::size_t b = 0; b < g; ++b) pc->add_class_of_coord(f, col, s * g + b, x(b, letter));
            for (std::size_t r = 0; r < pc->dim; ++r) next.set(r, t, col[r]);
        }
        cur = std::move(next);
    }
    return cur;
}

umod::UModule induced_module(const UAction& act, std::size_t n) {
    auto u = induced_derivation(act.algebra(), act.rho_u(), n);
    auto w = induced_derivation(act.algebra(), act.rho_w(), n);
    if (auto bad = umod::failing_identity(u, w)) {
        throw Error(ErrorKind::RelationsNotPreserved, "induced action on T_" + std::to_string(n) + " fails " + *bad);
    }
    return umod::UModule::make(std::move(u), std::move(w));
}

std::vector<umod::Decomposition> graded_decompose(const UAction& act, std::size_t max_deg) {
    std::vector<umod::Decomposition> out;
    for (std::size_t n = 0; n <= max_deg; ++n) out.push_back(umod::decompose(induced_module(act, n)));
    return out;
}

std::vector<std::size_t> invariant_dims(const UAction& act, std::size_t max_deg) {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= max_deg; ++n) {
        auto u = induced_derivation(act.algebra(), act.rho_u(), n);
        auto w = induced_derivation(act.algebra(), act.rho_w(), n);
        out.push_back(gf::kernel(gf::vstack(u, w)).dim());
    }
    return out;
}

Subspace annihilator(const UAction& act, std::size_t max_deg) {
    const Field& f = act.algebra().field();
    const std::uint32_t p = f.characteristic();
    const std::size_t basis = std::size_t{p} * p;
    // Column i * p + j holds the entries of u^i w^j on every T_n, n <= max_deg.
    std::vector<std::vector<Elem>> columns(basis);
    for (std::size_t n = 0; n <= max_deg; ++n) {
        const auto u = induced_derivation(act.algebra(), act.rho_u(), n);
        const auto w = induced_derivation(act.algebra(), act.rho_w(), n);
        std::vector<Matrix> wpow{Matrix::identity(f, u.rows())};
        for (std::uint32_t j = 1; j < p; ++j) wpow.push_back(w * wpow.back());
        Matrix upow = Matrix::identity(f, u.rows());
        for (std::uint32_t i = 0; i < p; ++i) {
            for (std::uint32_t j = 0; j < p; ++j) {
                const Matrix op = upow * wpow[j];
                auto& col = columns[i * p + j];
                col.insert(col.end(), op.data().begin(), op.data().end());
            }
            upow = u * upow;
        }
    }
    const std::size_t rows = columns.front().size();
    Matrix sys(f, rows, basis);
    for (std::size_t c = 0; c < basis; ++c)
        for (std::size_t r = 0; r < rows; ++r) sys.set(r, c, columns[c][r]);
    return gf::kernel(sys);
}

std::size_t SolveResult::inner_faithful_count() const {
    return static_cast<std::size_t>(
        std::count_if(solutions.begin(), solutions.end(), [](const ActionSolution& s) { return s.inner_faithful; }));
}

Subspace derivation_space(const QuadAlgebra& a) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const auto& rel = a.relations();
    if (rel.dim() == 0 || rel.dim() == g * g) return Subspace::full(f, g * g);
    const Subspace perp = gf::kernel(rel.basis());
    // phi((X (x) 1 + 1 (x) X) r) = 0 for r in R, phi in R^perp; unknown X(c, a) at c * g + a.
    Matrix sys(f, rel.dim() * perp.dim(), g * g);
    std::size_t row = 0;
    for (std::size_t ri = 0; ri < rel.dim(); ++ri) {
        const auto r = rel.basis().row(ri);
        for (std::size_t pi = 0; pi < perp.dim(); ++pi, ++row) {
            const auto phi = perp.basis().row(pi);
            for (std::size_t c = 0; c < g; ++c)
                for (std::size_t a_ = 0; a_ < g; ++a_) {
                    Elem coef = 0;
                    for (std::size_t b = 0; b < g; ++b) coef = f.add(coef, f.mul(phi[c * g + b], r[a_ * g + b]));
                    for (std::size_t c2 = 0; c2 < g; ++c2) coef = f.add(coef, f.mul(phi[c2 * g + c], r[c2 * g + a_]));
                    sys.set(row, c * g + a_, coef);
                }
        }
    }
    return gf::kernel(sys);
}

SolveResult solve_actions(const QuadAlgebra& a, std::uint64_t budget, unsigned workers) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const std::uint32_t q = f.order();
    const std::uint32_t p = f.characteristic();
    SolveResult res{0, derivation_space(a), 0, 0, {}};
    const std::size_t d = res.derivation_space.dim();
    res.derivation_space_dim = d;

    const double log_pairs = 2.0 * static_cast<double>(d) * std::log10(static_cast<double>(q));
    if (log_pairs > std::log10(static_cast<double>(budget)) + 1e-12) {
        throw Error(ErrorKind::BudgetExceeded, "|F|^(2 dim D) = " + std::to_string(q) + "^" + std::to_string(2 * d) +
                                                   " exceeds budget " + std::to_string(budget));
    }
    std::uint64_t n_u = 1;
    for (std::size_t k = 0; k < d; ++k) n_u *= q;
    res.candidates_u = n_u;

    std::vector<Matrix> dbasis;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Elem> e(d, 0);
        e[k] = 1;
        dbasis.push_back(from_coords(f, g, e, res.derivation_space));
    }

    if (workers == 0) workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, n_u)));

    struct Partial {
        std::vector<ActionSolution> sols;
        std::uint64_t nilpotent = 0;
    };
    std::vector<Partial> partial(workers);

    auto work = [&](unsigned id) {
        auto& out = partial[id];
        std::vector<Elem> cu(d);
        for (std::uint64_t code = id; code < n_u; code += workers) {
            decode(code, q, cu);
            const Matrix u = from_coords(f, g, cu, res.derivation_space);
            if (!u.pow(p).is_zero()) continue;
            ++out.nilpotent;
            // W = sum c_k D_k with W U - U W = U: linear in c.
            Matrix aug(f, g * g, d + 1);
            for (std::size_t k = 0; k < d; ++k) {
                const Matrix comm = dbasis[k] * u - u * dbasis[k];
                for (std::size_t e = 0; e < g * g; ++e) aug.set(e, k, comm.data()[e]);
            }
            for (std::size_t e = 0; e < g * g; ++e) aug.set(e, d, u.data()[e]);
            const auto ech = gf::rref(aug);
            if (!ech.pivots.empty() && ech.pivots.back() == d) continue;  // inconsistent
            std::vector<Elem> particular(d, 0);
            for (std::size_t r = 0; r < ech.rank; ++r) particular[ech.pivots[r]] = ech.reduced(r, d);
            Matrix coeffs(f, g * g, d);
            for (std::size_t e = 0; e < g * g; ++e)
                for (std::size_t k = 0; k < d; ++k) coeffs.set(e, k, aug(e, k));
            const Subspace hom = gf::kernel(coeffs);
            std::uint64_t n_w = 1;
            for (std::size_t k = 0; k < hom.dim(); ++k) n_w *= q;
            std::vector<Elem> cw(hom.dim()), cfull(d);
            for (std::uint64_t wc = 0; wc < n_w; ++wc) {
                decode(wc, q, cw);
                cfull = particular;
                for (std::size_t k = 0; k < hom.dim(); ++k)
                    if (cw[k]) gf::axpy(f, cfull, cw[k], hom.basis().row(k));
                Matrix w = from_coords(f, g, cfull, res.derivation_space);
                if (!(w.pow(p) == w)) continue;
                out.sols.push_back({u, std::move(w), !u.is_zero()});
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned id = 0; id < workers; ++id) threads.emplace_back(work, id);
        for (auto& t : threads) t.join();
    }
    for (auto& part : partial) {
        res.nilpotent_u += part.nilpotent;
        for (auto& s : part.sols) res.solutions.push_back(std::move(s));
    }
    std::sort(res.solutions.begin(), res.solutions.end(), less_solution);
    return res;
}

}  // namespace hopfu::action
