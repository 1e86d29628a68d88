#include "hopfu/quadalg.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace hopfu::quadalg {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// Upper bound on dense entries when building K_n.
constexpr std::size_t kEntriesPerCoordinate = 64;
// Largest V^{(x) n} handled by the direct constructions.
constexpr std::size_t kDirectAmbientLimit = 1u << 14;

}  // namespace

struct QuadAlgebra::Cache {
    std::mutex mutex;
    std::vector<std::shared_ptr<const GradedPiece>> pieces;
};

std::vector<Elem> GradedPiece::normal_form(const Field& f, std::span<const Elem> v) const {
    if (v.size() != coords()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from T_{n-1} (x) V");
    std::vector<Elem> out(dim, 0);
    for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) add_class_of_coord(f, out, c, v[c]);
    return out;
}

void GradedPiece::add_class_of_coord(const Field& f, std::span<Elem> dst, std::size_t coord, Elem c) const {
    if (c == 0) return;
    const std::size_t t = coord_to_basis[coord];
    if (t != npos) {
        dst[t] = f.add(dst[t], c);
        return;
    }
    for (const auto& [idx, val] : tails[coord_to_row[coord]]) dst[idx] = f.add(dst[idx], f.mul(c, val));
}

std::vector<Elem> relation_vector(const Field& f, std::size_t n_gens, const std::vector<Term>& terms) {
    std::vector<Elem> v(n_gens * n_gens, 0);
    for (const auto& t : terms) {
        if (t.left >= n_gens || t.right >= n_gens) throw Error(ErrorKind::BadParameter, "generator index out of range");
        if (!f.contains(t.coeff)) throw Error(ErrorKind::BadParameter, "coefficient is not a field element");
        auto& slot = v[t.left * n_gens + t.right];
        slot = f.add(slot, t.coeff);
    }
    return v;
}

QuadAlgebra::QuadAlgebra(std::vector<std::string> names, Subspace relations, std::size_t supplied)
    : names_(std::move(names)), relations_(std::move(relations)), supplied_(supplied), cache_(std::make_shared<Cache>()) {}

QuadAlgebra QuadAlgebra::make(const Field& f, std::vector<std::string> names,
                              const std::vector<std::vector<Elem>>& relation_vectors) {
    const std::size_t g = names.size();
    if (g == 0) throw Error(ErrorKind::BadParameter, "an algebra needs at least one generator");
    for (const auto& r : relation_vectors) {
        if (r.size() != g * g) throw Error(ErrorKind::DimensionMismatch, "relation vector does not lie in V (x) V");
        for (Elem e : r)
            if (!f.contains(e)) throw Error(ErrorKind::BadParameter, "relation coefficient is not a field element");
    }
    auto rel = Subspace::span(f, g * g, relation_vectors);
    return QuadAlgebra(std::move(names), std::move(rel), relation_vectors.size());
}

QuadAlgebra QuadAlgebra::from_terms(const Field& f, std::vector<std::string> names,
                                    const std::vector<std::vector<Term>>& relations) {
    std::vector<std::vector<Elem>> vecs;
    for (const auto& r : relations) vecs.push_back(relation_vector(f, names.size(), r));
    return make(f, std::move(names), vecs);
}

std::shared_ptr<const GradedPiece> QuadAlgebra::piece(std::size_t n) const {
    std::lock_guard lock(cache_->mutex);
    auto& pieces = cache_->pieces;
    const Field& f = field();
    const std::size_t g = n_gens();
    while (pieces.size() <= n) {
        const std::size_t deg = pieces.size();
        auto pc = std::make_shared<GradedPiece>();
        pc->degree = deg;
        pc->n_gens = g;
        if (deg == 0) {
            pc->dim = 1;
            pc->basis_coord = {0};
            pc->coord_to_basis = {0};
            pc->coord_to_row = {GradedPiece::npos};
            pieces.push_back(std::move(pc));
            continue;
        }
        const GradedPiece& prev = *pieces[deg - 1];
        const std::size_t coords = prev.dim * g;
        if (coords > budget_) {
            throw Error(ErrorKind::BudgetExceeded, "degree " + std::to_string(deg) + " needs " + std::to_string(coords) +
                                                       " coordinates, budget is " + std::to_string(budget_));
        }
        std::vector<std::size_t> pivots;
        std::vector<std::vector<Elem>> rows;
        if (deg >= 2 && relations_.dim() > 0) {
            const GradedPiece& prev2 = *pieces[deg - 2];
            const std::size_t n_rows = prev2.dim * relations_.dim();
            if (n_rows * coords > kEntriesPerCoordinate * budget_) {
                throw Error(ErrorKind::BudgetExceeded, "degree " + std::to_string(deg) + " relation matrix has " +
                                                           std::to_string(n_rows) + " x " + std::to_string(coords) +
                                                           " entries");
            }
            Matrix gens(f, n_rows, coords);
            std::vector<Elem> tmp(prev.dim);
            for (std::size_t sigma = 0; sigma < prev2.dim; ++sigma) {
                for (std::size_t r = 0; r < relations_.dim(); ++r) {
                    auto row = gens.row(sigma * relations_.dim() + r);
                    const auto rel = relations_.basis().row(r);
                    for (std::size_t a = 0; a < g; ++a) {
                        std::fill(tmp.begin(), tmp.end(), 0);
                        bool any = false;
                        for (std::size_t b = 0; b < g; ++b) any |= rel[a * g + b] != 0;
                        if (!any) continue;
                        // class of (sigma, a) in T_{deg-1}
                        prev.add_class_of_coord(f, tmp, sigma * g + a, f.one());
                        for (std::size_t tau = 0; tau < prev.dim; ++tau) {
                            if (tmp[tau] == 0) continue;
                            for (std::size_t b = 0; b < g; ++b) {
                                const Elem c = rel[a * g + b];
                                if (c) row[tau * g + b] = f.add(row[tau * g + b], f.mul(c, tmp[tau]));
                            }
                        }
                    }
                }
            }
            auto e = gf::rref(gens);
            pivots = e.pivots;
            for (std::size_t r = 0; r < e.rank; ++r) {
                auto rr = e.reduced.row(r);
                rows.emplace_back(rr.begin(), rr.end());
            }
        }
        pc->coord_to_basis.assign(coords, GradedPiece::npos);
        pc->coord_to_row.assign(coords, GradedPiece::npos);
        for (std::size_t r = 0; r < pivots.size(); ++r) pc->coord_to_row[pivots[r]] = r;
        for (std::size_t c = 0; c < coords; ++c) {
            if (pc->coord_to_row[c] != GradedPiece::npos) continue;
            pc->coord_to_basis[c] = pc->basis_coord.size();
            pc->basis_coord.push_back(c);
        }
        pc->dim = pc->basis_coord.size();
        pc->pivots = pivots;
        pc->tails.resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < coords; ++c) {
                if (rows[r][c] == 0 || pc->coord_to_basis[c] == GradedPiece::npos) continue;
                pc->tails[r].emplace_back(pc->coord_to_basis[c], f.neg(rows[r][c]));
            }
        }
        pieces.push_back(std::move(pc));
    }
    return pieces[n];
}

std::vector<std::size_t> QuadAlgebra::hilbert(std::size_t max_deg) const {
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= max_deg; ++n) dims.push_back(piece(n)->dim);
    return dims;
}

std::vector<std::uint32_t> QuadAlgebra::word(std::size_t n, std::size_t t) const {
    std::vector<std::uint32_t> w(n);
    for (std::size_t k = n; k >= 1; --k) {
        auto pc = piece(k);
        if (t >= pc->dim) throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
        w[k - 1] = static_cast<std::uint32_t>(pc->letter(t));
        t = pc->parent(t);
    }
    return w;
}

std::string QuadAlgebra::format_word(const std::vector<std::uint32_t>& w) const {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        os << names_.at(w[i]);
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

std::string QuadAlgebra::format_element(std::size_t n, std::span<const Elem> v) const {
    std::ostringstream os;
    bool first = true;
    const Field& f = field();
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (v[t] != f.one()) os << (f.is_prime() ? f.format(v[t]) : "(" + f.format(v[t]) + ")");
        os << format_word(word(n, t));
    }
    return first ? "0" : os.str();
}

std::vector<Elem> QuadAlgebra::right_multiply(std::size_t n, std::span<const Elem> u, std::uint32_t letter) const {
    const std::size_t g = n_gens();
    if (letter >= g) throw Error(ErrorKind::BadParameter, "generator index out of range");
    auto cur = piece(n);
    if (u.size() != cur->dim) throw Error(ErrorKind::DegreeMismatch, "element is not in T_" + std::to_string(n));
    auto next = piece(n + 1);
    std::vector<Elem> out(next->dim, 0);
    for (std::size_t s = 0; s < u.size(); ++s)
        if (u[s]) next->add_class_of_coord(field(), out, s * g + letter, u[s]);
    return out;
}

std::vector<Elem> QuadAlgebra::reduce_word(const std::vector<std::uint32_t>& w) const {
    std::vector<Elem> cur{field().one()};
    for (std::size_t k = 0; k < w.size(); ++k) cur = right_multiply(k, cur, w[k]);
    return cur;
}

std::vector<Elem> QuadAlgebra::graded_multiply(std::size_t n, std::size_t m, std::span<const Elem> u,
                                               std::span<const Elem> v) const {
    if (u.size() != piece(n)->dim || v.size() != piece(m)->dim) {
        throw Error(ErrorKind::DegreeMismatch, "factors are not in T_" + std::to_string(n) + " and T_" + std::to_string(m));
    }
    const Field& f = field();
    std::vector<Elem> out(piece(n + m)->dim, 0);
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0) continue;
        std::vector<Elem> cur(u.begin(), u.end());
        const auto w = word(m, t);
        for (std::size_t k = 0; k < w.size(); ++k) cur = right_multiply(n + k, cur, w[k]);
        gf::axpy(f, out, v[t], cur);
    }
    return out;
}

Matrix QuadAlgebra::projection(std::size_t n) const {
    const std::size_t g = n_gens();
    const std::size_t total = ipow(g, n);
    if (total > kDirectAmbientLimit) throw Error(ErrorKind::BudgetExceeded, "V^{(x) n} too large for a direct projection");
    auto pc = piece(n);
    Matrix proj(field(), pc->dim, total);
    std::vector<std::uint32_t> w(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t c = idx;
        for (std::size_t k = n; k-- > 0;) {
            w[k] = static_cast<std::uint32_t>(c % g);
            c /= g;
        }
        const auto cls = reduce_word(w);
        for (std::size_t t = 0; t < cls.size(); ++t) proj.set(t, idx, cls[t]);
    }
    return proj;
}

Subspace QuadAlgebra::ideal_component(std::size_t n) const { return gf::kernel(projection(n)); }

Subspace ideal_component_direct(const QuadAlgebra& a, std::size_t n) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const std::size_t total = ipow(g, n);
    if (total > kDirectAmbientLimit) throw Error(ErrorKind::BudgetExceeded, "V^{(x) n} too large for direct summation");
    if (n < 2) return Subspace::zero(f, total);
    const auto& rel = a.relations();
    std::vector<std::vector<Elem>> vecs;
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        const std::size_t pre = ipow(g, k), post = ipow(g, n - 2 - k);
        for (std::size_t p = 0; p < pre; ++p)
            for (std::size_t s = 0; s < post; ++s)
                for (std::size_t r = 0; r < rel.dim(); ++r) {
                    std::vector<Elem> v(total, 0);
                    for (std::size_t ij = 0; ij < g * g; ++ij) v[(p * g * g + ij) * post + s] = rel.basis()(r, ij);
                    vecs.push_back(std::move(v));
                }
    }
    return Subspace::span(f, total, vecs);
}

std::size_t overlap_dim(const QuadAlgebra& a) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const auto& rel = a.relations();
    std::vector<std::vector<Elem>> left, right;
    for (std::size_t r = 0; r < rel.dim(); ++r) {
        for (std::size_t c = 0; c < g; ++c) {
            std::vector<Elem> lv(g * g * g, 0), rv(g * g * g, 0);
            for (std::size_t ij = 0; ij < g * g; ++ij) {
                lv[ij * g + c] = rel.basis()(r, ij);
                rv[c * g * g + ij] = rel.basis()(r, ij);
            }
            left.push_back(std::move(lv));
            right.push_back(std::move(rv));
        }
    }
    return gf::intersect(Subspace::span(f, g * g * g, left), Subspace::span(f, g * g * g, right)).dim();
}

QuadAlgebra koszul_dual(const QuadAlgebra& a) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const Subspace perp = a.relations().dim() == 0 ? Subspace::full(f, g * g) : gf::kernel(a.relations().basis());
    std::vector<std::vector<Elem>> vecs;
    for (std::size_t r = 0; r < perp.dim(); ++r) {
        auto row = perp.basis().row(r);
        vecs.emplace_back(row.begin(), row.end());
    }
    std::vector<std::string> names;
    for (const auto& n : a.gen_names()) names.push_back(n + "*");
    auto dual = QuadAlgebra::make(f, std::move(names), vecs);
    dual.set_coordinate_budget(a.coordinate_budget());
    return dual;
}

std::string_view to_string(FrobeniusStatus s) {
    switch (s) {
        case FrobeniusStatus::Frobenius: return "frobenius";
        case FrobeniusStatus::NotFrobenius: return "not_frobenius";
        case FrobeniusStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

FrobeniusReport frobenius_check(const QuadAlgebra& a, std::size_t cutoff) {
    if (cutoff < 1) throw Error(ErrorKind::BadParameter, "cutoff must be at least 1");
    FrobeniusReport rep;
    for (std::size_t n = 0; n <= cutoff; ++n) {
        rep.dims.push_back(a.piece(n)->dim);
        if (rep.dims.back() == 0) break;
    }
    if (rep.dims.back() != 0) {
        rep.status = FrobeniusStatus::Inconclusive;
        rep.reason = "dimensions do not reach 0 by degree " + std::to_string(cutoff) + "; not Frobenius within cutoff";
        return rep;
    }
    // T_{n+1} is a quotient of T_n (x) V, so once a piece vanishes all later ones do.
    rep.finite = true;
    const std::size_t d = rep.dims.size() - 2;
    rep.top_degree = d;
    rep.top_is_one_dimensional = rep.dims[d] == 1;
    rep.symmetric = true;
    for (std::size_t i = 0; i <= d; ++i) rep.symmetric &= rep.dims[i] == rep.dims[d - i];
    if (!rep.top_is_one_dimensional) {
        rep.status = FrobeniusStatus::NotFrobenius;
        rep.reason = "top degree " + std::to_string(d) + " has dimension " + std::to_string(rep.dims[d]);
        return rep;
    }
    const Field& f = a.field();
    rep.pairings_nondegenerate = true;
    for (std::size_t i = 0; i <= d; ++i) {
        const std::size_t ni = rep.dims[i], nj = rep.dims[d - i];
        Matrix pairing(f, ni, nj);
        for (std::size_t s = 0; s < ni; ++s) {
            std::vector<Elem> es(ni, 0);
            es[s] = f.one();
            for (std::size_t t = 0; t < nj; ++t) {
                std::vector<Elem> et(nj, 0);
                et[t] = f.one();
                pairing.set(s, t, a.graded_multiply(i, d - i, es, et)[0]);
            }
        }
        const std::size_t rk = gf::rank(pairing);
        rep.pairing_ranks.push_back(rk);
        if (rk != ni || ni != nj) rep.pairings_nondegenerate = false;
    }
    if (!rep.symmetric) {
        rep.status = FrobeniusStatus::NotFrobenius;
        rep.reason = "dimensions are not symmetric about the top degree";
    } else if (!rep.pairings_nondegenerate) {
        rep.status = FrobeniusStatus::NotFrobenius;
        rep.reason = "a multiplication pairing into the top degree is degenerate";
    } else {
        rep.status = FrobeniusStatus::Frobenius;
        rep.reason = "finite, top degree " + std::to_string(d) + " one-dimensional, all pairings nondegenerate";
    }
    return rep;
}

}  // namespace hopfu::quadalg
