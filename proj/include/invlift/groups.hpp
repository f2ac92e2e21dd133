#ifndef INVLIFT_GROUPS_HPP
#define INVLIFT_GROUPS_HPP

#include <functional>
#include <optional>
#include <string>

#include "invlift/series.hpp"
#include "invlift/textio.hpp"

namespace invlift {

struct NotInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotExpressibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GroupConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class K>
using Matrix = std::vector<std::vector<K>>;

template <class K>
Matrix<K> mat_mul(const Matrix<K>& a, const Matrix<K>& b) {
    std::size_t n = a.size();
    Matrix<K> r(n, std::vector<K>(n, FieldOps<K>::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <class K>
Matrix<K> mat_identity(std::size_t n) {
    Matrix<K> r(n, std::vector<K>(n, FieldOps<K>::zero()));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = FieldOps<K>::one();
    return r;
}

template <class K>
bool mat_eq(const Matrix<K>& a, const Matrix<K>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!FieldOps<K>::eq(a[i][j], b[i][j])) return false;
    return true;
}

// Finite matrix group, closed under multiplication.  In exact mode only the
// Q(i)-representable subgroup may be stored; symbolic invariance checks
// stand in for the missing elements.
template <class K>
struct GroupRep {
    unsigned n = 0;
    std::vector<Matrix<K>> elements;

    void verify() const {
        bool has_id = false;
        for (const auto& g : elements) {
            if (mat_eq(g, mat_identity<K>(n))) has_id = true;
            // finite order: powers must cycle back to the identity
            Matrix<K> p = g;
            std::size_t guard = elements.size() + 2;
            bool cycled = false;
            while (guard--) {
                if (mat_eq(p, mat_identity<K>(n))) {
                    cycled = true;
                    break;
                }
                p = mat_mul(p, g);
            }
            if (!cycled) throw GroupConstructionError("group element has infinite order");
        }
        if (!elements.empty() && !has_id)
            throw GroupConstructionError("group does not contain the identity");
        for (const auto& a : elements)
            for (const auto& b : elements) {
                Matrix<K> ab = mat_mul(a, b);
                bool found = false;
                for (const auto& c : elements)
                    if (mat_eq(ab, c)) {
                        found = true;
                        break;
                    }
                if (!found) throw GroupConstructionError("group is not closed under multiplication");
            }
    }
};

enum class CatalogTag { Cyclic, Dihedral, Product, Custom };

// One direct factor of the acting group: its variable ranges, reflection
// data, and the factor discriminant (expressed in the full W variables).
template <class K>
struct Block {
    CatalogTag tag = CatalogTag::Custom;
    unsigned param = 0;   // n for cyclic, l for dihedral
    unsigned u_off = 0;   // first u variable (0-based)
    unsigned u_cnt = 0;
    unsigned w_off = 0;   // first W variable (0-based)
    unsigned w_cnt = 0;
    unsigned mirror_order = 0;  // e for the reflection sharpening; 0 = not a reflection block
    Poly<K> delta_w;            // factor discriminant, in the full W variables
};

template <class K>
struct InvariantSystem {
    unsigned n = 0;  // dim V
    unsigned m = 0;  // number of basic generators
    std::vector<Poly<K>> sigma;      // generators, in u_1..u_n
    std::vector<unsigned> degrees;   // deg sigma_j
    std::vector<unsigned> coord_choice;  // indices into sigma, size n
    Poly<K> jac;        // J = det(d y_i / d u_a) for the chosen coordinates
    Poly<K> delta_u;    // Delta = delta_w o sigma
    Poly<K> delta_w;    // discriminant on the orbit space
    Poly<K> jac_complement;  // Delta / J, exact
    CatalogTag tag = CatalogTag::Custom;
    unsigned param = 0;
    std::vector<Block<K>> blocks;
    GroupRep<K> group;
    bool elements_complete = false;      // stored elements exhaust the group
    std::vector<Poly<K>> relations;      // generators of I(Z), custom systems only

    const Poly<K>& coordinate(unsigned i) const { return sigma[coord_choice[i]]; }

    std::vector<std::string> u_names() const { return make_names("u", n); }
    std::vector<std::string> w_names() const { return make_names("W", m); }
};

namespace detail {

template <class K>
Poly<K> shift_vars(const Poly<K>& q, unsigned new_nvars, unsigned offset) {
    Poly<K> r(new_nvars);
    for (const auto& [e, c] : q.terms()) {
        Exponents ne(new_nvars);
        for (std::size_t i = 0; i < e.e.size(); ++i) ne.e[i + offset] = e.e[i];
        r.add_term(ne, c);
    }
    return r;
}

// Restrict a polynomial supported on a variable window back to that window.
template <class K>
Poly<K> project_vars(const Poly<K>& q, unsigned off, unsigned cnt) {
    Poly<K> r(cnt);
    for (const auto& [e, c] : q.terms()) {
        Exponents ne(cnt);
        for (std::size_t i = 0; i < e.e.size(); ++i) {
            if (e.e[i] == 0) continue;
            if (i < off || i >= off + cnt)
                throw std::logic_error("project_vars: term outside the block window");
            ne.e[i - off] = e.e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

// Exact linear solve A x = b with deterministic first-pivot elimination;
// free variables are set to zero.  Returns nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> linsolve(std::vector<std::vector<K>> a, std::vector<K> b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && FieldOps<K>::is_zero(a[pr][c])) ++pr;
        if (pr == rows) continue;
        std::swap(a[pr], a[r]);
        std::swap(b[pr], b[r]);
        K inv = FieldOps<K>::inv(a[r][c]);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || FieldOps<K>::is_zero(a[i][c])) continue;
            K f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!FieldOps<K>::is_zero(b[i])) return std::nullopt;
    std::vector<K> x(cols, FieldOps<K>::zero());
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

// Change of plane coordinates (x, y) -> (z, zbar) for the dihedral checks.
template <class K>
Poly<K> to_z_coords(const Poly<K>& q, unsigned x_index, unsigned y_index) {
    // x = (z + zbar)/2 , y = (z - zbar)/(2i); z and zbar keep the same slots.
    unsigned nv = q.nvars();
    K half = FieldOps<K>::from_ratio(1, 2);
    K mhalf_i = FieldOps<K>::imag() * FieldOps<K>::from_ratio(-1, 2);  // 1/(2i) = -i/2
    std::vector<Poly<K>> args;
    args.reserve(nv);
    for (unsigned a = 1; a <= nv; ++a) {
        if (a - 1 == x_index) {
            Poly<K> e = Poly<K>::variable(nv, x_index + 1) * half +
                        Poly<K>::variable(nv, y_index + 1) * half;
            args.push_back(e);
        } else if (a - 1 == y_index) {
            Poly<K> e = Poly<K>::variable(nv, x_index + 1) * mhalf_i -
                        Poly<K>::variable(nv, y_index + 1) * mhalf_i;
            args.push_back(e);
        } else {
            args.push_back(Poly<K>::variable(nv, a));
        }
    }
    return q.compose(args);
}

}  // namespace detail

// G-invariance of a polynomial on V, verified blockwise.  Cyclic and
// dihedral blocks are checked by exponent combinatorics in the right
// coordinates, so no irrational group elements are needed; custom blocks
// use the explicit matrices.
template <class K>
bool is_invariant(const InvariantSystem<K>& sys, const Poly<K>& P) {
    for (const auto& blk : sys.blocks) {
        switch (blk.tag) {
            case CatalogTag::Cyclic: {
                for (const auto& [e, c] : P.terms()) {
                    if (FieldOps<K>::is_zero(c)) continue;
                    if (e.e[blk.u_off] % blk.param != 0) return false;
                }
                break;
            }
            case CatalogTag::Dihedral: {
                Poly<K> q = detail::to_z_coords(P, blk.u_off, blk.u_off + 1);
                // rotation invariance: z-degree = zbar-degree mod l
                for (const auto& [e, c] : q.terms()) {
                    if (FieldOps<K>::is_zero(c)) continue;
                    int diff = static_cast<int>(e.e[blk.u_off]) - static_cast<int>(e.e[blk.u_off + 1]);
                    int l = static_cast<int>(blk.param);
                    if (((diff % l) + l) % l != 0) return false;
                }
                // reflection invariance: symmetric under z <-> zbar
                for (const auto& [e, c] : q.terms()) {
                    Exponents sw = e;
                    std::swap(sw.e[blk.u_off], sw.e[blk.u_off + 1]);
                    if (!FieldOps<K>::eq(q.coeff(sw), c)) return false;
                }
                break;
            }
            default: {
                for (const auto& g : sys.group.elements) {
                    std::vector<Poly<K>> lin;
                    lin.reserve(sys.n);
                    for (unsigned a = 0; a < sys.n; ++a) {
                        Poly<K> row(sys.n);
                        for (unsigned b = 0; b < sys.n; ++b)
                            row += Poly<K>::variable(sys.n, b + 1) * g[a][b];
                        lin.push_back(row);
                    }
                    if (P.compose(lin) != P) return false;
                }
                break;
            }
        }
    }
    return true;
}

// Express a G-invariant polynomial through the basic generators: returns q
// with q o sigma = P, solved degreewise in the grading deg W_j = d_j.
template <class K>
Poly<K> rewrite_invariant(const InvariantSystem<K>& sys, const Poly<K>& P) {
    if (P.nvars() != sys.n) throw std::invalid_argument("rewrite_invariant: wrong variable count");
    if (!is_invariant(sys, P)) throw NotInvariantError("polynomial is not G-invariant");
    Poly<K> out(sys.m);
    if (P.is_zero()) return out;
    int dmax = P.degree();
    std::map<Exponents, Poly<K>, GrevlexLess> power_cache;  // W-exponent -> sigma^alpha
    auto sigma_power = [&](const Exponents& alpha) -> const Poly<K>& {
        auto it = power_cache.find(alpha);
        if (it != power_cache.end()) return it->second;
        Poly<K> pw = Poly<K>::constant(sys.n, FieldOps<K>::one());
        for (unsigned j = 0; j < sys.m; ++j)
            if (alpha.e[j]) pw *= sys.sigma[j].pow(alpha.e[j]);
        return power_cache.emplace(alpha, std::move(pw)).first->second;
    };
    for (int k = 0; k <= dmax; ++k) {
        Poly<K> piece = P.homogeneous_component(static_cast<unsigned>(k));
        if (piece.is_zero()) continue;
        // candidate W-monomials of weighted degree k
        std::vector<Exponents> cands;
        Exponents cur(sys.m);
        auto rec = [&](auto&& self, unsigned j, int remaining) -> void {
            if (j == sys.m) {
                if (remaining == 0) cands.push_back(cur);
                return;
            }
            for (int t = 0; t * static_cast<int>(sys.degrees[j]) <= remaining; ++t) {
                cur.e[j] = static_cast<unsigned>(t);
                self(self, j + 1, remaining - t * static_cast<int>(sys.degrees[j]));
            }
            cur.e[j] = 0;
        };
        rec(rec, 0, k);
        if (cands.empty()) throw NotExpressibleError("no generator monomials in degree " + std::to_string(k));
        // collect the u-monomials involved
        std::map<Exponents, std::size_t, GrevlexLess> row_of;
        auto row_index = [&](const Exponents& e) {
            auto [it, fresh] = row_of.emplace(e, row_of.size());
            (void)fresh;
            return it->second;
        };
        for (const auto& alpha : cands)
            for (const auto& [e, c] : sigma_power(alpha).terms()) row_index(e);
        for (const auto& [e, c] : piece.terms()) row_index(e);
        std::vector<std::vector<K>> a(row_of.size(), std::vector<K>(cands.size(), FieldOps<K>::zero()));
        std::vector<K> b(row_of.size(), FieldOps<K>::zero());
        for (std::size_t ci = 0; ci < cands.size(); ++ci)
            for (const auto& [e, c] : sigma_power(cands[ci]).terms()) a[row_index(e)][ci] = c;
        for (const auto& [e, c] : piece.terms()) b[row_index(e)] = c;
        auto x = detail::linsolve(a, b);
        if (!x) throw NotExpressibleError("inconsistent system in degree " + std::to_string(k));
        for (std::size_t ci = 0; ci < cands.size(); ++ci)
            if (!FieldOps<K>::is_zero((*x)[ci])) out.add_term(cands[ci], (*x)[ci]);
    }
    return out;
}

// ---- catalog constructors -------------------------------------------------

namespace detail {

template <class K>
void finalize_system(InvariantSystem<K>& sys) {
    sys.m = static_cast<unsigned>(sys.sigma.size());
    sys.degrees.clear();
    for (const auto& s : sys.sigma) sys.degrees.push_back(static_cast<unsigned>(s.degree()));
    // Jacobian of the chosen coordinates
    std::vector<std::vector<Poly<K>>> jm(sys.n, std::vector<Poly<K>>(sys.n, Poly<K>(sys.n)));
    for (unsigned i = 0; i < sys.n; ++i)
        for (unsigned a = 0; a < sys.n; ++a) jm[i][a] = sys.coordinate(i).derive(a + 1);
    sys.jac = poly_det(jm);
    if (sys.jac.is_zero()) throw GroupConstructionError("Jacobian vanishes identically");
    // Delta on V and the certificate J | Delta
    std::vector<Poly<K>> sig_args(sys.sigma.begin(), sys.sigma.end());
    sys.delta_u = sys.delta_w.compose(sig_args);
    auto div = poly_divide_exact(sys.delta_u, sys.jac);
    if (!div.ok) throw GroupConstructionError("discriminant is not divisible by the Jacobian");
    sys.jac_complement = div.quotient;
    for (const auto& s : sys.sigma)
        if (!is_invariant(sys, s)) throw GroupConstructionError("generator is not invariant");
    if (!is_invariant(sys, sys.delta_u))
        throw GroupConstructionError("discriminant is not invariant");
    sys.group.verify();
}

template <class K>
std::optional<K> unit_i_power(unsigned k) {
    switch (k % 4) {
        case 0: return FieldOps<K>::one();
        case 1: return FieldOps<K>::imag();
        case 2: return -FieldOps<K>::one();
        default: return -FieldOps<K>::imag();
    }
}

}  // namespace detail

// Cyclic group of order n acting on C by a primitive n-th root of unity.
template <class K>
InvariantSystem<K> make_cyclic(unsigned n) {
    if (n < 2) throw std::invalid_argument("make_cyclic: n must be >= 2");
    InvariantSystem<K> sys;
    sys.n = 1;
    sys.tag = CatalogTag::Cyclic;
    sys.param = n;
    Exponents zn(1);
    zn.e[0] = n;
    sys.sigma = {Poly<K>::monomial(1, zn, FieldOps<K>::one())};
    sys.coord_choice = {0};
    sys.delta_w = Poly<K>::variable(1, 1);
    Block<K> blk;
    blk.tag = CatalogTag::Cyclic;
    blk.param = n;
    blk.u_off = 0;
    blk.u_cnt = 1;
    blk.w_off = 0;
    blk.w_cnt = 1;
    blk.mirror_order = n;
    blk.delta_w = sys.delta_w;
    sys.blocks = {blk};
    sys.group.n = 1;
    if constexpr (FieldOps<K>::exact) {
        // only the Q(i)-representable rotations are stored
        unsigned g = std::gcd(n, 4u);
        for (unsigned k = 0; k < g; ++k)
            sys.group.elements.push_back({{*detail::unit_i_power<K>(k * (4 / g))}});
        sys.elements_complete = (g == n);
    } else {
        for (unsigned k = 0; k < n; ++k) {
            double th = 2.0 * M_PI * k / n;
            sys.group.elements.push_back({{ApproxComplex(std::cos(th), std::sin(th))}});
        }
        sys.elements_complete = true;
    }
    detail::finalize_system(sys);
    return sys;
}

// Dihedral group D_l acting on C^2 (complexified plane symmetries).
template <class K>
InvariantSystem<K> make_dihedral(unsigned l) {
    if (l < 3) throw std::invalid_argument("make_dihedral: l must be >= 3");
    InvariantSystem<K> sys;
    sys.n = 2;
    sys.tag = CatalogTag::Dihedral;
    sys.param = l;
    // sigma_1 = (x^2 + y^2)/2, sigma_2 = (1/l) Re (x+iy)^l
    Poly<K> x = Poly<K>::variable(2, 1), y = Poly<K>::variable(2, 2);
    Poly<K> s1 = (x * x + y * y) * FieldOps<K>::from_ratio(1, 2);
    Poly<K> s2(2);
    for (unsigned j = 0; 2 * j <= l; ++j) {
        mpq_class c(binomial(l, 2 * j));
        if (j % 2) c = -c;
        Poly<K> t = x.pow(l - 2 * j) * y.pow(2 * j);
        s2 += t * FieldOps<K>::from_rational(c);
    }
    s2 *= FieldOps<K>::from_ratio(1, static_cast<long>(l));
    sys.sigma = {s1, s2};
    sys.coord_choice = {0, 1};
    // Delta~ = 2^l W1^l - l^2 W2^2
    mpz_class two_l;
    mpz_ui_pow_ui(two_l.get_mpz_t(), 2, l);
    Poly<K> W1 = Poly<K>::variable(2, 1), W2 = Poly<K>::variable(2, 2);
    sys.delta_w = W1.pow(l) * FieldOps<K>::from_rational(mpq_class(two_l)) -
                  W2 * W2 * FieldOps<K>::from_ratio(static_cast<long>(l) * static_cast<long>(l), 1);
    Block<K> blk;
    blk.tag = CatalogTag::Dihedral;
    blk.param = l;
    blk.u_off = 0;
    blk.u_cnt = 2;
    blk.w_off = 0;
    blk.w_cnt = 2;
    blk.mirror_order = 2;
    blk.delta_w = sys.delta_w;
    sys.blocks = {blk};
    sys.group.n = 2;
    auto push_rotation = [&](const K& c_re, const K& c_im) {
        sys.group.elements.push_back({{c_re, -c_im}, {c_im, c_re}});
    };
    auto push_reflection = [&](const K& c_re, const K& c_im) {
        // z -> c * conj(z)
        sys.group.elements.push_back({{c_re, c_im}, {c_im, -c_re}});
    };
    if constexpr (FieldOps<K>::exact) {
        unsigned g = std::gcd(l, 4u);
        for (unsigned k = 0; k < g; ++k) {
            K c = *detail::unit_i_power<K>(k * (4 / g));
            push_rotation(K(c.re), K(c.im));
            push_reflection(K(c.re), K(c.im));
        }
        sys.elements_complete = false;  // l >= 3 always exceeds the representable subgroup
    } else {
        for (unsigned k = 0; k < l; ++k) {
            double th = 2.0 * M_PI * k / l;
            push_rotation(ApproxComplex(std::cos(th)), ApproxComplex(std::sin(th)));
            push_reflection(ApproxComplex(std::cos(th)), ApproxComplex(std::sin(th)));
        }
        sys.elements_complete = true;
    }
    detail::finalize_system(sys);
    return sys;
}

// Block-diagonal direct product with disjoint variables.
template <class K>
InvariantSystem<K> make_product(const std::vector<InvariantSystem<K>>& parts) {
    if (parts.empty()) throw std::invalid_argument("make_product: need at least one part");
    if (parts.size() == 1) return parts[0];
    InvariantSystem<K> sys;
    sys.tag = CatalogTag::Product;
    unsigned ntot = 0, mtot = 0;
    for (const auto& p : parts) {
        ntot += p.n;
        mtot += p.m;
    }
    sys.n = ntot;
    sys.m = mtot;
    unsigned uo = 0, wo = 0;
    Poly<K> delta = Poly<K>::constant(mtot, FieldOps<K>::one());
    std::vector<Matrix<K>> elems = {mat_identity<K>(ntot)};
    bool complete = true;
    for (const auto& p : parts) {
        for (const auto& s : p.sigma) sys.sigma.push_back(detail::shift_vars(s, ntot, uo));
        for (unsigned i = 0; i < p.n; ++i) sys.coord_choice.push_back(wo + p.coord_choice[i]);
        for (const auto& b : p.blocks) {
            Block<K> nb = b;
            nb.u_off += uo;
            nb.w_off += wo;
            nb.delta_w = detail::shift_vars(b.delta_w, mtot, wo);
            sys.blocks.push_back(nb);
        }
        delta *= detail::shift_vars(p.delta_w, mtot, wo);
        // cartesian product of stored elements, embedded block-diagonally
        std::vector<Matrix<K>> next;
        for (const auto& base : elems)
            for (const auto& g : p.group.elements) {
                Matrix<K> e = base;
                for (unsigned i = 0; i < p.n; ++i)
                    for (unsigned j = 0; j < p.n; ++j) e[uo + i][uo + j] = g[i][j];
                next.push_back(std::move(e));
            }
        if (!next.empty()) elems = std::move(next);
        complete = complete && p.elements_complete;
        uo += p.n;
        wo += p.m;
    }
    sys.delta_w = delta;
    sys.group.n = ntot;
    sys.group.elements = std::move(elems);
    sys.elements_complete = complete;
    detail::finalize_system(sys);
    return sys;
}

// User-supplied system: explicit matrices, generators, and a certified
// discriminant (invariance and J | delta o sigma are checked here).
template <class K>
InvariantSystem<K> make_custom(unsigned n, std::vector<Matrix<K>> elements,
                               std::vector<Poly<K>> sigma, Poly<K> delta_w,
                               std::vector<Poly<K>> relations = {}) {
    InvariantSystem<K> sys;
    sys.n = n;
    sys.tag = CatalogTag::Custom;
    sys.sigma = std::move(sigma);
    sys.m = static_cast<unsigned>(sys.sigma.size());
    sys.delta_w = std::move(delta_w);
    sys.relations = std::move(relations);
    sys.group.n = n;
    sys.group.elements = std::move(elements);
    sys.elements_complete = true;
    Block<K> blk;
    blk.tag = CatalogTag::Custom;
    blk.u_off = 0;
    blk.u_cnt = n;
    blk.w_off = 0;
    blk.w_cnt = sys.m;
    blk.mirror_order = 0;  // no reflection sharpening for custom groups
    blk.delta_w = sys.delta_w;
    sys.blocks = {blk};
    // deterministic coordinate choice: first n-subset with a usable Jacobian
    std::vector<unsigned> subset(n);
    auto try_subsets = [&](auto&& self, unsigned pos, unsigned lo) -> bool {
        if (pos == n) {
            sys.coord_choice = subset;
            try {
                detail::finalize_system(sys);
                return true;
            } catch (const GroupConstructionError&) {
                return false;
            }
        }
        for (unsigned j = lo; j < sys.m; ++j) {
            subset[pos] = j;
            if (self(self, pos + 1, j + 1)) return true;
        }
        return false;
    };
    if (!try_subsets(try_subsets, 0, 0))
        throw GroupConstructionError("no coordinate choice with nonzero Jacobian and certified discriminant");
    return sys;
}

// ---- morphism-side helpers -------------------------------------------------

template <class K>
std::vector<Series<K>> sigma_on(const InvariantSystem<K>& sys, const std::vector<Series<K>>& F) {
    std::vector<Series<K>> out;
    out.reserve(sys.m);
    for (const auto& s : sys.sigma) out.push_back(poly_on_series(s, F));
    return out;
}

template <class K>
Series<K> delta_on_f(const InvariantSystem<K>& sys, const std::vector<Series<K>>& f) {
    return poly_on_series(sys.delta_w, f);
}

struct CoordinateChoice {
    bool found = false;
    int q = 0;  // valuation of delta~(f)
};

// For catalog systems the coordinate choice is unique; the reported q is the
// valuation of the discriminant along f.
template <class K>
CoordinateChoice choose_invariant_coordinates(const InvariantSystem<K>& sys,
                                              const std::vector<Series<K>>& f) {
    CoordinateChoice out;
    Series<K> d = delta_on_f(sys, f);
    int v = d.valuation();
    if (v > d.order()) return out;  // vanishes within the reliable order
    out.found = true;
    out.q = v;
    return out;
}

enum class PreimageStatus { Ok, OnDiscriminant, CustomUnsupported, RootNotInField };

template <class K>
struct Preimage {
    PreimageStatus status = PreimageStatus::Ok;
    std::vector<K> point;
    bool ok() const { return status == PreimageStatus::Ok; }
};

// One point of sigma^{-1}(z), by the catalog solvers.
template <class K>
Preimage<K> point_preimage(const InvariantSystem<K>& sys, const std::vector<K>& z) {
    Preimage<K> out;
    if (z.size() != sys.m) throw std::invalid_argument("point_preimage: wrong point size");
    out.point.assign(sys.n, FieldOps<K>::zero());
    for (const auto& blk : sys.blocks) {
        switch (blk.tag) {
            case CatalogTag::Cyclic: {
                const K& z0 = z[blk.w_off];
                if (FieldOps<K>::is_zero(z0)) {
                    out.status = PreimageStatus::OnDiscriminant;
                    return out;
                }
                auto r = FieldOps<K>::nth_root(z0, blk.param);
                if (!r) {
                    out.status = PreimageStatus::RootNotInField;
                    return out;
                }
                out.point[blk.u_off] = *r;
                break;
            }
            case CatalogTag::Dihedral: {
                const K z1 = z[blk.w_off];
                const K z2 = z[blk.w_off + 1];
                unsigned l = blk.param;
                K lK = FieldOps<K>::from_ratio(static_cast<long>(l), 1);
                if (FieldOps<K>::is_zero(z1) && FieldOps<K>::is_zero(z2)) break;  // origin
                // w = l z2 +- sqrt((l z2)^2 - (2 z1)^l), with w = (x+iy)^l
                K two_z1 = z1 + z1;
                K disc = lK * z2 * lK * z2;
                K p = FieldOps<K>::one();
                for (unsigned k = 0; k < l; ++k) p = p * two_z1;
                disc = disc - p;
                auto sq = FieldOps<K>::nth_root(disc, 2);
                if (!sq) {
                    out.status = PreimageStatus::RootNotInField;
                    return out;
                }
                K w = lK * z2 + *sq;
                if (FieldOps<K>::is_zero(w)) w = lK * z2 - *sq;
                if (FieldOps<K>::is_zero(w)) {
                    out.status = PreimageStatus::OnDiscriminant;
                    return out;
                }
                auto zr = FieldOps<K>::nth_root(w, l);
                if (!zr) {
                    out.status = PreimageStatus::RootNotInField;
                    return out;
                }
                K Z = *zr;
                K Zbar = two_z1 / Z;
                K half = FieldOps<K>::from_ratio(1, 2);
                K mhalf_i = FieldOps<K>::imag() * FieldOps<K>::from_ratio(-1, 2);
                out.point[blk.u_off] = (Z + Zbar) * half;
                out.point[blk.u_off + 1] = (Z - Zbar) * mhalf_i;
                break;
            }
            default:
                out.status = PreimageStatus::CustomUnsupported;
                return out;
        }
    }
    // verify sigma(v) = z
    for (unsigned j = 0; j < sys.m; ++j)
        if (!FieldOps<K>::eq(sys.sigma[j].eval(out.point), z[j])) {
            out.status = PreimageStatus::OnDiscriminant;
            return out;
        }
    return out;
}

// ---- orbit matching ---------------------------------------------------------

struct OrbitMatch {
    bool found = false;
    std::string description;
};

namespace detail {

// lowest (grevlex) nonzero coefficient ratio a/b over the common support
template <class K>
std::optional<K> series_ratio(const Series<K>& a, const Series<K>& b, int through) {
    for (const auto& [e, c] : b.terms()) {
        if (static_cast<int>(e.degree()) > through) continue;
        if (FieldOps<K>::is_zero(c)) continue;
        return a.coeff(e) / c;
    }
    return std::nullopt;
}

template <class K>
bool is_scalar_multiple(const Series<K>& a, const Series<K>& b, const K& c, int through) {
    return equal_to_order(a, b * c, through);
}

template <class K>
bool is_root_of_unity(const K& c, unsigned n) {
    K p = FieldOps<K>::one();
    for (unsigned k = 0; k < n; ++k) p = p * c;
    return FieldOps<K>::eq(p, FieldOps<K>::one());
}

}  // namespace detail

// Finds g in G with F2 = g o F1 to the reliable order.  Cyclic and dihedral
// blocks are matched on the phase equations, so the result is complete even
// when the group elements are not representable over K.
template <class K>
OrbitMatch orbit_match(const InvariantSystem<K>& sys, const std::vector<Series<K>>& F1,
                       const std::vector<Series<K>>& F2) {
    OrbitMatch out;
    std::string desc;
    int through = F1[0].order();
    for (const auto& s : F1) through = std::min(through, s.order());
    for (const auto& s : F2) through = std::min(through, s.order());
    for (const auto& blk : sys.blocks) {
        switch (blk.tag) {
            case CatalogTag::Cyclic: {
                const Series<K>&a = F1[blk.u_off], &b = F2[blk.u_off];
                if (a.is_zero() && b.is_zero()) {
                    desc += "[id]";
                    break;
                }
                auto c = detail::series_ratio(b, a, through);
                if (!c || !detail::is_root_of_unity(*c, blk.param) ||
                    !detail::is_scalar_multiple(b, a, *c, through))
                    return out;
                desc += "[rot]";
                break;
            }
            case CatalogTag::Dihedral: {
                K i = FieldOps<K>::imag();
                Series<K> Z1 = F1[blk.u_off] + F1[blk.u_off + 1] * i;
                Series<K> B1 = F1[blk.u_off] - F1[blk.u_off + 1] * i;
                Series<K> Z2 = F2[blk.u_off] + F2[blk.u_off + 1] * i;
                Series<K> B2 = F2[blk.u_off] - F2[blk.u_off + 1] * i;
                auto try_pair = [&](const Series<K>& P, const Series<K>& Q) -> bool {
                    // F2 = g F1 with (Z2, B2) = (c P, c^{-1} Q), c^l = 1
                    std::optional<K> c;
                    if (!P.is_zero())
                        c = detail::series_ratio(Z2, P, through);
                    else if (!Q.is_zero()) {
                        auto cinv = detail::series_ratio(B2, Q, through);
                        if (cinv && !FieldOps<K>::is_zero(*cinv)) c = FieldOps<K>::inv(*cinv);
                    } else {
                        return Z2.is_zero() && B2.is_zero();
                    }
                    if (!c || FieldOps<K>::is_zero(*c)) return false;
                    if (!detail::is_root_of_unity(*c, blk.param)) return false;
                    return detail::is_scalar_multiple(Z2, P, *c, through) &&
                           detail::is_scalar_multiple(B2, Q, FieldOps<K>::inv(*c), through);
                };
                if (try_pair(Z1, B1))
                    desc += "[rot]";
                else if (try_pair(B1, Z1))
                    desc += "[refl]";
                else
                    return out;
                break;
            }
            default: {
                bool matched = false;
                for (const auto& g : sys.group.elements) {
                    bool all = true;
                    for (unsigned a = 0; a < sys.n && all; ++a) {
                        Series<K> img(F1[0].nvars(), through);
                        for (unsigned b = 0; b < sys.n; ++b) img += F1[b] * g[a][b];
                        all = equal_to_order(img, F2[a], through);
                    }
                    if (all) {
                        matched = true;
                        break;
                    }
                }
                if (!matched) return out;
                desc += "[elem]";
                break;
            }
        }
    }
    out.found = true;
    out.description = desc;
    return out;
}

// The representable group actions on lifts, used for canonical output.
template <class K>
std::vector<std::function<std::vector<Series<K>>(const std::vector<Series<K>>&)>>
representable_actions(const InvariantSystem<K>& sys) {
    std::vector<std::function<std::vector<Series<K>>(const std::vector<Series<K>>&)>> acts;
    for (const auto& g : sys.group.elements) {
        acts.push_back([g, n = sys.n](const std::vector<Series<K>>& F) {
            std::vector<Series<K>> out;
            out.reserve(n);
            for (unsigned a = 0; a < n; ++a) {
                Series<K> img(F[0].nvars(), F[0].order());
                for (unsigned b = 0; b < n; ++b) img += F[b] * g[a][b];
                out.push_back(std::move(img));
            }
            return out;
        });
    }
    return acts;
}

}  // namespace invlift

#endif
