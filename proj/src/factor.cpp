#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>

#include "ascurves/polyrat.hpp"

// Root finding and factorization over finite fields: distinct-degree
// splitting by gcds with x^(q^i) - x, equal-degree splitting by random
// binomial gcds, and an exhaustive fallback for fields of at most 2000
// elements. Large field sizes never appear as integers; q-th powers are
// iterated p-th powers throughout.

namespace ascurves {

namespace {

std::atomic<std::uint64_t> g_seed{0x5eed5eedULL};

std::mt19937_64& rng() {
    thread_local std::mt19937_64 gen(g_seed.load());
    return gen;
}

constexpr std::uint64_t kExhaustiveLimit = 2000;

bool field_is_small(const FieldPtr& f) {
    return f->size_fits_u64() && f->size_u64() <= kExhaustiveLimit;
}

// enumerate all elements of a small field, coefficient-lexicographic order
std::vector<FieldElement> all_elements(const FieldPtr& f) {
    std::vector<FieldElement> out;
    int k = f->degree();
    std::int64_t p = f->characteristic();
    std::vector<std::int64_t> c(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(FieldElement::from_coeffs(f, c));
        int i = 0;
        while (i < k) {
            if (++c[static_cast<std::size_t>(i)] < p) break;
            c[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == k) break;
    }
    return out;
}

Polynomial poly_mod_pow_p(const Polynomial& a, const Polynomial& m) {
    // a^p mod m, p = characteristic
    std::int64_t p = a.field()->characteristic();
    Polynomial acc = Polynomial::constant(FieldElement::one(a.field()));
    Polynomial base = a % m;
    std::int64_t e = p;
    while (e > 0) {
        if (e & 1) acc = (acc * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return acc;
}

// x^(q^steps) mod m where q is the field size (k iterated p-th powers per step)
Polynomial frobenius_power_of_x(const Polynomial& m, int steps) {
    Polynomial r = Polynomial::x(m.field()) % m;
    int total = steps * m.field()->degree();
    for (int i = 0; i < total; ++i) r = poly_mod_pow_p(r, m);
    return r;
}

// a^((q^d - 1)/2) mod m using base-p digits: all digits of (p^(k*d) - 1)/2
// equal (p-1)/2.
Polynomial half_order_power(const Polynomial& a, const Polynomial& m, int d) {
    const FieldPtr& f = m.field();
    std::int64_t p = f->characteristic();
    int digits = d * f->degree();
    std::int64_t half = (p - 1) / 2;
    Polynomial s = a % m;
    Polynomial acc = Polynomial::constant(FieldElement::one(f));
    for (int i = 0; i < digits; ++i) {
        // acc *= s^half; s <- s^p
        Polynomial t = Polynomial::constant(FieldElement::one(f));
        Polynomial base = s;
        std::int64_t e = half;
        while (e > 0) {
            if (e & 1) t = (t * base) % m;
            base = (base * base) % m;
            e >>= 1;
        }
        acc = (acc * t) % m;
        s = poly_mod_pow_p(s, m);
    }
    return acc;
}

Polynomial random_poly(const FieldPtr& f, int max_degree) {
    std::uniform_int_distribution<std::int64_t> dist(0, f->characteristic() - 1);
    std::vector<FieldElement> c;
    for (int i = 0; i <= max_degree; ++i) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(f->degree()));
        for (auto& x : v) x = dist(rng());
        c.push_back(FieldElement::from_coeffs(f, v));
    }
    return Polynomial(f, std::move(c));
}

// w: squarefree product of irreducibles all of degree d; split completely.
void equal_degree_split(const Polynomial& w, int d, std::vector<Polynomial>& out) {
    if (w.degree() == d) {
        out.push_back(w.monic());
        return;
    }
    if (field_is_small(w.field()) && d == 1) {
        for (const auto& x : all_elements(w.field())) {
            if (w.eval(x).is_zero())
                out.push_back(Polynomial(w.field(), {-x, FieldElement::one(w.field())}));
        }
        return;
    }
    while (true) {
        Polynomial t = random_poly(w.field(), 2 * d - 1);
        if (t.degree() < 1) continue;
        Polynomial u = half_order_power(t, w, d);
        Polynomial g = gcd(u - Polynomial::constant(FieldElement::one(w.field())), w);
        if (g.degree() > 0 && g.degree() < w.degree()) {
            equal_degree_split(g, d, out);
            equal_degree_split(w / g, d, out);
            return;
        }
    }
}

// p-th root of a polynomial whose derivative vanishes (all exponents
// divisible by p).
Polynomial poly_pth_root(const Polynomial& a) {
    const FieldPtr& f = a.field();
    std::int64_t p = f->characteristic();
    std::vector<FieldElement> c;
    for (int i = 0; i <= a.degree(); i += static_cast<int>(p))
        c.push_back(frobenius_inverse(a.coeff(i)));
    return Polynomial(f, std::move(c));
}

// distinct-degree stage on an arbitrary (possibly non-squarefree) input:
// returns pairs (product of the distinct irreducible factors of degree d, d).
std::vector<std::pair<Polynomial, int>> distinct_degree_products(Polynomial a) {
    std::vector<std::pair<Polynomial, int>> out;
    a = a.monic();
    Polynomial h = Polynomial::x(a.field()) % a;
    int d = 0;
    while (a.degree() > 0) {
        ++d;
        int steps = a.field()->degree();
        for (int i = 0; i < steps; ++i) h = poly_mod_pow_p(h, a);
        Polynomial g = gcd(h - (Polynomial::x(a.field()) % a), a);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            // remove every copy of every factor of g
            while (true) {
                Polynomial c = gcd(a, g);
                if (c.degree() == 0) break;
                a = a / c;
            }
            h = h % a;
            if (a.degree() == 0) break;
        }
        if (d > a.degree() && a.degree() > 0) {
            // remainder is a single irreducible (or a power handled above)
            out.emplace_back(a, a.degree());
            break;
        }
    }
    return out;
}

}  // namespace

void set_random_seed(std::uint64_t seed);
void set_random_seed(std::uint64_t seed) { g_seed.store(seed); }

Factorization factorize(const Polynomial& a) {
    if (a.is_zero()) throw ZeroPolynomialError("factorize(0)");
    Factorization result;
    result.lead = a.leading();
    // (polynomial, multiplicity unit) work list; p-th-power layers multiply
    // the multiplicities.
    struct Item {
        Polynomial f;
        int mult;
    };
    std::vector<Item> work{{a.monic(), 1}};
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        Polynomial f = it.f;
        if (f.degree() <= 0) continue;
        Polynomial fp = f.derivative();
        if (fp.is_zero()) {
            work.push_back({poly_pth_root(f), it.mult * static_cast<int>(f.field()->characteristic())});
            continue;
        }
        // squarefree decomposition (char p); w collects p-th power part
        Polynomial u = gcd(f, fp);
        Polynomial v = f / u;  // product of distinct factors with mult not divisible by p
        int i = 1;
        while (v.degree() > 0) {
            Polynomial w = gcd(u, v);
            Polynomial piece = v / w;  // factors of multiplicity exactly i
            if (piece.degree() > 0) {
                for (auto& [prod, d] : distinct_degree_products(piece)) {
                    std::vector<Polynomial> irr;
                    equal_degree_split(prod, d, irr);
                    for (auto& q : irr) result.factors.emplace_back(q, it.mult * i);
                }
            }
            u = u / w;
            v = w;
            ++i;
        }
        if (u.degree() > 0) {
            // u is now a p-th power
            work.push_back({poly_pth_root(u), it.mult * static_cast<int>(f.field()->characteristic())});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& x, const auto& y) {
                  if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
                  for (int i = x.first.degree(); i >= 0; --i) {
                      auto cx = x.first.coeff(i).coeffs();
                      auto cy = y.first.coeff(i).coeffs();
                      if (cx != cy) return cx < cy;
                  }
                  return x.second < y.second;
              });
    return result;
}

std::vector<FieldElement> distinct_roots_in_field(const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomialError("roots of the zero polynomial");
    std::vector<FieldElement> out;
    if (f.degree() == 0) return out;
    if (field_is_small(f.field())) {
        for (const auto& x : all_elements(f.field()))
            if (f.eval(x).is_zero()) out.push_back(x);
        std::sort(out.begin(), out.end(),
                  [](const FieldElement& a, const FieldElement& b) { return a.coeffs() < b.coeffs(); });
        return out;
    }
    Polynomial m = f.monic();
    Polynomial xq = frobenius_power_of_x(m, 1);
    Polynomial g = gcd(xq - (Polynomial::x(m.field()) % m), m);
    if (g.degree() <= 0) return out;
    std::vector<Polynomial> linear;
    equal_degree_split(g, 1, linear);
    for (const auto& l : linear) out.push_back(-l.coeff(0));
    std::sort(out.begin(), out.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.coeffs() < b.coeffs(); });
    return out;
}

RootsResult roots_with_multiplicity(const Polynomial& a, bool allow_extension) {
    if (a.is_zero()) throw ZeroPolynomialError("roots of the zero polynomial");
    const FieldPtr& F = a.field();
    RootsResult res;
    res.ext = ExtensionMap::identity(F);

    Polynomial target_poly = a;
    if (allow_extension) {
        auto fac = factorize(a);
        int l = 1;
        for (const auto& [q, mult] : fac.factors) l = std::lcm(l, q.degree());
        if (l > 1) {
            FieldPtr big = Field::canonical(F->characteristic(), F->degree() * l);
            res.ext = make_extension(F, big);
            target_poly = embed(a, res.ext);
        }
    }
    std::vector<FieldElement> roots = distinct_roots_in_field(target_poly);
    for (const auto& r : roots) {
        // multiplicity by repeated division
        int mult = 0;
        Polynomial lin(target_poly.field(), {-r, FieldElement::one(target_poly.field())});
        Polynomial rest = target_poly;
        while (true) {
            auto [q, rem] = rest.divrem(lin);
            if (!rem.is_zero()) break;
            rest = q;
            ++mult;
        }
        res.roots.emplace_back(r, mult);
    }
    std::sort(res.roots.begin(), res.roots.end(),
              [](const auto& x, const auto& y) { return x.first.coeffs() < y.first.coeffs(); });
    return res;
}

std::pair<FieldElement, ExtensionMap> min_root(const Polynomial& a) {
    if (a.is_zero()) throw ZeroPolynomialError("min_root(0)");
    if (a.degree() < 1) throw ZeroPolynomialError("min_root of a constant");
    const FieldPtr& F = a.field();
    auto fac = factorize(a);
    int e = 0;
    for (const auto& [q, mult] : fac.factors)
        if (e == 0 || q.degree() < e) e = q.degree();
    if (e == 1) {
        FieldElement best;
        bool have = false;
        for (const auto& [q, mult] : fac.factors) {
            if (q.degree() != 1) continue;
            FieldElement r = -q.coeff(0);
            if (!have || r.coeffs() < best.coeffs()) {
                best = r;
                have = true;
            }
        }
        return {best, ExtensionMap::identity(F)};
    }
    FieldPtr big = Field::canonical(F->characteristic(), F->degree() * e);
    ExtensionMap ext = make_extension(F, big);
    FieldElement best;
    bool have = false;
    for (const auto& [q, mult] : fac.factors) {
        if (q.degree() != e) continue;
        for (const auto& r : distinct_roots_in_field(embed(q, ext))) {
            if (!have || r.coeffs() < best.coeffs()) {
                best = r;
                have = true;
            }
        }
    }
    return {best, ext};
}

PoleProfile pole_profile(const RationalFunction& f) {
    if (f.is_zero()) throw ZeroPolynomialError("pole profile of 0");
    PoleProfile profile;
    auto roots = roots_with_multiplicity(f.den(), true);
    profile.ext = roots.ext;
    for (const auto& [r, m] : roots.roots)
        profile.entries.push_back({ProjectivePoint::finite(r), m});
    int inf_order = f.num().degree() - f.den().degree();
    if (inf_order > 0) profile.entries.push_back({ProjectivePoint::at_infinity(), inf_order});
    std::sort(profile.entries.begin(), profile.entries.end(), [](const PoleEntry& a, const PoleEntry& b) {
        if (a.order != b.order) return a.order > b.order;
        if (a.point.infinite != b.point.infinite) return a.point.infinite;
        if (a.point.infinite) return false;
        return a.point.value.coeffs() < b.point.value.coeffs();
    });
    return profile;
}

PrincipalParts principal_parts(const RationalFunction& f) {
    if (f.is_zero()) throw ZeroPolynomialError("principal parts of 0");
    PrincipalParts pp;
    auto roots = roots_with_multiplicity(f.den(), true);
    pp.ext = roots.ext;
    RationalFunction g = pp.ext.is_identity() ? f : embed(f, pp.ext);
    const FieldPtr& F = g.field();
    auto [poly, proper] = g.split_polynomial_part();
    pp.poly = poly;
    Polynomial rem = proper.num();
    Polynomial den = proper.den();
    for (const auto& [r0, m] : roots.roots) {
        FieldElement mu = pp.ext.is_identity() ? r0 : r0;  // roots already live in the splitting field
        Polynomial lin(F, {-mu, FieldElement::one(F)});
        Polynomial q = den / lin.pow(m);  // den = (x-mu)^m * q, q(mu) != 0
        // Taylor coefficients of rem/q at mu, modulo x^m: series division.
        Polynomial shifted_rem = rem.compose(Polynomial(F, {mu, FieldElement::one(F)}));
        Polynomial shifted_q = q.compose(Polynomial(F, {mu, FieldElement::one(F)}));
        std::vector<FieldElement> series(static_cast<std::size_t>(m), FieldElement::zero(F));
        FieldElement q0inv = shifted_q.coeff(0).inv();
        for (int j = 0; j < m; ++j) {
            FieldElement acc = shifted_rem.coeff(j);
            for (int i = 0; i < j; ++i) acc = acc - series[static_cast<std::size_t>(i)] * shifted_q.coeff(j - i);
            series[static_cast<std::size_t>(j)] = acc * q0inv;
        }
        // rem/den = sum_j series[j] (x-mu)^(j-m) + regular at mu
        PrincipalPart part;
        part.point = ProjectivePoint::finite(mu);
        part.coeffs.assign(static_cast<std::size_t>(m), FieldElement::zero(F));
        for (int j = 0; j < m; ++j) part.coeffs[static_cast<std::size_t>(m - 1 - j)] = series[static_cast<std::size_t>(j)];
        // trim leading zero orders
        while (!part.coeffs.empty() && part.coeffs.back().is_zero()) part.coeffs.pop_back();
        if (!part.coeffs.empty()) pp.parts.push_back(std::move(part));
    }
    std::sort(pp.parts.begin(), pp.parts.end(), [](const PrincipalPart& a, const PrincipalPart& b) {
        return a.point.value.coeffs() < b.point.value.coeffs();
    });
    return pp;
}

int splitting_degree_for_roots_of_unity(const FieldPtr& f, std::int64_t n) {
    if (n % f->characteristic() == 0) throw InternalError("roots of unity order divisible by p");
    std::int64_t p = f->characteristic();
    int k = f->degree();
    for (int m = 1; m <= 512; ++m) {
        // need n | p^(k*m) - 1
        std::int64_t pow = 1 % n;
        for (int i = 0; i < k * m; ++i) pow = (pow * (p % n)) % n;
        if (pow == 1 % n) return m;
    }
    throw InternalError("no splitting degree for roots of unity found");
}

std::vector<FieldElement> roots_of_unity(const FieldPtr& f, std::int64_t n) {
    Polynomial xn = Polynomial::monomial(FieldElement::one(f), static_cast<int>(n)) -
                    Polynomial::constant(FieldElement::one(f));
    auto roots = distinct_roots_in_field(xn);
    if (static_cast<std::int64_t>(roots.size()) != n)
        throw InternalError("field does not contain all roots of unity of order " + std::to_string(n));
    return roots;
}

}  // namespace ascurves
