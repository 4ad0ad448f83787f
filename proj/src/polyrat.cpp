#include "ascurves/polyrat.hpp"

#include <algorithm>
#include <sstream>

namespace ascurves {

// ---- Polynomial -----------------------------------------------------------

Polynomial::Polynomial(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (!e.field()->same_as(*field_)) throw FieldMismatchError("polynomial coefficient field mismatch");
    trim();
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::constant(const FieldElement& c) {
    Polynomial r(c.field());
    if (!c.is_zero()) r.c_ = {c};
    return r;
}

Polynomial Polynomial::x(const FieldPtr& f) {
    return Polynomial(f, {FieldElement::zero(f), FieldElement::one(f)});
}

Polynomial Polynomial::monomial(const FieldElement& c, int e) {
    Polynomial r(c.field());
    if (c.is_zero()) return r;
    r.c_.assign(static_cast<std::size_t>(e) + 1, FieldElement::zero(c.field()));
    r.c_.back() = c;
    return r;
}

Polynomial Polynomial::from_ints(const FieldPtr& f, const std::vector<std::int64_t>& ints) {
    std::vector<FieldElement> c;
    c.reserve(ints.size());
    for (auto v : ints) c.push_back(FieldElement::from_int(f, v));
    return Polynomial(f, std::move(c));
}

FieldElement Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElement::zero(field_);
    return c_[static_cast<std::size_t>(i)];
}

FieldElement Polynomial::leading() const {
    if (c_.empty()) throw ZeroPolynomialError("leading coefficient of zero polynomial");
    return c_.back();
}

bool Polynomial::is_monic() const { return !c_.empty() && c_.back().is_one(); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (!field_->same_as(*o.field_)) throw FieldMismatchError("polynomial field mismatch");
    Polynomial r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), FieldElement::zero(field_));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        FieldElement v = FieldElement::zero(field_);
        if (i < c_.size()) v = v + c_[i];
        if (i < o.c_.size()) v = v + o.c_[i];
        r.c_[i] = v;
    }
    r.trim();
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial r(field_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(-e);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (!field_->same_as(*o.field_)) throw FieldMismatchError("polynomial field mismatch");
    if (c_.empty() || o.c_.empty()) return Polynomial(field_);
    Polynomial r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, FieldElement::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

Polynomial Polynomial::scale(const FieldElement& s) const {
    Polynomial r(field_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(e * s);
    r.trim();
    return r;
}

Polynomial Polynomial::shift(int e) const {
    if (c_.empty() || e == 0) return *this;
    Polynomial r(field_);
    r.c_.assign(static_cast<std::size_t>(e), FieldElement::zero(field_));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial acc = Polynomial::constant(FieldElement::one(field_));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!field_->same_as(*o.field_)) throw FieldMismatchError("polynomial field mismatch");
    return c_ == o.c_;
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& d) const {
    if (d.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    if (!field_->same_as(*d.field_)) throw FieldMismatchError("polynomial field mismatch");
    Polynomial q(field_), r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(r.degree() - d.degree()) + 1, FieldElement::zero(field_));
    FieldElement dinv = d.leading().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        FieldElement coef = r.leading() * dinv;
        q.c_[static_cast<std::size_t>(shift)] = coef;
        // r -= coef * x^shift * d
        for (int i = 0; i <= d.degree(); ++i) {
            std::size_t idx = static_cast<std::size_t>(i + shift);
            r.c_[idx] = r.c_[idx] - coef * d.c_[static_cast<std::size_t>(i)];
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

Polynomial Polynomial::operator/(const Polynomial& d) const { return divrem(d).first; }
Polynomial Polynomial::operator%(const Polynomial& d) const { return divrem(d).second; }

Polynomial Polynomial::derivative() const {
    Polynomial r(field_);
    if (c_.size() < 2) return r;
    std::int64_t p = field_->characteristic();
    r.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * FieldElement::from_int(field_, static_cast<std::int64_t>(i) % p));
    r.trim();
    return r;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
    if (!x.field()->same_as(*field_)) throw FieldMismatchError("evaluation point field mismatch");
    FieldElement r = FieldElement::zero(field_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Polynomial Polynomial::compose(const Polynomial& g) const {
    Polynomial r(field_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + Polynomial::constant(c_[i]);
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) throw ZeroPolynomialError("monic of zero polynomial");
    return scale(leading().inv());
}

std::string Polynomial::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const FieldElement& e = c_[static_cast<std::size_t>(i)];
        if (e.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = e.to_string();
        bool needs_parens = cs.find('+') != std::string::npos;
        if (i == 0) {
            os << (needs_parens ? "(" + cs + ")" : cs);
            continue;
        }
        if (!e.is_one()) os << (needs_parens ? "(" + cs + ")" : cs) << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    if (x.is_zero() && y.is_zero()) throw DivisionByZeroError("gcd(0, 0) is undefined");
    while (!y.is_zero()) {
        Polynomial r = x % y;
        x = y;
        y = r;
    }
    return x.monic();
}

Polynomial embed(const Polynomial& a, const ExtensionMap& via) {
    std::vector<FieldElement> c;
    c.reserve(a.coeffs().size());
    for (const auto& e : a.coeffs()) c.push_back(embed(e, via));
    return Polynomial(via.target, std::move(c));
}

// ---- RationalFunction ------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (!num.field()->same_as(*den.field())) throw FieldMismatchError("rational function field mismatch");
    if (den.is_zero()) throw DivisionByZeroError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = Polynomial(num.field());
        den_ = Polynomial::constant(FieldElement::one(num.field()));
        return;
    }
    Polynomial g = gcd(num, den);
    if (g.degree() > 0) {
        num = num / g;
        den = den / g;
    }
    FieldElement lead = den.leading();
    if (!lead.is_one()) {
        FieldElement inv = lead.inv();
        num = num.scale(inv);
        den = den.scale(inv);
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(FieldElement::one(num_.field()))) {}

RationalFunction RationalFunction::zero(const FieldPtr& f) {
    return RationalFunction(Polynomial(f));
}

RationalFunction RationalFunction::constant(const FieldElement& c) {
    return RationalFunction(Polynomial::constant(c));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DivisionByZeroError("rational function division by zero");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RationalFunction RationalFunction::scale(const FieldElement& s) const {
    return RationalFunction(num_.scale(s), den_);
}

RationalFunction RationalFunction::inv() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero rational function");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    RationalFunction acc = RationalFunction::constant(FieldElement::one(field()));
    RationalFunction base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

RationalFunction RationalFunction::compose(const Polynomial& g) const {
    return RationalFunction(num_.compose(g), den_.compose(g));
}

std::pair<Polynomial, RationalFunction> RationalFunction::split_polynomial_part() const {
    auto [q, r] = num_.divrem(den_);
    return {q, RationalFunction(r, den_)};
}

std::string RationalFunction::to_string(const std::string& var) const {
    if (den_.degree() == 0) return num_.to_string(var);
    std::string n = num_.to_string(var);
    std::string d = den_.to_string(var);
    bool np = num_.coeffs().size() > 1 || n.find('+') != std::string::npos;
    return (np ? "(" + n + ")" : n) + "/(" + d + ")";
}

RationalFunction embed(const RationalFunction& a, const ExtensionMap& via) {
    return RationalFunction(embed(a.num(), via), embed(a.den(), via));
}

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
}

int PoleProfile::total_finite_order() const {
    int s = 0;
    for (const auto& e : entries)
        if (!e.point.infinite) s += e.order;
    return s;
}

std::vector<int> PoleProfile::orders() const {
    std::vector<int> r;
    r.reserve(entries.size());
    for (const auto& e : entries) r.push_back(e.order);
    return r;
}

RationalFunction PrincipalParts::recombine() const {
    FieldPtr f = poly.field();
    RationalFunction acc(poly);
    for (const auto& part : parts) {
        Polynomial lin(f, {-part.point.value, FieldElement::one(f)});
        for (std::size_t j = 0; j < part.coeffs.size(); ++j) {
            if (part.coeffs[j].is_zero()) continue;
            acc = acc + RationalFunction(Polynomial::constant(part.coeffs[j]), lin.pow(static_cast<int>(j) + 1));
        }
    }
    return acc;
}

}  // namespace ascurves
