#include "sctk/graded.hpp"

#include <algorithm>
#include <sstream>

namespace sctk {

std::shared_ptr<const Algebra> Algebra::make(std::vector<GradedVar> vars) {
    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->vars_ = std::move(vars);
    for (size_t i = 0; i < alg->vars_.size(); ++i) {
        const GradedVar& v = alg->vars_[i];
        if (v.name.empty())
            throw Error("bad-generator", "generator with empty name");
        if (v.degree > 0)
            throw Error("degree-violation",
                        "generator '" + v.name + "' has positive degree " + std::to_string(v.degree));
        if (v.invertible && v.degree != 0)
            throw Error("degree-violation",
                        "invertible generator '" + v.name + "' must have degree 0");
        if (!alg->index_.emplace(v.name, static_cast<int>(i)).second)
            throw Error("duplicate-name", "duplicate generator name '" + v.name + "'");
    }
    alg->sorted_ids_.resize(alg->vars_.size());
    for (size_t i = 0; i < alg->vars_.size(); ++i) alg->sorted_ids_[i] = static_cast<int>(i);
    std::sort(alg->sorted_ids_.begin(), alg->sorted_ids_.end(),
              [&](int a, int b) { return alg->vars_[a].name < alg->vars_[b].name; });
    alg->order_.resize(alg->vars_.size());
    for (size_t r = 0; r < alg->sorted_ids_.size(); ++r)
        alg->order_[static_cast<size_t>(alg->sorted_ids_[r])] = static_cast<int>(r);
    return alg;
}

int Algebra::id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw Error("unknown-generator", "unknown generator '" + name + "'");
    return it->second;
}

std::shared_ptr<const Algebra> Algebra::extended(std::vector<GradedVar> extra) const {
    std::vector<GradedVar> all = vars_;
    for (auto& v : extra) all.push_back(std::move(v));
    return make(std::move(all));
}

int Monomial::degree(const Algebra& alg) const {
    int d = 0;
    for (const auto& [id, e] : factors) d += alg.degree(id) * e;
    return d;
}

namespace detail {

int monomial_insert(const Algebra& alg, Monomial& m, int var_id, int exp) {
    if (exp == 0) return 1;
    const GradedVar& v = alg.var(var_id);
    if (is_odd_degree(v.degree) && (exp != 1))
        throw Error("bad-exponent", "odd generator '" + v.name + "' with exponent " + std::to_string(exp));
    if (exp < 0 && !v.invertible)
        throw Error("bad-exponent",
                    "negative exponent on non-invertible generator '" + v.name + "'");
    const int ord = alg.order_of(var_id);
    // Position by name order; count odd factors strictly after it for the sign.
    size_t pos = 0;
    while (pos < m.factors.size() && alg.order_of(m.factors[pos].first) < ord) ++pos;
    int sign = 1;
    if (is_odd_degree(v.degree)) {
        for (size_t i = pos; i < m.factors.size(); ++i)
            if (is_odd_degree(alg.degree(m.factors[i].first))) sign = -sign;
    }
    if (pos < m.factors.size() && m.factors[pos].first == var_id) {
        if (is_odd_degree(v.degree)) return 0; // odd square vanishes
        m.factors[pos].second += exp;
        if (m.factors[pos].second == 0) m.factors.erase(m.factors.begin() + static_cast<long>(pos));
        else if (m.factors[pos].second < 0 && !v.invertible)
            throw Error("bad-exponent",
                        "negative exponent on non-invertible generator '" + v.name + "'");
    } else {
        m.factors.insert(m.factors.begin() + static_cast<long>(pos), {var_id, exp});
    }
    return sign;
}

} // namespace detail

Poly Poly::constant(AlgebraPtr alg, const Rat& c) {
    Poly p(std::move(alg));
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
}

Poly Poly::generator(AlgebraPtr alg, int var_id) {
    Poly p(alg);
    p.terms_[Monomial{{{var_id, 1}}}] = 1;
    return p;
}

Poly Poly::generator(AlgebraPtr alg, const std::string& name) {
    int id = alg->id_of(name);
    return generator(std::move(alg), id);
}

std::optional<int> Poly::degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int md = m.degree(*alg_);
        if (!d) d = md;
        else if (*d != md) return std::nullopt;
    }
    return d;
}

void Poly::add_canonical(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::add_term(const std::vector<std::pair<int, int>>& factors, const Rat& c) {
    if (!alg_) throw Error("no-algebra", "poly without algebra");
    Monomial m;
    int sign = 1;
    for (const auto& [id, e] : factors) {
        sign *= detail::monomial_insert(*alg_, m, id, e);
        if (sign == 0) return;
    }
    add_canonical(m, c * sign);
}

static void require_same_algebra(const Poly& a, const Poly& b) {
    if (a.algebra() != b.algebra())
        throw Error("mixed-algebra", "operands belong to different algebras");
}

Poly Poly::operator+(const Poly& rhs) const {
    require_same_algebra(*this, rhs);
    Poly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_canonical(m, c);
    return out;
}

Poly Poly::operator-(const Poly& rhs) const { return *this + (-rhs); }

Poly Poly::operator-() const {
    Poly out(alg_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

Poly Poly::operator*(const Rat& c) const {
    Poly out(alg_);
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_[m] = k * c;
    return out;
}

Poly Poly::operator*(const Poly& rhs) const { return mul(*this, rhs); }

bool Poly::operator==(const Poly& rhs) const {
    return alg_ == rhs.alg_ && terms_ == rhs.terms_;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw Error("bad-exponent", "negative power of a polynomial");
    Poly out = Poly::constant(alg_, 1);
    for (int i = 0; i < e; ++i) out = mul(out, *this);
    return out;
}

Poly mul(const Poly& a, const Poly& b) {
    require_same_algebra(a, b);
    const Algebra& alg = *a.algebra();
    Poly out(a.algebra());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            int sign = 1;
            // Append mb's factors one by one; monomial_insert accumulates the
            // Koszul sign of commuting each past the tail of m.
            for (const auto& [id, e] : mb.factors) {
                sign *= detail::monomial_insert(alg, m, id, e);
                if (sign == 0) break;
            }
            if (sign != 0) out.add_canonical(m, ca * cb * sign);
        }
    }
    return out;
}

int koszul_sign(const std::vector<int>& left_degrees, const std::vector<int>& right_degrees) {
    long long odd_left = 0, odd_right = 0;
    for (int d : left_degrees)
        if (is_odd_degree(d)) ++odd_left;
    for (int d : right_degrees)
        if (is_odd_degree(d)) ++odd_right;
    return parity_sign(odd_left, odd_right);
}

Poly partial(const Poly& p, int var_id) {
    const Algebra& alg = *p.algebra();
    if (var_id < 0 || var_id >= alg.size())
        throw Error("unknown-generator", "derivative with respect to a non-generator");
    const int vdeg = alg.degree(var_id);
    Poly out(p.algebra());
    for (const auto& [m, c] : p.terms_) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto [id, e] = m.factors[i];
            if (id != var_id) continue;
            // Move the left derivative past the prefix factors.
            int sign = 1;
            if (is_odd_degree(vdeg)) {
                for (size_t j = 0; j < i; ++j)
                    if (is_odd_degree(alg.degree(m.factors[j].first) * 1) &&
                        (m.factors[j].second % 2 != 0))
                        sign = -sign;
            }
            Monomial rest = m;
            if (e == 1) rest.factors.erase(rest.factors.begin() + static_cast<long>(i));
            else rest.factors[i].second = e - 1;
            out.add_canonical(rest, c * e * sign);
            break; // canonical monomials hold each generator once
        }
    }
    return out;
}

Poly partial(const Poly& p, const std::string& name) {
    return partial(p, p.algebra()->id_of(name));
}

Poly Derivation::image(int var_id) const {
    auto it = images.find(var_id);
    return it == images.end() ? Poly::zero(alg) : it->second;
}

void Derivation::set_image(int var_id, Poly value) {
    if (value.algebra() != alg)
        throw Error("mixed-algebra", "derivation image over a different algebra");
    if (value.is_zero()) images.erase(var_id);
    else images[var_id] = std::move(value);
}

void Derivation::validate() const {
    for (const auto& [id, img] : images) {
        if (id < 0 || id >= alg->size())
            throw Error("unknown-generator", "derivation image for a non-generator");
        if (img.algebra() != alg)
            throw Error("mixed-algebra", "derivation image over a different algebra");
        if (img.is_zero()) continue;
        auto d = img.degree();
        if (!d)
            throw Error("degree-violation",
                        "derivation image of '" + alg->name(id) + "' is inhomogeneous");
        if (*d != alg->degree(id) + parity_degree)
            throw Error("degree-violation",
                        "derivation image of '" + alg->name(id) + "' has degree " +
                            std::to_string(*d) + ", expected " +
                            std::to_string(alg->degree(id) + parity_degree));
    }
}

Poly apply_derivation(const Derivation& d, const Poly& p) {
    // D(p) = sum_v D(v) * dp/dv (left partials, images multiplied on the
    // left) reproduces the graded Leibniz rule with sign (-1)^(parity*|a|).
    if (d.alg != p.algebra())
        throw Error("mixed-algebra", "derivation applied to a poly over a different algebra");
    Poly out(p.algebra());
    for (const auto& [id, img] : d.images) {
        if (img.is_zero()) continue;
        Poly dp = partial(p, id);
        if (!dp.is_zero()) out = out + mul(img, dp);
    }
    return out;
}

const Rat& Point::value(const std::string& name) const {
    auto it = assignment.find(name);
    if (it == assignment.end())
        throw Error("point-incomplete", "point assigns no value to '" + name + "'");
    return it->second;
}

void Point::validate(const Algebra& alg) const {
    for (int id = 0; id < alg.size(); ++id) {
        const GradedVar& v = alg.var(id);
        if (v.degree != 0) continue;
        const Rat& val = value(v.name);
        if (v.invertible && val == 0)
            throw Error("point-not-unit", "invertible generator '" + v.name + "' assigned 0");
    }
    for (const auto& [name, val] : assignment) {
        (void)val;
        if (!alg.has(name))
            throw Error("unknown-generator", "point assigns unknown generator '" + name + "'");
        if (alg.degree(alg.id_of(name)) != 0)
            throw Error("point-bad-target", "point assigns negative-degree generator '" + name + "'");
    }
}

static Rat rat_pow(const Rat& base, int e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw Error("division-by-zero", "zero raised to a negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

Rat evaluate(const Poly& p, const Point& pt) {
    const Algebra& alg = *p.algebra();
    pt.validate(alg);
    Rat out(0);
    for (const auto& [m, c] : p.terms_) {
        bool dead = false;
        Rat v = c;
        for (const auto& [id, e] : m.factors) {
            if (alg.degree(id) < 0) { dead = true; break; }
            v *= rat_pow(pt.value(alg.name(id)), e);
        }
        if (!dead) out += v;
    }
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool need_coeff = (a != 1) || m.factors.empty();
        if (need_coeff) os << rat_to_string(a);
        bool lead = !need_coeff;
        for (const auto& [id, e] : m.factors) {
            if (!lead) os << "*";
            lead = false;
            os << alg_->name(id);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

Poly Poly::transport(const AlgebraPtr& target) const {
    Poly out(target);
    for (const auto& [m, c] : terms_) {
        std::vector<std::pair<int, int>> factors;
        factors.reserve(m.factors.size());
        for (const auto& [id, e] : m.factors) {
            const GradedVar& v = alg_->var(id);
            int tid = target->id_of(v.name);
            if (target->degree(tid) != v.degree)
                throw Error("transport-mismatch",
                            "generator '" + v.name + "' changes degree under transport");
            factors.push_back({tid, e});
        }
        out.add_term(factors, c);
    }
    return out;
}

} // namespace sctk
