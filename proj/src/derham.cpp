#include "sctk/derham.hpp"

#include <algorithm>
#include <sstream>

namespace sctk {

int Wedge::weight() const {
    int p = 0;
    for (const auto& [v, m] : factors) p += m;
    return p;
}

int Wedge::degree(const Algebra& alg) const {
    int d = 0;
    for (const auto& [v, m] : factors) d += m * alg.degree(v);
    return d;
}

int Wedge::total_parity(const Algebra& alg) const {
    int t = 0;
    for (const auto& [v, m] : factors) t += m * (alg.degree(v) + 1);
    return ((t % 2) + 2) % 2;
}

namespace {

int d_total_parity(const Algebra& alg, int v) { return ((alg.degree(v) + 1) % 2 + 2) % 2; }

/// Canonicalizes an explicit D-factor sequence by insertion sort, counting
/// Koszul swaps of total degrees. Returns the sign, 0 if the word vanishes
/// (repeated factor of odd total degree).
int canonicalize_sequence(const Algebra& alg, std::vector<int>& seq) {
    int sign = 1;
    for (size_t i = 1; i < seq.size(); ++i) {
        size_t j = i;
        while (j > 0 && alg.order_of(seq[j - 1]) > alg.order_of(seq[j])) {
            if (d_total_parity(alg, seq[j - 1]) == 1 && d_total_parity(alg, seq[j]) == 1)
                sign = -sign;
            std::swap(seq[j - 1], seq[j]);
            --j;
        }
    }
    for (size_t i = 1; i < seq.size(); ++i)
        if (seq[i] == seq[i - 1] && d_total_parity(alg, seq[i]) == 1) return 0;
    return sign;
}

Wedge collapse(const std::vector<int>& seq) {
    Wedge w;
    for (int v : seq) {
        if (!w.factors.empty() && w.factors.back().first == v) ++w.factors.back().second;
        else w.factors.push_back({v, 1});
    }
    return w;
}

std::vector<int> flatten(const Wedge& w) {
    std::vector<int> seq;
    for (const auto& [v, m] : w.factors)
        for (int i = 0; i < m; ++i) seq.push_back(v);
    return seq;
}

} // namespace

Form Form::from_poly(const Poly& coeff) {
    auto d = coeff.degree();
    if (!coeff.is_zero() && !d)
        throw Error("degree-violation", "weight-0 form from an inhomogeneous element");
    Form f(coeff.algebra(), 0, d ? *d : 0);
    if (!coeff.is_zero()) f.terms_[Wedge{}] = coeff;
    return f;
}

void Form::add_canonical(const Wedge& w, const Poly& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Form::add_term(const Poly& coeff, const std::vector<int>& d_vars) {
    if (!alg_) alg_ = coeff.algebra();
    if (coeff.algebra() != alg_)
        throw Error("mixed-algebra", "form coefficient over a different algebra");
    if (coeff.is_zero()) return;
    std::vector<int> seq = d_vars;
    int sign = canonicalize_sequence(*alg_, seq);
    if (sign == 0) return;
    Wedge w = collapse(seq);
    if (w.weight() != weight_)
        throw Error("weight-violation", "wedge word of weight " + std::to_string(w.weight()) +
                                            " in a form of weight " + std::to_string(weight_));
    auto cd = coeff.degree();
    if (!cd)
        throw Error("degree-violation", "inhomogeneous coefficient in a homogeneous form");
    if (*cd + w.degree(*alg_) != degree_)
        throw Error("degree-violation", "form term of degree " +
                                            std::to_string(*cd + w.degree(*alg_)) +
                                            " in a form of degree " + std::to_string(degree_));
    add_canonical(w, coeff * Rat(sign));
}

Poly Form::coefficient(const Wedge& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Poly::zero(alg_) : it->second;
}

static void require_compatible(const Form& a, const Form& b) {
    if (a.algebra() != b.algebra())
        throw Error("mixed-algebra", "forms over different algebras");
    if (!a.is_zero() && !b.is_zero() && (a.weight() != b.weight() || a.degree() != b.degree()))
        throw Error("degree-violation", "forms of different weight or degree");
}

Form Form::operator+(const Form& rhs) const {
    require_compatible(*this, rhs);
    Form out = is_zero() ? Form(alg_, rhs.weight(), rhs.degree()) : *this;
    for (const auto& [w, c] : rhs.terms_) out.add_canonical(w, c);
    return out;
}

Form Form::operator-(const Form& rhs) const { return *this + (-rhs); }

Form Form::operator-() const {
    Form out(alg_, weight_, degree_);
    for (const auto& [w, c] : terms_) out.terms_[w] = -c;
    return out;
}

Form Form::operator*(const Rat& c) const {
    Form out(alg_, weight_, degree_);
    if (c == 0) return out;
    for (const auto& [w, k] : terms_) out.terms_[w] = k * c;
    return out;
}

bool Form::operator==(const Form& rhs) const {
    if (alg_ != rhs.alg_) return false;
    if (is_zero() && rhs.is_zero()) return true;
    return weight_ == rhs.weight_ && degree_ == rhs.degree_ && terms_ == rhs.terms_;
}

Form Form::scaled_by(const Poly& a) const {
    auto ad = a.degree();
    if (!a.is_zero() && !ad)
        throw Error("degree-violation", "scaling a form by an inhomogeneous element");
    Form out(alg_, weight_, degree_ + (ad ? *ad : 0));
    if (a.is_zero()) return out;
    for (const auto& [w, c] : terms_) out.add_canonical(w, mul(a, c));
    return out;
}

Form wedge(const Form& a, const Form& b) {
    if (a.algebra() != b.algebra())
        throw Error("mixed-algebra", "wedge of forms over different algebras");
    const Algebra& alg = *a.algebra();
    Form out(a.algebra(), a.weight() + b.weight(), a.degree() + b.degree());
    for (const auto& [wa, ca] : a.terms()) {
        const int t_wa = wa.total_parity(alg);
        for (const auto& [wb, cb] : b.terms()) {
            // (ca wa)(cb wb): cb moves left past wa, then the words merge.
            auto cbd = cb.degree();
            int sign = parity_sign(*cbd, t_wa);
            std::vector<int> seq = flatten(wa);
            std::vector<int> tail = flatten(wb);
            seq.insert(seq.end(), tail.begin(), tail.end());
            int msign = canonicalize_sequence(alg, seq);
            if (msign == 0) continue;
            out.add_canonical(collapse(seq), mul(ca, cb) * Rat(sign * msign));
        }
    }
    return out;
}

Form wedge_pow(const Form& a, int e) {
    if (e < 0) throw Error("bad-exponent", "negative wedge power");
    Form out = Form::from_poly(Poly::constant(a.algebra(), 1));
    for (int i = 0; i < e; ++i) out = wedge(out, a);
    return out;
}

Form ddr(const Form& w) {
    const Algebra& alg = *w.algebra();
    Form out(w.algebra(), w.weight() + 1, w.degree());
    for (const auto& [wd, coeff] : w.terms()) {
        auto cd = coeff.degree();
        for (int v = 0; v < alg.size(); ++v) {
            Poly pd = partial(coeff, v);
            if (pd.is_zero()) continue;
            int sign = parity_sign(*cd, alg.degree(v) + 1);
            // (dd coeff/dv) D(v) ^ wd
            std::vector<int> seq;
            seq.push_back(v);
            std::vector<int> tail = flatten(wd);
            seq.insert(seq.end(), tail.begin(), tail.end());
            int msign = canonicalize_sequence(alg, seq);
            if (msign == 0) continue;
            out.add_canonical(collapse(seq), pd * Rat(sign * msign));
        }
    }
    return out;
}

Form d_int(const Cdga& A, const Form& w) {
    if (A.alg != w.algebra())
        throw Error("mixed-algebra", "form over a different algebra than the cdga");
    const Algebra& alg = *A.alg;
    Form out(w.algebra(), w.weight(), w.degree() + 1);
    for (const auto& [wd, coeff] : w.terms()) {
        auto cd = coeff.degree();
        std::vector<int> seq = flatten(wd);
        // d(coeff) wd
        Poly dc = A.diff(coeff);
        if (!dc.is_zero()) out.add_canonical(wd, dc);
        // (-1)^|coeff| coeff d(wd), with D(v) -> -d_dR(dv) slot by slot
        int coeff_sign = parity_sign(*cd, 1);
        int t_prefix = 0;
        for (size_t idx = 0; idx < seq.size(); ++idx) {
            const int v = seq[idx];
            Poly dv = A.d.image(v);
            if (!dv.is_zero()) {
                auto dvd = dv.degree();
                for (int u = 0; u < alg.size(); ++u) {
                    Poly pd = partial(dv, u);
                    if (pd.is_zero()) continue;
                    // -(-1)^(|dv|(|u|+1)) (d dv/du) D(u) replaces D(v)
                    int s = -parity_sign(*dvd, alg.degree(u) + 1);
                    // the odd operator passes the prefix, and the coefficient
                    // (d dv/du) moves left past it as well
                    s *= parity_sign(1, t_prefix);
                    auto pdd = pd.degree();
                    s *= parity_sign(*pdd, t_prefix);
                    std::vector<int> nseq = seq;
                    nseq[idx] = u;
                    int msign = canonicalize_sequence(alg, nseq);
                    if (msign == 0) continue;
                    out.add_canonical(collapse(nseq),
                                      mul(coeff, pd) * Rat(coeff_sign * s * msign));
                }
            }
            t_prefix += d_total_parity(alg, v);
        }
    }
    return out;
}

VectorField VectorField::basis(const AlgebraPtr& alg, int var_id) {
    VectorField Y{alg, {}, -alg->degree(var_id)};
    Y.components[var_id] = Poly::constant(alg, 1);
    return Y;
}

void VectorField::validate() const {
    for (const auto& [v, c] : components) {
        if (c.is_zero()) continue;
        if (c.algebra() != alg)
            throw Error("mixed-algebra", "vector field component over a different algebra");
        auto cd = c.degree();
        if (!cd)
            throw Error("degree-violation", "inhomogeneous vector field component");
        if (*cd - alg->degree(v) != degree)
            throw Error("degree-violation", "vector field component of inconsistent degree at " +
                                                alg->name(v));
    }
}

std::string VectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : components) {
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c.terms().size() == 1 && c.terms().begin()->first.factors.empty() &&
                    c.terms().begin()->second == 1;
        if (!unit) os << "(" << c.str() << ")*";
        os << "∂/∂" << alg->name(v);
    }
    if (first) os << "0";
    return os.str();
}

Form contract(const VectorField& Y, const Form& w) {
    if (Y.alg != w.algebra())
        throw Error("mixed-algebra", "vector field over a different algebra");
    Y.validate();
    const Algebra& alg = *Y.alg;
    const int op_parity = ((Y.degree + 1) % 2 + 2) % 2;
    Form out(w.algebra(), std::max(w.weight() - 1, 0), w.degree() + Y.degree);
    if (w.weight() == 0) return out; // iota_Y g = 0
    for (const auto& [wd, coeff] : w.terms()) {
        auto cd = coeff.degree();
        int csign = parity_sign(op_parity, *cd);
        std::vector<int> seq = flatten(wd);
        int t_prefix = 0;
        for (size_t idx = 0; idx < seq.size(); ++idx) {
            const int v = seq[idx];
            auto it = Y.components.find(v);
            if (it != Y.components.end() && !it->second.is_zero()) {
                const Poly& cv = it->second;
                int s = parity_sign(op_parity, t_prefix);
                // the component cv moves left past the prefix
                s *= parity_sign(Y.degree + alg.degree(v), t_prefix);
                std::vector<int> nseq = seq;
                nseq.erase(nseq.begin() + static_cast<long>(idx));
                int msign = canonicalize_sequence(alg, nseq);
                if (msign != 0)
                    out.add_canonical(collapse(nseq), mul(coeff, cv) * Rat(csign * s * msign));
            }
            t_prefix += d_total_parity(alg, v);
        }
    }
    return out;
}

Report is_shifted_pform(const Cdga& A, const Form& w) {
    Report r;
    Form residual = d_int(A, w);
    r.add("d-closed", residual.is_zero(),
          residual.is_zero() ? "" : "residual " + residual.str());
    return r;
}

Report is_closed_sequence(const Cdga& A, const std::vector<Form>& ws) {
    Report r;
    if (ws.empty()) {
        r.pass("closed-sequence", "empty ladder");
        return r;
    }
    const int p = ws[0].weight();
    const int k = ws[0].degree();
    for (size_t i = 0; i < ws.size(); ++i) {
        if (ws[i].is_zero()) continue;
        if (ws[i].weight() != p + static_cast<int>(i) ||
            ws[i].degree() != k - static_cast<int>(i))
            throw Error("ladder-mismatch",
                        "omega^" + std::to_string(i) + " must have weight " +
                            std::to_string(p + i) + " and degree " + std::to_string(k - i));
    }
    Form d0 = d_int(A, ws[0]);
    if (!d0.is_zero()) {
        r.fail("closed-sequence", "d omega^0 = " + d0.str());
        return r;
    }
    for (size_t i = 0; i < ws.size(); ++i) {
        Form lhs = ddr(ws[i]);
        if (i + 1 < ws.size()) lhs = lhs + d_int(A, ws[i + 1]);
        if (!lhs.is_zero()) {
            r.fail("closed-sequence",
                   "d_dR omega^" + std::to_string(i) + " + d omega^" + std::to_string(i + 1) +
                       " = " + lhs.str());
            return r;
        }
    }
    r.pass("closed-sequence");
    return r;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        std::string cs = c.str();
        bool negated = false;
        if (c.terms().size() == 1) {
            Poly neg = -c;
            if (cs.size() > neg.str().size()) { cs = neg.str(); negated = true; }
        }
        if (first) os << (negated ? "-" : "");
        else os << (negated ? " - " : " + ");
        first = false;
        bool unit = (cs == "1");
        bool atom = c.terms().size() <= 1;
        if (!unit) os << (atom ? cs : "(" + cs + ")");
        bool lead = unit;
        for (const auto& [v, m] : w.factors) {
            if (!lead) os << "*";
            lead = false;
            os << "D(" << alg_->name(v) << ")";
            if (m != 1) os << "^" << m;
        }
        if (w.factors.empty() && unit) os << "1";
    }
    return os.str();
}

Form Form::transport(const AlgebraPtr& target) const {
    Form out(target, weight_, degree_);
    for (const auto& [w, c] : terms_) {
        std::vector<int> dvars;
        for (const auto& [v, m] : w.factors)
            for (int i = 0; i < m; ++i) dvars.push_back(target->id_of(alg_->name(v)));
        out.add_term(c.transport(target), dvars);
    }
    return out;
}

} // namespace sctk
