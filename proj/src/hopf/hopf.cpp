#include "twistfold/hopf.hpp"

#include <algorithm>
#include <functional>

#include "twistfold/format.hpp"
#include "twistfold/linear_algebra.hpp"

namespace twistfold {

namespace {

// Coefficient with the same values and a fresh exactness flag; truncation of
// Hopf-algebra elements is tracked by the consumers.
NuSeries plain(const NuSeries& s, int cap) {
    NuSeries r(Scalar(), cap);
    for (int k = 0; k <= s.degree() && k <= cap; ++k)
        if (!s[k].is_zero()) r += NuSeries::monomial(s[k], k, cap);
    return r;
}

struct FieldKey {
    int comp, layer;
    std::array<uint8_t, kMaxCoords + kMaxParams> e;
    bool operator<(const FieldKey& o) const {
        if (comp != o.comp) return comp < o.comp;
        if (layer != o.layer) return layer < o.layer;
        return e < o.e;
    }
};

std::map<FieldKey, Scalar> expand_field(const VectorField& X) {
    std::map<FieldKey, Scalar> out;
    for (int i = 0; i < X.dim(); ++i) {
        if (!X[i].is_polynomial()) throw Error("generator fields must have polynomial components");
        const Polynomial& p = X[i].numerator();
        for (int k = 0; k <= p.nu_degree(); ++k)
            for (const auto& [m, c] : p.layer(k).terms()) out[{i, k, m.e}] = c;
    }
    return out;
}

// Solves X = sum c_j basis_j over the scalars.
std::optional<std::vector<Scalar>> express(const std::vector<std::map<FieldKey, Scalar>>& basis,
                                           const std::map<FieldKey, Scalar>& target) {
    std::map<FieldKey, int> rows;
    for (const auto& b : basis)
        for (const auto& kv : b) rows.emplace(kv.first, 0);
    for (const auto& kv : target) rows.emplace(kv.first, 0);
    int r = 0;
    for (auto& kv : rows) kv.second = r++;
    ScalarMatrix a(rows.size(), std::vector<Scalar>(basis.size()));
    std::vector<Scalar> rhs(rows.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (const auto& [k, c] : basis[j]) a[rows[k]][j] = c;
    for (const auto& [k, c] : target) rhs[rows[k]] = c;
    if (basis.empty()) {
        if (target.empty()) return std::vector<Scalar>{};
        return std::nullopt;
    }
    return solve(a, rhs);
}

GenCombination combine(const std::vector<Scalar>& c) {
    GenCombination out;
    for (size_t j = 0; j < c.size(); ++j)
        if (!c[j].is_zero()) out.emplace_back(static_cast<int>(j), c[j]);
    return out;
}

void add_to(std::map<Word, Scalar>& acc, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

}  // namespace

// ------------------------------------------------------------ GeneratorSet

GeneratorSet::GeneratorSet(Ring ring, std::vector<std::string> names, std::vector<VectorField> fields)
    : ring_(std::move(ring)), names_(std::move(names)), fields_(std::move(fields)) {
    if (names_.size() != fields_.size()) throw Error("generator names and fields differ in number");
    int m = size();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (names_[i] == names_[j]) throw Error("duplicate generator name " + names_[i]);
    std::vector<std::map<FieldKey, Scalar>> basis;
    for (const auto& f : fields_) {
        if (f.ring() != ring_) throw Error("generator field lives in another coordinate system");
        basis.push_back(expand_field(f));
    }
    for (int i = 0; i < m; ++i) {
        auto others = basis;
        others.erase(others.begin() + i);
        if (express(others, basis[i])) throw Error("generators are linearly dependent: " + names_[i]);
    }
    table_.assign(m, std::vector<GenCombination>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto c = express(basis, expand_field(twistfold::bracket(fields_[i], fields_[j])));
            if (!c)
                throw Error("bracket [" + names_[i] + ", " + names_[j] +
                            "] is not a constant combination of the generators");
            table_[i][j] = combine(*c);
            for (auto& [k, s] : table_[i][j]) table_[j][i].emplace_back(k, -s);
        }
    // Jacobi on the structure constants
    auto br = [&](const GenCombination& a, int k) {
        std::vector<Scalar> out(m);
        for (const auto& [g, s] : a)
            for (const auto& [h, t] : table_[g][k]) out[h] += s * t;
        return out;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                std::vector<Scalar> sum(m);
                auto acc = [&](int a, int b, int c) {
                    // [[g_a, g_b], g_c]
                    auto v = br(table_[a][b], c);
                    for (int t = 0; t < m; ++t) sum[t] += v[t];
                };
                acc(i, j, k);
                acc(j, k, i);
                acc(k, i, j);
                for (const auto& s : sum)
                    if (!s.is_zero()) throw Error("structure constants violate the Jacobi identity");
            }
    star_.resize(m);
    for (int i = 0; i < m; ++i) star_[i] = {{i, Scalar(-1)}};
}

int GeneratorSet::index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

void GeneratorSet::set_star(std::vector<GenCombination> table) {
    int m = size();
    if (static_cast<int>(table.size()) != m) throw Error("star table size mismatch");
    auto apply = [&](const GenCombination& c) {
        std::vector<Scalar> out(m);
        for (const auto& [g, s] : c)
            for (const auto& [h, t] : table[g]) out[h] += s.conj() * t;
        return out;
    };
    for (int i = 0; i < m; ++i) {
        auto v = apply(table[i]);
        for (int k = 0; k < m; ++k)
            if (v[k] != Scalar(k == i ? 1 : 0)) throw Error("star table is not involutive");
    }
    // ([g_i, g_j])^* = [g_j^*, g_i^*]
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto lhs = apply(table_[i][j]);
            std::vector<Scalar> rhs(m);
            for (const auto& [a, s] : table[j])
                for (const auto& [b, t] : table[i])
                    for (const auto& [h, u] : table_[a][b]) rhs[h] += s * t * u;
            if (lhs != rhs) throw Error("star table is not an anti-homomorphism of the bracket");
        }
    star_ = std::move(table);
}

const std::map<Word, Scalar>& GeneratorSet::normal_form(const Word& w) const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::function<const std::map<Word, Scalar>&(const Word&)> nf = [&](const Word& v) -> const std::map<Word, Scalar>& {
        auto it = normal_cache_.find(v);
        if (it != normal_cache_.end()) return it->second;
        std::map<Word, Scalar> out;
        size_t k = 0;
        while (k + 1 < v.size() && v[k] <= v[k + 1]) ++k;
        if (k + 1 >= v.size()) {
            out.emplace(v, Scalar(1));
        } else {
            Word swapped = v;
            std::swap(swapped[k], swapped[k + 1]);
            for (const auto& [u, c] : nf(swapped)) add_to(out, u, c);
            for (const auto& [g, s] : table_[v[k]][v[k + 1]]) {
                Word shorter(v.begin(), v.begin() + k);
                shorter.push_back(g);
                shorter.insert(shorter.end(), v.begin() + k + 2, v.end());
                for (const auto& [u, c] : nf(shorter)) add_to(out, u, c * s);
            }
        }
        return normal_cache_.emplace(v, std::move(out)).first->second;
    };
    return nf(w);
}

std::string GeneratorSet::word_str(const Word& w) const {
    std::string out;
    size_t k = 0;
    while (k < w.size()) {
        size_t j = k;
        while (j < w.size() && w[j] == w[k]) ++j;
        if (!out.empty()) out += "*";
        out += names_[w[k]];
        if (j - k > 1) out += "^" + std::to_string(j - k);
        k = j;
    }
    return out;
}

Generators make_generators(const Ring& ring, std::vector<std::string> names, std::vector<VectorField> fields) {
    return std::make_shared<GeneratorSet>(ring, std::move(names), std::move(fields));
}

// ---------------------------------------------------------------- UElement

UElement UElement::one(const Generators& gens, int cap) {
    UElement u(gens, cap);
    u.add_term({}, NuSeries(Scalar(1), cap));
    return u;
}

UElement UElement::generator(const Generators& gens, int i, int cap) {
    if (i < 0 || i >= gens->size()) throw Error("generator index out of range");
    UElement u(gens, cap);
    u.add_term({i}, NuSeries(Scalar(1), cap));
    return u;
}

UElement UElement::generator(const Generators& gens, const std::string& name, int cap) {
    int i = gens->index(name);
    if (i < 0) throw Error("unknown generator " + name);
    return generator(gens, i, cap);
}

UElement UElement::word(const Generators& gens, const Word& w, const NuSeries& coeff) {
    UElement u(gens, coeff.order_cap());
    for (const auto& [v, c] : gens->normal_form(w)) u.add_term(v, coeff * c);
    return u;
}

void UElement::add_term(const Word& sorted, const NuSeries& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(sorted);
    NuSeries v = plain(c, cap_);
    if (it == terms_.end()) {
        if (!v.is_zero()) terms_.emplace(sorted, std::move(v));
        return;
    }
    it->second = plain(it->second + v, cap_);
    if (it->second.is_zero()) terms_.erase(it);
}

int UElement::max_length() const {
    int l = -1;
    for (const auto& kv : terms_) l = std::max(l, static_cast<int>(kv.first.size()));
    return l;
}

UElement& UElement::operator+=(const UElement& o) {
    if (!gens_) gens_ = o.gens_;
    if (o.gens_ && o.gens_ != gens_) throw Error("enveloping-algebra elements over different generator sets");
    cap_ = std::min(cap_, o.cap_);
    if (cap_ != kNoCap) *this = truncated(cap_);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

UElement& UElement::operator-=(const UElement& o) { return *this += -o; }

UElement UElement::operator-() const {
    UElement r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

UElement operator*(const UElement& a, const UElement& b) {
    if (a.gens_ != b.gens_) throw Error("enveloping-algebra elements over different generator sets");
    UElement r(a.gens_, std::min(a.cap_, b.cap_));
    for (const auto& [u, c] : a.terms_)
        for (const auto& [v, d] : b.terms_) {
            if (c.valuation() + d.valuation() > r.cap_) continue;
            NuSeries cd = c * d;
            for (const auto& [w, s] : a.gens_->normal_form(concat(u, v))) r.add_term(w, cd * s);
        }
    return r;
}

UElement UElement::scaled(const NuSeries& s) const {
    UElement r(gens_, std::min(cap_, s.order_cap()));
    for (const auto& [w, c] : terms_) r.add_term(w, c * s);
    return r;
}

UElement UElement::truncated(int cap) const {
    UElement r(gens_, std::min(cap, cap_));
    for (const auto& [w, c] : terms_) r.add_term(w, c);
    return r;
}

NuSeries UElement::counit() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? NuSeries(Scalar(), cap_) : it->second;
}

UElement UElement::antipode() const {
    UElement r(gens_, cap_);
    for (const auto& [w, c] : terms_) {
        Word rev(w.rbegin(), w.rend());
        NuSeries sc = w.size() % 2 ? -c : c;
        for (const auto& [v, s] : gens_->normal_form(rev)) r.add_term(v, sc * s);
    }
    return r;
}

UElement UElement::star() const {
    UElement r(gens_, cap_);
    for (const auto& [w, c] : terms_) {
        // (g_1...g_l)^* = g_l^* ... g_1^*
        std::map<Word, Scalar> acc{{Word{}, Scalar(1)}};
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            std::map<Word, Scalar> next;
            for (const auto& [u, s] : acc)
                for (const auto& [g, t] : gens_->star(*it)) {
                    Word v = u;
                    v.push_back(g);
                    add_to(next, v, s * t);
                }
            acc = std::move(next);
        }
        NuSeries cc = c.conj();
        for (const auto& [u, s] : acc)
            for (const auto& [v, t] : gens_->normal_form(u)) r.add_term(v, cc * (s * t));
    }
    return r;
}

UElement UElement::adjoint(const UElement& x) const {
    std::map<Word, UElement> memo;
    std::function<const UElement&(const Word&)> ad = [&](const Word& w) -> const UElement& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        UElement value;
        if (w.empty()) {
            value = x;
        } else {
            const UElement& inner = ad(Word(w.begin() + 1, w.end()));
            UElement g = generator(gens_, w[0], inner.order_cap());
            value = g * inner - inner * g;
        }
        return memo.emplace(w, std::move(value)).first->second;
    };
    UElement r(gens_, std::min(cap_, x.cap_));
    for (const auto& [w, c] : terms_) r += ad(w).scaled(c);
    return r;
}

std::string UElement::str() const {
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [w, c] : terms_) parts.emplace_back(c.str(), gens_->word_str(w));
    return join_terms(parts, false);
}

// ---------------------------------------------------------------- MultiLeg

MultiLeg MultiLeg::identity(const Generators& gens, int legs, int cap) {
    MultiLeg m(gens, legs, cap);
    m.add_term(Key(legs), NuSeries(Scalar(1), cap));
    return m;
}

MultiLeg MultiLeg::pure(const std::vector<UElement>& factors) {
    if (factors.empty()) throw Error("empty tensor product");
    int cap = kNoCap;
    for (const auto& f : factors) cap = std::min(cap, f.order_cap());
    MultiLeg m(factors[0].generators(), static_cast<int>(factors.size()), cap);
    std::vector<std::pair<Key, NuSeries>> acc{{Key{}, NuSeries(Scalar(1), cap)}};
    for (const auto& f : factors) {
        std::vector<std::pair<Key, NuSeries>> next;
        for (const auto& [k, c] : acc)
            for (const auto& [w, d] : f.terms()) {
                Key k2 = k;
                k2.push_back(w);
                next.emplace_back(std::move(k2), c * d);
            }
        acc = std::move(next);
    }
    for (const auto& [k, c] : acc) m.add_term(k, c);
    return m;
}

void MultiLeg::add_term(const Key& key, const NuSeries& c) {
    if (c.is_zero()) return;
    NuSeries v = plain(c, cap_);
    if (v.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(v));
        return;
    }
    it->second = plain(it->second + v, cap_);
    if (it->second.is_zero()) terms_.erase(it);
}

MultiLeg& MultiLeg::operator+=(const MultiLeg& o) {
    if (!gens_) {
        gens_ = o.gens_;
        legs_ = o.legs_;
    }
    if (o.legs_ != legs_ || o.gens_ != gens_) throw Error("multi-leg sums of different shape");
    if (o.cap_ < cap_) {
        cap_ = o.cap_;
        *this = truncated(cap_);
    }
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

MultiLeg& MultiLeg::operator-=(const MultiLeg& o) { return *this += -o; }

MultiLeg MultiLeg::operator-() const {
    MultiLeg r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

MultiLeg operator*(const MultiLeg& a, const MultiLeg& b) {
    if (a.legs_ != b.legs_ || a.gens_ != b.gens_) throw Error("multi-leg sums of different shape");
    MultiLeg r(a.gens_, a.legs_, std::min(a.cap_, b.cap_));
    const GeneratorSet& g = *a.gens_;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            if (ca.valuation() + cb.valuation() > r.cap_) continue;
            NuSeries c = ca * cb;
            std::vector<std::pair<MultiLeg::Key, Scalar>> acc{{MultiLeg::Key{}, Scalar(1)}};
            for (int l = 0; l < a.legs_; ++l) {
                const auto& nf = g.normal_form(concat(ka[l], kb[l]));
                std::vector<std::pair<MultiLeg::Key, Scalar>> next;
                next.reserve(acc.size() * nf.size());
                for (const auto& [k, s] : acc)
                    for (const auto& [w, t] : nf) {
                        MultiLeg::Key k2 = k;
                        k2.push_back(w);
                        next.emplace_back(std::move(k2), s * t);
                    }
                acc = std::move(next);
            }
            for (const auto& [k, s] : acc) r.add_term(k, c * s);
        }
    return r;
}

MultiLeg MultiLeg::scaled(const NuSeries& s) const {
    MultiLeg r(gens_, legs_, std::min(cap_, s.order_cap()));
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
}

MultiLeg MultiLeg::truncated(int cap) const {
    MultiLeg r(gens_, legs_, std::min(cap, cap_));
    for (const auto& [k, c] : terms_) r.add_term(k, c);
    return r;
}

MultiLeg MultiLeg::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != legs_) throw Error("leg permutation arity mismatch");
    MultiLeg r(gens_, legs_, cap_);
    for (const auto& [k, c] : terms_) {
        Key k2(legs_);
        for (int l = 0; l < legs_; ++l) k2[l] = k[perm[l]];
        r.add_term(k2, c);
    }
    return r;
}

MultiLeg MultiLeg::coproduct_on(int leg) const {
    MultiLeg r(gens_, legs_ + 1, cap_);
    for (const auto& [k, c] : terms_) {
        const Word& w = k[leg];
        size_t l = w.size();
        for (size_t mask = 0; mask < (size_t(1) << l); ++mask) {
            Word left, right;
            for (size_t p = 0; p < l; ++p) (mask >> p & 1 ? left : right).push_back(w[p]);
            Key k2;
            k2.reserve(legs_ + 1);
            for (int q = 0; q < legs_; ++q) {
                if (q == leg) {
                    k2.push_back(left);
                    k2.push_back(right);
                } else {
                    k2.push_back(k[q]);
                }
            }
            r.add_term(k2, c);
        }
    }
    return r;
}

MultiLeg MultiLeg::counit_on(int leg) const {
    MultiLeg r(gens_, legs_ - 1, cap_);
    for (const auto& [k, c] : terms_) {
        if (!k[leg].empty()) continue;
        Key k2 = k;
        k2.erase(k2.begin() + leg);
        r.add_term(k2, c);
    }
    return r;
}

MultiLeg MultiLeg::antipode_on(int leg) const {
    MultiLeg r(gens_, legs_, cap_);
    for (const auto& [k, c] : terms_) {
        Word rev(k[leg].rbegin(), k[leg].rend());
        NuSeries sc = rev.size() % 2 ? -c : c;
        for (const auto& [w, s] : gens_->normal_form(rev)) {
            Key k2 = k;
            k2[leg] = w;
            r.add_term(k2, sc * s);
        }
    }
    return r;
}

MultiLeg MultiLeg::star_all() const {
    MultiLeg r(gens_, legs_, cap_);
    for (const auto& [k, c] : terms_) {
        std::vector<UElement> factors;
        for (int l = 0; l < legs_; ++l) {
            UElement u(gens_, cap_);
            u.add_term(k[l], NuSeries(Scalar(1), cap_));
            factors.push_back(u.star());
        }
        r += pure(factors).scaled(c.conj());
    }
    return r;
}

MultiLeg MultiLeg::insert_unit(int leg) const {
    MultiLeg r(gens_, legs_ + 1, cap_);
    for (const auto& [k, c] : terms_) {
        Key k2 = k;
        k2.insert(k2.begin() + leg, Word{});
        r.add_term(k2, c);
    }
    return r;
}

UElement MultiLeg::multiply_legs() const {
    UElement r(gens_, cap_);
    for (const auto& [k, c] : terms_) {
        Word w;
        for (const auto& part : k) w.insert(w.end(), part.begin(), part.end());
        for (const auto& [v, s] : gens_->normal_form(w)) r.add_term(v, c * s);
    }
    return r;
}

MultiLeg MultiLeg::times_on(int leg, const UElement& u, bool from_left) const {
    MultiLeg r(gens_, legs_, std::min(cap_, u.order_cap()));
    for (const auto& [k, c] : terms_)
        for (const auto& [w, d] : u.terms()) {
            if (c.valuation() + d.valuation() > r.cap_) continue;
            NuSeries cd = c * d;
            Word full = from_left ? concat(w, k[leg]) : concat(k[leg], w);
            for (const auto& [v, s] : gens_->normal_form(full)) {
                Key k2 = k;
                k2[leg] = v;
                r.add_term(k2, cd * s);
            }
        }
    return r;
}

UElement MultiLeg::leg_element(int leg) const {
    if (legs_ != 1) throw Error("leg_element needs a single-leg sum");
    UElement u(gens_, cap_);
    for (const auto& [k, c] : terms_) u.add_term(k[leg], c);
    return u;
}

std::string MultiLeg::str() const {
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [k, c] : terms_) {
        std::string atom;
        for (int l = 0; l < legs_; ++l) {
            if (l) atom += " (x) ";
            atom += k[l].empty() ? "1" : gens_->word_str(k[l]);
        }
        parts.emplace_back(c.str(), atom);
    }
    return join_terms(parts, false);
}

MultiLeg coproduct(const UElement& u) {
    MultiLeg one_leg(u.generators(), 1, u.order_cap());
    for (const auto& [w, c] : u.terms()) one_leg.add_term({w}, c);
    return one_leg.coproduct_on(0);
}

MultiLeg twisted_coproduct(const UElement& u, const MultiLeg& F, const MultiLeg& Fbar) {
    return F * coproduct(u) * Fbar;
}

}  // namespace twistfold
