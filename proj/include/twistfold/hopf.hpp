#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "twistfold/cartan.hpp"

namespace twistfold {

// Generator indices, kept in non-decreasing (PBW) order inside UElement.
using Word = std::vector<int>;
// Linear combination of generators.
using GenCombination = std::vector<std::pair<int, Scalar>>;

// Finite set of vector fields closing under the bracket with constant
// structure constants.
class GeneratorSet {
public:
    GeneratorSet(Ring ring, std::vector<std::string> names, std::vector<VectorField> fields);

    const Ring& ring() const { return ring_; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const VectorField& field(int i) const { return fields_[i]; }
    int index(const std::string& name) const;  // -1 if absent

    // [g_i, g_j] in terms of the generators.
    const GenCombination& bracket(int i, int j) const { return table_[i][j]; }
    bool commute(int i, int j) const { return table_[i][j].empty(); }

    // g_i^*; defaults to -g_i (real fields, anti-Hermitian generators).
    const GenCombination& star(int i) const { return star_[i]; }
    void set_star(std::vector<GenCombination> table);

    // PBW normal form of an arbitrary word.
    const std::map<Word, Scalar>& normal_form(const Word& w) const;

    std::string word_str(const Word& w) const;

private:
    Ring ring_;
    std::vector<std::string> names_;
    std::vector<VectorField> fields_;
    std::vector<std::vector<GenCombination>> table_;
    std::vector<GenCombination> star_;
    mutable std::mutex mutex_;
    mutable std::map<Word, std::map<Word, Scalar>> normal_cache_;
};
using Generators = std::shared_ptr<const GeneratorSet>;

Generators make_generators(const Ring& ring, std::vector<std::string> names, std::vector<VectorField> fields);

// Element of the universal enveloping algebra with nu-series coefficients,
// stored in PBW normal form.
class UElement {
public:
    UElement() = default;
    explicit UElement(Generators gens, int cap = kNoCap) : gens_(std::move(gens)), cap_(cap) {}
    static UElement one(const Generators& gens, int cap = kNoCap);
    static UElement generator(const Generators& gens, int i, int cap = kNoCap);
    static UElement generator(const Generators& gens, const std::string& name, int cap = kNoCap);
    // Arbitrary (unordered) word, normal ordered on construction.
    static UElement word(const Generators& gens, const Word& w, const NuSeries& coeff);

    const Generators& generators() const { return gens_; }
    const std::map<Word, NuSeries>& terms() const { return terms_; }
    int order_cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    int max_length() const;

    UElement& operator+=(const UElement& o);
    UElement& operator-=(const UElement& o);
    friend UElement operator+(UElement a, const UElement& b) { return a += b; }
    friend UElement operator-(UElement a, const UElement& b) { return a -= b; }
    friend UElement operator*(const UElement& a, const UElement& b);
    UElement operator-() const;
    UElement scaled(const NuSeries& s) const;
    UElement operator*(const Scalar& s) const { return scaled(NuSeries(s)); }
    UElement truncated(int cap) const;

    NuSeries counit() const;
    UElement antipode() const;
    // Antilinear anti-automorphism extending the generator star table.
    UElement star() const;
    // ad_u(x) = u_(1) x S(u_(2)).
    UElement adjoint(const UElement& x) const;

    friend bool operator==(const UElement& a, const UElement& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const UElement& a, const UElement& b) { return !(a == b); }

    std::string str() const;

    void add_term(const Word& sorted, const NuSeries& c);

private:
    Generators gens_;
    std::map<Word, NuSeries> terms_;
    int cap_ = kNoCap;
};

// Element of U^{(x)k}[[nu]] as a sum of pure tensors of PBW words.
class MultiLeg {
public:
    using Key = std::vector<Word>;

    MultiLeg() = default;
    MultiLeg(Generators gens, int legs, int cap = kNoCap) : gens_(std::move(gens)), legs_(legs), cap_(cap) {}
    static MultiLeg identity(const Generators& gens, int legs, int cap = kNoCap);
    static MultiLeg pure(const std::vector<UElement>& factors);

    const Generators& generators() const { return gens_; }
    int legs() const { return legs_; }
    int order_cap() const { return cap_; }
    const std::map<Key, NuSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    MultiLeg& operator+=(const MultiLeg& o);
    MultiLeg& operator-=(const MultiLeg& o);
    friend MultiLeg operator+(MultiLeg a, const MultiLeg& b) { return a += b; }
    friend MultiLeg operator-(MultiLeg a, const MultiLeg& b) { return a -= b; }
    friend MultiLeg operator*(const MultiLeg& a, const MultiLeg& b);
    MultiLeg operator-() const;
    MultiLeg scaled(const NuSeries& s) const;
    MultiLeg truncated(int cap) const;

    // Legs permuted: result leg k is leg perm[k] of this.
    MultiLeg permuted(const std::vector<int>& perm) const;
    MultiLeg flipped() const { return permuted({1, 0}); }
    // Coproduct applied to leg k (adds a leg).
    MultiLeg coproduct_on(int k) const;
    // Counit applied to leg k (removes a leg).
    MultiLeg counit_on(int k) const;
    MultiLeg antipode_on(int k) const;
    MultiLeg star_all() const;
    // Appends the identity as a new leg at position k.
    MultiLeg insert_unit(int k) const;
    // Multiplies all legs together in order.
    UElement multiply_legs() const;
    // Multiplies leg k of this with a single element on the given side.
    MultiLeg times_on(int k, const UElement& u, bool from_left) const;
    UElement leg_element(int k) const;  // legs must be 1

    friend bool operator==(const MultiLeg& a, const MultiLeg& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiLeg& a, const MultiLeg& b) { return !(a == b); }

    std::string str() const;

    void add_term(const Key& key, const NuSeries& c);

private:
    Generators gens_;
    int legs_ = 0;
    std::map<Key, NuSeries> terms_;
    int cap_ = kNoCap;
};

MultiLeg coproduct(const UElement& u);
// Delta_F(u) = F Delta(u) F^-1, given F and its inverse.
MultiLeg twisted_coproduct(const UElement& u, const MultiLeg& F, const MultiLeg& Fbar);

// ---- action on geometric objects: a word acts as the composition of Lie
// derivatives, rightmost letter first.
template <class T>
class WordAction {
public:
    WordAction(Generators gens, T base) : gens_(std::move(gens)), base_(std::move(base)) {}
    const T& operator()(const Word& w) {
        if (w.empty()) return base_;
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        Word rest(w.begin() + 1, w.end());
        T inner = (*this)(rest);
        T value = lie(gens_->field(w[0]), inner);
        return memo_.emplace(w, std::move(value)).first->second;
    }
    const T& base() const { return base_; }

private:
    Generators gens_;
    T base_;
    std::map<Word, T> memo_;
};

template <class T>
T scale_object(const T& t, const NuSeries& s) {
    return t.scaled(s);
}

template <class T>
T hopf_act(const UElement& u, const T& target) {
    WordAction<T> act(u.generators(), target);
    T out = scale_object(target, NuSeries());
    for (const auto& [w, c] : u.terms()) out += scale_object(act(w), c);
    return out;
}

// ---- twists
enum class TwistFamily { identity, abelian, jordanian };

struct TwistSpec {
    TwistFamily family = TwistFamily::identity;
    std::vector<std::pair<int, int>> pairs;  // abelian: (left, right) generator pairs
    int h = -1, e = -1;                      // jordanian: [h, e] = 2 e
};

class TwistData {
public:
    TwistData() = default;

    const Generators& generators() const { return gens_; }
    const TwistSpec& spec() const { return spec_; }
    int order() const { return order_; }
    const MultiLeg& F() const { return F_; }
    const MultiLeg& Fbar() const { return Fbar_; }
    const MultiLeg& R() const { return R_; }
    const MultiLeg& Rbar() const { return Rbar_; }
    const UElement& beta() const { return beta_; }
    const UElement& beta_inverse() const { return beta_inv_; }

    // F^n = (1^{n-2} (x) F)(id^{n-2} (x) Delta) F^{n-1}; F^2 = F.
    MultiLeg iterated(int n) const;
    // Generators whose high powers must annihilate the left / right argument
    // for the truncated series to be exact on it.
    std::vector<int> left_nilpotent() const;
    std::vector<int> right_nilpotent() const;
    std::string family_name() const;

    friend TwistData build_twist(const Generators&, const TwistSpec&, int);

private:
    Generators gens_;
    TwistSpec spec_;
    int order_ = 0;
    MultiLeg F_, Fbar_, R_, Rbar_;
    UElement beta_, beta_inv_;
};

TwistData build_twist(const Generators& gens, const TwistSpec& spec, int order);

// True if every word of length n over `letters` annihilates the target.
template <class T>
bool annihilated_by_powers(const Generators& gens, const std::vector<int>& letters, const T& target, int n) {
    if (letters.empty()) return false;
    std::vector<T> frontier{target};
    for (int step = 0; step < n; ++step) {
        std::vector<T> next;
        for (const auto& t : frontier)
            for (int g : letters) {
                T v = lie(gens->field(g), t);
                if (!v.is_zero()) next.push_back(std::move(v));
            }
        if (next.empty()) return true;
        if (next.size() > 4096) return false;
        frontier = std::move(next);
    }
    return frontier.empty();
}

// ---- axiom checks
struct TwistAxiomReport {
    bool counital_left = false;
    bool counital_right = false;
    bool inverse_ok = false;
    bool cocycle_algebraic = false;
    MultiLeg cocycle_lhs, cocycle_rhs;  // (F(x)1)(Delta(x)id)F and (1(x)F)(id(x)Delta)F
    bool r_inverse_ok = false;
    bool beta_inverse_ok = false;
    bool ok() const {
        return counital_left && counital_right && inverse_ok && cocycle_algebraic && r_inverse_ok && beta_inverse_ok;
    }
};
TwistAxiomReport check_twist_axioms(const TwistData& t);

// Difference of the two sides of the cocycle condition acting on all triples
// of monomials of degree <= max_degree; returns the number of triples with a
// nonzero residual.
struct TripleCheck {
    long triples = 0;
    long failures = 0;
    std::string first_failure;
};
TripleCheck evaluate_on_triples(const MultiLeg& lhs, const MultiLeg& rhs, int max_degree);

// Applies a two- or three-leg element to pure tensors of polynomials and
// returns the result in a ring with one copy of the coordinates per leg.
Polynomial act_on_tensor(const MultiLeg& m, const std::vector<Polynomial>& factors, const Ring& big);
Ring tensor_ring(const Ring& base, int copies);
Polynomial embed_copy(const Polynomial& p, const Ring& big, int copy);

// ---- *-structures and the D isomorphism
struct StarReport {
    bool unitary = false;
    bool real = false;
};
StarReport check_star(const TwistData& t);

// D(u) = (Fbar_1 |> u) Fbar_2, adjoint action.
UElement D_map(const TwistData& t, const UElement& u);
// Same map through F_1 u S(F_2) beta^-1.
UElement D_map_conjugation(const TwistData& t, const UElement& u);
UElement D_inverse(const TwistData& t, const UElement& u);
// u * v = (Fbar_1 |> u)(Fbar_2 |> v), adjoint action.
UElement star_product(const TwistData& t, const UElement& u, const UElement& v);
UElement twisted_antipode(const TwistData& t, const UElement& u);
UElement twisted_star(const TwistData& t, const UElement& u);

}  // namespace twistfold
