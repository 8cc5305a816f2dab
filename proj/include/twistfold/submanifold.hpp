#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twistfold/ideal.hpp"
#include "twistfold/metric.hpp"

namespace twistfold {

// The family M_c of level sets f^a(x) = 0, a = 1..k, where the f^a may carry
// parameters (c, R, ...).
class LevelSetFamily {
public:
    // Throws on constant or nu-dependent constraints, k >= n, or a Jacobian
    // that is rank deficient at every sampled point.
    LevelSetFamily(std::vector<Polynomial> f, const Metric& g);

    const Ring& ring() const { return f_[0].ring(); }
    int dim() const { return ring()->dim(); }
    int codim() const { return static_cast<int>(f_.size()); }
    const std::vector<Polynomial>& constraints() const { return f_; }
    const Metric& metric() const { return g_; }
    // f^a_i and f^a_ij
    const Polynomial& jacobian(int a, int i) const { return jac_[a][i]; }
    const Polynomial& hessian(int a, int i, int j) const { return hess_[a][i][j]; }
    // f^{ai} = g^{ij} f^a_j
    const Polynomial& raised(int a, int i) const { return raised_[a][i]; }
    PForm df(int a) const;
    VectorField gradient(int a) const;  // f^{ai} d_i

    const IdealReducer& ideal() const { return ideal_; }
    Function reduce(const Function& h) const;
    bool in_ideal(const Function& h) const { return reduce(h).is_zero(); }
    // Where the normal data degenerates, e.g. "E = 2*c vanishes at c = 0".
    const std::string& excluded_note() const { return note_; }

private:
    std::vector<Polynomial> f_;
    Metric g_;
    std::vector<std::vector<Polynomial>> jac_, raised_;
    std::vector<std::vector<std::vector<Polynomial>>> hess_;
    IdealReducer ideal_;
    std::string note_;
};

// ---- tangency
enum class Tangency { tangent, chi_cc, chi_c, none };

struct TangencyClass {
    Tangency kind = Tangency::none;
    bool tangent = false;  // X(f^a) = 0
    bool chi_c = false;    // X(f^a) in the ideal
    bool chi_cc = false;   // every component in the ideal
    std::vector<Function> witnesses;  // X(f^a) reduced modulo the ideal
    std::string name() const;
};
TangencyClass classify(const VectorField& X, const LevelSetFamily& M);

enum class FormKind { tangent, normal, cc, c, box, none };

struct FormClass {
    FormKind kind = FormKind::none;
    bool tangent = false;  // <N^a, w> = 0
    bool normal = false;   // <L, w> = 0 for the tangent generators L
    bool c = false;        // <N^a, w> in the ideal
    bool cc = false;       // every component in the ideal
    bool box = false;      // <L, w> in the ideal
    std::string name() const;
};
FormClass classify(const PForm& w, const LevelSetFamily& M);

// ---- normal frame
// False where det E vanishes modulo the ideal, e.g. on the light cone.
bool has_normal_frame(const LevelSetFamily& M);

class NormalFrame {
public:
    // Throws if det E vanishes modulo the ideal.
    explicit NormalFrame(const LevelSetFamily& M);

    int codim() const { return static_cast<int>(N_.size()); }
    // E^ab = f^{ai} f^b_i, its reduction modulo the ideal, and K = E^-1.
    const FunctionMatrix& E() const { return E_; }
    const FunctionMatrix& E_reduced() const { return Ered_; }
    const FunctionMatrix& K() const { return K_; }
    // N^a = K^ab f^{bi} d_i, dual to df^b under the pairing.
    const std::vector<VectorField>& normals() const { return N_; }

    // Codimension one with E = zeta s^2 modulo the ideal for a monomial s in
    // the parameters: U = f^i d_i / s, theta = df / s, g(U, U) = zeta.
    struct Unit {
        Function scale;  // s
        int zeta = 1;
        VectorField normal;
        PForm coform;
    };
    const std::optional<Unit>& unit() const { return unit_; }

private:
    FunctionMatrix E_, Ered_, K_;
    std::vector<VectorField> N_;
    std::optional<Unit> unit_;
};

// ---- family with its normal frame
class Embedding {
public:
    explicit Embedding(LevelSetFamily M) : M_(std::move(M)), frame_(M_) {}

    const LevelSetFamily& family() const { return M_; }
    const Metric& metric() const { return M_.metric(); }
    const NormalFrame& frame() const { return frame_; }
    const Ring& ring() const { return M_.ring(); }

    VectorField normal_part(const VectorField& X) const;
    VectorField tangent_part(const VectorField& X) const { return X - normal_part(X); }
    PForm normal_part(const PForm& w) const;  // each factor projected
    PForm tangent_part(const PForm& w) const;
    TensorField normal_part(const TensorField& T) const;  // every slot
    TensorField tangent_part(const TensorField& T) const;

private:
    LevelSetFamily M_;
    NormalFrame frame_;
};

// Twisted projections, built from g_*, star products and the normal frame.
// Throws unless every generator in the twist legs is a tangent Killing field.
void require_killing_twist(const StarContext& ctx, const Embedding& emb);
VectorField twisted_normal_part(const StarContext& ctx, const Embedding& emb, const VectorField& X);
VectorField twisted_tangent_part(const StarContext& ctx, const Embedding& emb, const VectorField& X);
PForm twisted_normal_part(const StarContext& ctx, const Embedding& emb, const PForm& w);
PForm twisted_tangent_part(const StarContext& ctx, const Embedding& emb, const PForm& w);

// ---- tangent generators
struct TangentGenerators {
    std::vector<std::string> names;     // L12, L13, ... or L_1_2 past nine coordinates
    std::vector<VectorField> fields;
    std::vector<std::string> dependence;  // relations checked to vanish
    bool annihilate_f = false;
    bool dependence_ok = false;
    // Bracket table with constant coefficients; empty if it does not close.
    Generators algebra;
};
TangentGenerators tangent_generators(const LevelSetFamily& M);

// ---- relations of the (twisted) calculus, checked representationally
using RelationValue = std::variant<Function, VectorField, PForm>;
struct NamedRelation {
    std::string name;
    RelationValue value;  // must vanish
    bool modulo_ideal = true;
};

struct RelationResult {
    std::string name;
    bool holds = false;
    std::string residual;
};

struct RelationReport {
    long central_monomials = 0;
    long central_failures = 0;
    std::vector<RelationResult> relations;
    bool ok() const;
};

// Centrality of the f^a on monomials up to `max_degree`, the dependence
// relations f^a_[i * L_jk] = 0 (star products when ctx is given) and the
// caller's relations.
RelationReport verify_algebra_relations(const LevelSetFamily& M, const StarContext* ctx,
                                        const std::vector<NamedRelation>& extra = {}, int max_degree = 4);

}  // namespace twistfold
