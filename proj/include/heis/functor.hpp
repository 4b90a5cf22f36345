#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "heis/diagram.hpp"
#include "heis/hecke.hpp"
#include "heis/matrix.hpp"
#include "heis/symfunc.hpp"

namespace heis {

class NormalMorphism;

/// Psi_f(X) evaluated at the trivial H_0^f-module.
struct ModuleSpace {
    ObjectWord word;
    int dim = 0;
    /// Per basis vector, the (a, j) label of every up step, leftmost letter first.
    std::vector<std::vector<std::pair<int, int>>> labels;
};

struct LinMap {
    ObjectWord domain;
    ObjectWord codomain;
    Matrix matrix;
};

/// Exact matrices of Psi_f for one cyclotomic datum, with all intermediate data cached.
class Functor {
public:
    explicit Functor(CyclotomicData c);

    const CyclotomicData& data() const { return c_; }
    int dim(const ObjectWord& w);
    ModuleSpace space(const ObjectWord& w);

    /// Full matrix of one slice acting on the word `source`.
    Matrix slice_matrix(const Slice& s, const ObjectWord& source);
    Matrix eval(const DiagramTerm& t);
    Matrix eval_morphism(const NormalMorphism& m);
    Rational scalar(const SymPoly& p);

    /// [t, c, x c, ..., x^{l-1} c] over the module of `base`, and its inverse.
    Matrix mackey_map(const ObjectWord& base);
    Matrix mackey_inverse(const ObjectWord& base);

    /// Induction basis element s_j s_{j+1} ... s_m x_{m+1}^a of H_{m+1}.
    HeckeElem induction_basis(int m, int a, int j);
    /// Writes h in H_{m+1}^f as sum_{a,j} b_{a,j} h_{a,j}; result indexed by a(m+1) + j - 1.
    std::vector<HeckeElem> decompose(const HeckeElem& h, int m);
    /// Rank of the products b_{a,j} x^e w over all labels, which must equal dim H_{m+1}^f.
    int induction_rank(int m);

    /// Negates the s_1 generator matrix of the module of `word` (harness self-test only).
    void corrupt_for_testing(const ObjectWord& word);

private:
    struct Module {
        int level = 0;
        int dim = 0;
        std::vector<Matrix> x;  // x_1 .. x_level
        std::vector<Matrix> s;  // s_1 .. s_{level-1}
        std::map<PBWKey, Matrix> rho;
    };

    Module& module(const ObjectWord& w);
    Matrix rho(Module& m, const HeckeElem& h);
    Matrix rho_mono(Module& m, const PBWKey& k);
    Matrix local(const Slice& s, const ObjectWord& base);
    Matrix local_uncached(const Slice& s, const ObjectWord& base);
    Matrix eval_over(const DiagramTerm& t, const ObjectWord& base);
    int labels_of(const ObjectWord& prefix, int level);
    const HeckeElem& reduced_product(int m, int label, const PBWKey& k);
    const DeltaSeries& delta(int order);

    CyclotomicData c_;
    std::recursive_mutex mu_;
    std::map<ObjectWord, std::unique_ptr<Module>> modules_;
    std::map<std::pair<std::string, ObjectWord>, Matrix> locals_;
    std::map<ObjectWord, Matrix> mackey_inv_;
    std::map<std::tuple<int, int, int>, HeckeElem> bases_;
    std::map<std::tuple<int, int, PBWKey>, HeckeElem> products_;
    std::map<int, int> ranks_;
    DeltaSeries delta_;
};

/// Shared evaluator for the datum (cached by polynomial).
std::shared_ptr<Functor> functor_for(const CyclotomicData& c);

ModuleSpace build_space(const ObjectWord& x, const CyclotomicData& c);
LinMap gen_matrix(const Slice& s, const ObjectWord& source, const CyclotomicData& c);
/// Mackey map over H_n^f (the module of up^n) and its inverse.
LinMap mackey_map(int n, const CyclotomicData& c);
LinMap mackey_inverse(int n, const CyclotomicData& c);
LinMap eval_term(const DiagramTerm& t, const CyclotomicData& c);
LinMap eval_morphism(const NormalMorphism& m, const CyclotomicData& c);

/// Diagram of a PBW monomial x^a w in End(up^n), generators stacked bottom to top in product order.
DiagramTerm phi_n(const PBWKey& k);
/// Reads an endomorphism of up^n back as the element theta(1) of H_n^f.
HeckeElem psi_n(const Matrix& m, int n, const CyclotomicData& c);

}  // namespace heis
