#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "heis/diagram.hpp"
#include "heis/functor.hpp"
#include "heis/hecke.hpp"
#include "heis/normalform.hpp"

namespace heis {

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct CheckReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::vector<CaseResult> cases;

    bool ok() const;
    int failures() const;
    void add(std::string name, bool pass, std::string witness = {});
    /// {suite, params, seed, cases: [{name, status, witness?}]}.
    std::string to_json() const;
    std::string str() const;
};

CheckReport check_defining(const CyclotomicData& c, int nmax);
CheckReport check_derived(const CyclotomicData& c, int nmax);
CheckReport check_khovanov();
CheckReport check_independence(const ObjectWord& x, const ObjectWord& y, int max_dots,
                               const std::vector<CyclotomicData>& pool);

struct FuzzCaps {
    int max_crossings = 4;
    int max_dots = 3;
    int max_width = 4;
    int max_slices = 10;
};

/// A random well-typed term within the caps.
DiagramTerm random_term(std::mt19937_64& rng, const FuzzCaps& caps);

CheckReport fuzz_normalizer(std::uint64_t seed, int count, const FuzzCaps& caps,
                            const std::vector<CyclotomicData>& pool);

/// Linear combination of diagrams with coefficients in the rightmost region.
using TermSum = std::vector<std::pair<SymPoly, DiagramTerm>>;

struct Relation {
    std::string name;
    TermSum lhs;
    TermSum rhs;
};

/// Hecke, right adjunction and the Mackey isomorphism, checked as matrices.
CheckReport check_defining(Functor& f, int nmax);
/// The derived relations in charge k, each with both sides spelled out.
std::vector<Relation> derived_relations(int k);
/// The extra relations of Khovanov's presentation (charge -1).
std::vector<Relation> khovanov_relations();

/// Compares normal forms of two sides; empty string when equal, else both values.
std::string compare_sides(const TermSum& lhs, const TermSum& rhs, const CategoryParams& p);

/// normalize(omega(t)) in charge -k against the reflected normal form of t.
CheckReport omega_transport(std::uint64_t seed, int count, const FuzzCaps& caps, int k);

}  // namespace heis
