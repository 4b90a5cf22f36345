#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/errors.hpp"
#include "heis/functor.hpp"
#include "heis/normalform.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

struct Options {
    std::string term;
    std::string input;
    std::string format = "text";
    int charge = -1;
    int max_dots = -1;
    std::string f = "u";
    std::string fprime = "1";
    int order = 8;
    int nmax = 2;
    std::uint64_t seed = 1;
    int count = 200;
    std::string suite;
    std::string source, target;
    std::vector<std::string> pool;
};

std::string read_term(const Options& o) {
    if (o.input.empty()) return o.term;
    std::ifstream in(o.input);
    if (!in) throw std::invalid_argument("cannot read " + o.input);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CyclotomicData cyclotomic(const std::string& text) {
    Poly p = Poly::parse(text);
    if (!p.is_monic() || p.degree() < 1) throw std::invalid_argument("f must be monic of positive degree: " + text);
    return CyclotomicData(p);
}

std::vector<CyclotomicData> pool_of(const Options& o) {
    std::vector<CyclotomicData> out;
    for (const auto& s : o.pool) out.push_back(cyclotomic(s));
    return out;
}

int cmd_normalize(const Options& o) {
    CategoryParams p;
    p.k = o.charge;
    if (o.max_dots >= 0) p.max_dots = o.max_dots;
    NormalMorphism m = normalize(parse_term(read_term(o)), p);
    std::cout << (o.format == "json" ? to_json(m) : m.str()) << "\n";
    return 0;
}

int cmd_eval(const Options& o) {
    LinMap m = eval_term(parse_term(read_term(o)), cyclotomic(o.f));
    if (o.format == "json") {
        nlohmann::json j{{"domain", word_str(m.domain)},
                         {"codomain", word_str(m.codomain)},
                         {"matrix", nlohmann::json::parse(m.matrix.to_json())}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << m.matrix.rows() << "x" << m.matrix.cols() << " " << m.matrix.str() << "\n";
    }
    return 0;
}

int cmd_series(const Options& o) {
    DeltaSeries d = delta_series(Poly::parse(o.f), Poly::parse(o.fprime), o.order);
    if (o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : d.c) j.push_back(to_string(c));
        std::cout << j.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < d.c.size(); ++i) std::cout << (i ? ", " : "") << to_string(d.c[i]);
        std::cout << "\n";
    }
    return 0;
}

int cmd_basis(const Options& o) {
    ObjectWord x = parse_word(o.source), y = parse_word(o.target);
    std::vector<NormalDiagram> basis = enumerate_basis(x, y, std::max(o.max_dots, 0));
    if (o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& d : basis) {
            nlohmann::json pairs = nlohmann::json::array();
            for (auto [a, b] : d.matching.pairs) pairs.push_back({a, b});
            j.push_back({{"pairs", pairs}, {"dots", d.dots}});
        }
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (const auto& d : basis) {
        NormalMorphism m(x, y);
        m.add(d, SymPoly(1));
        std::cout << m.str() << "\n";
    }
    std::cout << basis.size() << " elements, " << enumerate_matchings(x, y).size() << " matchings\n";
    return 0;
}

int cmd_check(const Options& o) {
    CheckReport rep;
    FuzzCaps caps;
    if (o.suite == "defining") {
        rep = check_defining(cyclotomic(o.f), o.nmax);
    } else if (o.suite == "derived") {
        rep = check_derived(cyclotomic(o.f), o.nmax);
    } else if (o.suite == "khovanov") {
        rep = check_khovanov();
    } else if (o.suite == "fuzz") {
        rep = fuzz_normalizer(o.seed, o.count, caps, pool_of(o));
    } else if (o.suite == "omega") {
        rep = omega_transport(o.seed, o.count, caps, o.charge);
    } else if (o.suite == "independence") {
        rep = check_independence(parse_word(o.source), parse_word(o.target), o.max_dots < 0 ? 1 : o.max_dots, pool_of(o));
    } else {
        std::cerr << "unknown suite: " << o.suite << "\n";
        return 2;
    }
    std::cout << (o.format == "json" ? rep.to_json() + "\n" : rep.str());
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms and cyclotomic evaluation for the Heisenberg category"};
    app.require_subcommand(1, 1);
    Options o;
    auto format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };

    auto* norm = app.add_subcommand("normalize", "Normal form of a diagram term");
    norm->add_option("term", o.term, "Diagram term");
    norm->add_option("-i,--input", o.input, "Read the term from a file");
    norm->add_option("-k,--charge", o.charge, "Central charge");
    norm->add_option("--max-dots", o.max_dots, "Cap on dots per strand");
    format(norm);

    auto* ev = app.add_subcommand("eval", "Matrix of a term under the cyclotomic functor");
    ev->add_option("term", o.term, "Diagram term");
    ev->add_option("-i,--input", o.input, "Read the term from a file");
    ev->add_option("--f", o.f, "Monic polynomial in u");
    format(ev);

    auto* ck = app.add_subcommand("check", "Run a verification suite");
    ck->add_option("suite", o.suite, "defining, derived, khovanov, fuzz, omega or independence")->required();
    ck->add_option("--f", o.f, "Monic polynomial in u");
    ck->add_option("--nmax", o.nmax, "Most up strands in a matrix check");
    ck->add_option("--seed", o.seed, "Random seed");
    ck->add_option("--count", o.count, "Number of random terms");
    ck->add_option("-k,--charge", o.charge, "Central charge (omega)");
    ck->add_option("--max-dots", o.max_dots, "Dots per strand (independence)");
    ck->add_option("--source", o.source, "Source word (independence)");
    ck->add_option("--target", o.target, "Target word (independence)");
    ck->add_option("--pool", o.pool, "Polynomials for fuzz and independence");
    format(ck);

    auto* se = app.add_subcommand("series", "Coefficients of u^-k f'(u)/f(u)");
    se->add_option("--f", o.f, "Denominator");
    se->add_option("--fprime", o.fprime, "Numerator");
    se->add_option("--order", o.order, "Highest coefficient");
    format(se);

    auto* ba = app.add_subcommand("basis", "Truncated normal-form basis of Hom(X, Y)");
    ba->add_option("source", o.source, "Source word")->required();
    ba->add_option("target", o.target, "Target word")->required();
    ba->add_option("--max-dots", o.max_dots, "Dots per strand");
    format(ba);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (o.pool.empty()) o.pool = {"u", "u+1", "u^2", "u^2+u"};

    try {
        if (norm->parsed()) return cmd_normalize(o);
        if (ev->parsed()) return cmd_eval(o);
        if (ck->parsed()) return cmd_check(o);
        if (se->parsed()) return cmd_series(o);
        return cmd_basis(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const TypeError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
