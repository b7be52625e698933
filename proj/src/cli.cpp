#include "ncd/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ncd/equivalence.hpp"
#include "ncd/errors.hpp"
#include "ncd/fock.hpp"
#include "ncd/geometry.hpp"
#include "ncd/matrixlevel.hpp"
#include "ncd/symbol.hpp"

namespace ncd::cli {
namespace {

struct Options {
    int max_len = kDefaultMaxLength;
    double tol = kDefaultTolerance;
    double eps = kSupportEps;
    std::uint64_t seed = 0;
    bool json = false;
    std::optional<int> n;
    std::vector<std::string> files;
    std::vector<int> block;
    int levels = 1;
};

std::string read_file(const std::string &path)
{
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string &path)
{
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

FreePolynomial load_symbol(const Options &o, std::size_t index)
{
    const std::string &path = o.files.at(index);
    std::string text = read_file(path);
    try {
        if (o.json) {
            return symbol_from_json(nlohmann::json::parse(text));
        }
        return read_symbol(text, o.n);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

nlohmann::json header(const Options &o)
{
    return {{"max_len", o.max_len},
            {"tol", o.tol},
            {"eps", o.eps},
            {"perturbation", kProductPerturbation},
            {"seed", o.seed}};
}

void require_files(const Options &o, std::size_t count, const char *usage)
{
    if (o.files.size() != count) {
        throw InvalidInput(std::string("usage: ") + usage);
    }
}

nlohmann::json cmd_validate(const Options &o, int &exit_code)
{
    require_files(o, 1, "validate SYMBOL");
    FreePolynomial f = load_symbol(o, 0);
    ValidationReport r = validate_regular_positive(f);
    nlohmann::json issues = nlohmann::json::array();
    for (const auto &i : r.issues) {
        issues.push_back({{"clause", i.clause}, {"detail", i.detail}});
    }
    if (!r.ok()) {
        exit_code = kExitInvalid;
    }
    return {{"valid", r.ok()}, {"issues", issues}, {"growth_condition_vacuous", r.growth_condition_vacuous}};
}

nlohmann::json cmd_normalize(const Options &o)
{
    require_files(o, 1, "normalize SYMBOL");
    Normalization r = normalize_degree_one(load_symbol(o, 0));
    nlohmann::json lambda = nlohmann::json::array();
    for (const auto &l : r.lambda) {
        lambda.push_back(to_string(l));
    }
    return {{"symbol", to_json(r.symbol)}, {"text", to_text(r.symbol)}, {"lambda", lambda}};
}

nlohmann::json cmd_canon(const Options &o)
{
    require_files(o, 1, "canon SYMBOL");
    CanonicalForm c = canonical_form(load_symbol(o, 0));
    return {{"canonical", to_json(c.table)},
            {"text", to_text(c.table)},
            {"witness", c.witness()},
            {"certificate", to_json(c.to_canonical)}};
}

nlohmann::json cmd_classify(const Options &o)
{
    require_files(o, 2, "classify F G");
    FreePolynomial f = load_symbol(o, 0);
    FreePolynomial g = load_symbol(o, 1);
    auto cert = decide_equivalence(f, g);
    if (!cert) {
        return {{"equivalent", false}};
    }
    nlohmann::json out = to_json(*cert);
    out["equivalent"] = true;
    return out;
}

nlohmann::json cmd_spherical(const Options &o)
{
    require_files(o, 1, "spherical SYMBOL");
    return to_json(decide_spherical(load_symbol(o, 0), o.tol));
}

nlohmann::json cmd_weights(const Options &o)
{
    require_files(o, 1, "weights SYMBOL");
    FreePolynomial f = load_symbol(o, 0);
    require_regular_positive(f);
    return {{"weights", to_json(compute_weights(f, o.max_len))}};
}

nlohmann::json cmd_fock_verify(const Options &o)
{
    require_files(o, 1, "fock-verify SYMBOL");
    FreePolynomial f = load_symbol(o, 0);
    require_regular_positive(f);
    ShiftFamily family = build_shifts(f, o.max_len);
    ShiftMembershipReport m = verify_shift_membership(family, f, o.tol);

    // ||W_alpha||^2 = 1 / b_alpha, checked on words short enough to act nontrivially.
    double norm_defect = 0.0;
    for (const Word &w : words_up_to(f.n(), o.max_len - 1)) {
        if (w.empty()) {
            continue;
        }
        double norm = shift_norm(family, w);
        double b = family.weights.weight(w).get_d();
        norm_defect = std::max(norm_defect, std::abs(norm * norm - 1.0 / b));
    }

    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> gauss;
    double pythagoras = 0.0;
    for (int len = 1; len < o.max_len; ++len) {
        std::vector<Word> words = words_of_length(f.n(), len);
        std::vector<std::complex<double>> coeffs;
        for (std::size_t i = 0; i < words.size(); ++i) {
            coeffs.emplace_back(gauss(rng), gauss(rng));
        }
        pythagoras = std::max(pythagoras, pythagoras_residual(family, words, coeffs).residual);
    }
    bool pass = m.pass && norm_defect <= o.tol && pythagoras <= o.tol;
    return {{"max_eigenvalue", m.max_eigenvalue},
            {"dim", m.dim},
            {"membership", m.pass},
            {"norm_defect", norm_defect},
            {"pythagoras_residual", pythagoras},
            {"pass", pass}};
}

nlohmann::json cmd_support_partition(const Options &o)
{
    require_files(o, 1, "support-partition MATRIX");
    SupportPartition p = support_partition(matrix_from_json(read_json(o.files[0])), o.eps);
    return {{"sigma_blocks", p.sigma_blocks},
            {"psi_blocks", p.psi_blocks},
            {"eps", p.eps},
            {"unitarity_defect", p.unitarity_defect},
            {"unitary_certified", p.unitary_certified}};
}

nlohmann::json cmd_refute_product(const Options &o)
{
    require_files(o, 1, "refute-product SYMBOL [--block i,j,...]");
    FreePolynomial f = load_symbol(o, 0);
    require_regular_positive(f);
    if (!o.block.empty()) {
        return to_json(refute_product(f, o.block));
    }
    const int n = f.n();
    if (n < 2) {
        throw InvalidInput("refute-product needs at least two variables");
    }
    nlohmann::json witnesses = nlohmann::json::array();
    double min_value = std::numeric_limits<double>::infinity();
    // Each unordered split once: block A always contains variable 1.
    for (unsigned mask = 1; mask < (1u << n) - 1; mask += 2) {
        std::vector<int> a;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                a.push_back(i + 1);
            }
        }
        ProductRefutation r = refute_product(f, a);
        min_value = std::min(min_value, r.value);
        witnesses.push_back(to_json(r));
    }
    return {{"witnesses", witnesses}, {"min_value", min_value}, {"refuted", min_value > 1.0}};
}

nlohmann::json cmd_refute_thullen(const Options &o)
{
    require_files(o, 1, "refute-thullen SYMBOL");
    return to_json(refute_thullen(load_symbol(o, 0), o.tol));
}

nlohmann::json cmd_dual(const Options &o)
{
    require_files(o, 2, "dual MATRIX TUPLE");
    ComplexMatrix m = matrix_from_json(read_json(o.files[0]));
    MatrixTuple t = tuple_from_json(read_json(o.files[1]));
    return {{"tuple", to_json(dual_map_apply(m, t))}};
}

nlohmann::json cmd_cartan(const Options &o)
{
    require_files(o, 1, "cartan MAP [--levels K]");
    return to_json(cartan_forced_zeros(free_map_from_json(read_json(o.files[0])), o.levels, o.seed));
}

} // namespace

CommandResult run(const std::vector<std::string> &args)
{
    CommandResult result;
    Options o;
    CLI::App app{"Classify noncommutative domain algebras given by regular positive symbols", "ncd"};
    app.require_subcommand(1);
    app.add_option("--max-len", o.max_len, "Fock truncation length L")->check(CLI::Range(1, 64));
    app.add_option("--tol", o.tol, "decision tolerance")->check(CLI::PositiveNumber);
    app.add_option("--eps", o.eps, "support threshold")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for randomized checks");
    app.add_flag("--json", o.json, "parse symbol files as JSON");
    app.add_option("--n", o.n, "number of variables for text symbols")->check(CLI::PositiveNumber);
    app.fallthrough();

    const std::vector<std::pair<const char *, const char *>> commands = {
        {"validate", "report violated regular-positivity clauses"},
        {"normalize", "rescale so every degree-one coefficient is 1"},
        {"canon", "canonical form under permutation-rescaling"},
        {"classify", "decide equivalence of two symbols"},
        {"spherical", "decide whether the scalar domain is a ball"},
        {"weights", "Fock-space weights b_alpha up to --max-len"},
        {"fock-verify", "check the weighted shifts against the symbol"},
        {"support-partition", "support partition of a unitary matrix"},
        {"refute-product", "witness that the domain is not a product"},
        {"refute-thullen", "evidence that the domain is not a Thullen domain"},
        {"dual", "apply a matrix to a tuple"},
        {"cartan", "coefficients forced to vanish by linearity"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("files", o.files, "input files ('-' for stdin)");
        if (std::string(name) == "refute-product") {
            sub->add_option("--block", o.block, "variables of block A")->delimiter(',');
        }
        if (std::string(name) == "cartan") {
            sub->add_option("--levels", o.levels, "matrix levels k = 1..K")->check(CLI::PositiveNumber);
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        result.text = app.help();
        return result;
    } catch (const CLI::ParseError &e) {
        result.exit_code = kExitInvalid;
        result.diagnostics = e.what();
        result.payload = {{"error", e.what()}};
        return result;
    }

    CLI::App *sub = app.get_subcommands().front();
    result.command = sub->get_name();
    const std::string &cmd = result.command;
    try {
        nlohmann::json payload;
        int exit_code = kExitDecision;
        if (cmd == "validate") {
            payload = cmd_validate(o, exit_code);
        } else if (cmd == "normalize") {
            payload = cmd_normalize(o);
        } else if (cmd == "canon") {
            payload = cmd_canon(o);
        } else if (cmd == "classify") {
            payload = cmd_classify(o);
        } else if (cmd == "spherical") {
            payload = cmd_spherical(o);
        } else if (cmd == "weights") {
            payload = cmd_weights(o);
        } else if (cmd == "fock-verify") {
            payload = cmd_fock_verify(o);
        } else if (cmd == "support-partition") {
            payload = cmd_support_partition(o);
        } else if (cmd == "refute-product") {
            payload = cmd_refute_product(o);
        } else if (cmd == "refute-thullen") {
            payload = cmd_refute_thullen(o);
        } else if (cmd == "dual") {
            payload = cmd_dual(o);
        } else if (cmd == "cartan") {
            payload = cmd_cartan(o);
        }
        payload["header"] = header(o);
        result.payload = std::move(payload);
        result.exit_code = exit_code;
    } catch (const ParseError &e) {
        result.exit_code = kExitInvalid;
        result.diagnostics = e.what();
        result.payload = {{"error", e.what()}, {"position", e.position()}};
    } catch (const InvalidInput &e) {
        result.exit_code = kExitInvalid;
        result.diagnostics = e.what();
        result.payload = {{"error", e.what()}};
    } catch (const nlohmann::json::exception &e) {
        result.exit_code = kExitInvalid;
        result.diagnostics = e.what();
        result.payload = {{"error", e.what()}};
    } catch (const std::exception &e) {
        result.exit_code = kExitInternal;
        result.diagnostics = e.what();
        result.payload = {{"error", e.what()}};
    }
    return result;
}

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    CommandResult r = run(args);
    if (!r.text.empty()) {
        std::cout << r.text;
    } else {
        std::cout << r.payload.dump() << '\n';
    }
    if (!r.diagnostics.empty()) {
        std::cerr << "ncd: " << r.diagnostics << '\n';
    }
    return r.exit_code;
}

} // namespace ncd::cli
