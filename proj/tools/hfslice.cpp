// hfslice: command-line front end for the complexes, the surgery pipeline and the obstruction.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "hfslice/models.hpp"
#include "hfslice/obstruction.hpp"
#include "hfslice/refilter.hpp"
#include "hfslice/surgery.hpp"

using namespace hfs;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string out;
    std::string format = "json";
    int jobs = 1;
    std::string policy = "literal";
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    fs::path p = o.out;
    if (p.is_relative())
        if (const char* dir = std::getenv("HFSLICE_OUT_DIR"); dir && *dir) p = fs::path(dir) / p;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

ModelPolicy model_policy(const std::string& s) {
    if (s == "literal") return ModelPolicy::Literal;
    if (s == "drop-acyclic") return ModelPolicy::DropAcyclic;
    throw std::invalid_argument("unknown policy '" + s + "'");
}

ChainPolicy chain_policy(const std::string& s) {
    if (s == "auto") return ChainPolicy::Auto;
    if (s == "literal") return ChainPolicy::Literal;
    if (s == "essential") return ChainPolicy::Essential;
    throw std::invalid_argument("unknown chain policy '" + s + "'");
}

// A JSON file (or "-" for stdin) if one exists under that name, otherwise a knot expression.
Complex load(const std::string& arg, const Options& o) {
    auto parse = [](std::istream& in, const std::string& name) {
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw std::invalid_argument(name + ": " + e.what());
        }
        Complex C = complex_from_json(j);
        require_valid(C);
        return C;
    };
    if (arg == "-") return parse(std::cin, "stdin");
    std::error_code ec;
    if (fs::is_regular_file(arg, ec)) {
        std::ifstream f(arg);
        return parse(f, arg);
    }
    return build_model(arg, model_policy(o.policy));
}

std::string dump(const Complex& C, const Options& o) {
    return o.format == "table" ? text_diagram(C) : to_json(C).dump(2);
}

std::string join(const std::vector<u64>& v) {
    std::ostringstream os;
    for (std::size_t r = 0; r < v.size(); ++r) os << (r ? " " : "") << v[r];
    return os.str();
}

std::string factor_text(const std::vector<std::pair<u64, int>>& f) {
    std::ostringstream os;
    for (std::size_t r = 0; r < f.size(); ++r) {
        os << (r ? "*" : "") << f[r].first;
        if (f[r].second > 1) os << "^" << f[r].second;
    }
    return os.str();
}

json table(int max_n, int jobs) {
    std::vector<int> ns;
    for (int n = 2; n <= max_n; ++n)
        if (admissible(static_cast<u64>(n)).admissible) ns.push_back(n);
    std::vector<json> rows(ns.size());
    std::vector<std::exception_ptr> errs(std::max(1, jobs));
    std::vector<std::thread> pool;
    for (int w = 0; w < std::max(1, jobs); ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t r = w; r < ns.size(); r += std::max(1, jobs)) rows[r] = to_json(choose_kn(ns[r]));
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return {{"max_n", max_n}, {"rows", rows}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knot Floer complexes, surgery d-invariants and the branched-cover slice obstruction"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("-o,--output", o.out, "write to this file (relative paths go under $HFSLICE_OUT_DIR)");
    app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--jobs", o.jobs, "worker threads for per-label and per-n loops")->check(CLI::PositiveNumber);
    app.add_option("--policy", o.policy, "model policy: literal or drop-acyclic")
        ->check(CLI::IsMember({"literal", "drop-acyclic"}));

    std::function<std::string()> action;

    // complex
    auto* cx = app.add_subcommand("complex", "build and inspect complexes");
    cx->require_subcommand(1);
    std::string a1, a2;
    int j0 = 0;
    bool all_j = true;
    auto* c_build = cx->add_subcommand("build", "model of a knot expression, e.g. \"m(2*D)#T(2,5)\"");
    c_build->add_option("expr", a1)->required();
    c_build->callback([&] { action = [&] { return dump(build_model(a1, model_policy(o.policy)), o); }; });
    auto* c_show = cx->add_subcommand("show", "canonical form (json) or grid (table)");
    c_show->add_option("input", a1)->required();
    c_show->callback([&] {
        action = [&] {
            Complex C = load(a1, o);
            return o.format == "table" ? text_diagram(C) : canonical_form(C);
        };
    });
    auto* c_tensor = cx->add_subcommand("tensor", "tensor product of two inputs");
    c_tensor->add_option("a", a1)->required();
    c_tensor->add_option("b", a2)->required();
    c_tensor->callback([&] { action = [&] { return dump(tensor(load(a1, o), load(a2, o)), o); }; });
    auto* c_dual = cx->add_subcommand("dual", "dual complex (mirror)");
    c_dual->add_option("input", a1)->required();
    c_dual->callback([&] { action = [&] { return dump(dualize(load(a1, o)), o); }; });
    auto* c_reduce = cx->add_subcommand("reduce", "cancel all filtration-preserving isomorphisms");
    c_reduce->add_option("input", a1)->required();
    c_reduce->callback([&] { action = [&] { return dump(reduce(load(a1, o)), o); }; });
    auto* c_width = cx->add_subcommand("width", "max(i-j) - min(i-j) + 1");
    c_width->add_option("input", a1)->required();
    c_width->callback([&] { action = [&] { return std::to_string(width(load(a1, o))); }; });
    auto* c_slices = cx->add_subcommand("slices", "graded ranks of the hat theory per Alexander level");
    c_slices->add_option("input", a1)->required();
    c_slices->add_option("--j", j0, "single Alexander level")->each([&](const std::string&) { all_j = false; });
    c_slices->callback([&] {
        action = [&] {
            Complex C = load(a1, o);
            std::vector<int> levels;
            if (!all_j) {
                levels.push_back(j0);
            } else {
                std::set<int> js;
                for (auto& g : rebase(C).gens) js.insert(g.j);
                levels.assign(js.rbegin(), js.rend());
            }
            json out = json::array();
            std::ostringstream os;
            for (int j : levels) {
                auto h = slice_homology(C, j);
                json row = {{"j", j}, {"ranks", json::object()}};
                os << "j=" << j << ":";
                for (auto& [g, r] : h) {
                    row["ranks"][std::to_string(g)] = r;
                    os << " " << r << "@" << g;
                }
                os << "\n";
                out.push_back(row);
            }
            return o.format == "table" ? os.str() : out.dump(2);
        };
    });
    auto* c_canon = cx->add_subcommand("canon", "canonical form");
    c_canon->add_option("input", a1)->required();
    c_canon->callback([&] { action = [&] { return canonical_form(load(a1, o)); }; });

    // refilter
    auto* rf = app.add_subcommand("refilter", "complex of the meridian in -N surgery, at label m");
    int N = 0, m = 0, ext = 0;
    bool norm = false;
    rf->add_option("expr", a1)->required();
    rf->add_option("N", N)->required();
    rf->add_option("m", m)->required();
    rf->add_flag("--normalize", norm, "translate the essential generator to i = 0");
    rf->add_option("--extend", ext, "label m + tN: lower j by t");
    rf->callback([&] {
        action = [&] {
            Complex C = extend_spinc(refilter(load(a1, o), N, m), ext);
            if (norm) C = normalize(C);
            if (o.format == "table") {
                auto e = essential_position(C);
                return text_diagram(C) + "essential generator at (" + std::to_string(e.i) + "," +
                       std::to_string(e.j) + "), grading parity " + std::to_string(e.grading) + "\n";
            }
            return to_json(C).dump(2);
        };
    });

    // ddiff
    auto* dd = app.add_subcommand("ddiff", "d(M(K_{D_k,n}), s_n) - d(M(K_{U,n}), s_n)");
    int n = 0, k = 0;
    std::string cpol = "auto";
    bool report = false;
    dd->add_option("n", n)->required();
    dd->add_option("k", k)->required();
    dd->add_option("--chain", cpol, "auto, literal or essential")->check(CLI::IsMember({"auto", "literal", "essential"}));
    dd->add_flag("--report", report, "full JSON report instead of the bare integer");
    dd->callback([&] {
        action = [&] {
            auto r = branched_cover_report(n, k, chain_policy(cpol));
            if (report) {
                json j = {{"n", r.n},
                          {"k", r.k},
                          {"diff", r.diff},
                          {"top", {{"D", r.d_chain.top.d}, {"U", r.u_chain.top.d}}},
                          {"base", {{"D", r.d_base.d}, {"U", r.u_base.d}}},
                          {"tag", to_json(r.d_chain.top.tag)},
                          {"survivor", {{"l", r.d_chain.survivor.l}, {"j", r.d_chain.survivor.j}}}};
                return j.dump(2);
            }
            return std::to_string(r.diff);
        };
    });

    // obstruct
    auto* ob = app.add_subcommand("obstruct", "arithmetic side of the slice obstruction");
    ob->require_subcommand(1);
    int count = 3, max_n = 30;
    long NN = 0, alpha = 1;
    bool brute = false;
    auto* o_sieve = ob->add_subcommand("sieve", "pairwise-coprime admissible family starting at n=2");
    o_sieve->add_option("--count", count)->check(CLI::PositiveNumber);
    o_sieve->callback([&] {
        action = [&] {
            auto fam = sieve_family(count);
            if (!fam.warning.empty()) std::cerr << "warning: " << fam.warning << "\n";
            if (o.format == "table") {
                std::ostringstream os;
                for (auto& s : fam.members) os << "n=" << s.n << " 4n^2+1=" << s.value << " = " << factor_text(s.factors) << "\n";
                return os.str();
            }
            json j = json::array();
            for (auto& s : fam.members) j.push_back(to_json(s));
            return json{{"members", j}, {"warning", fam.warning}}.dump(2);
        };
    });
    auto* o_roots = ob->add_subcommand("roots", "b with b^2 = -1 mod N");
    o_roots->add_option("N", NN)->required();
    o_roots->callback([&] { action = [&] { return join(sqrt_minus_one(static_cast<u64>(NN))); }; });
    auto* o_met = ob->add_subcommand("metabolizers", "metabolizers of the doubled form on Z_N^2");
    o_met->add_option("N", NN)->required();
    o_met->add_option("--alpha", alpha, "linking form x*alpha*y");
    o_met->add_flag("--brute", brute, "enumerate all order-N subgroups instead of classifying");
    o_met->callback([&] {
        action = [&] {
            auto ms = brute ? brute_force_metabolizers({NN, alpha}) : metabolizers(NN);
            std::ostringstream os;
            for (auto& M : ms) os << "<(" << M.a << "," << M.b << "), (0," << M.d << ")>\n";
            return os.str();
        };
    });
    auto* o_kn = ob->add_subcommand("choose-kn", "S_b and the least k it obstructs");
    o_kn->add_option("n", n)->required();
    o_kn->callback([&] { action = [&] { return to_json(choose_kn(n, o.jobs)).dump(2); }; });
    auto* o_tab = ob->add_subcommand("table", "k_n table for admissible n <= max-n");
    o_tab->add_option("--max-n", max_n)->check(CLI::Range(2, 200));
    o_tab->callback([&] { action = [&] { return table(max_n, o.jobs).dump(2); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        emit(o, action());
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
