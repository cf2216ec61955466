#include "scx/defect.hpp"
#include "scx/graph.hpp"
#include "scx/hodge.hpp"
#include "scx/io.hpp"
#include "scx/kernels.hpp"
#include "scx/links.hpp"
#include "scx/recurrence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

struct Common {
    std::uint64_t seed = 1;
    int threads = 0;
    bool deterministic = false;
    bool strict = false;
    double rtol = 1e-12;
    std::string out;
    std::string csv;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "random seed, echoed in the report");
    sub->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    sub->add_flag("--deterministic", c.deterministic,
                  "single thread, scalar kernels, ordered reductions");
    sub->add_option("--rtol", c.rtol, "solver relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("-o,--out", c.out, "output file (default stdout)");
    sub->add_option("--csv", c.csv, "also write the series as CSV here");
}

ordered_json config_echo(const std::string& command, const Common& c) {
    ordered_json j;
    j["command"] = command;
    j["seed"] = c.seed;
    j["threads"] = c.deterministic ? 1 : c.threads;
    j["deterministic"] = c.deterministic;
    j["rtol"] = c.rtol;
    return j;
}

void apply_mode(const Common& c) {
    if (c.deterministic) scx::kern::force_scalar(true);
}

void emit(const Common& c, const ordered_json& j) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(c.out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + c.out);
        os << text;
    }
}

void emit_csv(const std::string& path, const std::string& header,
              const std::vector<std::string>& rows) {
    if (path.empty()) return;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << header << "\n";
    for (const auto& r : rows) os << r << "\n";
}

scx::Simplex parse_simplex(const std::string& text) {
    if (text.empty() || text == "empty" || text == "{}") return scx::Simplex{};
    scx::Simplex s;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) s = s.with_vertex(std::stoll(tok));
    return s;
}

scx::Simplex parse_rho(const std::string& text, const std::optional<scx::ComplexGenerator>& gen) {
    if (text == "apex") {
        if (!gen) throw std::runtime_error("--rho apex needs --family");
        return gen->base_point();
    }
    return parse_simplex(text);
}

std::vector<int> parse_levels(const std::string& text, int cap) {
    std::vector<int> out;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    } else {
        int top = std::min(std::stoi(text), cap);
        for (int n = 2; n <= top; ++n) out.push_back(n);
        if (out.empty()) out.push_back(top);
    }
    return out;
}

ordered_json classification_json(const scx::ClassificationReport& rep) {
    ordered_json j;
    j["exhaustion"] = rep.exhaustion;
    j["levels"] = rep.levels;
    j["overall"] = scx::to_string(rep.overall());
    ordered_json comps = ordered_json::array();
    for (const auto& c : rep.components) {
        ordered_json cj;
        cj["component"] = c.component;
        cj["vertices"] = c.vertices;
        cj["verdict"] = scx::to_string(c.verdict);
        cj["reason"] = c.reason;
        ordered_json prof = ordered_json::array();
        for (const auto& p : c.profile)
            prof.push_back({{"level", p.level},
                            {"vertices", p.vertices},
                            {"resistance", p.resistance},
                            {"capacity", p.capacity},
                            {"closed", p.closed}});
        cj["profile"] = prof;
        comps.push_back(cj);
    }
    j["components"] = comps;
    return j;
}

int exit_for(scx::Verdict v, const Common& c) {
    return c.strict && v == scx::Verdict::Undetermined ? 2 : 0;
}

struct Source {
    std::string family;
    std::string input;
    int level = 4;
    bool include_empty = false;

    void add_flags(CLI::App* sub, bool with_level = true) {
        sub->add_option("--family", family, "generator family, e.g. cone_over_tree(2)");
        sub->add_option("-i,--input", input, "wsc-v1 complex file");
        if (with_level) sub->add_option("--level", level, "truncation level for --family");
        sub->add_flag("--include-empty", include_empty, "include the empty simplex (mass 1)");
    }

    std::optional<scx::ComplexGenerator> generator() const {
        if (family.empty()) return std::nullopt;
        scx::ComplexGenerator g = scx::ComplexGenerator::parse(family);
        return include_empty ? g.with_empty() : g;
    }

    scx::WeightedComplex complex() const {
        if (!family.empty()) return generator()->truncation(level);
        if (!input.empty()) return scx::read_wsc_file(input);
        throw std::runtime_error("need --family or --input");
    }

    void echo(ordered_json& j) const {
        if (!family.empty()) {
            j["family"] = family;
            j["level"] = level;
            j["include_empty"] = include_empty;
        }
        if (!input.empty()) j["input"] = input;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted simplicial complexes: boundary operators, links, recurrence, "
                 "Hodge theory"};
    app.require_subcommand(1);

    Common c;
    Source src;
    std::string rho_text = "apex";
    std::string sigma_text;
    std::string levels_text = "12";
    std::string graph_text;
    std::string export_prefix;
    std::string tag_text = "hodge";
    std::string method_text = "auto";
    int degree = 0;
    std::size_t count = 0;
    int trials = 100;
    int from_index = 15, to_index = 20;
    int walk_dim = 3;
    scx::WalkConfig wcfg;
    scx::ClassifyPolicy pol;

    CLI::App* gen = app.add_subcommand("gen", "generate a complex and write wsc-v1");
    src.add_flags(gen);
    add_common(gen, c);

    CLI::App* validate = app.add_subcommand("validate", "check a wsc-v1 file");
    std::string validate_path;
    validate->add_option("file", validate_path, "wsc-v1 file")->required();
    add_common(validate, c);

    CLI::App* links = app.add_subcommand("links", "link graph and localization identities");
    src.add_flags(links);
    links->add_option("--rho", rho_text, "simplex: apex, empty, or comma list");
    links->add_option("--trials", trials, "randomized localization trials");
    add_common(links, c);

    CLI::App* classify = app.add_subcommand("classify-link", "recurrence/transience verdict");
    src.add_flags(classify, false);
    classify->add_option("--rho", rho_text, "simplex: apex, empty, or comma list");
    classify->add_option("--levels", levels_text, "top level or comma list");
    classify->add_option("--graph", graph_text, "direct graph exhaustion, e.g. z_lattice(3)");
    classify->add_flag("--strict", c.strict, "exit 2 on Undetermined");
    classify->add_option("--eps", pol.stabilization_eps, "resistance stabilization threshold");
    classify->add_option("--window", pol.stabilization_window, "stabilization window");
    classify->add_option("--cap-threshold", pol.capacity_threshold, "recurrent capacity cut");
    add_common(classify, c);

    CLI::App* defect = app.add_subcommand("defect", "del del defect at rho with witness");
    src.add_flags(defect, false);
    defect->add_option("--rho", rho_text, "simplex: apex, empty, or comma list");
    defect->add_option("--levels", levels_text, "top level or comma list");
    defect->add_flag("--strict", c.strict, "exit 2 on Undetermined");
    add_common(defect, c);

    CLI::App* tprime = app.add_subcommand("tprime", "minimal-norm solutions of del omega = 1_sigma");
    src.add_flags(tprime);
    tprime->add_option("--sigma", sigma_text, "target simplex (complex mode)");
    tprime->add_option("--from", from_index, "first sweep index (family mode)");
    tprime->add_option("--to", to_index, "last sweep index (family mode)");
    add_common(tprime, c);

    CLI::App* hodge = app.add_subcommand("hodge", "Betti numbers and Hodge decomposition");
    src.add_flags(hodge);
    hodge->add_option("--degree", degree, "decomposition degree");
    hodge->add_option("--rho", sigma_text, "harmonic eigenform check at this simplex");
    hodge->add_option("--export-operators", export_prefix, "write D/B matrices with this prefix");
    add_common(hodge, c);

    CLI::App* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues");
    src.add_flags(spectrum);
    spectrum->add_option("--tag", tag_text, "up, down or hodge");
    spectrum->add_option("--degree", degree, "degree k");
    spectrum->add_option("--count", count, "how many eigenvalues (0 = all, dense only)");
    spectrum->add_option("--method", method_text, "auto, dense or lanczos");
    add_common(spectrum, c);

    CLI::App* walk = app.add_subcommand("walk", "Monte Carlo return probability on Z^d");
    walk->add_option("--dim", walk_dim, "lattice dimension");
    walk->add_option("--walks", wcfg.walks, "number of walks");
    walk->add_option("--escape", wcfg.escape_radius, "sup-norm escape radius");
    walk->add_option("--max-steps", wcfg.max_steps, "step cap per walk");
    add_common(walk, c);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_mode(c);
        pol.solver_rtol = c.rtol;
        if (c.deterministic) c.threads = 1;

        if (*gen) {
            scx::WeightedComplex cx = src.complex();
            if (c.out.empty())
                scx::write_wsc(std::cout, cx);
            else
                scx::write_wsc_file(c.out, cx);
            return 0;
        }

        if (*validate) {
            scx::WeightedComplex cx = scx::read_wsc_file(validate_path);
            cx.validate();
            ordered_json j = config_echo("validate", c);
            j["file"] = validate_path;
            j["simplices"] = cx.total_size();
            j["dimension"] = cx.max_degree();
            j["include_empty"] = cx.include_empty();
            j["valid"] = true;
            emit(c, j);
            return 0;
        }

        if (*links) {
            auto g = src.generator();
            scx::WeightedComplex cx = src.complex();
            scx::Simplex rho = parse_rho(rho_text, g);
            scx::LinkGraph lk = scx::link_of(cx, rho);
            scx::SplitMix64 rng{c.seed};
            scx::LocalizationReport rep = scx::verify_localization(cx, rho, rng, trials);
            ordered_json j = config_echo("links", c);
            src.echo(j);
            j["rho"] = rho.str();
            j["link"] = scx::link_to_json(lk);
            std::vector<int> comp = scx::link_components(lk);
            j["components"] = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
            j["localization"] = {{"trials", rep.trials},
                                 {"flux", rep.flux},
                                 {"adjoint", rep.adjoint},
                                 {"isometry", rep.isometry},
                                 {"energy", rep.energy},
                                 {"conjugation", rep.conjugation},
                                 {"worst", rep.worst()}};
            emit(c, j);
            return 0;
        }

        if (*classify) {
            scx::ClassificationReport rep;
            if (!graph_text.empty()) {
                scx::GraphExhaustion exh = scx::GraphExhaustion::parse(graph_text);
                std::vector<int> levels = parse_levels(levels_text, exh.max_level());
                rep = scx::classify_exhaustion(exh, levels, pol);
            } else {
                auto g = src.generator();
                scx::Simplex rho = parse_rho(rho_text, g);
                if (g && rho == g->base_point()) {
                    scx::GraphExhaustion exh = scx::GraphExhaustion::link_of(*g);
                    std::vector<int> levels = parse_levels(levels_text, exh.max_level());
                    rep = scx::classify_exhaustion(exh, levels, pol);
                } else {
                    scx::WeightedComplex cx = src.complex();
                    rep = scx::classify_link_components(scx::link_of(cx, rho), pol);
                }
            }
            ordered_json j = config_echo("classify-link", c);
            src.echo(j);
            j["report"] = classification_json(rep);
            emit(c, j);
            if (!c.csv.empty() && !rep.components.empty()) {
                std::vector<std::string> rows;
                for (const auto& p : rep.components.front().profile)
                    rows.push_back(std::to_string(p.level) + "," + std::to_string(p.vertices) +
                                   "," + std::to_string(p.resistance) + "," +
                                   std::to_string(p.capacity));
                emit_csv(c.csv, "level,vertices,resistance,capacity", rows);
            }
            return exit_for(rep.overall(), c);
        }

        if (*defect) {
            auto g = src.generator();
            if (!g) throw std::runtime_error("defect needs --family");
            scx::Simplex rho = parse_rho(rho_text, g);
            std::vector<int> levels =
                parse_levels(levels_text, scx::GraphExhaustion::link_of(*g).max_level());
            scx::PropertyVerdict pv = scx::check_complex_property(*g, rho, levels, pol);
            ordered_json j = config_echo("defect", c);
            src.echo(j);
            j["report"] = scx::defect_report_json(*g, rho, pv);
            emit(c, j);
            if (!c.csv.empty()) {
                std::vector<std::string> rows;
                for (const auto& w : pv.witness)
                    rows.push_back(std::to_string(w.level) + "," + std::to_string(w.defect) +
                                   "," + std::to_string(w.norm));
                emit_csv(c.csv, "level,defect,norm", rows);
            }
            return exit_for(pv.verdict, c);
        }

        if (*tprime) {
            ordered_json j = config_echo("tprime", c);
            src.echo(j);
            if (!sigma_text.empty()) {
                scx::WeightedComplex cx = src.complex();
                scx::TprimeResult res = scx::tprime_solve(cx, parse_simplex(sigma_text), c.rtol);
                j["sigma"] = res.sigma.str();
                j["norm"] = res.norm;
                ordered_json sp = ordered_json::array();
                for (const auto& s : res.splits)
                    sp.push_back({{"rho", s.rho.str()},
                                  {"v0", s.v0},
                                  {"feasible", s.feasible},
                                  {"closed_component", s.closed_component},
                                  {"norm", s.norm},
                                  {"enforced_residual", s.enforced_residual},
                                  {"on_coface_residual", s.on_coface_residual},
                                  {"off_coface_residual", s.off_coface_residual},
                                  {"note", s.note}});
                j["splits"] = sp;
                emit(c, j);
                return 0;
            }
            auto g = src.generator();
            if (!g) throw std::runtime_error("tprime needs --family or --sigma with --input");
            std::vector<int> indices;
            for (int i = from_index; i <= to_index; ++i) indices.push_back(i);
            std::vector<scx::TprimePoint> pts = scx::tprime_norm_sequence(*g, indices, c.rtol);
            ordered_json arr = ordered_json::array();
            std::vector<std::string> rows;
            for (const auto& p : pts) {
                arr.push_back({{"index", p.index}, {"level", p.level}, {"norm", p.norm}});
                rows.push_back(std::to_string(p.index) + "," + std::to_string(p.level) + "," +
                               std::to_string(p.norm));
            }
            j["points"] = arr;
            if (pts.size() >= 2 && pts.front().norm > 0.0)
                j["growth"] = pts.back().norm / pts.front().norm;
            emit(c, j);
            emit_csv(c.csv, "index,level,norm", rows);
            return 0;
        }

        if (*hodge) {
            scx::WeightedComplex cx = src.complex();
            ordered_json j = config_echo("hodge", c);
            src.echo(j);
            ordered_json sizes = ordered_json::array();
            for (int k = cx.min_degree(); k <= cx.max_degree(); ++k)
                sizes.push_back({{"degree", k}, {"count", cx.size(k)}});
            j["sizes"] = sizes;
            j["betti"] = scx::betti_table(cx);
            ordered_json summ = ordered_json::array();
            for (int k = 0; k < cx.max_degree(); ++k) summ.push_back(scx::updelta_summability(cx, k));
            j["updelta_summability"] = summ;
            int k = std::clamp(degree, 0, cx.max_degree());
            scx::SplitMix64 rng{c.seed};
            scx::Cochain f = scx::random_cochain(cx, k, rng);
            scx::HodgeSplit split = scx::hodge_decompose(cx, f, c.rtol);
            j["decomposition"] = scx::hodge_report_json(cx, split);
            if (!sigma_text.empty()) {
                scx::HarmonicFormReport hr =
                    scx::harmonic_eigenform_check(cx, parse_simplex(sigma_text));
                j["harmonic_eigenform"] = {{"rho", hr.rho.str()},
                                           {"has_coface", hr.has_coface},
                                           {"coboundary_norm", hr.coboundary_norm},
                                           {"up_residual", hr.up_residual},
                                           {"down_checked", hr.down_checked},
                                           {"down_residual", hr.down_residual}};
            }
            if (!export_prefix.empty())
                for (int kk = cx.min_degree(); kk < cx.max_degree(); ++kk)
                    scx::export_operator_pair(cx, scx::build_operator_pair(cx, kk), export_prefix);
            emit(c, j);
            return 0;
        }

        if (*spectrum) {
            scx::WeightedComplex cx = src.complex();
            scx::LapTag tag = tag_text == "up"     ? scx::LapTag::up
                              : tag_text == "down" ? scx::LapTag::down
                                                   : scx::LapTag::hodge;
            scx::EigMethod method = method_text == "dense"     ? scx::EigMethod::dense
                                    : method_text == "lanczos" ? scx::EigMethod::lanczos
                                                               : scx::EigMethod::automatic;
            scx::Spectrum sp = scx::spectrum(cx, tag, degree, count, method);
            ordered_json j = config_echo("spectrum", c);
            src.echo(j);
            j["spectrum"] = scx::spectrum_json(sp);
            emit(c, j);
            return sp.converged ? 0 : 1;
        }

        if (*walk) {
            wcfg.seed = c.seed;
            wcfg.threads = c.deterministic ? 1 : c.threads;
            scx::WalkResult r = scx::mc_return_probability(walk_dim, wcfg);
            ordered_json j = config_echo("walk", c);
            j["dimension"] = walk_dim;
            j["walks"] = r.walks;
            j["escape_radius"] = wcfg.escape_radius;
            j["max_steps"] = wcfg.max_steps;
            j["returned"] = r.returned;
            j["escaped"] = r.escaped;
            j["censored"] = r.censored;
            j["return_probability"] = r.return_probability;
            emit(c, j);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
