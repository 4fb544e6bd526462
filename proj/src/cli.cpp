#include "ncgn/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncgn/clifford.hpp"
#include "ncgn/enumerate.hpp"
#include "ncgn/graph.hpp"
#include "ncgn/kernel.hpp"
#include "ncgn/multiscale.hpp"
#include "ncgn/orientation.hpp"
#include "ncgn/parallel.hpp"
#include "ncgn/rosette.hpp"
#include "ncgn/topology.hpp"

namespace ncgn {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr int kSchema = 1;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw GraphError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

json report_header(const std::string& input) {
    return json{{"tool", "ncgn"},
                {"version", kVersion},
                {"schema", kSchema},
                {"input_digest", input.empty() ? "-" : fnv1a_hex(input)}};
}

json phase_records(const PhaseForm& phase) {
    json arr = json::array();
    for (const auto& [k, c] : phase.wedge)
        arr.push_back(json{{"a", sym_name(k.first)},
                           {"b", sym_name(k.second)},
                           {"kind", "wedge"},
                           {"coeff", c.str()}});
    for (const auto& [k, c] : phase.dot)
        arr.push_back(json{{"a", sym_name(k.first)},
                           {"b", sym_name(k.second)},
                           {"kind", "dot"},
                           {"coeff", c.str()}});
    return arr;
}

json linear_form_json(const LinearForm& f) {
    json arr = json::array();
    for (const auto& [s, c] : f.terms)
        arr.push_back(json{{"sym", sym_name(s)}, {"coeff", c.str()}});
    return arr;
}

json fierz_json(const FierzMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.str());
        rows.push_back(r);
    }
    return rows;
}

struct GraphInputs {
    std::string text;
    RibbonGraph graph;
    OrderedGraph ordered;
    OrientationData orientation;
    LineRelations rel;
};

GraphInputs load(const std::string& path, bool relaxed) {
    GraphInputs in;
    in.text = read_file(path);
    in.graph = parse_graph(in.text, relaxed);
    std::set<int> tree = spanning_tree(in.graph);
    in.ordered = total_order(in.graph, tree, default_root(in.graph, tree));
    in.orientation = orient(in.ordered, relaxed);
    in.rel = relations(in.ordered);
    return in;
}

ScaleAttribution attribution_from_file(const RibbonGraph& g, const std::string& path,
                                       int rho) {
    std::map<std::string, int> by_name;
    std::ifstream f(path);
    if (!f) throw GraphError("cannot open " + path);
    std::string name;
    int scale;
    while (f >> name >> scale) by_name[name] = scale;
    ScaleAttribution mu;
    mu.rho = rho;
    mu.scale.resize(g.internal_count());
    for (int l = 0; l < g.internal_count(); ++l) {
        auto it = by_name.find(g.lines[l].name);
        if (it == by_name.end())
            throw GraphError("attribution file misses line " + g.lines[l].name);
        mu.scale[l] = it->second;
    }
    return mu;
}

int cmd_topology(const std::string& path, std::ostream& out) {
    std::string text = read_file(path);
    RibbonGraph g = parse_graph(text);
    TopologyReport topo = trace_faces(g);
    json faces = json::array();
    for (const auto& f : topo.face_list) {
        json ext = json::array();
        for (int k : f.externals) ext.push_back(g.externals[k].name);
        faces.push_back(json{{"corners", f.corners.size()},
                             {"broken", f.broken()},
                             {"externals", ext}});
    }
    json rep = report_header(text);
    rep["topology"] = json{{"n", topo.vertices}, {"I", topo.lines},
                           {"L", topo.faces},   {"B", topo.broken},
                           {"chi", topo.chi},   {"g", topo.genus},
                           {"faces", faces}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_orient(const std::string& path, bool relaxed, std::ostream& out) {
    GraphInputs in = load(path, relaxed);
    json lines = json::array();
    for (int l = 0; l < in.graph.internal_count(); ++l) {
        auto [i, j] = in.ordered.line_span(l);
        const char* cls = nullptr;
        switch (in.orientation.line_class[l]) {
            case LineClass::Tree: cls = "tree"; break;
            case LineClass::Loop0: cls = "loop"; break;
            case LineClass::LoopPlus: cls = "loop+"; break;
            case LineClass::LoopMinus: cls = "loop-"; break;
        }
        lines.push_back(json{{"line", in.graph.lines[l].name},
                             {"span", json::array({i, j})},
                             {"class", cls},
                             {"eps", in.orientation.eps[l]},
                             {"epsilon", in.orientation.epsilon[l]}});
    }
    json numbering = json::array();
    for (int num = 1; num <= in.ordered.positions(); ++num) {
        int idx = in.ordered.at_number[num];
        numbering.push_back(json{
            {"number", num},
            {"position", in.graph.vertices[idx / 4].name + "." + std::to_string(idx % 4 + 1)},
            {"sign", in.orientation.sign_at_position[num]}});
    }
    json eta = json::array();
    for (int k = 0; k < in.graph.external_count(); ++k)
        eta.push_back(json{{"external", in.graph.externals[k].name},
                           {"eta", in.orientation.eta[k]}});
    json rep = report_header(in.text);
    rep["orientation"] = json{{"numbering", numbering}, {"lines", lines}, {"eta", eta}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_rosette(const std::string& path, const std::string& form, bool dress,
                bool momenta, std::ostream& out) {
    GraphInputs in = load(path, false);
    Rosette r;
    if (form == "general") r = rosette_general(in.ordered, in.orientation, in.rel);
    else if (form == "orientable") r = rosette_orientable(in.ordered, in.orientation, in.rel);
    else if (form == "planar-regular")
        r = rosette_planar_regular(in.ordered, in.orientation, in.rel);
    else if (form == "filk") r = filk_reduce(in.ordered, in.orientation);
    else throw CLI::ValidationError("--form", "unknown form " + form);

    PhaseForm phase = r.phase;
    if (dress) phase = omega_dress(phase, in.ordered, in.orientation);
    if (momenta) phase = with_momentum_phases(phase, in.ordered, in.orientation);

    json rep = report_header(in.text);
    rep["rosette"] = json{{"form", form},
                          {"dressed", dress},
                          {"momentum_phases", momenta},
                          {"phase", phase_records(phase)},
                          {"root_delta", linear_form_json(r.root_delta)}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_powercount(const std::string& path, double M, int rho, bool enumerate,
                   const std::string& mu_file, bool massless, double budget,
                   std::ostream& out) {
    std::string text = read_file(path);
    RibbonGraph g = parse_graph(text);
    json rep = report_header(text);

    if (enumerate) {
        AttributionSum sum = sum_attributions(g, rho, M, budget);
        json totals = json::array();
        for (size_t r = 0; r < sum.totals.size(); ++r)
            totals.push_back(json{{"rho", r}, {"total", sum.totals[r]}});
        rep["powercount"] = json{{"M", M}, {"rho", rho},
                                 {"attributions", sum.count},
                                 {"totals", totals}};
        out << rep.dump(2) << "\n";
        return 0;
    }

    ScaleAttribution mu = mu_file.empty() ? attribution_from_graph(g, rho)
                                          : attribution_from_file(g, mu_file, rho);
    DivergenceReport div = classify_divergences(g, mu, !massless);
    BoundEstimate est = bound_estimate(g, mu, M);
    json nodes = json::array();
    for (size_t i = 0; i < div.tree.nodes.size(); ++i) {
        const GNNode& n = div.tree.nodes[i];
        json lines = json::array();
        for (int l : n.lines) lines.push_back(g.lines[l].name);
        json node{{"id", i},
                  {"parent", n.parent},
                  {"i_low", n.i_low},
                  {"i_high", n.i_high},
                  {"lines", lines},
                  {"N", n.N},
                  {"g", n.g},
                  {"B", n.B},
                  {"omega", n.omega},
                  {"critical", n.critical},
                  {"div_class", div_class_name(n.div_class)}};
        if (!n.note.empty()) node["note"] = n.note;
        if (!div.forms[i].empty()) node["counterterm_forms"] = div.forms[i];
        nodes.push_back(node);
    }
    rep["powercount"] = json{{"M", M},
                             {"bound", est.value},
                             {"node_count", est.node_count},
                             {"nodes", nodes}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_classify_2pt(const std::string& path, bool massless, bool gamma01,
                     std::ostream& out) {
    std::string text = read_file(path);
    RibbonGraph g = parse_graph(text);
    CountertermClass cls = parity_counterterm_class(g, gamma01, !massless);
    auto dec = chains_cycles(g);
    json chains = json::array();
    for (const auto& c : dec.chains) {
        json lines = json::array();
        for (int l : c) lines.push_back(g.lines[l].name);
        chains.push_back(lines);
    }
    json cycles = json::array();
    for (const auto& c : dec.cycles) {
        json lines = json::array();
        for (int l : c) lines.push_back(g.lines[l].name);
        cycles.push_back(lines);
    }
    json divergent = json::array(), convergent = json::array();
    for (auto f : cls.divergent) divergent.push_back(counterterm_form_name(f));
    for (auto f : cls.convergent_only) convergent.push_back(counterterm_form_name(f));
    json rep = report_header(text);
    rep["classify_2pt"] = json{{"chain_length", cls.chain_length},
                               {"lowest_in_chain", cls.lowest_in_chain},
                               {"chains", chains},
                               {"cycles", cycles},
                               {"divergent", divergent},
                               {"convergent_only", convergent}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_fierz(std::ostream& out) {
    json rep = report_header("");
    json inter = json::object();
    for (auto kind : {VertexKind::O1, VertexKind::O2, VertexKind::O3}) {
        inter[kind_name(kind)] = fierz_json(fierz_matrix(kind));
    }
    json noninter = json::object();
    for (auto kind : {VertexKind::NO1, VertexKind::NO2, VertexKind::NO3})
        noninter[kind_name(kind)] = fierz_json(fierz_matrix(kind));
    json conj = json::object();
    static const char* basis_names[4] = {"1", "gamma0", "gamma1", "gamma0gamma1"};
    for (int c = 0; c < 4; ++c) conj[basis_names[c]] = fierz_json(conjugation_table(c));
    rep["fierz"] = json{{"orientable", inter},
                        {"non_orientable_informational", noninter},
                        {"conjugation", conj}};
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_kernel_check(int i_max, double M, double theta, double omega, double mass,
                     int samples, std::uint64_t seed, bool negative_control,
                     std::ostream& out) {
    PhysicalParams p;
    p.M = M;
    p.theta = theta;
    p.omega = omega;
    p.mass = mass;
    p.check();

    json rep = report_header("");
    SliceBoundFit fit = verify_slice_bound(1, i_max, samples, p, seed, false);
    json per = json::array();
    for (const auto& s : fit.per_slice)
        per.push_back(json{{"i", s.i}, {"k", s.k}, {"K", s.K}});
    json bound{{"per_slice", per},
               {"uniform_k", fit.uniform_k},
               {"uniform_K", fit.uniform_K},
               {"pass", fit.pass}};
    if (!fit.pass) bound["counter_sample"] = fit.counter_sample;
    rep["slice_bound"] = bound;

    json masslets = json::array();
    for (int i = 0; i <= std::min(i_max, 6); i += 2)
        for (double wx : {0.0, 1.0, 4.0}) {
            MassletCheck mc = masslet_check(i, {wx, 0.5 * wx}, p);
            masslets.push_back(json{{"i", i},
                                    {"w", json::array({wx, 0.5 * wx})},
                                    {"numeric", mc.numeric},
                                    {"closed_form", mc.closed_form},
                                    {"rel_error", mc.rel_error}});
        }
    rep["masslet"] = masslets;

    if (negative_control) {
        SliceBoundFit bad = verify_slice_bound(1, i_max, samples, p, seed, true);
        json nc{{"pass", bad.pass}};
        if (!bad.pass) nc["counter_sample"] = bad.counter_sample;
        rep["negative_control"] = nc;
    }
    out << rep.dump(2) << "\n";
    return 0;
}

int cmd_vacuum_check(const std::string& path, bool relaxed, std::ostream& out) {
    std::string text = read_file(path);
    RibbonGraph g = parse_graph(text, relaxed);
    VacuumInvariance inv = vacuum_invariance(g);
    json rep = report_header(text);
    rep["vacuum_check"] = json{{"invariant", inv.invariant},
                               {"residual", linear_form_json(inv.residual)}};
    out << rep.dump(2) << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ribbon-graph analyses for the orientable two-dimensional "
                 "Moyal Gross-Neveu model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ncgn ") + kVersion);
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads for the parallel analyses");

    std::string path, mu_file, form = "general";
    bool relaxed = false, dress = false, momenta = false, enumerate = false;
    bool massless = false, gamma01 = false, negative_control = false;
    double M = 2.0, theta = 1.0, omega = 0.5, mass = 1.0, budget = 16.0;
    int rho = 8, i_max = 8, samples = 200;
    std::uint64_t seed = 1;

    auto* topo = app.add_subcommand("topology", "faces, genus and broken faces");
    topo->add_option("graph", path, "graph file")->required();

    auto* orient_cmd = app.add_subcommand("orient", "position signs, line classes, signs");
    orient_cmd->add_option("graph", path, "graph file")->required();

    auto* ros = app.add_subcommand("rosette", "oscillation phase in line variables");
    ros->add_option("graph", path, "graph file")->required();
    ros->add_option("--form", form, "general|orientable|planar-regular|filk")
        ->capture_default_str();
    ros->add_flag("--dress-omega", dress, "include the propagator Omega dressing");
    ros->add_flag("--momentum-phases", momenta,
                  "express branch deltas as momentum oscillations");

    auto* pc = app.add_subcommand("powercount", "Gallavotti-Nicolo tree and degrees");
    pc->add_option("graph", path, "graph file")->required();
    pc->add_option("--M", M, "slicing base")->capture_default_str();
    pc->add_option("--rho", rho, "ultraviolet cutoff")->capture_default_str();
    pc->add_flag("--enumerate", enumerate, "sum the bound over all attributions");
    pc->add_option("--mu", mu_file, "explicit attribution file: <line> <scale>");
    pc->add_flag("--massless", massless, "classify with zero bare mass");
    pc->add_option("--budget", budget, "log budget for the enumeration")
        ->capture_default_str();

    auto* cls = app.add_subcommand("classify-2pt", "admissible counterterm forms");
    cls->add_option("graph", path, "graph file")->required();
    cls->add_flag("--massless", massless, "zero bare mass");
    cls->add_flag("--gamma01-lowest", gamma01,
                  "lowest propagator keeps its gamma0 gamma1 factor");

    auto* fz = app.add_subcommand("fierz", "interaction table over the Clifford basis");
    (void)fz;

    auto* kc = app.add_subcommand("kernel-check", "slice bound fits and masslet errors");
    kc->add_option("--i", i_max, "largest slice index")->capture_default_str();
    kc->add_option("--M", M, "slicing base")->capture_default_str();
    kc->add_option("--theta", theta, "deformation parameter")->capture_default_str();
    kc->add_option("--omega", omega, "oscillator strength in [0,1)")->capture_default_str();
    kc->add_option("--mass", mass, "fermion mass")->capture_default_str();
    kc->add_option("--samples", samples, "samples per slice")->capture_default_str();
    kc->add_option("--seed", seed, "sampling seed")->capture_default_str();
    kc->add_flag("--negative-control", negative_control,
                 "also fit with the Gaussian factor removed");

    auto* vc = app.add_subcommand("vacuum-check", "translation invariance of a vacuum graph");
    vc->add_option("graph", path, "graph file")->required();
    vc->add_flag("--relaxed", relaxed, "admit clashing lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 64;
    }

    if (jobs > 0) set_jobs(jobs);

    try {
        if (topo->parsed()) return cmd_topology(path, out);
        if (orient_cmd->parsed()) return cmd_orient(path, false, out);
        if (ros->parsed()) return cmd_rosette(path, form, dress, momenta, out);
        if (pc->parsed())
            return cmd_powercount(path, M, rho, enumerate, mu_file, massless, budget, out);
        if (cls->parsed()) return cmd_classify_2pt(path, massless, gamma01, out);
        if (fz->parsed()) return cmd_fierz(out);
        if (kc->parsed())
            return cmd_kernel_check(i_max, M, theta, omega, mass, samples, seed,
                                    negative_control, out);
        if (vc->parsed()) return cmd_vacuum_check(path, relaxed, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 64;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const GraphError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    }
    return 64;
}

}  // namespace ncgn
