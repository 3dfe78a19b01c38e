// Command-line front end: instance IO, the full pipeline as subcommands, the
// corpus driver, and static SVG rendering.
//
// Exit codes: 0 success, 1 invalid input or parameters, 2 a mathematical
// invariant failed (bug or counterexample; the offending instance is written
// next to the requested output).

#include "cylfloer/cylfloer.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace cylfloer;
namespace fs = std::filesystem;

namespace {

int g_max_wraps = kDefaultMaxWraps;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << content;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_file(out_path, content);
}

std::string offending_path(const std::string& near) {
    fs::path p = near.empty() || near == "-" ? fs::path("offending.json")
                                             : fs::path(near).replace_extension(".offending.json");
    return p.string();
}

nlohmann::ordered_json bars_json(const Barcode& bc) {
    nlohmann::ordered_json j;
    j["finite"] = nlohmann::ordered_json::array();
    for (const auto& b : bc.finite)
        j["finite"].push_back({{"birth", b.birth.str()}, {"death", (*b.death).str()}});
    j["infinite"] = nlohmann::ordered_json::array();
    for (const auto& b : bc.infinite) j["infinite"].push_back({{"birth", b.birth.str()}});
    BarStats s = bar_stats(bc);
    j["betas"] = nlohmann::ordered_json::array();
    for (const auto& b : s.betas) j["betas"].push_back(b.str());
    j["gamma"] = s.gamma.str();
    return j;
}

nlohmann::ordered_json event_json(const DeletionEvent& ev) {
    nlohmann::ordered_json j;
    j["leaf"] = {{"face", ev.leaf.face},
                 {"label", ev.leaf.seg + 1},
                 {"qbar", ev.leaf.qbar + 1},
                 {"pbar", ev.leaf.pbar + 1},
                 {"area", ev.leaf.area.str()},
                 {"case", ev.leaf.above ? 1 : 2}};
    j["target"] = ev.target;
    j["k"] = ev.k + 1;
    j["epsilon"] = ev.epsilon.str();
    j["cost"] = ev.cost.str();
    nlohmann::ordered_json rel = nlohmann::ordered_json::object();
    for (std::size_t t = 0; t < ev.relabel.size(); ++t)
        if (ev.relabel[t] != -1) rel[std::to_string(t + 1)] = ev.relabel[t] + 1;
    j["relabel"] = rel;
    j["newActions"] = nlohmann::ordered_json::array();
    for (const auto& a : ev.new_actions) j["newActions"].push_back(a.str());
    return j;
}

struct PipelineData {
    Model model;
    FloerComplex complex;
    Barcode bc;
    BarStats stats;
};

PipelineData pipeline(const Instance& inst) {
    PipelineData d;
    d.model = build_model(inst);
    d.complex = differential(d.model.arr, d.model.tv, d.model.actions, g_max_wraps);
    auto [bc, jb] = barcode(d.complex);
    check_rank_oracle(d.complex, bc);
    d.bc = bc;
    d.stats = bar_stats(bc);
    return d;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact persistent-Floer engine for equator pairs in the cylinder"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("CYL_FLOER_MAX_WRAPS")) g_max_wraps = std::atoi(env);

    std::string in_path, out_path, trace_path, format = "json", what = "all";
    std::string epsilon_str = "0", area_bound_str = "4", policy_str = "smallest-label";
    std::string leaf_face, target_face, source_face, w1_str, w2_str, area_str;
    int gen_n = 2, seg_label = 1;
    std::uint64_t seed = 1;
    std::vector<int> pair_opt, arc_opt;
    int corpus_count = 500, corpus_max_n = 7, jobs = 1;
    int wraps_flag = -1;

    auto add_wraps = [&](CLI::App* cmd) {
        cmd->add_option("--max-wraps", wraps_flag, "override the wrap bound for lune search");
    };

    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--n", gen_n, "half the number of intersection points")->required();
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--area-bound", area_bound_str, "upper bound for generated areas (p/q)");
    gen->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* val = app.add_subcommand("validate", "check an instance file");
    val->add_option("file", in_path)->required();

    auto* info = app.add_subcommand("info", "structural summary and action spectrum");
    info->add_option("file", in_path)->required();

    auto* bar = app.add_subcommand("barcode", "persistence barcode");
    bar->add_option("file", in_path)->required();
    bar->add_option("--format", format, "json or text");
    bar->add_option("-o,--output", out_path);
    add_wraps(bar);

    auto* lun = app.add_subcommand("lunes", "enumerate smooth lunes");
    lun->add_option("file", in_path)->required();
    lun->add_option("--pair", pair_opt, "restrict to one ordered pair q p (1-based)")
        ->expected(2);
    add_wraps(lun);
    lun->add_option("-o,--output", out_path);

    auto* bnd = app.add_subcommand("bound", "Hofer distance upper bounds");
    bnd->add_option("file", in_path)->required();
    bnd->add_option("--epsilon", epsilon_str, "inflate each deletion cost (p/q)");
    bnd->add_option("--target-policy", policy_str, "smallest-label or toward-root");
    bnd->add_option("-o,--output", out_path);
    add_wraps(bnd);

    auto* red = app.add_subcommand("reduce", "full reduction trace");
    red->add_option("file", in_path)->required();
    red->add_option("--trace", trace_path, "write the replayable trace JSON");
    red->add_option("--epsilon", epsilon_str);
    red->add_option("--target-policy", policy_str);
    red->add_option("-o,--output", out_path);
    add_wraps(red);

    auto* del = app.add_subcommand("delete", "delete a leaf");
    del->add_option("file", in_path)->required();
    del->add_option("--leaf", leaf_face, "face id of the leaf")->required();
    del->add_option("--target", target_face, "face id at tree distance 2 (default: policy pick)");
    del->add_option("--epsilon", epsilon_str, "p/q");
    del->add_option("-o,--output", out_path, "new instance file");
    del->add_option("--event", trace_path, "event record file");

    auto* ins = app.add_subcommand("insert", "insert a leaf");
    ins->add_option("file", in_path)->required();
    ins->add_option("--segment", seg_label, "segment label to subdivide (1-based)")->required();
    ins->add_option("--arc", arc_opt, "arc endpoints on the split face (two 1-based points)")
        ->expected(2)
        ->required();
    ins->add_option("--side", what, "up (leaf above) or down (leaf below)")->required();
    ins->add_option("--w1", w1_str, "weight of the piece at the left third (p/q or unbounded)")
        ->required();
    ins->add_option("--w2", w2_str, "weight of the other piece")->required();
    ins->add_option("--area", area_str, "leaf area (p/q)")->required();
    ins->add_option("--source", source_face, "face paying area+epsilon")->required();
    ins->add_option("--epsilon", epsilon_str);
    ins->add_option("-o,--output", out_path);

    auto* chk = app.add_subcommand("check", "full invariant suite on one instance");
    chk->add_option("file", in_path)->required();
    add_wraps(chk);

    auto* cor = app.add_subcommand("corpus", "invariant suite over generated instances");
    cor->add_option("--count", corpus_count);
    cor->add_option("--max-n", corpus_max_n);
    cor->add_option("--seed", seed);
    cor->add_option("--area-bound", area_bound_str);
    cor->add_option("--jobs", jobs, "parallel instance pipelines");
    add_wraps(cor);

    auto* ren = app.add_subcommand("render", "deterministic SVG figure");
    ren->add_option("file", in_path)->required();
    ren->add_option("--what", what, "curve, trees, barcode or all");
    ren->add_option("-o,--output", out_path);
    add_wraps(ren);

    CLI11_PARSE(app, argc, argv);
    if (wraps_flag > 0) g_max_wraps = wraps_flag;

    try {
        if (*gen) {
            Instance inst = random_instance(gen_n, seed, Rational::parse(area_bound_str));
            emit(out_path, serialize_instance(inst));
        } else if (*val) {
            Instance inst = load_instance(in_path);
            ValidationReport rep = validate(inst);
            for (const auto& r : rep.rules)
                std::cout << (r.passed ? "pass" : "FAIL") << "  " << r.rule
                          << (r.message.empty() ? "" : ": " + r.message) << "\n";
            for (const auto& w : rep.warnings) std::cout << "warn  " << w << "\n";
            if (!rep.valid()) return 1;
        } else if (*info) {
            Instance inst = load_instance(in_path);
            Model m = build_model(inst);
            nlohmann::ordered_json j;
            j["n"] = inst.n;
            j["points"] = 2 * inst.n;
            j["faces"] = m.arr.faces.size();
            j["defect"] = exactness_defect(m.arr, m.tv).str();
            j["spectrum"] = nlohmann::ordered_json::array();
            for (const auto& a : m.actions.value) j["spectrum"].push_back(a.str());
            j["distinctActions"] = m.actions.distinct();
            j["leaves"] = nlohmann::ordered_json::array();
            for (const auto& l : find_leaves(m))
                j["leaves"].push_back({{"face", l.face},
                                       {"label", l.seg + 1},
                                       {"area", l.area.str()},
                                       {"case", l.above ? 1 : 2}});
            emit(out_path, j.dump(2) + "\n");
        } else if (*bar) {
            PipelineData d = pipeline(load_instance(in_path));
            if (format == "text")
                emit(out_path, render_barcode_text(d.bc));
            else
                emit(out_path, bars_json(d.bc).dump(2) + "\n");
        } else if (*lun) {
            Instance inst = load_instance(in_path);
            Model m = build_model(inst);
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            auto dump_pair = [&](int q, int p) {
                for (const auto& l : enumerate_lunes(m.arr, m.actions, q, p, g_max_wraps)) {
                    nlohmann::ordered_json e;
                    e["from"] = q + 1;
                    e["to"] = p + 1;
                    e["boundary"] = {{"baseDirection", l.boundary.base_ccw ? "ccw" : "cw"},
                                     {"baseWraps", l.boundary.base_wraps},
                                     {"curveDirection", l.boundary.curve_fwd ? "forward" : "backward"},
                                     {"curveWraps", l.boundary.curve_wraps}};
                    nlohmann::ordered_json nu = nlohmann::ordered_json::object();
                    for (std::size_t f = 0; f < m.arr.faces.size(); ++f)
                        if (l.nu[f]) nu[m.arr.faces[f].id] = l.nu[f];
                    e["nu"] = nu;
                    e["area"] = l.area.str();
                    j.push_back(e);
                }
            };
            if (!pair_opt.empty()) {
                dump_pair(pair_opt[0] - 1, pair_opt[1] - 1);
            } else {
                for (int q = 0; q < m.arr.m; ++q)
                    for (int p = 0; p < m.arr.m; ++p)
                        if (q != p) dump_pair(q, p);
            }
            emit(out_path, j.dump(2) + "\n");
        } else if (*bnd || *red) {
            Instance inst = load_instance(in_path);
            TargetPolicy policy = policy_str == "toward-root" ? TargetPolicy::TowardRoot
                                                              : TargetPolicy::SmallestEdgeLabel;
            ReductionTrace tr = reduce(inst, policy, Rational::parse(epsilon_str), g_max_wraps);
            PipelineData d = pipeline(inst);
            nlohmann::ordered_json j;
            j["gamma"] = d.stats.gamma.str();
            j["betas"] = nlohmann::ordered_json::array();
            for (const auto& b : d.stats.betas) j["betas"].push_back(b.str());
            j["theoremBound"] = tr.theorem_bound.str();
            j["constructiveCost"] = tr.constructive_cost.str();
            j["finalGamma"] = tr.final_gamma.str();
            j["generic"] = tr.generic;
            j["steps"] = nlohmann::ordered_json::array();
            for (const auto& s : tr.steps) j["steps"].push_back(event_json(s.event));
            emit(out_path, j.dump(2) + "\n");
            if (*red && !trace_path.empty()) {
                nlohmann::ordered_json t;
                t["initial"] = to_json(tr.initial);
                t["steps"] = nlohmann::ordered_json::array();
                for (const auto& s : tr.steps)
                    t["steps"].push_back(
                        {{"event", event_json(s.event)}, {"instance", to_json(s.after)}});
                t["finalGamma"] = tr.final_gamma.str();
                t["constructiveCost"] = tr.constructive_cost.str();
                t["theoremBound"] = tr.theorem_bound.str();
                write_file(trace_path, t.dump(2) + "\n");
            }
        } else if (*del) {
            Instance inst = load_instance(in_path);
            Model m = build_model(inst);
            Leaf leaf = leaf_by_face(m, leaf_face);
            FaceId target = target_face;
            if (target.empty())
                target = m.arr.faces[pick_target(m, leaf, TargetPolicy::SmallestEdgeLabel)].id;
            DeletionResult res = delete_leaf(m, leaf, target, Rational::parse(epsilon_str));
            emit(out_path, serialize_instance(res.instance));
            if (!trace_path.empty()) write_file(trace_path, event_json(res.event).dump(2) + "\n");
        } else if (*ins) {
            Instance inst = load_instance(in_path);
            Model m = build_model(inst);
            InsertionSpec spec;
            spec.seg = seg_label - 1;
            spec.arc = {arc_opt[0] - 1, arc_opt[1] - 1};
            if (what != "up" && what != "down") throw ValidationError("--side must be up or down");
            spec.leaf_above = what == "up";
            auto parse_weight = [](const std::string& s) {
                return s == "unbounded" ? Weight::unbounded() : Weight::of(Rational::parse(s));
            };
            spec.w1 = parse_weight(w1_str);
            spec.w2 = parse_weight(w2_str);
            spec.area = Rational::parse(area_str);
            spec.source = source_face;
            spec.epsilon = Rational::parse(epsilon_str);
            emit(out_path, serialize_instance(insert_leaf(m, spec)));
        } else if (*chk) {
            Instance inst = load_instance(in_path);
            SuiteResult r = check_instance(inst, g_max_wraps, true);
            for (const auto& [name, count] : r.pass)
                std::cout << "pass  " << name << " x" << count << "\n";
            for (const auto& [name, count] : r.fail)
                std::cout << "FAIL  " << name << " x" << count << "\n";
            if (!r.ok()) {
                write_file(offending_path(in_path), r.offending_instances.front());
                std::cerr << r.messages.front() << "\n";
                return 2;
            }
        } else if (*cor) {
            CorpusOptions opt;
            opt.count = corpus_count;
            opt.max_n = corpus_max_n;
            opt.seed = seed;
            opt.area_bound = Rational::parse(area_bound_str);
            opt.max_wraps = g_max_wraps;
            opt.jobs = jobs;
            SuiteResult r = run_corpus(opt);
            std::cout << "instances: " << corpus_count << "\n";
            for (const auto& [name, count] : r.pass) {
                int f = r.fail.count(name) ? r.fail.at(name) : 0;
                std::cout << (f ? "FAIL  " : "pass  ") << name << "  " << count << "/" << count + f
                          << "\n";
            }
            for (const auto& [name, count] : r.fail)
                if (!r.pass.count(name)) std::cout << "FAIL  " << name << "  0/" << count << "\n";
            if (!r.ok()) {
                write_file(offending_path(out_path), r.offending_instances.front());
                std::cerr << r.messages.front() << "\n";
                return 2;
            }
        } else if (*ren) {
            Instance inst = load_instance(in_path);
            PipelineData d = pipeline(inst);
            if (what != "curve" && what != "trees" && what != "barcode" && what != "all")
                throw ValidationError("--what must be curve, trees, barcode or all");
            emit(out_path, render_svg(d.model, d.bc, what));
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        if (!e.offending_instance.empty()) {
            std::string p = offending_path(out_path.empty() ? in_path : out_path);
            write_file(p, e.offending_instance);
            std::cerr << "offending instance written to " << p << "\n";
        }
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
