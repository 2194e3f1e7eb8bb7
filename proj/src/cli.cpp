#include "germforge/cli.hpp"

#include "germforge/classify.hpp"
#include "germforge/deform.hpp"
#include "germforge/envelope.hpp"
#include "germforge/errors.hpp"
#include "germforge/expr.hpp"
#include "germforge/tanspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace germforge {

namespace {

using nlohmann::json;

int env_trunc_degree() {
    if (const char* v = std::getenv("GERMFORGE_MAX_JET")) {
        const int n = std::atoi(v);
        if (n >= 8) return n;
    }
    return kDefaultTrunc;
}

struct Options {
    std::string family;
    std::string klass;
    std::string deform;
    std::string box = "-0.5:0.5:-0.5:0.5";
    std::string grid;
    std::string jsonPath, svgPath, csvPath;
    std::string from, to;
    int maxJet = 0; // 0: derive from the truncation
    int res = 200;
    bool reduced = false;
    bool detectTangency = false;
};

SingularityClass parse_class_or_throw(const std::string& name) {
    const auto c = SingularityClass::parse(name);
    if (!c) throw Error(ErrorCode::Parse, "unknown class name '" + name + "'");
    return *c;
}

TangentialFamily load_family(const Options& o, TruncBound b, int order) {
    const FamilyExpr fe = parse_family(o.family);
    const MapGerm f = family_germ(fe, b);
    if (o.reduced) return from_reduced(f, order);
    return require_tangential(f, order);
}

std::vector<Rat> parse_lambda(const std::string& text, const DeformationSpec& spec) {
    std::vector<Rat> lambda(spec.directions.size(), Rat(0));
    if (text.empty()) return lambda;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::Parse, "deformation entries look like l1=1/2");
        const std::string name = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        bool hit = false;
        for (size_t i = 0; i < spec.paramNames.size(); ++i)
            if (spec.paramNames[i] == name) {
                lambda[i] = rat_parse(val);
                hit = true;
            }
        if (!hit)
            throw Error(ErrorCode::Parse, "unknown deformation parameter '" + name + "'");
    }
    return lambda;
}

std::vector<GridAxis> parse_grid(const std::string& text) {
    std::vector<GridAxis> axes;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::stringstream ts(tok);
        std::string lo, hi, cnt;
        if (!std::getline(ts, lo, ':') || !std::getline(ts, hi, ':') || !std::getline(ts, cnt))
            throw Error(ErrorCode::Parse, "grid axes look like lo:hi:count");
        axes.push_back(GridAxis{rat_parse(lo), rat_parse(hi), std::stoi(cnt)});
    }
    if (axes.empty()) throw Error(ErrorCode::Parse, "empty grid specification");
    return axes;
}

std::array<double, 4> parse_box(const std::string& text) {
    std::array<double, 4> box{};
    std::stringstream ss(text);
    std::string tok;
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(ss, tok, ':'))
            throw Error(ErrorCode::Parse, "box looks like x0:x1:y0:y1");
        box[static_cast<size_t>(i)] = std::strtod(tok.c_str(), nullptr);
    }
    return box;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::Internal, "cannot write " + path);
    os << content;
}

json rat_list(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(rat_str(r));
    return a;
}

const char* side_name(Side s) {
    switch (s) {
    case Side::OneSidePlus: return "one-side+";
    case Side::OneSideMinus: return "one-side-";
    case Side::BothSides: return "both-sides";
    default: return "inconclusive";
    }
}

json codim_json(int v) { return v < 0 ? json("inf") : json(v); }

json report_json(const ClassificationReport& rep) {
    json j;
    j["class"] = rep.cls.name();
    j["c"] = codim_json(rep.cls.codim());
    j["tau"] = codim_json(rep.cls.tangCodim());
    j["simple"] = rep.cls.simple();
    j["alpha"] = rat_str(rep.alpha);
    j["k"] = rat_list(rep.k);
    j["b"] = rat_list(rep.b);
    if (rep.crossRatio) {
        j["crossRatio"] = {rep.crossRatio->value.real(), rep.crossRatio->value.imag()};
        j["crossRatioDegenerate"] = rep.crossRatio->degenerate;
    }
    if (rep.modulus) j["modulus"] = *rep.modulus;
    json branches = json::array();
    for (const auto& br : rep.envelope.otherBranches) {
        json bj;
        bj["p"] = br.order.first;
        bj["q"] = br.order.second;
        if (br.contact) bj["contact"] = *br.contact;
        else bj["contact"] = nullptr;
        bj["side"] = side_name(br.side);
        bj["multiplicity"] = br.multiplicity;
        branches.push_back(bj);
    }
    j["envelope"] = {{"branches", branches},
                     {"unresolved", rep.envelope.unresolved.size()}};
    j["certifiedToJet"] = rep.certifiedToJet;
    j["prenormal"] = "xi + t ; " + rep.prenormal.phi.str();
    return j;
}

void maybe_write_json(const Options& o, const json& j) {
    if (!o.jsonPath.empty()) write_file(o.jsonPath, j.dump(2) + "\n");
}

int cmd_classify(const Options& o, TruncBound b, int maxJet) {
    const auto rep = classify(load_family(o, b, std::min(maxJet, b.degree - 2)), maxJet);
    std::cout << "class: " << rep.cls.name() << "\n";
    std::cout << "c: " << (rep.cls.codim() < 0 ? std::string("inf") : std::to_string(rep.cls.codim()))
              << "  tau: "
              << (rep.cls.tangCodim() < 0 ? std::string("inf") : std::to_string(rep.cls.tangCodim()))
              << "\n";
    std::cout << "certified to jet order " << rep.certifiedToJet << "\n";
    maybe_write_json(o, report_json(rep));
    return 0;
}

int cmd_prenormal(const Options& o, TruncBound b, int maxJet) {
    const auto pf = to_prenormal(load_family(o, b, std::min(maxJet, b.degree - 2)));
    std::cout << "xi + t ; " << pf.phi.str() << "\n";
    std::cout << "alpha = " << rat_str(pf.alpha) << "\n";
    json j;
    j["phi"] = pf.phi.str();
    j["alpha"] = rat_str(pf.alpha);
    j["k"] = rat_list(pf.k);
    maybe_write_json(o, j);
    return 0;
}

int cmd_envelope(const Options& o, TruncBound b, int maxJet) {
    const auto pf = to_prenormal(load_family(o, b, std::min(maxJet, b.degree - 2)));
    const auto rep = envelope_branches(pf, b.degree);
    std::cout << "support: y = 0\n";
    for (const auto& br : rep.otherBranches) {
        std::cout << "branch: order (" << br.order.first << "," << br.order.second << ")";
        if (br.contact) std::cout << ", contact " << *br.contact;
        std::cout << ", side " << side_name(br.side) << "\n";
    }
    if (!rep.unresolved.empty())
        std::cout << rep.unresolved.size() << " direction packet(s) need field extensions\n";
    json j;
    json branchesJ = json::array();
    for (const auto& br : rep.otherBranches) {
        json bj{{"p", br.order.first},
                {"q", br.order.second},
                {"side", side_name(br.side)},
                {"multiplicity", br.multiplicity}};
        if (br.contact) bj["contact"] = *br.contact;
        branchesJ.push_back(bj);
    }
    j["branches"] = branchesJ;
    // criminant solutions in the ramified-parameter schema
    json crim = json::array();
    const CriminantEquation ce = criminant_equation(pf);
    if (!ce.h.is_zero() && sgn(ce.h.coeff(0, 0)) == 0) {
        for (const auto& b2 : branches(ce.h, b.degree, Field::Real)) {
            json bj;
            bj["ramification"] = b2.ramification;
            bj["field"] = b2.field == Field::Real ? "real" : "complex";
            json terms = json::array();
            for (const auto& term : b2.terms)
                terms.push_back({{"exp", rat_str(term.exp)}, {"coeff", rat_str(term.coeff)}});
            for (const auto& term : b2.numericTerms)
                terms.push_back({{"exp", rat_str(term.exp)},
                                 {"coeff", {term.coeff.real(), term.coeff.imag()}}});
            bj["terms"] = terms;
            if (b2.residual) bj["factored"] = true;
            crim.push_back(bj);
        }
    }
    j["criminantBranches"] = crim;
    if (!o.svgPath.empty() || !o.csvPath.empty()) {
        const EnvelopeSketch sk = trace_numeric(pf, parse_box(o.box), o.res);
        if (!o.svgPath.empty()) write_file(o.svgPath, emit_svg(sk));
        if (!o.csvPath.empty()) write_file(o.csvPath, emit_csv(sk));
        j["polylines"] = sk.polylines.size();
    }
    maybe_write_json(o, j);
    return 0;
}

int cmd_codim(const Options& o, TruncBound b, int maxJet) {
    const auto pf = to_prenormal(load_family(o, b, std::min(maxJet, b.degree - 2)));
    const MapGerm f = pf.as_germ();
    const int N = std::min(14, b.degree - 2);
    const auto c = codimension(f, N);
    const auto tau = tangential_codimension(f, N);
    std::cout << "c = " << c.value << (c.stable ? " (stable)" : " (UNSTABLE)") << "\n";
    std::cout << "tau = " << tau.value << (tau.stable ? " (stable)" : " (UNSTABLE)") << "\n";
    json j{{"c", c.value}, {"cStable", c.stable}, {"tau", tau.value}, {"tauStable", tau.stable}};
    maybe_write_json(o, j);
    if (!c.stable || !tau.stable)
        throw InconclusiveError(N, "codimension did not stabilize at the working order");
    return 0;
}

int cmd_normal_form(const Options& o, TruncBound b) {
    const SingularityClass cls = parse_class_or_throw(o.klass);
    std::cout << normal_form_text(cls) << "\n";
    const DeformationSpec spec = miniversal_spec(cls, b);
    std::cout << "miniversal directions:";
    if (spec.directions.empty()) std::cout << " (none)";
    for (const auto& d : spec.directions) std::cout << " " << d.str();
    std::cout << "\n";
    json j;
    j["class"] = cls.name();
    j["family"] = normal_form_text(cls);
    json dirs = json::array();
    for (const auto& d : spec.directions) dirs.push_back(d.str());
    j["directions"] = dirs;
    j["c"] = codim_json(cls.codim());
    j["tau"] = codim_json(cls.tangCodim());
    maybe_write_json(o, j);
    return 0;
}

int cmd_deform(const Options& o, TruncBound b, int maxJet) {
    const SingularityClass cls = parse_class_or_throw(o.klass);
    const DeformationSpec spec = miniversal_spec(cls, b);
    const auto lambda = parse_lambda(o.deform, spec);
    const PrenormalForm base = PrenormalForm::from_phi(normal_form_phi(cls, b));
    const PrenormalForm moved = apply_deformation(base, spec, lambda);
    const auto rep = classify_prenormal(moved, maxJet);
    std::cout << "deformed class: " << rep.cls.name() << "\n";
    json j = report_json(rep);
    j["baseClass"] = cls.name();
    j["lambda"] = rat_list(lambda);
    maybe_write_json(o, j);
    return 0;
}

int cmd_discriminant(const Options& o) {
    const SingularityClass cls = parse_class_or_throw(o.klass);
    if (cls.tag != ClassTag::T)
        throw Error(ErrorCode::Parse, "discriminant sampling is defined for the T classes");
    const auto axes = parse_grid(o.grid);
    if (static_cast<int>(axes.size()) != cls.n)
        throw Error(ErrorCode::Parse, "grid dimension must equal the class index");
    std::ostringstream csv;
    for (int i = 1; i <= cls.n; ++i) csv << "l" << i << ",";
    csv << "disc\n";
    std::vector<size_t> counts;
    size_t total = 1;
    for (const auto& ax : axes) {
        counts.push_back(static_cast<size_t>(ax.count));
        total *= static_cast<size_t>(ax.count);
    }
    for (size_t flat = 0; flat < total; ++flat) {
        std::vector<Rat> lambda(axes.size());
        size_t rest = flat;
        for (size_t a = axes.size(); a-- > 0;) {
            const size_t idx = rest % counts[a];
            rest /= counts[a];
            lambda[a] = axes[a].count == 1
                            ? axes[a].lo
                            : axes[a].lo + (axes[a].hi - axes[a].lo) * Rat(static_cast<long>(idx)) /
                                               Rat(axes[a].count - 1);
        }
        const Rat disc = q_discriminant(QFamily{cls.n, lambda});
        for (const Rat& l : lambda) csv << rat_str(l) << ",";
        csv << rat_str(disc) << "\n";
    }
    if (o.csvPath.empty()) std::cout << csv.str();
    else write_file(o.csvPath, csv.str());
    return 0;
}

int cmd_bifurcation(const Options& o, TruncBound b, int maxJet) {
    const SingularityClass cls = parse_class_or_throw(o.klass);
    const auto axes = parse_grid(o.grid);
    const BifurcationGrid grid = bifurcation_grid(cls, axes, b, maxJet, o.detectTangency);
    std::ostringstream csv;
    for (size_t i = 0; i < axes.size(); ++i) csv << "l" << (i + 1) << ",";
    csv << "class,certifiedToJet";
    if (o.detectTangency) csv << ",selfTangency";
    csv << "\n";
    json pts = json::array();
    auto csv_field = [](const std::string& s) {
        if (s.find(',') == std::string::npos) return s;
        return "\"" + s + "\"";
    };
    for (const auto& pt : grid.points) {
        for (const Rat& l : pt.lambda) csv << rat_str(l) << ",";
        csv << csv_field(pt.cls ? pt.cls->name() : "error:" + pt.error) << "," << maxJet;
        if (o.detectTangency) csv << "," << (pt.selfTangency ? 1 : 0);
        csv << "\n";
        json pj{{"lambda", rat_list(pt.lambda)}, {"certifiedToJet", maxJet}};
        if (pt.cls) pj["class"] = pt.cls->name();
        else pj["error"] = pt.error;
        if (o.detectTangency) pj["selfTangency"] = pt.selfTangency;
        pts.push_back(pj);
    }
    if (o.csvPath.empty() && o.jsonPath.empty()) std::cout << csv.str();
    if (!o.csvPath.empty()) write_file(o.csvPath, csv.str());
    maybe_write_json(o, json{{"class", cls.name()}, {"points", pts}});
    return 0;
}

int cmd_adjacency(const Options& o) {
    const SingularityClass a = parse_class_or_throw(o.from);
    const SingularityClass b = parse_class_or_throw(o.to);
    std::cout << (adjacency(a, b) ? "true" : "false") << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"germforge: classification, envelopes and deformations of tangential families"};
    app.require_subcommand(1);

    auto add_family = [&](CLI::App* c) {
        c->add_option("--family", o.family, "family as '<x-expr> ; <y-expr>'")->required();
        c->add_flag("--reduced", o.reduced,
                    "treat the input as the reduced presentation (xi, phi) and shear it "
                    "into a tangential parameterization");
    };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--max-jet", o.maxJet, "jet order classifications are certified to");
        c->add_option("--json", o.jsonPath, "write a JSON report to this path");
    };

    CLI::App* classify = app.add_subcommand("classify", "classify a tangential family germ");
    add_family(classify);
    add_common(classify);

    CLI::App* prenormal = app.add_subcommand("prenormal", "reduce to the prenormal form");
    add_family(prenormal);
    add_common(prenormal);

    CLI::App* envelope = app.add_subcommand("envelope", "symbolic envelope branches and traces");
    add_family(envelope);
    add_common(envelope);
    envelope->add_option("--box", o.box, "trace box xi0:xi1:t0:t1");
    envelope->add_option("--res", o.res, "trace grid resolution")->check(CLI::Range(16, 4096));
    envelope->add_option("--svg", o.svgPath, "write an SVG trace");
    envelope->add_option("--csv", o.csvPath, "write a CSV trace");

    CLI::App* codim = app.add_subcommand("codim", "codimension and tangential codimension");
    add_family(codim);
    add_common(codim);

    CLI::App* normalForm = app.add_subcommand("normal-form", "print a catalog normal form");
    normalForm->add_option("--class", o.klass, "class name (I, II, S1,n, Tn, S2,2, S2,3+, S2,3-, S2,4)")
        ->required();
    add_common(normalForm);

    CLI::App* deform = app.add_subcommand("deform", "deform a catalog normal form and reclassify");
    deform->add_option("--class", o.klass, "class name")->required();
    deform->add_option("--deform", o.deform, "parameters, e.g. l1=1/2,l2=-3");
    add_common(deform);

    CLI::App* discriminant =
        app.add_subcommand("discriminant", "sample the polynomial-family discriminant");
    discriminant->add_option("--class", o.klass, "T-class name")->required();
    discriminant->add_option("--grid", o.grid, "axes lo:hi:count[,lo:hi:count...]")->required();
    discriminant->add_option("--csv", o.csvPath, "write CSV here instead of stdout");

    CLI::App* bifurcation = app.add_subcommand("bifurcation", "classify across a deformation grid");
    bifurcation->add_option("--class", o.klass, "class name")->required();
    bifurcation->add_option("--grid", o.grid, "axes lo:hi:count[,...]")->required();
    bifurcation->add_option("--csv", o.csvPath, "write the grid CSV here");
    bifurcation->add_option("--json", o.jsonPath, "write the grid JSON here");
    bifurcation->add_option("--max-jet", o.maxJet, "certification jet order");
    bifurcation->add_flag("--detect-tangency", o.detectTangency,
                          "run the numeric envelope self-tangency detector");

    CLI::App* adjacencyCmd = app.add_subcommand("adjacency", "query the adjacency diagram");
    adjacencyCmd->add_option("--from", o.from, "source class")->required();
    adjacencyCmd->add_option("--to", o.to, "target class")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const TruncBound b = total_degree(env_trunc_degree());
    const int maxJet = o.maxJet > 0 ? std::min(o.maxJet, b.degree - 2) : b.degree - 2;

    try {
        if (classify->parsed()) return cmd_classify(o, b, maxJet);
        if (prenormal->parsed()) return cmd_prenormal(o, b, maxJet);
        if (envelope->parsed()) return cmd_envelope(o, b, maxJet);
        if (codim->parsed()) return cmd_codim(o, b, maxJet);
        if (normalForm->parsed()) return cmd_normal_form(o, b);
        if (deform->parsed()) return cmd_deform(o, b, maxJet);
        if (discriminant->parsed()) return cmd_discriminant(o);
        if (bifurcation->parsed()) return cmd_bifurcation(o, b, maxJet);
        if (adjacencyCmd->parsed()) return cmd_adjacency(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!o.jsonPath.empty())
            std::cerr << json{{"error", e.what()}, {"code", static_cast<int>(e.code)}}.dump()
                      << "\n";
        return static_cast<int>(e.code);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!o.jsonPath.empty()) std::cerr << json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!o.jsonPath.empty()) std::cerr << json{{"error", e.what()}, {"code", 5}}.dump() << "\n";
        return 5;
    }
    return 2;
}

} // namespace germforge
