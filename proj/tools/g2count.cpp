// Command-line front end: exact superpotential/wall-crossing computations,
// homology fillings, and the numerical calibrated-geometry checks.
//
// Exit codes: 0 success, 1 validation/usage error, 2 verification FAIL.

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "assoc/hlcone.hpp"
#include "assoc/json_io.hpp"
#include "assoc/lawlor.hpp"
#include "assoc/u1.hpp"

using namespace assoc;

namespace {

struct Options {
    std::string catalogPath, thetaPath, paramsPath, ringPath, inputPath, phiPath, psiPath;
    std::string outPath;
    std::string cutoffStr = "4";
    std::string kind;
    bool json = false;
    bool verify = false;
    bool serial = false;
    bool csv = false;
    int samples = 256;
    int thetaSamples = 3;
    uint64_t seed = 1;
    double tol = 1e-10;
    double invTol = 1e-8;
    int family = 1;
    double s = 0.01;
    std::vector<double> aParams;
    std::vector<double> phiAngles;
};

Rat parse_cutoff(const std::string& s) {
    Rat c = rat_parse(s);
    if (!(c > 0)) throw std::invalid_argument("cutoff must be positive");
    return c;
}

ThetaPoint load_theta(const Options& opt, int n, const Rat& cutoff) {
    if (opt.thetaPath.empty()) return theta_one(n, cutoff);
    ThetaPoint t = theta_from_json(parse_file(opt.thetaPath));
    if ((int)t.lambdas.size() != n)
        throw std::invalid_argument("theta has " + std::to_string(t.lambdas.size()) +
                                    " components, catalog needs " + std::to_string(n));
    for (auto& l : t.lambdas) l = l.truncated(Cutoff::at(cutoff));
    check_theta(t, n);
    return t;
}

void emit(const Json& j, const Options& opt) {
    if (opt.outPath.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(opt.outPath);
        out << j.dump(2) << "\n";
    }
}

int cmd_phi_eval(const Options& opt) {
    Catalog c = catalog_from_json(parse_file(opt.catalogPath));
    Rat cutoff = parse_cutoff(opt.cutoffStr);
    ThetaPoint theta = load_theta(opt, c.n, cutoff);
    Series phi = opt.serial ? eval_phi_reference(c, theta, cutoff) : eval_phi(c, theta, cutoff);
    if (opt.json)
        emit(Json{{"phi", series_to_json(phi)}}, opt);
    else
        std::cout << series_str(phi) << "\n";
    return 0;
}

int cmd_phi_gw(const Options& opt) {
    Catalog c = catalog_from_json(parse_file(opt.catalogPath));
    Rat cutoff = parse_cutoff(opt.cutoffStr);
    GwTable t = extract_gw(c, cutoff);
    if (opt.json) {
        emit(gw_to_json(t), opt);
    } else {
        for (const auto& [cls, v] : t.gw) {
            std::cout << "(";
            for (size_t i = 0; i < cls.size(); ++i) std::cout << (i ? "," : "") << cls[i];
            std::cout << ")  area " << rat_str(t.area(cls)) << "  GW " << rat_str(v) << "\n";
        }
        if (t.gw.empty()) std::cout << "all counts vanish below q^" << rat_str(cutoff) << "\n";
    }
    return 0;
}

int cmd_phi_crit(const Options& opt) {
    Catalog c = catalog_from_json(parse_file(opt.catalogPath));
    Rat cutoff = parse_cutoff(opt.cutoffStr);
    GwTable t = extract_gw(c, cutoff);
    CriticalResult res = solve_critical(t, cutoff);
    if (opt.json) {
        Json j;
        j["obstructed"] = res.obstructed;
        if (res.obstructed)
            j["level"] = rat_str(res.obstructedLevel);
        else
            j["theta"] = theta_to_json(res.theta);
        emit(j, opt);
    } else if (res.obstructed) {
        std::cout << "Obstructed at level " << rat_str(res.obstructedLevel) << "\n";
    } else {
        for (size_t i = 0; i < res.theta.lambdas.size(); ++i)
            std::cout << "lambda_" << (i + 1) << " = " << series_str(res.theta.lambdas[i]) << "\n";
    }
    return 0;
}

int cmd_transition(const Options& opt) {
    Catalog before = catalog_from_json(parse_file(opt.catalogPath));
    Json pj = parse_file(opt.paramsPath);
    if (!opt.kind.empty() && pj.value("kind", "") != opt.kind)
        throw std::invalid_argument("--kind disagrees with the params file");
    Transition t = transition_from_json(pj);
    Catalog after = apply_transition(before, t);
    Json out = catalog_to_json(after);

    if (std::holds_alternative<TransitionX>(t)) {
        const auto& x = std::get<TransitionX>(t);
        auto [a2, u] = cycle_cross(before, x.record, x.delta, x.eps);
        (void)a2;
        out = Json{{"catalog", out}, {"reparametrization", qi_to_json(u)}};
    }
    emit(out, opt);

    if (opt.verify) {
        Rat cutoff = parse_cutoff(opt.cutoffStr);
        if (std::holds_alternative<TransitionX>(t)) {
            const auto& x = std::get<TransitionX>(t);
            auto first = cycle_cross_first_order_check(before, x.record, x.delta, x.eps, cutoff,
                                                       opt.thetaSamples, opt.seed);
            auto [a2, u] = cycle_cross(before, x.record, x.delta, x.eps);
            (void)a2;
            auto qrep = qi_check(u, opt.thetaSamples + 4, opt.seed, cutoff);
            if (first.order0 && first.order1 && qrep.pass) {
                std::cerr << "PASS: first-order invariance and increment condition mod q^"
                          << rat_str(cutoff) << "\n";
            } else {
                std::cerr << "FAIL: cycle crossing verification\n";
                return 2;
            }
        } else {
            auto rep = verify_invariance(before, after, cutoff, opt.thetaSamples, opt.seed);
            if (rep.pass) {
                std::cerr << "PASS: dPhi = 0 mod q^" << rat_str(cutoff) << " on " << rep.samples
                          << " theta samples\n";
            } else {
                std::cerr << "FAIL: dPhi != 0 at valuation " << rep.firstDifference.str() << "\n";
                return 2;
            }
        }
    }
    return 0;
}

int cmd_qcoh(const Options& opt) {
    CohRingData ring = ring_from_json(parse_file(opt.ringPath));
    Catalog c = catalog_from_json(parse_file(opt.catalogPath));
    Rat cutoff = parse_cutoff(opt.cutoffStr);
    GwTable gw = extract_gw(c, cutoff);
    auto qhs = validate_qhs_constraints(ring, gw);
    if (!qhs.empty()) {
        for (const auto& i : qhs) std::cerr << "rejected: " << i.what << "\n";
        return 1;
    }
    ThetaPoint theta = load_theta(opt, c.n, cutoff);
    auto dd = build_d(ring, gw, theta, cutoff);
    if (!dd.thetaCritical)
        std::cerr << "warning: theta is not critical mod q^" << rat_str(cutoff)
                  << "; quantum products may be ill-defined\n";
    QcohResult res = qh_groups(dd.d, cutoff, ring.betti);
    if (opt.json) {
        Json j;
        j["criticalTheta"] = dd.thetaCritical;
        Json dm = Json::array();
        for (const auto& row : dd.d) {
            Json r = Json::array();
            for (const auto& e : row) r.push_back(series_to_json(e));
            dm.push_back(r);
        }
        j["d"] = dm;
        Json kern = Json::array();
        for (const auto& k : res.qh3Kernel) {
            Json v = Json::array();
            for (const auto& e : k) v.push_back(series_to_json(e));
            kern.push_back(v);
        }
        j["qh3Kernel"] = kern;
        j["qh4FreeRank"] = res.qh4FreeRank;
        Json tors = Json::array();
        for (const auto& v : res.torsionExponents) tors.push_back(rat_str(v));
        j["qh4Torsion"] = tors;
        Json ranks = Json::array();
        for (int k = 0; k <= 7; ++k) ranks.push_back(ring.betti[(size_t)k]);
        j["betti"] = ranks;
        emit(j, opt);
    } else {
        std::cout << "QH^k ranks (k != 3,4 undeformed):";
        for (int k = 0; k <= 7; ++k) std::cout << " " << ring.betti[(size_t)k];
        std::cout << "\nQH^3 rank " << res.qh3Kernel.size() << "\n";
        for (const auto& k : res.qh3Kernel) {
            std::cout << "  kernel vector:";
            for (const auto& e : k) std::cout << "  [" << series_str(e) << "]";
            std::cout << "\n";
        }
        std::cout << "QH^4 free rank " << res.qh4FreeRank << ", torsion exponents:";
        if (res.torsionExponents.empty()) std::cout << " none";
        for (const auto& v : res.torsionExponents) std::cout << " " << rat_str(v);
        std::cout << "\n";
    }
    return 0;
}

int cmd_prop51(const Options& opt) {
    ConeSmoothingInput in = prop51_from_json(parse_file(opt.inputPath));
    ConeSmoothingReport rep = cone_smoothings(in);
    if (opt.json) {
        Json j;
        j["kernelSlope"] = {rep.kernelSlope[0].get_str(), rep.kernelSlope[1].get_str()};
        j["pairing"] = {rep.pairing[0].get_str(), rep.pairing[1].get_str(),
                        rep.pairing[2].get_str()};
        j["iN0"] = rep.iN0.get_str();
        j["iTilde"] = {rep.iTilde[0].get_str(), rep.iTilde[1].get_str(), rep.iTilde[2].get_str()};
        j["signedSum"] = rep.signedSum.get_str();
        j["signedSumZero"] = rep.signedSumZero;
        emit(j, opt);
    } else {
        std::cout << report_str(rep);
    }
    return rep.signedSumZero ? 0 : 2;
}

int cmd_lawlor_angles(const Options& opt) {
    if (opt.aParams.size() != 3) throw std::invalid_argument("--a needs three positive values");
    LawlorParams p{opt.aParams[0], opt.aParams[1], opt.aParams[2]};
    LawlorAngles ang = lawlor_angles(p, opt.tol);
    if (opt.json) {
        emit(Json{{"phi1", ang.phi1}, {"phi2", ang.phi2}, {"phi3", ang.phi3}, {"s", ang.s}}, opt);
    } else if (opt.csv) {
        std::printf("phi1,phi2,phi3,s\n%.15g,%.15g,%.15g,%.15g\n", ang.phi1, ang.phi2, ang.phi3,
                    ang.s);
    } else {
        std::printf("%-8s %18s\n", "angle", "value");
        std::printf("%-8s %18.15f\n", "phi1", ang.phi1);
        std::printf("%-8s %18.15f\n", "phi2", ang.phi2);
        std::printf("%-8s %18.15f\n", "phi3", ang.phi3);
        std::printf("%-8s %18.15f\n", "s", ang.s);
        std::printf("%-8s %18.3e\n", "sum-pi", ang.phi1 + ang.phi2 + ang.phi3 - M_PI);
    }
    return 0;
}

int cmd_lawlor_invert(const Options& opt) {
    if (opt.phiAngles.size() != 2) throw std::invalid_argument("--phi needs two angles");
    LawlorParams p = lawlor_invert(opt.phiAngles[0], opt.phiAngles[1], opt.s, opt.invTol);
    if (opt.json)
        emit(Json{{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}}, opt);
    else if (opt.csv)
        std::printf("a1,a2,a3\n%.15g,%.15g,%.15g\n", p.a1, p.a2, p.a3);
    else
        std::printf("a = (%.12g, %.12g, %.12g)\n", p.a1, p.a2, p.a3);
    return 0;
}

int cmd_hl_check(const Options& opt) {
    if (opt.family < 1 || opt.family > 3) throw std::invalid_argument("--family must be 1, 2 or 3");
    if (!(opt.s > 0)) throw std::invalid_argument("--s must be positive");
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI), radius(0.5, 2.0);
    double worst[3] = {0, 0, 0};
    for (int i = 0; i < opt.samples; ++i) {
        auto z = hl_point(static_cast<HlFamily>(opt.family), opt.s, radius(rng), angle(rng),
                          angle(rng));
        auto r = hl_membership_d(z, static_cast<HlFamily>(opt.family), opt.s);
        worst[0] = std::max(worst[0], std::fabs(r.moduli[0]));
        worst[1] = std::max(worst[1], std::fabs(r.moduli[1]));
        worst[2] = std::max(worst[2], std::fabs(r.imPart));
    }
    auto g1 = hl_graph_check(opt.family, opt.s, 1.0, opt.samples, opt.seed);
    auto g2 = hl_graph_check(opt.family, 2 * opt.s, 1.0, opt.samples, opt.seed);
    if (opt.json) {
        emit(Json{{"maxModulusResidual", std::max(worst[0], worst[1])},
                  {"maxImResidual", worst[2]},
                  {"graphResidual", g1.residual},
                  {"graphResidualDoubled", g2.residual},
                  {"secondOrderRatio", g2.residual / g1.residual}},
             opt);
        return 0;
    }
    std::printf("%-26s %12.3e\n", "max |modulus residual|", std::max(worst[0], worst[1]));
    std::printf("%-26s %12.3e\n", "max |Im z1 z2 z3|", worst[2]);
    std::printf("%-26s %12.3e\n", "graph residual at s", g1.residual);
    std::printf("%-26s %12.3e\n", "graph residual at 2s", g2.residual);
    std::printf("%-26s %12.6f (expect ~4)\n", "second-order ratio", g2.residual / g1.residual);
    return 0;
}

int cmd_u1_jcheck(const Options& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    int failures = 0;
    for (int i = 0; i < opt.samples; ++i) {
        std::array<Rat, 7> x;
        for (auto& c : x) c = rat(num(rng), den(rng));
        if (!u1_y_identity(x)) ++failures;
        Rat t = rat(num(rng), den(rng));
        if (!(u1_reduce(u1_act_rational(x, t)) == u1_reduce(x))) ++failures;
    }
    double worstJ = 0;
    for (int i = 0; i < opt.samples; ++i) {
        std::array<double, 6> p;
        for (auto& c : p) c = U(rng);
        if (p[3] * p[3] + p[4] * p[4] + p[5] * p[5] < 1e-4) continue;
        auto j = j_matrix(p);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                double jj = 0;
                for (int k = 0; k < 6; ++k) jj += j[a][k] * j[k][b];
                worstJ = std::max(worstJ, std::fabs(jj - (a == b ? -1.0 : 0.0)));
            }
    }
    std::array<double, 6> hp = {0.9, 0, 0, 1.7, 0, 0};
    std::array<double, 6> t1{}, t2{};
    t1[0] = 1;
    t2[3] = 1;
    double exampleResidual = jholo_residual(hp, t1, t2);
    bool jsonOk = failures == 0 && worstJ < 1e-12 && exampleResidual < 1e-12;
    if (opt.json) {
        emit(Json{{"exactIdentities", failures == 0},
                  {"maxJSquaredError", worstJ},
                  {"halfPlaneResidual", exampleResidual},
                  {"pass", jsonOk}},
             opt);
        return jsonOk ? 0 : 2;
    }
    std::printf("%-34s %s\n", "exact reduction identities",
                failures == 0 ? "pass" : "FAIL");
    std::printf("%-34s %12.3e\n", "max |J^2 + I| entry", worstJ);
    std::printf("%-34s %12.3e\n", "half-plane J-invariance residual", exampleResidual);
    bool ok = failures == 0 && worstJ < 1e-12 && exampleResidual < 1e-12;
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 2;
}

int cmd_check_tame(const Options& opt) {
    AltForm phi = opt.phiPath.empty() ? phi0() : form_from_json(parse_file(opt.phiPath));
    AltForm psi = opt.psiPath.empty() ? star_phi0() : form_from_json(parse_file(opt.psiPath));
    TamenessReport rep = tameness_check(phi, psi, opt.samples, opt.seed);
    if (opt.json) {
        emit(Json{{"frameResidual", rep.frameResidual},
                  {"minValue", rep.minValue},
                  {"samples", rep.samples},
                  {"pass", rep.pass}},
             opt);
        return rep.pass ? 0 : 2;
    }
    std::printf("%-22s %12.3e\n", "frame residual", rep.frameResidual);
    std::printf("%-22s %15.12f\n", "min phi|_V", rep.minValue);
    std::printf("%-22s %d\n", "samples", rep.samples);
    std::printf("%s\n", rep.pass ? "PASS: taming inequality holds on all samples"
                                 : "FAIL: nonpositive value found");
    return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact wall-crossing superpotentials and calibrated-geometry checks"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", opt.json, "machine-readable output");
        cmd->add_option("--out", opt.outPath, "write primary output to a file");
    };

    CLI::App* phi = app.add_subcommand("phi", "superpotential evaluation");
    phi->require_subcommand(1);
    CLI::App* phiEval = phi->add_subcommand("eval", "evaluate Phi(theta) mod q^cutoff");
    phiEval->add_option("--catalog", opt.catalogPath)->required();
    phiEval->add_option("--theta", opt.thetaPath, "theta file (default theta = 1)");
    phiEval->add_option("--cutoff", opt.cutoffStr)->required();
    phiEval->add_flag("--serial", opt.serial, "use the serial reference evaluator");
    add_common(phiEval);
    CLI::App* phiGw = phi->add_subcommand("gw", "extract the per-class counts");
    phiGw->add_option("--catalog", opt.catalogPath)->required();
    phiGw->add_option("--cutoff", opt.cutoffStr)->required();
    add_common(phiGw);
    CLI::App* phiCrit = phi->add_subcommand("crit", "solve for a critical theta");
    phiCrit->add_option("--catalog", opt.catalogPath)->required();
    phiCrit->add_option("--cutoff", opt.cutoffStr)->required();
    add_common(phiCrit);

    CLI::App* trans = app.add_subcommand("transition", "wall-crossing transitions");
    CLI::App* transApply = trans->add_subcommand("apply", "apply a transition to a catalog");
    transApply->add_option("--kind", opt.kind, "A|B|C|D|E|X (checked against the params file)");
    transApply->add_option("--catalog", opt.catalogPath)->required();
    transApply->add_option("--params", opt.paramsPath)->required();
    transApply->add_flag("--verify", opt.verify, "verify invariance and set the exit code");
    transApply->add_option("--cutoff", opt.cutoffStr);
    transApply->add_option("--samples", opt.thetaSamples, "theta samples for verification");
    transApply->add_option("--seed", opt.seed);
    add_common(transApply);

    CLI::App* qcoh = app.add_subcommand("qcoh", "quantum cohomology");
    CLI::App* qcohCompute = qcoh->add_subcommand("compute", "kernel/cokernel of the deformed d");
    qcohCompute->add_option("--ring", opt.ringPath)->required();
    qcohCompute->add_option("--catalog", opt.catalogPath)->required();
    qcohCompute->add_option("--theta", opt.thetaPath);
    qcohCompute->add_option("--cutoff", opt.cutoffStr)->required();
    add_common(qcohCompute);

    CLI::App* topo = app.add_subcommand("topo", "integer homology computations");
    CLI::App* prop51 = topo->add_subcommand("prop51", "T^2-cone smoothing invariants");
    prop51->add_option("--input", opt.inputPath)->required();
    add_common(prop51);

    CLI::App* lawlor = app.add_subcommand("lawlor", "neck family numerics");
    CLI::App* lawlorAngles = lawlor->add_subcommand("angles", "angles and scale from parameters");
    lawlorAngles->add_option("--a", opt.aParams, "three positive parameters")->expected(3);
    lawlorAngles->add_option("--tol", opt.tol);
    lawlorAngles->add_flag("--csv", opt.csv);
    lawlorAngles->add_flag("--json", opt.json);
    CLI::App* lawlorInvert = lawlor->add_subcommand("invert", "parameters from angles and scale");
    lawlorInvert->add_option("--phi", opt.phiAngles, "phi1 phi2 in (0,pi)")->expected(2);
    lawlorInvert->add_option("--s", opt.s)->required();
    lawlorInvert->add_option("--tol", opt.invTol);
    lawlorInvert->add_flag("--csv", opt.csv);
    lawlorInvert->add_flag("--json", opt.json);

    CLI::App* hl = app.add_subcommand("hl", "T^2-cone smoothing numerics");
    CLI::App* hlCheck = hl->add_subcommand("check", "membership and graph-model residuals");
    hlCheck->add_option("--family", opt.family)->required();
    hlCheck->add_option("--s", opt.s)->required();
    hlCheck->add_option("--samples", opt.samples);
    hlCheck->add_option("--seed", opt.seed);
    hlCheck->add_flag("--json", opt.json);

    CLI::App* u1 = app.add_subcommand("u1", "circle reduction checks");
    CLI::App* jcheck = u1->add_subcommand("jcheck", "reduction identities and J structure");
    jcheck->add_option("--samples", opt.samples);
    jcheck->add_option("--seed", opt.seed);
    jcheck->add_flag("--json", opt.json);

    CLI::App* g2 = app.add_subcommand("g2", "pointwise form checks");
    CLI::App* tame = g2->add_subcommand("check-tame", "sampled taming inequality");
    tame->add_option("--phi", opt.phiPath, "3-form file (default: model form)");
    tame->add_option("--psi", opt.psiPath, "4-form file (default: model dual form)");
    tame->add_option("--samples", opt.samples);
    tame->add_option("--seed", opt.seed);
    tame->add_flag("--json", opt.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (phiEval->parsed()) return cmd_phi_eval(opt);
        if (phiGw->parsed()) return cmd_phi_gw(opt);
        if (phiCrit->parsed()) return cmd_phi_crit(opt);
        if (transApply->parsed()) return cmd_transition(opt);
        if (qcohCompute->parsed()) return cmd_qcoh(opt);
        if (prop51->parsed()) return cmd_prop51(opt);
        if (lawlorAngles->parsed()) return cmd_lawlor_angles(opt);
        if (lawlorInvert->parsed()) return cmd_lawlor_invert(opt);
        if (hlCheck->parsed()) return cmd_hl_check(opt);
        if (jcheck->parsed()) return cmd_u1_jcheck(opt);
        if (tame->parsed()) return cmd_check_tame(opt);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
