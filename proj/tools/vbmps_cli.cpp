// Command-line front end: build tensor families, valence-bond states and
// parent Hamiltonians from flags, run verification checks, and emit reports
// as human-readable text or machine-readable JSON.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error
// (unknown flag / bad value), 3 dimension cap exceeded.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vbmps/vbmps.hpp"

namespace {

using namespace vbmps;

struct EmitOptions {
    std::string format = "text";
    std::string out_path;
};

void add_emit_options(CLI::App* sub, EmitOptions& emit) {
    sub->add_option("--format", emit.format, "Report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", emit.out_path, "Write the JSON report to this path");
}

// Emit the finished report and map its checks onto the exit code.
int finish(ReportDocument& doc, const Stopwatch& sw, const EmitOptions& emit) {
    doc.timing_ms = sw.elapsed_ms();
    if (!emit.out_path.empty()) {
        std::ofstream f(emit.out_path);
        if (!f) throw std::runtime_error("cannot open --out path '" + emit.out_path + "'");
        f << doc.to_json().dump(2) << "\n";
    }
    if (emit.format == "json")
        std::cout << doc.to_json().dump(2) << "\n";
    else
        std::cout << doc.to_text();
    return doc.all_pass() ? 0 : 1;
}

// "re" or "re,im" -> complex amplitude.
Complex parse_complex(const std::string& text) {
    auto to_double = [&](const std::string& part) {
        std::size_t used = 0;
        double v = std::stod(part, &used);
        if (used != part.size())
            throw std::invalid_argument("bad complex component '" + part + "'");
        return v;
    };
    auto comma = text.find(',');
    if (comma == std::string::npos) return Complex(to_double(text), 0.0);
    return Complex(to_double(text.substr(0, comma)), to_double(text.substr(comma + 1)));
}

Json family_matrices(const SphericalTensorFamily& fam) {
    Json mats = Json::object();
    for (auto it = fam.components.rbegin(); it != fam.components.rend(); ++it)
        mats["A[" + it->first.str() + "]"] = to_json(it->second);
    return mats;
}

Json multiplet_summary(const NullSpaceResult& ns) {
    Json arr = Json::array();
    for (const auto& m : ns.multiplets)
        arr.push_back(Json{{"label", m.label},
                           {"j", to_json(m.j)},
                           {"dimension", static_cast<long long>(m.members.size())}});
    return arr;
}

void check_close(ReportDocument& doc, const std::string& name, double got, double want,
                 double tol) {
    double dev = std::abs(got - want);
    doc.add_check(name, dev <= tol, dev, tol);
}

// --- tensor ----------------------------------------------------------------

int run_tensor(const std::string& rank_text, bool verify, const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "tensor";
    HalfInt s = parse_half_int(rank_text);
    doc.inputs["rank"] = to_json(s);
    doc.inputs["verify"] = verify;

    SphericalTensorFamily fam = canonical_tensor(s);
    doc.results["physical_dimension"] = fam.physical_dimension();
    doc.results["aux_dimension"] = fam.aux_dimension();
    doc.results["matrices"] = family_matrices(fam);
    if (verify) {
        SphericalCheckReport rep = verify_spherical(fam, direct_sum_generators(fam.aux), 1e-10);
        doc.add_check("spherical commutation relations", rep.pass, rep.max_deviation,
                      rep.tolerance);
    }
    return finish(doc, sw, emit);
}

// --- vbs --------------------------------------------------------------------

int run_vbs(const std::string& s_text, const std::string& s2_text, bool fusion,
            const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "vbs";
    HalfInt s = parse_half_int(s_text), s2 = parse_half_int(s2_text);
    doc.inputs["s"] = to_json(s);
    doc.inputs["sprime"] = to_json(s2);
    doc.inputs["fusion"] = fusion;

    SphericalTensorFamily fam = vbs_tensor(s, s2);
    doc.results["rank"] = to_json(fam.rank);
    doc.results["physical_dimension"] = fam.physical_dimension();
    doc.results["aux_dimension"] = fam.aux_dimension();
    doc.results["matrices"] = family_matrices(fam);
    SphericalCheckReport rep = verify_spherical(fam, direct_sum_generators(fam.aux), 1e-10);
    doc.add_check("spherical commutation relations", rep.pass, rep.max_deviation, rep.tolerance);

    if (fusion) {
        FusionSpectrum spec = fusion_spectrum(fam);
        Json channels = Json::object();
        Json absent = Json::array();
        for (const auto& [j, c] : spec.channels) {
            channels[std::to_string(j)] = c;
            if (c == 0) absent.push_back(j);
        }
        doc.results["fusion_channels"] = channels;
        doc.results["absent_channels"] = absent;

        long long jgap = std::max(s.twice(), s2.twice()); // max(2s, 2s')
        long long jmax = s.twice() + s2.twice();          // 2s + 2s'
        long long violations = 0;
        for (long long j = 0; j <= jmax; ++j)
            if (spec.present(j) == (j > jgap)) ++violations;
        doc.add_check("channels absent exactly on (" + std::to_string(jgap) + ", " +
                          std::to_string(jmax) + "]",
                      violations == 0, static_cast<double>(violations), 0.5);
    }
    return finish(doc, sw, emit);
}

// --- dimer -------------------------------------------------------------------

int run_dimer(const std::string& spin_text, long long sites, bool correlations, bool parent,
              const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "dimer";
    HalfInt s = parse_half_int(spin_text);
    doc.inputs["spin"] = to_json(s);
    doc.inputs["sites"] = sites;
    doc.inputs["correlations"] = correlations;
    doc.inputs["parent"] = parent;
    if (sites < 4 || sites % 2 != 0)
        throw std::invalid_argument("--sites must be even and at least 4");
    long long n_pairs = sites / 2;
    const double tol = 1e-9;

    MpsChain chain = uniform_chain(canonical_tensor(s), sites);
    CVector psi = expand_state(chain);
    double z = transfer_normalization(chain);
    double norm2 = psi.squaredNorm();
    doc.results["n_sites"] = sites;
    doc.results["aux_dimension"] = chain.aux_dimension();
    doc.results["transfer_normalization"] = z;
    doc.results["state_norm_squared"] = norm2;
    check_close(doc, "transfer normalization equals brute-force norm", z, norm2,
                tol * std::max(1.0, norm2));

    CVector phi1 = dimer_state({s, sites, 0});
    CVector phi2 = dimer_state({s, sites, 1});
    double equiv = phase_aligned_distance(psi, phi1 + phi2);
    doc.results["mps_vs_dimer_distance"] = equiv;
    doc.add_check("chain equals the dimer-covering superposition", equiv <= tol, equiv, tol);

    if (correlations) {
        DimerPredictions pred = analytic_predictions(s, n_pairs);
        Complex overlap = phi1.dot(phi2);
        CVector plus = phi1 + phi2, minus = phi1 - phi2;
        double corr_p = state_correlation(plus, s, sites, 0, 1);
        double corr_m = state_correlation(minus, s, sites, 0, 1);
        doc.results["overlap"] = to_json(overlap);
        doc.results["overlap_predicted"] = pred.overlap;
        doc.results["corr_plus"] = corr_p;
        doc.results["corr_minus"] = corr_m;
        doc.results["corr_plus_predicted"] = pred.corr_plus;
        doc.results["corr_minus_predicted"] = pred.corr_minus;
        doc.add_check("covering overlap matches the closed form",
                      std::abs(overlap - Complex(pred.overlap, 0)) <= tol,
                      std::abs(overlap - Complex(pred.overlap, 0)), tol);
        check_close(doc, "plus-state norm", plus.squaredNorm(), pred.norm_plus, tol);
        check_close(doc, "minus-state norm", minus.squaredNorm(), pred.norm_minus, tol);
        check_close(doc, "plus-state nearest-neighbour correlation", corr_p, pred.corr_plus, tol);
        check_close(doc, "minus-state nearest-neighbour correlation", corr_m, pred.corr_minus,
                    tol);
    }

    if (parent) {
        ToleranceConfig tc;
        SiteSystem sys = uniform_sites(s, 3);
        std::vector<CVector> preferred =
            (s == HalfInt::from_int(1)) ? spin1_preferred_tops() : std::vector<CVector>{};
        NullSpaceResult ns =
            classify_multiplets(null_space(canonical_tensor(s), 3, tc), sys, preferred, tc);
        CouplingSpec coup;
        for (const auto& m : ns.multiplets) coup.lambda[m.label] = 1.0;
        LocalHamiltonian local = local_hamiltonian(ns, sys, coup);
        CMatrix h = assemble_hamiltonian(local, sites);
        GroundStateReport gs = verify_ground_state(h, {phi1, phi2, psi}, tc);
        doc.results["null_dimension"] = static_cast<long long>(ns.basis.size());
        doc.results["multiplets"] = multiplet_summary(ns);
        doc.results["min_eigenvalue"] = gs.min_eigenvalue;
        doc.results["ground_space_dimension"] = gs.ground_space_dim;
        doc.add_check("parent H annihilates covering 1", gs.residuals[0] <= 1e-8,
                      gs.residuals[0], 1e-8);
        doc.add_check("parent H annihilates covering 2", gs.residuals[1] <= 1e-8,
                      gs.residuals[1], 1e-8);
        doc.add_check("parent H annihilates the chain state", gs.residuals[2] <= 1e-8,
                      gs.residuals[2], 1e-8);
        doc.add_check("parent H positive semidefinite", gs.min_eigenvalue >= -tc.psd_tol,
                      std::max(0.0, -gs.min_eigenvalue), tc.psd_tol);
    }
    return finish(doc, sw, emit);
}

// --- alternating ---------------------------------------------------------------

int run_alternating(const std::string& s_text, const std::string& s2_text, long long periods,
                    const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "alternating";
    HalfInt s = parse_half_int(s_text), s2 = parse_half_int(s2_text);
    doc.inputs["s"] = to_json(s);
    doc.inputs["sprime"] = to_json(s2);
    doc.inputs["periods"] = periods;
    const double tol = 1e-9;

    MpsChain chain = alternating_chain(s, s2, periods);
    CVector psi = expand_state(chain);
    CVector product = alternating_dimer_state(s, s2, periods);
    double z = transfer_normalization(chain);
    double norm2 = psi.squaredNorm();
    double equiv = phase_aligned_distance(psi, product);
    doc.results["n_sites"] = chain.n_sites;
    doc.results["aux_dimension"] = chain.aux_dimension();
    doc.results["transfer_normalization"] = z;
    doc.results["state_norm_squared"] = norm2;
    doc.results["mps_vs_product_distance"] = equiv;
    check_close(doc, "transfer normalization equals brute-force norm", z, norm2,
                tol * std::max(1.0, norm2));
    doc.add_check("chain equals the alternating singlet product", equiv <= tol, equiv, tol);
    return finish(doc, sw, emit);
}

// --- symbreak --------------------------------------------------------------------

int run_symbreak(const std::string& spin_text, const std::vector<std::string>& alpha_texts,
                 long long periods, const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "symbreak";
    HalfInt s = parse_half_int(spin_text);
    doc.inputs["spin"] = to_json(s);
    doc.inputs["periods"] = periods;
    const double tol = 1e-9;

    if (static_cast<long long>(alpha_texts.size()) != s.multiplicity())
        throw std::invalid_argument("--alpha needs exactly " + std::to_string(s.multiplicity()) +
                                    " amplitudes (m = +" + s.str() + " down to -" + s.str() + ")");
    SymmetryBreakingSpec spec;
    spec.s = s;
    Json alpha_echo = Json::array();
    for (std::size_t i = 0; i < alpha_texts.size(); ++i) {
        Complex a = parse_complex(alpha_texts[i]);
        spec.alpha[s - HalfInt::from_int(static_cast<long long>(i))] = a;
        alpha_echo.push_back(to_json(a));
    }
    doc.inputs["alpha"] = alpha_echo;

    MpsChain chain = symmetry_breaking_chain(spec, periods);
    CVector psi = expand_state(chain);
    CVector product = symmetry_breaking_state(spec, periods);
    double z = transfer_normalization(chain);
    double norm2 = psi.squaredNorm();
    double equiv = phase_aligned_distance(psi, product);
    doc.results["n_sites"] = chain.n_sites;
    doc.results["transfer_normalization"] = z;
    doc.results["state_norm_squared"] = norm2;
    doc.results["mps_vs_product_distance"] = equiv;
    check_close(doc, "transfer normalization equals brute-force norm", z, norm2,
                tol * std::max(1.0, norm2));
    doc.add_check("chain equals the explicit symmetry-breaking product", equiv <= tol, equiv,
                  tol);
    return finish(doc, sw, emit);
}

// --- parent ---------------------------------------------------------------------

int run_parent(const std::string& spin_text, long long window, std::vector<double> lambdas,
               long long sites, const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "parent";
    HalfInt s = parse_half_int(spin_text);
    if (window < 2) throw std::invalid_argument("--window must be at least 2");
    if (sites == 0) sites = 2 * window;
    if (sites < window) throw std::invalid_argument("--sites must be at least the window size");
    doc.inputs["spin"] = to_json(s);
    doc.inputs["window"] = window;
    doc.inputs["sites"] = sites;

    ToleranceConfig tc;
    SiteSystem sys = uniform_sites(s, window);
    std::vector<CVector> preferred = (s == HalfInt::from_int(1) && window == 3)
                                         ? spin1_preferred_tops()
                                         : std::vector<CVector>{};
    NullSpaceResult ns =
        classify_multiplets(null_space(canonical_tensor(s), window, tc), sys, preferred, tc);
    doc.results["null_dimension"] = static_cast<long long>(ns.basis.size());
    doc.results["multiplets"] = multiplet_summary(ns);
    if (ns.multiplets.empty())
        throw std::invalid_argument("the window-" + std::to_string(window) +
                                    " null space is empty; no parent Hamiltonian exists");

    CouplingSpec coup;
    if (lambdas.empty()) lambdas.assign(ns.multiplets.size(), 1.0);
    if (lambdas.size() != ns.multiplets.size())
        throw std::invalid_argument("--lambda needs exactly " +
                                    std::to_string(ns.multiplets.size()) +
                                    " values (multiplet order as reported)");
    Json lambda_echo = Json::object();
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        coup.lambda[ns.multiplets[i].label] = lambdas[i];
        lambda_echo[ns.multiplets[i].label] = lambdas[i];
    }
    doc.inputs["lambda"] = lambda_echo;

    LocalHamiltonian local = local_hamiltonian(ns, sys, coup);
    doc.results["local_h"] = to_json(local.h);
    CMatrix h = assemble_hamiltonian(local, sites);
    CVector psi = expand_state(uniform_chain(canonical_tensor(s), sites));
    GroundStateReport gs = verify_ground_state(h, {psi}, tc);

    HermitianEig eig = eig_hermitian(h, tc.assert_tol);
    long long n_report = std::min<long long>(16, eig.eigenvalues.size());
    Json spectrum = Json::array();
    for (long long i = 0; i < n_report; ++i) spectrum.push_back(eig.eigenvalues(i));
    doc.results["lowest_eigenvalues"] = spectrum;
    doc.results["min_eigenvalue"] = gs.min_eigenvalue;
    doc.results["ground_space_dimension"] = gs.ground_space_dim;

    doc.add_check("H annihilates the chain state", gs.residuals[0] <= 1e-8, gs.residuals[0],
                  1e-8);
    doc.add_check("H positive semidefinite", gs.min_eigenvalue >= -tc.psd_tol,
                  std::max(0.0, -gs.min_eigenvalue), tc.psd_tol);
    return finish(doc, sw, emit);
}

// --- spin1-couplings ---------------------------------------------------------------

int run_spin1_couplings(const Spin1Couplings& lam, const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "spin1-couplings";
    doc.inputs["lambda0"] = lam.l0;
    doc.inputs["lambda1"] = lam.l1;
    doc.inputs["lambda2"] = lam.l2;
    doc.inputs["lambda2p"] = lam.l2p;
    doc.inputs["lambda3"] = lam.l3;

    ToleranceConfig tc;
    Spin1CouplingReport rep = spin1_coupling_table(lam, tc);
    Json table = Json::array();
    for (Eigen::Index i = 0; i < rep.fitted.size(); ++i)
        table.push_back(Json{{"coupling", "J" + std::to_string(i)},
                             {"operator", rep.labels[static_cast<std::size_t>(i)]},
                             {"fitted", rep.fitted(i)},
                             {"printed", rep.printed(i)}});
    doc.results["table"] = table;
    doc.results["fit_residual"] = rep.fit_residual;
    doc.results["max_mismatch"] = rep.max_mismatch;
    doc.add_check("fitted couplings match the closed-form table", rep.max_mismatch <= 1e-9,
                  rep.max_mismatch, 1e-9);
    doc.add_check("operator fit residual", rep.fit_residual <= 1e-9, rep.fit_residual, 1e-9);
    return finish(doc, sw, emit);
}

// --- verify-all ------------------------------------------------------------------

int run_verify_all(const EmitOptions& emit) {
    Stopwatch sw;
    ReportDocument doc;
    doc.command = "verify-all";
    Json criteria = Json::array();
    for (const AcceptanceCheck& c : run_acceptance_suite()) {
        criteria.push_back(Json{{"number", c.number}, {"name", c.name}, {"pass", c.pass}});
        for (const CheckItem& item : c.subchecks)
            doc.add_check("c" + std::to_string(c.number) + ": " + item.name, item.pass,
                          item.measured, item.tolerance);
    }
    doc.results["criteria"] = criteria;
    return finish(doc, sw, emit);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Valence-bond MPS toolkit: canonical spherical tensors, dimerized and "
                 "VBS states, and their parent Hamiltonians"};
    app.require_subcommand(1);
    int rc = 0;

    // tensor
    std::string tensor_rank;
    bool tensor_verify = false;
    EmitOptions tensor_emit;
    auto* tensor = app.add_subcommand("tensor", "Canonical rank-s tensor family");
    tensor->add_option("--rank", tensor_rank, "Tensor rank s, e.g. 3/2 or 1.5")->required();
    tensor->add_flag("--verify", tensor_verify, "Check the spherical commutation relations");
    add_emit_options(tensor, tensor_emit);
    tensor->callback([&] { rc = run_tensor(tensor_rank, tensor_verify, tensor_emit); });

    // vbs
    std::string vbs_s, vbs_s2;
    bool vbs_fusion = false;
    EmitOptions vbs_emit;
    auto* vbs = app.add_subcommand("vbs", "Generalized valence-bond tensor on s ⊕ s'");
    vbs->add_option("--s", vbs_s, "First auxiliary spin")->required();
    vbs->add_option("--sprime", vbs_s2, "Second auxiliary spin")->required();
    vbs->add_flag("--fusion", vbs_fusion, "Report the fusion spectrum of pairwise products");
    add_emit_options(vbs, vbs_emit);
    vbs->callback([&] { rc = run_vbs(vbs_s, vbs_s2, vbs_fusion, vbs_emit); });

    // dimer
    std::string dimer_spin;
    long long dimer_sites = 0;
    bool dimer_corr = false, dimer_parent = false;
    EmitOptions dimer_emit;
    auto* dimer = app.add_subcommand("dimer", "Fully dimerized states on a ring");
    dimer->add_option("--spin", dimer_spin, "Site spin s")->required();
    dimer->add_option("--sites", dimer_sites, "Ring length (even, at least 4)")->required();
    dimer->add_flag("--correlations", dimer_corr,
                    "Compare overlap/norms/correlations against the closed forms");
    dimer->add_flag("--parent", dimer_parent,
                    "Build the window-3 parent Hamiltonian and verify the ground space");
    add_emit_options(dimer, dimer_emit);
    dimer->callback(
        [&] { rc = run_dimer(dimer_spin, dimer_sites, dimer_corr, dimer_parent, dimer_emit); });

    // alternating
    std::string alt_s, alt_s2;
    long long alt_periods = 1;
    EmitOptions alt_emit;
    auto* alternating =
        app.add_subcommand("alternating", "Alternating (s, s') singlet chain and its MPS");
    alternating->add_option("--s", alt_s, "First spin")->required();
    alternating->add_option("--sprime", alt_s2, "Second spin")->required();
    alternating->add_option("--periods", alt_periods, "Number of 4-site periods");
    add_emit_options(alternating, alt_emit);
    alternating->callback([&] { rc = run_alternating(alt_s, alt_s2, alt_periods, alt_emit); });

    // symbreak
    std::string sb_spin;
    std::vector<std::string> sb_alpha;
    long long sb_periods = 1;
    EmitOptions sb_emit;
    auto* symbreak =
        app.add_subcommand("symbreak", "Symmetry-breaking chain |S>|S>|alpha> and its MPS");
    symbreak->add_option("--spin", sb_spin, "Site spin s")->required();
    symbreak
        ->add_option("--alpha", sb_alpha,
                     "On-site amplitudes, m = +s down to -s; each 're' or 're,im'")
        ->required()
        ->expected(-1);
    symbreak->add_option("--periods", sb_periods, "Number of 3-site periods");
    add_emit_options(symbreak, sb_emit);
    symbreak->callback([&] { rc = run_symbreak(sb_spin, sb_alpha, sb_periods, sb_emit); });

    // parent
    std::string parent_spin;
    long long parent_window = 3, parent_sites = 0;
    std::vector<double> parent_lambdas;
    EmitOptions parent_emit;
    auto* parent =
        app.add_subcommand("parent", "Null space, multiplets, and parent Hamiltonian spectrum");
    parent->add_option("--spin", parent_spin, "Site spin s")->required();
    parent->add_option("--window", parent_window, "Interaction window size k (default 3)");
    parent->add_option("--lambda", parent_lambdas,
                       "Positive couplings, one per multiplet in the reported order "
                       "(default: all 1)");
    parent->add_option("--sites", parent_sites, "Ring length (default 2k)");
    add_emit_options(parent, parent_emit);
    parent->callback([&] {
        rc = run_parent(parent_spin, parent_window, parent_lambdas, parent_sites, parent_emit);
    });

    // spin1-couplings
    Spin1Couplings lam;
    EmitOptions coup_emit;
    auto* couplings = app.add_subcommand(
        "spin1-couplings", "Spin-1 window-3 coupling table: fitted vs closed-form J");
    couplings->add_option("--lambda0", lam.l0, "Spin-0 channel coupling");
    couplings->add_option("--lambda1", lam.l1, "Spin-1 channel coupling");
    couplings->add_option("--lambda2", lam.l2, "First spin-2 channel coupling");
    couplings->add_option("--lambda2p", lam.l2p, "Second spin-2 channel coupling");
    couplings->add_option("--lambda3", lam.l3, "Spin-3 channel coupling");
    add_emit_options(couplings, coup_emit);
    couplings->callback([&] { rc = run_spin1_couplings(lam, coup_emit); });

    // verify-all
    EmitOptions verify_emit;
    auto* verify_all = app.add_subcommand("verify-all", "Run the full acceptance suite");
    add_emit_options(verify_all, verify_emit);
    verify_all->callback([&] { rc = run_verify_all(verify_emit); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DimensionCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
