#include "spheretps/errors.hpp"
#include "spheretps/fit.hpp"
#include "spheretps/io.hpp"
#include "spheretps/kernel.hpp"
#include "spheretps/verify.hpp"

#include "CLI11.hpp"

#include <Eigen/Dense>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int EXIT_USAGE = 2;
constexpr int EXIT_DATA = 3;
constexpr int EXIT_NUMERIC = 4;
constexpr int EXIT_VERIFY = 5;

struct KernelArgs {
    int d = 3, m = 2, ell = 0;
    double xi = 0.0, tol = 1e-10;
    std::string method = "auto";
};

struct FitArgs {
    std::string data, weights, out, format = "cartesian";
    int d = 3, m = 2, ell = 0;
    double mu = 0.0;
    int interp_from = 1;
};

struct PredictArgs {
    std::string model, points, out, format = "cartesian";
};

stps::DataFormat parse_format(const std::string& f)
{
    return f == "geo" ? stps::DataFormat::GeoLonLat : stps::DataFormat::Cartesian;
}

int run_kernel(const KernelArgs& a)
{
    stps::KernelSpec spec{a.d, a.m, a.ell, stps::method_from_name(a.method)};
    if (spec.method == stps::KernelMethod::Series) {
        stps::SeriesControl ctl;
        ctl.abs_tol = a.tol;
        const double v = stps::k_series(spec, a.xi, ctl);
        std::cout << stps::format_double(v) << '\n';
        std::cout << "used_terms=" << ctl.used_terms
                  << " tail_estimate=" << stps::format_double(ctl.tail_estimate) << '\n';
    } else {
        std::cout << stps::format_double(stps::kernel_xi(spec, a.xi)) << '\n';
    }
    return 0;
}

int run_verify(const std::string& suite)
{
    std::vector<stps::CheckResult> results;
    if (suite == "catalog") results = stps::verify_catalog();
    else if (suite == "props") results = stps::verify_props();
    else results = stps::verify_recurrence();

    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%s %s: residual=%.3g (bound %.3g)\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.residual, r.bound);
        all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "all checks passed" : "some checks FAILED");
    return all_pass ? 0 : EXIT_VERIFY;
}

int run_fit(const FitArgs& a)
{
    const stps::DataSet data = stps::read_data(a.data, parse_format(a.format), a.d);
    const int n = data.pts.n();
    if (a.interp_from < 1 || a.interp_from > n + 1)
        throw stps::DomainError("--interp-from must lie in [1, n+1] (n = " + std::to_string(n) + ")");

    stps::FitProblem prob;
    prob.spec = stps::KernelSpec{a.d, a.m, a.ell, stps::KernelMethod::Auto};
    prob.pts = data.pts;
    prob.y = data.y;
    prob.mu = a.mu;
    prob.p = a.interp_from - 1;
    if (!a.weights.empty()) {
        const auto rows = stps::read_matrix(a.weights, static_cast<size_t>(prob.p));
        if (static_cast<int>(rows.size()) != prob.p)
            throw stps::ParseError(a.weights + ": expected " + std::to_string(prob.p) + " rows");
        prob.R.resize(prob.p, prob.p);
        for (int i = 0; i < prob.p; ++i)
            for (int j = 0; j < prob.p; ++j) prob.R(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    const stps::AssembledSystem sys = stps::assemble(prob);
    const stps::SplineModel model = stps::solve_fit(prob, sys);

    const Eigen::Map<const Eigen::VectorXd> av(model.a.data(), n);
    const Eigen::Map<const Eigen::VectorXd> bv(model.b.data(), static_cast<long>(model.b.size()));
    const Eigen::Map<const Eigen::VectorXd> yv(prob.y.data(), n);
    const Eigen::VectorXd sys_res =
        (sys.K + prob.mu * sys.W) * av + sys.C.transpose() * bv - yv;
    const double energy = av.dot(sys.K * av);

    std::cout << "n=" << n << " q=" << sys.C.rows() << '\n';
    std::cout << "residual_system=" << stps::format_double(sys_res.cwiseAbs().maxCoeff()) << '\n';
    std::cout << "residual_side=" << stps::format_double((sys.C * av).cwiseAbs().maxCoeff()) << '\n';
    std::cout << "energy=" << stps::format_double(energy) << '\n';
    stps::write_model(a.out, model);
    std::cout << "model written: " << a.out << '\n';
    return 0;
}

int run_predict(const PredictArgs& a)
{
    const stps::SplineModel model = stps::read_model(a.model);
    const stps::PointSet pts = stps::read_points(a.points, parse_format(a.format), model.spec.d);
    const std::vector<double> vals = stps::evaluate(model, pts);
    if (a.out.empty()) {
        stps::write_predictions(std::cout, vals);
    } else {
        std::ofstream out(a.out);
        if (!out) throw stps::ParseError(a.out + ": cannot open for writing");
        stps::write_predictions(out, vals);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"thinplate spline kernels and fitting on the sphere"};
    app.require_subcommand(1);

    KernelArgs ka;
    auto* kc = app.add_subcommand("kernel", "evaluate the kernel at a given abscissa");
    kc->add_option("--d", ka.d, "sphere ambient dimension (S^(d-1))")->required();
    kc->add_option("--m", ka.m, "smoothness order")->required();
    kc->add_option("--ell", ka.ell, "trend degree cut from the series");
    kc->add_option("--xi", ka.xi, "abscissa in [-1,1]")->required();
    kc->add_option("--method", ka.method, "evaluation path")
        ->check(CLI::IsMember({"closed", "series", "auto"}));
    kc->add_option("--tol", ka.tol, "series absolute tolerance");

    std::string suite;
    auto* vc = app.add_subcommand("verify", "run a verification suite");
    vc->add_option("suite", suite, "which suite to run")
        ->required()
        ->check(CLI::IsMember({"props", "recurrence", "catalog"}));

    FitArgs fa;
    auto* fc = app.add_subcommand("fit", "fit a spline to scattered data");
    fc->add_option("--data", fa.data, "CSV of points and values")->required();
    fc->add_option("--d", fa.d, "sphere ambient dimension")->required();
    fc->add_option("--m", fa.m, "smoothness order")->required();
    fc->add_option("--ell", fa.ell, "trend degree");
    fc->add_option("--mu", fa.mu, "smoothing parameter");
    fc->add_option("--interp-from", fa.interp_from,
                   "1-based index of the first interpolated point; earlier points are smoothed");
    fc->add_option("--weights", fa.weights, "CSV with the p x p residual weight matrix");
    fc->add_option("--format", fa.format, "data layout")
        ->check(CLI::IsMember({"cartesian", "geo"}));
    fc->add_option("--out", fa.out, "model file to write")->required();

    PredictArgs pa;
    auto* pc = app.add_subcommand("predict", "evaluate a fitted model at new points");
    pc->add_option("--model", pa.model, "model file from `fit`")->required();
    pc->add_option("--points", pa.points, "CSV of query points")->required();
    pc->add_option("--format", pa.format, "query layout")
        ->check(CLI::IsMember({"cartesian", "geo"}));
    pc->add_option("--out", pa.out, "output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        if (kc->parsed()) return run_kernel(ka);
        if (vc->parsed()) return run_verify(suite);
        if (fc->parsed()) return run_fit(fa);
        return run_predict(pa);
    } catch (const stps::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == stps::ErrorKind::Data ? EXIT_DATA : EXIT_NUMERIC;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_NUMERIC;
    }
}
