#include "cobosons/cli.hpp"

#include "cobosons/decomposition.hpp"
#include "cobosons/errors.hpp"
#include "cobosons/inference.hpp"
#include "cobosons/interference.hpp"
#include "cobosons/io.hpp"
#include "cobosons/lattice_oracle.hpp"
#include "cobosons/macroscopic.hpp"
#include "cobosons/symfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace cobosons::cli {

namespace {

using io::format_number;

SchmidtDistribution random_distribution(int modes, std::uint64_t seed)
{
    if (modes < 1)
        throw InvalidArgument("--modes must be positive");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> draw(1.0);
    std::vector<double> values(modes);
    for (double& v : values)
        v = draw(rng);
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    for (double& v : values)
        v /= total;
    return SchmidtDistribution(values);
}

SchmidtDistribution resolve_distribution(const RunConfig& config)
{
    const int sources = int(config.lambda_file.has_value()) + int(config.inline_lambdas.has_value()) +
                        int(config.family.has_value());
    if (sources != 1)
        throw InvalidArgument("give exactly one of --lambda, --inline or --family");
    if (config.lambda_file)
        return io::read_lambda_file(*config.lambda_file);
    if (config.inline_lambdas)
        return io::parse_inline_lambdas(*config.inline_lambdas);

    const std::string& family = *config.family;
    if (family == "uniform") {
        if (config.purity)
            return make_uniform_purity(*config.purity);
        if (config.modes)
            return make_uniform(*config.modes);
        throw InvalidArgument("--family uniform needs --purity or --modes");
    }
    if (family == "peaked") {
        if (!config.purity)
            throw InvalidArgument("--family peaked needs --purity");
        return make_peaked(*config.purity, config.modes.value_or(1000000));
    }
    if (family == "random") {
        if (!config.modes)
            throw InvalidArgument("--family random needs --modes");
        return random_distribution(*config.modes, config.seed);
    }
    throw InvalidArgument("unknown family '" + family + "'");
}

BeamSplitter resolve_beam_splitter(const RunConfig& config)
{
    const bool timed = config.t.has_value() || config.jv.has_value();
    if (config.reflectivity && timed)
        throw InvalidArgument("give either --reflectivity or --t/--jv, not both");
    if (timed) {
        if (!config.t || !config.jv)
            throw InvalidArgument("--t and --jv must be given together");
        return BeamSplitter::from_time(*config.t, *config.jv);
    }
    return BeamSplitter(config.reflectivity.value_or(0.5));
}

void check_normalized(const Eigen::VectorXd& probabilities, double tolerance, const std::string& label)
{
    if (std::abs(probabilities.sum() - 1.0) > tolerance)
        throw InternalError(label + " is not normalized (sum " + format_number(probabilities.sum()) + ")");
    if ((probabilities.array() < -tolerance).any() || (probabilities.array() > 1.0 + tolerance).any())
        throw InternalError(label + " has entries outside [0, 1]");
}

void emit(const RunConfig& config, const std::string& csv, std::ostream& out)
{
    if (config.out)
        io::write_atomically(*config.out, csv);
    else
        out << csv;
}

void emit_sidecar(const RunConfig& config, const nlohmann::json& doc)
{
    std::filesystem::path path;
    if (config.sidecar)
        path = *config.sidecar;
    else if (config.out)
        path = std::filesystem::path(*config.out).replace_extension(".json");
    else
        return;
    io::write_atomically(path, doc.dump(2) + "\n");
}

int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const InconsistentData& e) {
        err << "inconsistent data: " << e.what() << "\n";
        return kInconsistent;
    } catch (const IllConditioned& e) {
        err << "ill-conditioned: " << e.what() << "\n";
        return kInconsistent;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

nlohmann::json number_array(const Eigen::VectorXd& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (double x : v)
        a.push_back(x);
    return a;
}

} // namespace

int cmd_weights(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const SchmidtDistribution dist = resolve_distribution(config);
        const FockPair pair(config.n1, config.n2);
        const WeightVector w = weights(dist, pair);
        check_normalized(w.weights, config.tolerance, "weight vector");

        std::ostringstream csv;
        csv << "p,w_p\n";
        for (Eigen::Index p = 0; p < w.size(); ++p)
            csv << p << "," << format_number(w[p]) << "\n";
        emit(config, csv.str(), out);

        const double P = purity(dist);
        const W0Bounds bounds = w0_bounds(P, pair);
        nlohmann::json doc;
        doc["n1"] = pair.upper();
        doc["n2"] = pair.lower();
        doc["purity"] = P;
        doc["chi"] = number_array(chi_table(dist, pair.total()).chi);
        doc["w0_bounds"] = {{"lower", bounds.lower}, {"upper", bounds.upper}};
        emit_sidecar(config, doc);
        return int(kOk);
    });
}

int cmd_counting(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const SchmidtDistribution dist = resolve_distribution(config);
        const FockPair pair(config.n1, config.n2);
        const BeamSplitter bs = resolve_beam_splitter(config);
        const WeightVector w = weights(dist, pair);
        const CountingDistribution total = counting_statistics(w, bs);
        check_normalized(total.probabilities, config.tolerance, "counting distribution");

        std::vector<Eigen::VectorXd> components;
        for (int p = 0; p <= pair.n2(); ++p) {
            components.push_back(component_distribution(pair, p, bs).probabilities);
            check_normalized(components.back(), config.tolerance, "component " + std::to_string(p));
        }
        std::optional<Eigen::VectorXd> reference;
        if (config.reference) {
            reference = distinguishable_reference(pair, bs).probabilities;
            check_normalized(*reference, config.tolerance, "distinguishable reference");
        }

        std::ostringstream csv;
        csv << "m,p_tot";
        for (int p = 0; p <= pair.n2(); ++p)
            csv << ",p_m_" << p;
        if (reference)
            csv << ",p_distinguishable";
        csv << "\n";
        for (Eigen::Index m = 0; m < total.size(); ++m) {
            csv << m << "," << format_number(total[m]);
            for (const auto& c : components)
                csv << "," << format_number(c[m]);
            if (reference)
                csv << "," << format_number((*reference)[m]);
            csv << "\n";
        }
        emit(config, csv.str(), out);

        nlohmann::json doc;
        doc["n1"] = pair.upper();
        doc["n2"] = pair.lower();
        doc["reflectivity"] = bs.reflectivity();
        doc["purity"] = purity(dist);
        doc["weights"] = number_array(w.weights);
        emit_sidecar(config, doc);
        return int(kOk);
    });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (!config.family || (*config.family != "uniform" && *config.family != "peaked"))
            throw InvalidArgument("sweep needs --family uniform or --family peaked");
        if (!config.grid_min || !config.grid_max)
            throw InvalidArgument("sweep needs --purity-min and --purity-max");
        if (config.grid_count < 1)
            throw InvalidArgument("--purity-count must be at least 1");
        const FockPair pair(config.n1, config.n2);
        const BeamSplitter bs = resolve_beam_splitter(config);

        std::vector<double> grid(config.grid_count);
        for (int i = 0; i < config.grid_count; ++i)
            grid[i] = config.grid_count == 1 ? *config.grid_min
                                             : *config.grid_min + (*config.grid_max - *config.grid_min) * i /
                                                                      (config.grid_count - 1);

        const auto family = *config.family == "uniform" ? DistributionFamily::uniform : DistributionFamily::peaked;
        const auto rows = purity_sweep(family, pair, bs, grid, config.modes.value_or(1000000));

        std::ostringstream csv;
        csv << "purity,m,p_tot";
        for (int p = 0; p <= pair.n2(); ++p)
            csv << ",w_" << p;
        csv << ",status\n";
        for (const auto& row : rows) {
            if (!row.counts) {
                err << "purity " << format_number(row.purity) << ": " << row.status << "\n";
                csv << format_number(row.purity) << ",,";
                for (int p = 0; p <= pair.n2(); ++p)
                    csv << ",";
                csv << ",infeasible\n";
                continue;
            }
            check_normalized(row.counts->probabilities, config.tolerance, "sweep row");
            check_normalized(row.weights->weights, config.tolerance, "sweep weights");
            for (Eigen::Index m = 0; m < row.counts->size(); ++m) {
                csv << format_number(row.purity) << "," << m << "," << format_number((*row.counts)[m]);
                for (Eigen::Index p = 0; p < row.weights->size(); ++p)
                    csv << "," << format_number((*row.weights)[p]);
                csv << ",ok\n";
            }
        }
        emit(config, csv.str(), out);
        return int(kOk);
    });
}

int cmd_infer(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (!config.observations)
            throw InvalidArgument("infer needs --observations FILE");
        const BeamSplitter bs = resolve_beam_splitter(config);
        const auto observations = io::read_observations(*config.observations, bs);
        if (observations.empty())
            throw InvalidArgument("observation file is empty");

        // Residual report per order, then the threaded solve.
        const MomentVector recovered = infer_sequence(observations);
        for (const auto& obs : observations) {
            const auto estimate = infer_moment(obs, recovered);
            if (estimate.exceeds_tolerance)
                err << "warning: M(" << estimate.order << ") reproduces the observed statistics only to "
                    << format_number(estimate.residual) << "\n";
        }

        const int known = recovered.max_order();
        const int target = config.target_order.value_or(known + 3);
        const double P = known >= 2 ? recovered.purity() : 1.0;

        std::ostringstream csv;
        csv << "order,m_value,lower,upper,normalized_lower,normalized_upper\n";
        for (int m = 1; m <= known; ++m) {
            const double v = recovered.at(m);
            const double scale = std::pow(P, 0.5 * m);
            csv << m << "," << format_number(v) << "," << format_number(v) << "," << format_number(v) << ","
                << format_number(v / scale) << "," << format_number(v / scale) << "\n";
        }
        if (target > known && known >= 2) {
            for (const auto& env : jensen_envelopes(recovered, target)) {
                const auto normalized = normalize_envelope(env, P);
                csv << env.order << ",," << format_number(env.lower) << "," << format_number(env.upper) << ","
                    << format_number(normalized.lower) << "," << format_number(normalized.upper) << "\n";
            }
        }
        emit(config, csv.str(), out);
        return int(kOk);
    });
}

int cmd_macro(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const BeamSplitter bs = resolve_beam_splitter(config);
        const MacroscopicSetup setup(config.i1, config.i2.value_or(1.0 - config.i1), config.rho, bs);
        if (config.points < 2)
            throw InvalidArgument("--points must be at least 2");

        std::vector<double> samples;
        if (config.sample) {
            if (*config.sample < 0)
                throw InvalidArgument("--sample must be non-negative");
            std::mt19937_64 rng(config.seed);
            samples = sample_intensity(coboson_support(setup), rng, static_cast<std::size_t>(*config.sample));
        }

        std::ostringstream csv;
        csv << "I,p_mwf,p_coboson" << (config.sample ? ",sample" : "") << "\n";
        const std::size_t rows = std::max<std::size_t>(config.points, samples.size());
        for (std::size_t k = 0; k < rows; ++k) {
            if (k < static_cast<std::size_t>(config.points)) {
                const double I = static_cast<double>(k) / (config.points - 1);
                csv << format_number(I) << "," << format_number(mwf_density(I, setup.i1(), setup.i2(), bs)) << ","
                    << format_number(coboson_macro_density(I, setup));
            } else {
                csv << ",,";
            }
            if (config.sample) {
                csv << ",";
                if (k < samples.size())
                    csv << format_number(samples[k]);
            }
            csv << "\n";
        }
        emit(config, csv.str(), out);

        const Support support = coboson_support(setup);
        nlohmann::json doc;
        doc["reflectivity"] = bs.reflectivity();
        doc["i1"] = setup.i1();
        doc["i2"] = setup.i2();
        doc["rho"] = setup.rho();
        doc["width"] = width(setup);
        doc["fermion_fraction"] = fermion_fraction_distribution_uniform(setup);
        doc["support"] = {{"lower", support.lower()}, {"upper", support.upper()}};
        if (config.sample)
            doc["seed"] = config.seed;
        emit_sidecar(config, doc);
        (void)err;
        return int(kOk);
    });
}

int cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const SchmidtDistribution dist = resolve_distribution(config);
        const FockPair pair(config.n1, config.n2);
        const BeamSplitter bs = resolve_beam_splitter(config);

        const LatticeState initial = prepare(dist, pair);
        const WeightVector exact = component_weights_exact(initial);
        const WeightVector predicted = weights(dist, pair);
        const double weight_deviation = (exact.weights - predicted.weights).cwiseAbs().maxCoeff();

        const CountingDistribution oracle =
            measure_counting(apply_beam_splitter(initial, bs), bs.reflectivity());
        const CountingDistribution decomposed = counting_statistics(predicted, bs);
        const double counting_deviation = (oracle.probabilities - decomposed.probabilities).cwiseAbs().maxCoeff();

        const double worst = std::max(weight_deviation, counting_deviation);
        const bool pass = worst <= config.tolerance;
        out << "modes " << dist.size() << ", pair (" << pair.upper() << "," << pair.lower() << "), R "
            << format_number(bs.reflectivity()) << "\n";
        out << "weights max deviation " << format_number(weight_deviation) << "\n";
        out << "counting max deviation " << format_number(counting_deviation) << "\n";
        out << (pass ? "PASS" : "FAIL") << " (tolerance " << format_number(config.tolerance) << ")\n";
        return pass ? int(kOk) : int(kInconsistent);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Composite-boson interference: decomposition weights, counting statistics, inference", "cobosons"};
    app.require_subcommand(1);
    RunConfig config;

    auto add_lambda = [&](CLI::App* sub) {
        sub->add_option("--lambda", config.lambda_file, "Schmidt coefficients (JSON or CSV)");
        sub->add_option("--inline", config.inline_lambdas, "comma-separated Schmidt coefficients");
        sub->add_option("--family", config.family, "uniform | peaked | random");
        sub->add_option("--purity", config.purity, "purity of the family member");
        sub->add_option("--modes", config.modes, "number of Schmidt modes S");
    };
    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("--n1", config.n1, "cobosons in the upper lattice");
        sub->add_option("--n2", config.n2, "cobosons in the lower lattice");
    };
    auto add_beam_splitter = [&](CLI::App* sub) {
        sub->add_option("--reflectivity", config.reflectivity, "beam-splitter reflectivity R (default 0.5)");
        sub->add_option("--t", config.t, "tunneling time");
        sub->add_option("--jv", config.jv, "vertical tunneling rate");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", config.out, "CSV output path (stdout if omitted)");
        sub->add_option("--sidecar", config.sidecar, "JSON sidecar path (default: --out with .json)");
        sub->add_option("--tolerance", config.tolerance, "normalization tolerance checked before writing");
    };

    auto* weights_cmd = app.add_subcommand("weights", "boson/fermion decomposition weights");
    add_lambda(weights_cmd);
    add_pair(weights_cmd);
    add_output(weights_cmd);
    weights_cmd->add_option("--seed", config.seed, "seed for --family random");

    auto* counting_cmd = app.add_subcommand("counting", "counting statistics after the beam splitter");
    add_lambda(counting_cmd);
    add_pair(counting_cmd);
    add_beam_splitter(counting_cmd);
    add_output(counting_cmd);
    counting_cmd->add_option("--seed", config.seed, "seed for --family random");
    counting_cmd->add_flag("--reference", config.reference, "append the distinguishable-particle curve");

    auto* sweep_cmd = app.add_subcommand("sweep", "counting statistics across a purity grid");
    sweep_cmd->add_option("--family", config.family, "uniform | peaked")->required();
    sweep_cmd->add_option("--modes", config.modes, "Schmidt modes of the peaked family (default 1e6)");
    sweep_cmd->add_option("--purity-min", config.grid_min, "first grid purity")->required();
    sweep_cmd->add_option("--purity-max", config.grid_max, "last grid purity")->required();
    sweep_cmd->add_option("--purity-count", config.grid_count, "number of grid points");
    add_pair(sweep_cmd);
    add_beam_splitter(sweep_cmd);
    add_output(sweep_cmd);

    auto* infer_cmd = app.add_subcommand("infer", "power sums from observed counting statistics");
    infer_cmd->add_option("--observations", config.observations, "JSON observation file")->required();
    infer_cmd->add_option("--target", config.target_order, "highest order for the envelopes");
    add_beam_splitter(infer_cmd);
    add_output(infer_cmd);

    auto* macro_cmd = app.add_subcommand("macro", "macroscopic-limit density curves");
    macro_cmd->add_option("--i1", config.i1, "upper input fraction I1");
    macro_cmd->add_option("--i2", config.i2, "lower input fraction I2 (default 1 - I1)");
    macro_cmd->add_option("--rho", config.rho, "bi-fermions per Schmidt mode");
    macro_cmd->add_option("--points", config.points, "grid points on [0, 1]");
    macro_cmd->add_option("--sample", config.sample, "number of phase-model samples");
    macro_cmd->add_option("--seed", config.seed, "sampler seed");
    add_beam_splitter(macro_cmd);
    add_output(macro_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare against the brute-force lattice simulation");
    add_lambda(oracle_cmd);
    add_pair(oracle_cmd);
    add_beam_splitter(oracle_cmd);
    oracle_cmd->add_option("--seed", config.seed, "seed for --family random");
    oracle_cmd->add_option("--tolerance", config.tolerance, "maximum allowed deviation");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    const std::vector<std::pair<CLI::App*, int (*)(const RunConfig&, std::ostream&, std::ostream&)>> dispatch{
        {weights_cmd, cmd_weights}, {counting_cmd, cmd_counting}, {sweep_cmd, cmd_sweep},
        {infer_cmd, cmd_infer},     {macro_cmd, cmd_macro},       {oracle_cmd, cmd_oracle_check}};
    for (const auto& [sub, fn] : dispatch) {
        if (sub->parsed()) {
            config.subcommand = sub->get_name();
            return fn(config, out, err);
        }
    }
    err << "error: no subcommand given\n";
    return kInvalidInput;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace cobosons::cli
