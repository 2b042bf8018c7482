#include "uncervals/serialize.hpp"

#include <fstream>

#include "uncervals/csv.hpp"

namespace uncervals {

using nlohmann::json;

json json_number(double v) {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

double number_from_json(const json& j) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    if (j.is_number()) return j.get<double>();
    throw io_error("expected a number or 'inf'");
}

json link_to_json(const Link& link) {
    return json{{"kind", link.kind_name()}, {"beta", link.beta}};
}

Link link_from_json(const json& j) {
    return Link::from_kind_name(j.at("kind").get<std::string>(),
                                j.at("beta").get<std::vector<double>>());
}

json sim_config_to_json(const sim::SimConfig& c) {
    return json{{"shape", c.shape},
                {"scale", c.scale},
                {"inspections", c.inspections},
                {"inspect_length", c.inspect_length},
                {"n", c.n},
                {"covariates",
                 {{"dim", c.covariates.dim},
                  {"min", c.covariates.min},
                  {"max", c.covariates.max},
                  {"rho", c.covariates.rho}}},
                {"link", link_to_json(c.link)},
                {"seed", c.seed},
                {"no_left_censoring", c.no_left_censoring}};
}

sim::SimConfig sim_config_from_json(const json& j) {
    sim::SimConfig c;
    c.shape = j.value("shape", c.shape);
    c.scale = j.value("scale", c.scale);
    c.inspections = j.value("inspections", c.inspections);
    c.inspect_length = j.value("inspect_length", c.inspect_length);
    c.n = j.value("n", c.n);
    if (j.contains("covariates")) {
        const auto& cv = j.at("covariates");
        c.covariates.dim = cv.value("dim", c.covariates.dim);
        c.covariates.min = cv.value("min", c.covariates.min);
        c.covariates.max = cv.value("max", c.covariates.max);
        c.covariates.rho = cv.value("rho", c.covariates.rho);
    }
    if (j.contains("link")) c.link = link_from_json(j.at("link"));
    c.seed = j.value("seed", c.seed);
    c.no_left_censoring = j.value("no_left_censoring", c.no_left_censoring);
    c.validate();
    return c;
}

namespace {

json dataset_to_json(const Dataset& data) {
    json rows = json::array();
    for (const auto& o : data.observations) {
        rows.push_back(json{{"l", o.l}, {"u", json_number(o.u)}, {"x", o.x}});
    }
    return json{{"covariate_dim", data.covariate_dim}, {"rows", std::move(rows)}};
}

Dataset dataset_from_json(const json& j) {
    Dataset data;
    data.covariate_dim = j.at("covariate_dim").get<std::size_t>();
    for (const auto& row : j.at("rows")) {
        IntervalObservation o;
        o.l = row.at("l").get<double>();
        o.u = number_from_json(row.at("u"));
        o.x = row.at("x").get<std::vector<double>>();
        data.observations.push_back(std::move(o));
    }
    data.validate();
    return data;
}

}  // namespace

json model_to_json(const ConditionalCdfModel& model) {
    json j;
    j["model"] = model.name();
    j["t_max"] = model.default_t_max();
    if (const auto* tb = dynamic_cast<const TurnbullFit*>(&model)) {
        json support = json::array();
        for (const auto& s : tb->support) {
            support.push_back(json{{"left", s.left},
                                   {"left_open", s.left_open},
                                   {"right", json_number(s.right)}});
        }
        j["support"] = std::move(support);
        j["masses"] = tb->masses;
        j["iterations"] = tb->iterations;
        j["final_change"] = tb->final_change;
        j["converged"] = tb->converged;
    } else if (const auto* wb = dynamic_cast<const WeibullPhFit*>(&model)) {
        j["log_scale"] = wb->log_scale;
        j["log_shape"] = wb->log_shape;
        j["beta"] = wb->beta;
        j["converged"] = wb->converged;
        j["final_grad_norm"] = wb->final_grad_norm;
        j["iterations"] = wb->iterations;
        j["std_errors"] = wb->std_errors;
    } else if (const auto* orc = dynamic_cast<const OracleModel*>(&model)) {
        j["shape"] = orc->shape();
        j["scale"] = orc->scale();
        j["link"] = link_to_json(orc->link());
    } else if (const auto* kt = dynamic_cast<const KernelTurnbullModel*>(&model)) {
        j["bandwidths"] = kt->bandwidths();
        j["data"] = dataset_to_json(kt->reference_data());
    } else {
        throw numeric_error("model_to_json: unknown model type");
    }
    return j;
}

ModelPtr model_from_json(const json& j) {
    const auto kind = j.at("model").get<std::string>();
    const double t_max = j.value("t_max", 0.0);
    if (kind == "turnbull") {
        auto fit = std::make_shared<TurnbullFit>();
        for (const auto& s : j.at("support")) {
            fit->support.push_back({s.at("left").get<double>(), s.at("left_open").get<bool>(),
                                    number_from_json(s.at("right"))});
        }
        fit->masses = j.at("masses").get<std::vector<double>>();
        if (fit->masses.size() != fit->support.size())
            throw io_error("turnbull model: support/mass size mismatch");
        fit->iterations = j.value("iterations", 0);
        fit->final_change = j.value("final_change", 0.0);
        fit->converged = j.value("converged", true);
        fit->rebuild();
        fit->set_default_t_max(t_max);
        return fit;
    }
    if (kind == "weibull_ph") {
        auto fit = std::make_shared<WeibullPhFit>();
        fit->log_scale = j.at("log_scale").get<double>();
        fit->log_shape = j.at("log_shape").get<double>();
        fit->beta = j.at("beta").get<std::vector<double>>();
        fit->converged = j.value("converged", true);
        fit->final_grad_norm = j.value("final_grad_norm", 0.0);
        fit->iterations = j.value("iterations", 0);
        fit->std_errors = j.value("std_errors", std::vector<double>{});
        fit->set_default_t_max(t_max);
        return fit;
    }
    if (kind == "oracle") {
        auto model = std::make_shared<OracleModel>(j.at("shape").get<double>(),
                                                   j.at("scale").get<double>(),
                                                   link_from_json(j.at("link")));
        model->set_default_t_max(t_max);
        return model;
    }
    if (kind == "kernel_turnbull") {
        auto model = std::make_shared<KernelTurnbullModel>(
            dataset_from_json(j.at("data")), j.at("bandwidths").get<std::vector<double>>());
        model->set_default_t_max(t_max);
        return model;
    }
    throw io_error("unknown model kind '" + kind + "'");
}

void save_model(const ConditionalCdfModel& model, const std::string& path) {
    write_json_file(model_to_json(model), path);
}

ModelPtr load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

json calibration_to_json(const conformal::CalibrationResult& r) {
    return json{{"mode", conformal::mode_name(r.mode)},
                {"b", r.b},
                {"alpha", r.alpha},
                {"seed", r.seed},
                {"q_hat", json_number(r.q_hat)},
                {"phi_star", r.phi_star},
                {"v_star", r.v_star}};
}

conformal::CalibrationResult calibration_from_json(const json& j) {
    conformal::CalibrationResult r;
    r.mode = conformal::mode_from_name(j.at("mode").get<std::string>());
    r.b = j.at("b").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.seed = j.value("seed", std::uint64_t{0});
    r.q_hat = number_from_json(j.at("q_hat"));
    r.phi_star = j.value("phi_star", std::vector<double>{});
    r.v_star = j.value("v_star", std::vector<double>{});
    return r;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) throw io_error("write to '" + path + "' failed");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw io_error(path + ": " + e.what());
    }
    return j;
}

}  // namespace uncervals
