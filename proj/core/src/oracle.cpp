#include "bbdrag/oracle.hpp"

#include "bbdrag/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace bbdrag::oracle {

namespace {

constexpr double cutoff_multiplier = 40.0;

// e^-y / (1 - e^-y); deliberately not the expm1 form used by the engine
double planck(double energy, double temperature)
{
    if (temperature <= 0.0)
        return 0.0;
    const double y = energy / temperature;
    if (y > 700.0)
        return 0.0;
    const double e = std::exp(-y);
    return e / (1.0 - e);
}

double alpha_imag(const PolarizabilityModel& model, double w)
{
    if (const auto* m = std::get_if<LorentzOscillator>(&model)) {
        const double d = m->omega0 * m->omega0 - w * w;
        return m->alpha0 * m->omega0 * m->omega0 * m->damping * w / (d * d + m->damping * m->damping * w * w);
    }
    if (const auto* m = std::get_if<DrudeSphere>(&model)) {
        // Im of R^3 (eps - 1) / (eps + 2) with eps = 1 - wp^2 / (w^2 + i w nu)
        const double wp2 = m->plasma_frequency * m->plasma_frequency;
        const double den = w * w * w * w + w * w * m->collision_rate * m->collision_rate;
        const double eps_re = 1.0 - wp2 * w * w / den;
        const double eps_im = wp2 * w * m->collision_rate / den;
        const double num_re = eps_re - 1.0;
        const double den_re = eps_re + 2.0;
        const double mag = den_re * den_re + eps_im * eps_im;
        return m->radius * m->radius * m->radius * (eps_im * den_re - num_re * eps_im) / mag;
    }
    if (const auto* m = std::get_if<TopHat>(&model))
        return (w >= m->omega_low && w <= m->omega_high) ? m->amplitude : 0.0;
    const auto& m = std::get<Ohmic>(model);
    return m.cutoff ? m.slope * w * std::exp(-w / *m.cutoff) : m.slope * w;
}

double speed_factor(double beta) { return 1.0 / std::sqrt(1.0 - beta * beta); }

// Integrand and grid for one case. Doppler-kernel observables are written in
// the rest-frame frequency w' = gamma w (1 + beta x), where band edges of the
// polarizability are grid-aligned; the rest-frame force is already in w.
struct Setup {
    std::function<double(double, double)> integrand;
    double omega_min = 0.0;
    double omega_max = 0.0;
    double prefactor = 1.0;
};

Setup setup_case(const GoldenCase& c)
{
    const double beta = c.beta;
    const double g = speed_factor(beta);
    const double t1 = c.t1;
    const double t2 = c.t2;
    const PolarizabilityModel model = c.model;

    bool uses_t1 = false;
    bool uses_t2 = false;
    std::function<double(double, double)> weight;
    int occupation_sign_lab = 0;   // coefficient of n(w, T2)
    int occupation_sign_rest = 0;  // coefficient of n(w', T1)
    Setup s;

    switch (c.observable) {
    case Observable::force_lab:
        weight = [beta](double x, double) { return x * (1.0 + beta * x) * (1.0 + beta * x); };
        occupation_sign_lab = 1;
        occupation_sign_rest = -1;
        s.prefactor = -2.0 * g / std::numbers::pi;
        break;
    case Observable::heating_rate:
        weight = [beta](double x, double) { return std::pow(1.0 + beta * x, 3); };
        occupation_sign_lab = 1;
        occupation_sign_rest = -1;
        s.prefactor = 2.0 * g / std::numbers::pi;
        break;
    case Observable::intensity:
        weight = [beta](double x, double) { return std::pow(1.0 + beta * x, 2); };
        occupation_sign_lab = -1;
        occupation_sign_rest = 1;
        s.prefactor = 2.0 * g / std::numbers::pi;
        break;
    case Observable::emitted:
        weight = [beta](double x, double) { return std::pow(1.0 + beta * x, 2); };
        occupation_sign_rest = 1;
        s.prefactor = 2.0 * g / std::numbers::pi;
        break;
    case Observable::absorbed:
        weight = [beta](double x, double) { return std::pow(1.0 + beta * x, 2); };
        occupation_sign_lab = 1;
        s.prefactor = 2.0 * g / std::numbers::pi;
        break;
    case Observable::drag:
        weight = [beta](double x, double) { return (x + beta) * (1.0 + beta * x) * (1.0 + beta * x); };
        occupation_sign_lab = 1;
        s.prefactor = -2.0 * g * g * g / std::numbers::pi;
        break;
    case Observable::rest_frame:
        break;
    }
    uses_t1 = occupation_sign_rest != 0 && t1 > 0.0;
    uses_t2 = (occupation_sign_lab != 0 || c.observable == Observable::rest_frame) && t2 > 0.0;

    const auto* band = std::get_if<TopHat>(&model);
    double top = 0.0;
    if (uses_t1)
        top = std::max(top, cutoff_multiplier * t1);
    if (uses_t2)
        top = std::max(top, cutoff_multiplier * t2 * g * (1.0 + beta));
    s.omega_min = band ? band->omega_low : 0.0;
    s.omega_max = band ? band->omega_high : top;

    if (c.observable == Observable::rest_frame) {
        s.prefactor = 2.0 / std::numbers::pi;
        s.integrand = [=](double w, double x) {
            return std::pow(w, 4) * x * alpha_imag(model, w) * planck(g * w * (1.0 + beta * x), t2);
        };
        return s;
    }

    s.integrand = [=](double wr, double x) {
        const double stretch = g * (1.0 + beta * x);  // w' / w
        const double w = wr / stretch;
        double occ = 0.0;
        if (occupation_sign_lab != 0)
            occ += occupation_sign_lab * planck(w, t2);
        if (occupation_sign_rest != 0)
            occ += occupation_sign_rest * planck(wr, t1);
        // w^4 dw = w'^4 dw' / stretch^5
        return std::pow(w, 4) / stretch * weight(x, wr) * alpha_imag(model, wr) * occ;
    };
    return s;
}

} // namespace

void GridSpec::validate() const
{
    if (n_omega < 64 || n_x < 64)
        throw InputError("oracle grid needs at least 64 nodes per dimension");
    if (!(omega_max > omega_min) || !(omega_min >= 0.0))
        throw InputError("oracle grid needs 0 <= omega_min < omega_max");
}

GridSpec GridSpec::doubled() const
{
    GridSpec g = *this;
    g.n_omega *= 2;
    g.n_x *= 2;
    return g;
}

double riemann_2d(const std::function<double(double, double)>& integrand, const GridSpec& grid)
{
    grid.validate();
    const double hw = (grid.omega_max - grid.omega_min) / static_cast<double>(grid.n_omega);
    const double hx = 2.0 / static_cast<double>(grid.n_x);
    // row sums first, then rows in order: fixed accumulation order
    double total = 0.0;
    for (std::size_t i = 0; i < grid.n_omega; ++i) {
        const double w = grid.omega_min + (static_cast<double>(i) + 0.5) * hw;
        double row = 0.0;
        for (std::size_t j = 0; j < grid.n_x; ++j) {
            const double x = -1.0 + (static_cast<double>(j) + 0.5) * hx;
            const double v = integrand(w, x);
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "riemann_2d: non-finite integrand at (omega = " << w << ", x = " << x << ")";
                throw NumericalError(msg.str());
            }
            row += v;
        }
        total += row;
    }
    return total * hw * hx;
}

std::string_view to_string(Observable o)
{
    switch (o) {
    case Observable::force_lab:
        return "force_lab";
    case Observable::heating_rate:
        return "heating_rate";
    case Observable::intensity:
        return "intensity";
    case Observable::emitted:
        return "emitted";
    case Observable::absorbed:
        return "absorbed";
    case Observable::drag:
        return "drag";
    case Observable::rest_frame:
        return "rest_frame";
    }
    return "force_lab";
}

Observable parse_observable(std::string_view name)
{
    for (auto o : {Observable::force_lab, Observable::heating_rate, Observable::intensity, Observable::emitted,
                   Observable::absorbed, Observable::drag, Observable::rest_frame}) {
        if (to_string(o) == name)
            return o;
    }
    throw InputError("unknown oracle observable '" + std::string(name) + "'");
}

std::vector<GoldenCase> standard_cases()
{
    const PolarizabilityModel band = TopHat{1.0, 0.5, 1.5};
    const PolarizabilityModel lorentz = LorentzOscillator{1.0, 1.0, 0.5};
    const PolarizabilityModel ohmic_cut = Ohmic{1.0, 5.0};
    const PolarizabilityModel ohmic = Ohmic{1.0, std::nullopt};
    const PolarizabilityModel drude = DrudeSphere{1.0, 3.0, 1.0};
    return {
        {"force_lab_tophat_cold_particle", Observable::force_lab, 0.5, 0.0, 1.0, band},
        {"heating_rate_ohmic_hot_particle", Observable::heating_rate, 0.5, 2.0, 1.0, ohmic_cut},
        {"emitted_ohmic_at_rest", Observable::emitted, 0.0, 1.0, 0.0, ohmic},
        {"intensity_tophat_equal_temperatures", Observable::intensity, 0.5, 1.0, 1.0, band},
        {"drag_tophat_beta_0_3", Observable::drag, 0.3, 0.0, 1.0, band},
        {"drag_tophat_beta_0_5", Observable::drag, 0.5, 0.0, 1.0, band},
        {"rest_frame_alt_lorentz", Observable::drag, 0.4, 0.0, 1.0, lorentz},
        {"rest_frame_lorentz", Observable::rest_frame, 0.4, 0.0, 1.0, lorentz},
        {"force_lab_drude_warm", Observable::force_lab, 0.3, 1.5, 1.0, drude},
        {"absorbed_lorentz", Observable::absorbed, 0.6, 0.0, 1.0, lorentz},
    };
}

OracleValue evaluate(const GoldenCase& c, std::size_t n_omega, std::size_t n_x)
{
    const Setup s = setup_case(c);
    OracleValue out;
    out.grid.n_omega = n_omega;
    out.grid.n_x = n_x;
    out.grid.omega_min = s.omega_min;
    out.grid.omega_max = s.omega_max;
    if (!(s.omega_max > s.omega_min))
        return out;  // no thermal scale: integrand vanishes
    out.coarse = s.prefactor * riemann_2d(s.integrand, out.grid);
    out.fine = s.prefactor * riemann_2d(s.integrand, out.grid.doubled());
    out.value = (4.0 * out.fine - out.coarse) / 3.0;
    return out;
}

GoldenRecord mint_golden(const GoldenCase& c, std::size_t n_omega, std::size_t n_x)
{
    const OracleValue base = evaluate(c, n_omega, n_x);
    const OracleValue twice = evaluate(c, 2 * n_omega, 2 * n_x);
    GoldenRecord r;
    r.golden_case = c;
    r.grid = base.grid;
    r.value = base.value;
    r.value_doubled = twice.value;
    const double scale = std::max(std::abs(twice.value), 1e-300);
    r.relative_change = std::abs(twice.value - base.value) / scale;
    if (r.relative_change > convergence_gate) {
        std::ostringstream msg;
        msg << "mint_golden: case '" << c.name << "' fails the grid-doubling gate (relative change "
            << r.relative_change << ")";
        throw NumericalError(msg.str());
    }
    return r;
}

std::string to_json_line(const GoldenRecord& r)
{
    nlohmann::ordered_json j;
    j["case"] = r.golden_case.name;
    j["observable"] = std::string(to_string(r.golden_case.observable));
    j["beta"] = r.golden_case.beta;
    j["T1"] = r.golden_case.t1;
    j["T2"] = r.golden_case.t2;
    j["model"] = nlohmann::ordered_json::parse(model_to_json(r.golden_case.model));
    j["grid"] = {{"n_omega", r.grid.n_omega},
                 {"n_x", r.grid.n_x},
                 {"omega_min", r.grid.omega_min},
                 {"omega_max", r.grid.omega_max}};
    j["method"] = "midpoint, Richardson (4 M(2n) - M(n)) / 3";
    j["value"] = r.value;
    j["value_doubled"] = r.value_doubled;
    j["relative_change"] = r.relative_change;
    return j.dump();
}

GoldenRecord parse_json_line(std::string_view line)
{
    try {
        const auto j = nlohmann::json::parse(line);
        GoldenRecord r;
        r.golden_case.name = j.at("case").get<std::string>();
        r.golden_case.observable = parse_observable(j.at("observable").get<std::string>());
        r.golden_case.beta = j.at("beta").get<double>();
        r.golden_case.t1 = j.at("T1").get<double>();
        r.golden_case.t2 = j.at("T2").get<double>();
        r.golden_case.model = model_from_json(j.at("model").dump());
        const auto& g = j.at("grid");
        r.grid.n_omega = g.at("n_omega").get<std::size_t>();
        r.grid.n_x = g.at("n_x").get<std::size_t>();
        r.grid.omega_min = g.at("omega_min").get<double>();
        r.grid.omega_max = g.at("omega_max").get<double>();
        r.value = j.at("value").get<double>();
        r.value_doubled = j.at("value_doubled").get<double>();
        r.relative_change = j.at("relative_change").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("golden record: ") + e.what());
    }
}

std::vector<GoldenRecord> read_golden_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open golden file " + path.string());
    std::vector<GoldenRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty())
            out.push_back(parse_json_line(line));
    }
    return out;
}

void write_golden_file(const std::filesystem::path& path, const std::vector<GoldenRecord>& records)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw InputError("cannot write golden file " + path.string());
    for (const auto& r : records)
        out << to_json_line(r) << '\n';
}

} // namespace bbdrag::oracle
