#include "qorder/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>

#include "qorder/figures.h"
#include "qorder/io.h"
#include "qorder/ordering.h"

namespace qorder::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kStateNormSlack = 1e-6;

struct Options {
    std::string state;
    std::string channel;
    std::string measure;
    std::string constraint;
    std::string family;
    std::string out;
    std::string t_list;
    std::string nz_list;
    std::string azimuth_list;
    std::string angles;
    double p = 0;
    double alpha = 2;
    double azimuth = 0;
    double tol = kTieTolerance;
    size_t max_witnesses = 100;
    int figure_id = 0;
};

Constraint parse_constraint(std::string_view name) {
    if (name == "fixed-t") {
        return Constraint::FixedT;
    }
    if (name == "fixed-nz") {
        return Constraint::FixedNz;
    }
    if (name == "none") {
        return Constraint::None;
    }
    throw Error(ErrorKind::DomainError, "unknown constraint '" + std::string(name) + "'");
}

NcFamily parse_family(std::string_view name) {
    if (name == "phi1") {
        return NcFamily::Phi1;
    }
    if (name == "phi2") {
        return NcFamily::Phi2;
    }
    throw Error(ErrorKind::DomainError, "unknown NC family '" + std::string(name) + "'");
}

void require_probability(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw Error(ErrorKind::DomainError, "--p must lie in [0,1]");
    }
}

Json state_json(const BlochState &s) {
    return Json{{"t", s.t()}, {"n", {s.n().x, s.n().y, s.n().z}}};
}

Json measure_json(const Measure &m) {
    Json j{{"name", m.name()}};
    if (m.kind == MeasureKind::Tsallis) {
        j["alpha"] = m.alpha;
    }
    return j;
}

Json grid_json(const GridSpec &g) {
    return Json{{"t", g.t_values}, {"n_z", g.nz_values}, {"azimuth", g.azimuth_values}};
}

Json witness_json(const ReversalWitness &w) {
    return Json{
        {"s1", state_json(w.s1)},
        {"s2", state_json(w.s2)},
        {"before", {w.before[0], w.before[1]}},
        {"after", {w.after[0], w.after[1]}}};
}

GridSpec grid_from(const Options &o, GridSpec base) {
    if (!o.t_list.empty()) {
        base.t_values = io::parse_value_list(o.t_list);
    }
    if (!o.nz_list.empty()) {
        base.nz_values = io::parse_value_list(o.nz_list);
    }
    if (!o.azimuth_list.empty()) {
        base.azimuth_values = io::parse_value_list(o.azimuth_list);
    }
    if (base.p_values.empty()) {
        base.p_values = {0};
    }
    base.validate();
    return base;
}

/// Writes to --out when given, otherwise to the command's stdout.
class Sink {
   public:
    Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw Error(ErrorKind::DomainError, "cannot open output file '" + path + "'");
            }
            stream_ = &file_;
        }
    }
    std::ostream &get() {
        return *stream_;
    }

   private:
    std::ofstream file_;
    std::ostream *stream_;
};

int cmd_coherence(const Options &o, std::ostream &out) {
    BlochState s = parse_state(o.state);
    Measure tsallis = Measure::tsallis(o.alpha);
    DensityMatrix rho = bloch_to_matrix(s);
    Sink sink(o.out, out);
    io::CsvWriter csv(sink.get(), {"measure", "value"});
    for (const Measure &m : {Measure::l1(), Measure::relative_entropy(), Measure::geometric(), tsallis}) {
        csv.row({m.name(), io::format_double(coherence(m, rho))});
    }
    return kExitOk;
}

int cmd_evolve(const Options &o, std::ostream &out) {
    MarkovianKind kind = parse_channel(o.channel);
    require_probability(o.p);
    BlochState s = parse_state(o.state);
    DensityMatrix rho = apply_channel(make_markovian(kind, o.p), bloch_to_matrix(s));
    BlochState after = matrix_to_bloch(rho);
    const Mat2 &m = rho.matrix();
    Sink sink(o.out, out);
    io::CsvWriter csv(sink.get(), {"rho00", "rho01_re", "rho01_im", "rho10_re", "rho10_im", "rho11", "t", "nx", "ny", "nz"});
    csv.row(
        {io::format_double(m(0, 0).real()),
         io::format_double(m(0, 1).real()),
         io::format_double(m(0, 1).imag()),
         io::format_double(m(1, 0).real()),
         io::format_double(m(1, 0).imag()),
         io::format_double(m(1, 1).real()),
         io::format_double(after.t()),
         io::format_double(after.n().x),
         io::format_double(after.n().y),
         io::format_double(after.n().z)});
    return kExitOk;
}

int cmd_scan(const Options &o, std::ostream &out) {
    MarkovianKind kind = parse_channel(o.channel);
    require_probability(o.p);
    Measure m = parse_measure(o.measure, o.alpha);
    GridSpec base;
    base.t_values = linspace_step(0, 1, 0.05);
    base.nz_values = linspace_step(0, 1, 0.05);
    base.azimuth_values = {o.azimuth};
    GridSpec g = grid_from(o, base);
    Surface s = figure_surface(kind, o.p, m, g, o.azimuth);
    Sink sink(o.out, out);
    io::CsvWriter csv(sink.get(), {"t", "n_z", "value"});
    for (const auto &row : s.rows) {
        csv.row({io::format_double(row.t), io::format_double(row.nz), io::format_double(row.value)});
    }
    return kExitOk;
}

int cmd_ordering_check(const Options &o, std::ostream &out) {
    MarkovianKind kind = parse_channel(o.channel);
    require_probability(o.p);
    Measure m = parse_measure(o.measure, o.alpha);
    Constraint c = parse_constraint(o.constraint);
    if (!(o.tol > 0)) {
        throw Error(ErrorKind::DomainError, "--tol must be positive");
    }
    GridSpec g = grid_from(o, GridSpec::default_grid());
    OrderingReport report = check_preservation(kind, o.p, m, g, c, o.tol, o.max_witnesses);

    Json j;
    j["command"] = "ordering-check";
    j["config"] = Json{
        {"channel", kind_name(kind)},
        {"p", o.p},
        {"measure", measure_json(m)},
        {"constraint", constraint_name(c)},
        {"tie_tolerance", o.tol},
        {"max_witnesses", o.max_witnesses},
        {"grid", grid_json(g)}};
    j["pairs_checked"] = report.pairs_checked;
    j["reversal_count"] = report.reversal_count;
    Json witnesses = Json::array();
    for (const auto &w : report.reversals) {
        witnesses.push_back(witness_json(w));
    }
    j["reversals"] = witnesses;
    int code = report.reversal_count > 0 ? kExitReversalFound : kExitOk;
    j["exit_code"] = code;
    Sink sink(o.out, out);
    sink.get() << j.dump(2) << "\n";
    return code;
}

int cmd_figure(const Options &o, std::ostream &out) {
    auto panels = figure_panels(o.figure_id);
    std::ofstream file;
    std::ostream *target = &out;
    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        auto path = std::filesystem::path(o.out) / ("fig" + std::to_string(o.figure_id) + ".csv");
        file.open(path, std::ios::binary);
        if (!file) {
            throw Error(ErrorKind::DomainError, "cannot open output file '" + path.string() + "'");
        }
        target = &file;
    }
    io::CsvWriter csv(*target, {"figure", "panel", "channel", "p", "measure", "t", "n_z", "value"});
    for (const auto &panel : panels) {
        for (const auto &row : panel.surface.rows) {
            csv.row(
                {std::to_string(o.figure_id),
                 panel.label,
                 kind_name(panel.surface.channel),
                 io::format_double(panel.surface.p),
                 panel.surface.measure.name(),
                 io::format_double(row.t),
                 io::format_double(row.nz),
                 io::format_double(row.value)});
        }
    }
    return kExitOk;
}

int cmd_nc_search(const Options &o, std::ostream &out) {
    NcFamily family = parse_family(o.family);
    NcSearchSpec spec = NcSearchSpec::default_spec(family);
    if (!o.angles.empty()) {
        spec.angles = io::parse_value_list(o.angles);
    }
    spec.states = grid_from(o, spec.states);
    NcSearchResult result = nc_reversal_search(spec, o.tol);

    Json j;
    j["command"] = "nc-search";
    j["config"] = Json{
        {"family", o.family}, {"angles", spec.angles}, {"tie_tolerance", o.tol}, {"states", grid_json(spec.states)}};
    j["channels_tried"] = result.channels_tried;
    j["pairs_checked"] = result.pairs_checked;
    j["found"] = result.found.has_value();
    if (result.found) {
        const auto &q = result.found->params;
        Json params{{"theta", q.theta}, {"phi", q.phi}, {"xi", q.xi}};
        if (family == NcFamily::Phi1) {
            params["eta"] = q.eta;
        }
        j["params"] = params;
        j["witness"] = witness_json(result.found->witness);
    }
    Sink sink(o.out, out);
    sink.get() << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

BlochState parse_state(std::string_view text) {
    std::vector<double> v = io::parse_value_list(text);
    if (v.size() != 4 || text.find(':') != std::string_view::npos) {
        throw Error(ErrorKind::InvalidState, "state must be t,nx,ny,nz");
    }
    Vec3 n{v[1], v[2], v[3]};
    double len = n.norm();
    if (!(v[0] >= 0 && v[0] <= 1)) {
        throw Error(ErrorKind::InvalidState, "t must lie in [0,1]");
    }
    if (!(std::abs(len - 1) <= kStateNormSlack)) {
        if (v[0] == 0 && len == 0) {
            return BlochState::make(0, {0, 0, 1});
        }
        throw Error(ErrorKind::InvalidState, "direction n must be a unit vector");
    }
    return BlochState::make(v[0], {n.x / len, n.y / len, n.z / len});
}

MarkovianKind parse_channel(std::string_view name) {
    for (auto kind : {MarkovianKind::AmplitudeDamping,
                      MarkovianKind::PhaseDamping,
                      MarkovianKind::Depolarizing,
                      MarkovianKind::BitFlip}) {
        if (name == kind_name(kind)) {
            return kind;
        }
    }
    throw Error(ErrorKind::DomainError, "unknown channel '" + std::string(name) + "'");
}

Measure parse_measure(std::string_view name, double alpha) {
    if (name == "l1") {
        return Measure::l1();
    }
    if (name == "relative-entropy") {
        return Measure::relative_entropy();
    }
    if (name == "geometric") {
        return Measure::geometric();
    }
    if (name == "tsallis") {
        return Measure::tsallis(alpha);
    }
    throw Error(ErrorKind::DomainError, "unknown measure '" + std::string(name) + "'");
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Coherence measures, qubit channels and coherence-induced state ordering", "qorder"};
    app.require_subcommand(1);
    Options o;

    auto add_grid = [&](CLI::App *sub) {
        sub->add_option("--t", o.t_list, "t values: list a,b,c or range start:stop:step");
        sub->add_option("--nz", o.nz_list, "n_z values: list or range");
    };
    auto add_common = [&](CLI::App *sub) { sub->add_option("--out", o.out, "Output path (default: stdout)"); };

    auto *coh = app.add_subcommand("coherence", "Print all four coherence measures of a state");
    coh->add_option("--state", o.state, "t,nx,ny,nz")->required();
    coh->add_option("--alpha", o.alpha, "Tsallis alpha in (0,1) or (1,2]")->capture_default_str();
    add_common(coh);

    auto *evolve = app.add_subcommand("evolve", "Apply a Markovian channel and print the output state");
    evolve->add_option("--channel", o.channel, "amplitude-damping|phase-damping|depolarizing|bit-flip")->required();
    evolve->add_option("--p", o.p, "Channel parameter in [0,1]")->required();
    evolve->add_option("--state", o.state, "t,nx,ny,nz")->required();
    add_common(evolve);

    auto *scan = app.add_subcommand("scan", "Write a post-channel coherence surface over (t, n_z) as CSV");
    scan->add_option("--channel", o.channel)->required();
    scan->add_option("--measure", o.measure, "l1|relative-entropy|geometric|tsallis")->required();
    scan->add_option("--p", o.p)->required();
    scan->add_option("--alpha", o.alpha)->capture_default_str();
    scan->add_option("--azimuth", o.azimuth, "Azimuth of (nx, ny) in radians")->capture_default_str();
    add_grid(scan);
    add_common(scan);

    auto *order = app.add_subcommand("ordering-check", "Check whether a channel preserves coherence ordering");
    order->add_option("--channel", o.channel)->required();
    order->add_option("--measure", o.measure)->required();
    order->add_option("--p", o.p)->required();
    order->add_option("--constraint", o.constraint, "fixed-t|fixed-nz|none")->required();
    order->add_option("--alpha", o.alpha)->capture_default_str();
    order->add_option("--tol", o.tol, "Tie tolerance")->capture_default_str();
    order->add_option("--max-witnesses", o.max_witnesses, "Reversals listed in the report")->capture_default_str();
    order->add_option("--azimuths", o.azimuth_list, "Azimuth values: list or range");
    add_grid(order);
    add_common(order);

    auto *figure = app.add_subcommand("figure", "Regenerate figure data as CSV");
    figure->add_option("--id", o.figure_id, "Figure number 1..6")->required();
    figure->add_option("--out", o.out, "Output directory (default: stdout)");

    auto *nc = app.add_subcommand("nc-search", "Search NC channels for an l1 ordering reversal");
    nc->add_option("--family", o.family, "phi1|phi2")->required();
    nc->add_option("--angles", o.angles, "Angle values for theta, phi, xi (eta): list or range");
    nc->add_option("--tol", o.tol)->capture_default_str();
    nc->add_option("--azimuths", o.azimuth_list);
    add_grid(nc);
    add_common(nc);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidArguments;
    }

    try {
        if (coh->parsed()) {
            return cmd_coherence(o, out);
        }
        if (evolve->parsed()) {
            return cmd_evolve(o, out);
        }
        if (scan->parsed()) {
            return cmd_scan(o, out);
        }
        if (order->parsed()) {
            return cmd_ordering_check(o, out);
        }
        if (figure->parsed()) {
            return cmd_figure(o, out);
        }
        if (nc->parsed()) {
            return cmd_nc_search(o, out);
        }
    } catch (const Error &e) {
        err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        return e.kind() == ErrorKind::OptimizerFailure ? kExitNumericalFailure : kExitInvalidArguments;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    return kExitInvalidArguments;
}

}  // namespace qorder::cli
