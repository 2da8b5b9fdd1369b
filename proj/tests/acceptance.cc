// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion followed by
// indented detail lines. `acceptance --criterion N` runs a single criterion;
// without arguments all eight run. Exit status is 1 if any selected criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qorder/figures.h"
#include "qorder/io.h"
#include "qorder/ordering.h"

using namespace qorder;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void fail(const std::string &why) {
        pass = false;
        details.push_back(why);
    }
    void note(const std::string &what) {
        details.push_back(what);
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

BlochState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 1);
    Vec3 v{g(rng), g(rng), g(rng)};
    double len = v.norm();
    return BlochState::make(u(rng), {v.x / len, v.y / len, v.z / len});
}

const MarkovianKind kAllKinds[] = {
    MarkovianKind::AmplitudeDamping, MarkovianKind::PhaseDamping, MarkovianKind::Depolarizing, MarkovianKind::BitFlip};
const double kAlphas[] = {0.25, 0.75, 1.25, 1.75, 2};

std::vector<double> p_eleven() {
    return linspace_step(0, 1, 0.1);
}

// The same 500 states per (channel, p) cell are used by criteria 1 and 2.
std::vector<BlochState> cell_states(MarkovianKind kind, size_t p_index) {
    std::mt19937_64 rng(1000 * static_cast<int>(kind) + p_index);
    std::vector<BlochState> states;
    for (int i = 0; i < 500; i++) {
        states.push_back(random_state(rng));
    }
    return states;
}

Outcome criterion1() {
    Outcome o;
    auto start = Clock::now();
    double worst = 0;
    size_t compared = 0;
    auto ps = p_eleven();
    for (auto kind : kAllKinds) {
        for (size_t pi = 0; pi < ps.size(); pi++) {
            KrausChannel ch = make_markovian(kind, ps[pi]);
            for (const auto &s : cell_states(kind, pi)) {
                double d = closed_form_output(kind, ps[pi], s).matrix().max_abs_diff(apply_channel(ch, bloch_to_matrix(s)).matrix());
                worst = std::max(worst, d);
                compared++;
                if (d > 1e-12) {
                    o.fail(std::string(kind_name(kind)) + " p=" + fmt(ps[pi]) + " entry gap " + fmt(d));
                }
            }
        }
    }
    double elapsed = seconds_since(start);
    o.note(std::to_string(compared) + " states, worst entry gap " + fmt(worst) + ", " + fmt(elapsed) + " s");
    if (elapsed >= 5) {
        o.fail("runtime " + fmt(elapsed) + " s exceeds 5 s");
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto start = Clock::now();
    std::vector<Measure> measures{Measure::l1(), Measure::relative_entropy()};
    for (double a : kAlphas) {
        measures.push_back(Measure::tsallis(a));
    }
    double worst = 0;
    size_t compared = 0, failures = 0;
    auto ps = p_eleven();
    for (auto kind : kAllKinds) {
        for (size_t pi = 0; pi < ps.size(); pi++) {
            KrausChannel ch = make_markovian(kind, ps[pi]);
            for (const auto &s : cell_states(kind, pi)) {
                DensityMatrix out = apply_channel(ch, bloch_to_matrix(s));
                for (const auto &m : measures) {
                    double d = std::abs(closed_form_coherence(kind, ps[pi], s, m).value - coherence(m, out));
                    worst = std::max(worst, d);
                    compared++;
                    if (d > 1e-10 && failures++ < 10) {
                        o.fail(std::string(kind_name(kind)) + " p=" + fmt(ps[pi]) + " " + m.name() + " gap " + fmt(d));
                    }
                }
            }
        }
    }
    if (failures > 0) {
        o.fail(std::to_string(failures) + " comparisons above 1e-10");
    }
    double elapsed = seconds_since(start);
    o.note(std::to_string(compared) + " comparisons, worst gap " + fmt(worst) + ", " + fmt(elapsed) + " s");
    if (elapsed >= 30) {
        o.fail("runtime " + fmt(elapsed) + " s exceeds 30 s");
    }
    return o;
}

std::vector<Measure> all_measures() {
    std::vector<Measure> ms{Measure::l1(), Measure::relative_entropy(), Measure::geometric()};
    for (double a : kAlphas) {
        ms.push_back(Measure::tsallis(a));
    }
    return ms;
}

Outcome criterion3() {
    Outcome o;
    auto start = Clock::now();
    GridSpec grid = GridSpec::default_grid();
    size_t pairs = 0;
    std::map<std::string, size_t> reversals_by_cell;
    for (auto kind : {MarkovianKind::AmplitudeDamping, MarkovianKind::PhaseDamping, MarkovianKind::Depolarizing}) {
        for (const auto &m : all_measures()) {
            for (auto c : {Constraint::FixedT, Constraint::FixedNz}) {
                size_t total = 0;
                std::optional<ReversalWitness> first;
                double first_p = 0;
                for (double p : grid.p_values) {
                    OrderingReport r = check_preservation(kind, p, m, grid, c, kTieTolerance, 1);
                    pairs += r.pairs_checked;
                    total += r.reversal_count;
                    if (!first && !r.reversals.empty()) {
                        first = r.reversals[0];
                        first_p = p;
                    }
                }
                if (total > 0) {
                    std::string cell = std::string(kind_name(kind)) + " " + m.name() + " " + constraint_name(c);
                    const auto &w = *first;
                    o.fail(cell + ": " + std::to_string(total) + " reversals; first at p=" + fmt(first_p) + " t=(" +
                           fmt(w.s1.t()) + "," + fmt(w.s2.t()) + ") nz=(" + fmt(w.s1.n().z) + "," + fmt(w.s2.n().z) +
                           ") before " + fmt(w.before[0]) + " > " + fmt(w.before[1]) + ", after " + fmt(w.after[0]) + " < " +
                           fmt(w.after[1]));
                }
            }
        }
    }
    double elapsed = seconds_since(start);
    o.note(std::to_string(pairs) + " pairs over 3 channels x 8 measures x 2 constraints x 9 p, " + fmt(elapsed) + " s");
    if (elapsed >= 120) {
        o.fail("runtime " + fmt(elapsed) + " s exceeds 2 min");
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    GridSpec grid = GridSpec::default_grid();
    for (const Measure &m : {Measure::l1(), Measure::relative_entropy(), Measure::geometric(), Measure::tsallis(1.75)}) {
        for (auto c : {Constraint::FixedT, Constraint::FixedNz}) {
            auto w = find_reversal(MarkovianKind::BitFlip, 0.5, m, grid, c);
            std::string cell = m.name() + " " + constraint_name(c);
            if (!w) {
                o.fail(cell + ": no reversal found");
            } else if (!validate_witness(MarkovianKind::BitFlip, 0.5, m, *w, kTieTolerance)) {
                o.fail(cell + ": witness does not re-validate");
            } else {
                o.note(cell + ": before " + fmt(w->before[0]) + " > " + fmt(w->before[1]) + ", after " + fmt(w->after[0]) +
                       " < " + fmt(w->after[1]));
            }
        }
    }
    BlochState s1 = BlochState::make(0.9, {0.3, std::sqrt(0.90), 0.1});
    BlochState s2 = BlochState::make(0.9, {0.6, std::sqrt(0.39), 0.5});
    KrausChannel bf = make_markovian(MarkovianKind::BitFlip, 0.5);
    DensityMatrix r1 = bloch_to_matrix(s1), r2 = bloch_to_matrix(s2);
    ReversalWitness w{s1, s2, {c_l1(r1), c_l1(r2)}, {c_l1(apply_channel(bf, r1)), c_l1(apply_channel(bf, r2))}};
    double gap_before = w.before[0] - w.before[1];
    double gap_after = w.after[0] - w.after[1];
    o.note("fixed pair: l1 gap before " + fmt(gap_before) + ", after " + fmt(gap_after));
    if (!(gap_before > 0.11 && gap_after < -0.26 && validate_witness(bf, Measure::l1(), w, kTieTolerance))) {
        o.fail("fixed witness pair does not reverse with the required margins");
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    GridSpec grid = GridSpec::default_grid();
    struct Case {
        MarkovianKind kind;
        Measure m;
        Axis axis;
        std::vector<double> ps;
    };
    std::vector<Case> cases{
        {MarkovianKind::PhaseDamping, Measure::relative_entropy(), Axis::T, grid.p_values},
        {MarkovianKind::Depolarizing, Measure::relative_entropy(), Axis::Nz, grid.p_values},
        {MarkovianKind::BitFlip, Measure::l1(), Axis::Nx, {0.5}},
        {MarkovianKind::BitFlip, Measure::relative_entropy(), Axis::Nx, {0.5}},
    };
    for (double a : kAlphas) {
        cases.push_back({MarkovianKind::BitFlip, Measure::tsallis(a), Axis::Nx, {0.5}});
    }
    for (const auto &c : cases) {
        size_t points = 0, analytic = 0, mismatches = 0, violations = 0;
        double worst_ratio = 0, min_slope = std::numeric_limits<double>::infinity();
        for (double p : c.ps) {
            MonotonicityReport r = monotonicity_scan(c.kind, p, c.m, c.axis, grid);
            points += r.points_checked;
            analytic += r.analytic_points;
            mismatches += r.analytic_mismatches.size();
            violations += r.violations.size();
            worst_ratio = std::max(worst_ratio, r.worst_analytic_ratio);
            min_slope = std::min(min_slope, r.min_signed_slope);
        }
        std::string cell = std::string(kind_name(c.kind)) + " " + c.m.name() + " d/d" + axis_name(c.axis);
        std::string summary = cell + ": " + std::to_string(analytic) + " analytic points (worst ratio " + fmt(worst_ratio) + "), " +
                              std::to_string(points) + " sign points (min signed slope " + fmt(min_slope) + ")";
        if (analytic == 0 || mismatches > 0 || violations > 0) {
            o.fail(summary + ", " + std::to_string(mismatches) + " mismatches, " + std::to_string(violations) + " sign violations");
        } else {
            o.note(summary);
        }
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto start = Clock::now();
    std::mt19937_64 rng(606);
    size_t compared = 0, disagreements = 0, skipped = 0, exceptions = 0;
    while (compared < 10000) {
        try {
            DensityMatrix a = bloch_to_matrix(random_state(rng));
            DensityMatrix b = bloch_to_matrix(random_state(rng));
            double dl = c_l1(a) - c_l1(b);
            double dg = c_g(a) - c_g(b);
            if (std::abs(dl) <= 1e-8 || std::abs(dg) <= 1e-8) {
                skipped++;
                continue;
            }
            compared++;
            if ((dl > 0) != (dg > 0)) {
                disagreements++;
            }
        } catch (const std::exception &e) {
            exceptions++;
            compared++;
        }
    }
    double elapsed = seconds_since(start);
    o.note(std::to_string(compared) + " pairs (" + std::to_string(skipped) + " near-ties skipped), " +
           std::to_string(disagreements) + " disagreements, " + std::to_string(exceptions) + " exceptions, " + fmt(elapsed) + " s");
    if (disagreements > 0 || exceptions > 0) {
        o.fail("ordering signs differ or the optimizer threw");
    }
    if (elapsed >= 30) {
        o.fail("runtime " + fmt(elapsed) + " s exceeds 30 s");
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::vector<double> angles;
    for (int k = 0; k <= 8; k++) {
        angles.push_back(k * std::numbers::pi / 8);
    }
    size_t phi2_bad = 0, phi1_bad = 0, phi1_incoherent = 0;
    for (double th : angles) {
        for (double ph : angles) {
            for (double xi : angles) {
                if (!is_incoherent(make_nc({NcFamily::Phi2, th, ph, xi, 0}))) {
                    phi2_bad++;
                }
                bool expected = std::abs(std::sin(th) * std::cos(th) * std::sin(ph) * std::cos(ph)) <= 1e-12;
                for (double eta : angles) {
                    bool got = is_incoherent(make_nc({NcFamily::Phi1, th, ph, xi, eta}));
                    phi1_incoherent += got;
                    if (got != expected) {
                        phi1_bad++;
                    }
                }
            }
        }
    }
    o.note("phi2: " + std::to_string(phi2_bad) + " of 729 not incoherent; phi1: " + std::to_string(phi1_incoherent) +
           " of 6561 incoherent, " + std::to_string(phi1_bad) + " disagree with the angle condition");
    if (phi2_bad > 0 || phi1_bad > 0) {
        o.fail("incoherence test disagrees with the expected parameter set");
    }
    for (auto family : {NcFamily::Phi2, NcFamily::Phi1}) {
        const char *name = family == NcFamily::Phi2 ? "phi2" : "phi1";
        NcSearchResult r = nc_reversal_search(NcSearchSpec::default_spec(family));
        if (!r.found) {
            o.fail(std::string(name) + ": no reversal among " + std::to_string(r.channels_tried) + " channels");
            continue;
        }
        KrausChannel ch = make_nc(r.found->params);
        const auto &w = r.found->witness;
        if (!is_incoherent(ch) || !validate_witness(ch, Measure::l1(), w, kTieTolerance)) {
            o.fail(std::string(name) + ": witness channel or pair does not re-validate");
            continue;
        }
        const auto &q = r.found->params;
        o.note(std::string(name) + " witness at theta=" + fmt(q.theta) + " phi=" + fmt(q.phi) + " xi=" + fmt(q.xi) +
               ": l1 before " + fmt(w.before[0]) + " > " + fmt(w.before[1]) + ", after " + fmt(w.after[0]) + " < " +
               fmt(w.after[1]));
    }
    return o;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion8() {
    Outcome o;
    auto dir = std::filesystem::temp_directory_path() / "qorder_acceptance_figures";
    std::filesystem::remove_all(dir);
    auto start = Clock::now();
    for (int id = 1; id <= 6; id++) {
        std::string cmd = std::string(QORDER_CLI_PATH) + " figure --id " + std::to_string(id) + " --out " + dir.string();
        int raw = std::system(cmd.c_str());
        if (raw == -1 || WEXITSTATUS(raw) != 0) {
            o.fail("figure " + std::to_string(id) + " exited with status " + std::to_string(WEXITSTATUS(raw)));
        }
    }
    double elapsed = seconds_since(start);
    o.note("figures 1-6 regenerated in " + fmt(elapsed) + " s");
    if (elapsed >= 10) {
        o.fail("runtime " + fmt(elapsed) + " s exceeds 10 s");
    }

    for (int id = 1; id <= 6; id++) {
        auto rows = io::parse_csv(read_file(dir / ("fig" + std::to_string(id) + ".csv")));
        // panel -> t -> nz -> value
        std::map<std::string, std::map<double, std::map<double, double>>> panels;
        for (size_t i = 1; i < rows.size(); i++) {
            panels[rows[i][1]][io::parse_double(rows[i][5])][io::parse_double(rows[i][6])] = io::parse_double(rows[i][7]);
        }
        for (const auto &[label, by_t] : panels) {
            double worst_t = 0, worst_nz = 0;
            const std::map<double, double> *prev = nullptr;
            for (const auto &[t, by_nz] : by_t) {
                if (prev) {
                    for (const auto &[nz, v] : by_nz) {
                        worst_t = std::max(worst_t, prev->at(nz) - v);
                    }
                }
                prev = &by_nz;
                double last = std::numeric_limits<double>::quiet_NaN();
                for (const auto &[nz, v] : by_nz) {
                    if (!std::isnan(last)) {
                        worst_nz = std::max(worst_nz, v - last);
                    }
                    last = v;
                }
            }
            std::string cell = "fig" + std::to_string(id) + " [" + label + "]: largest drop along t " + fmt(worst_t) +
                               ", largest rise along n_z " + fmt(worst_nz);
            if (worst_t > 1e-8 || worst_nz > 1e-8) {
                o.fail(cell);
            } else {
                o.note(cell);
            }
        }
    }
    std::filesystem::remove_all(dir);
    return o;
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>> &criteria() {
    static const std::map<int, std::pair<std::string, std::function<Outcome()>>> table{
        {1, {"closed-form channel outputs match Kraus application within 1e-12", criterion1}},
        {2, {"closed-form coherence matches measures of Kraus outputs within 1e-10", criterion2}},
        {3, {"AD/PD/depolarizing preserve ordering under fixed t and fixed n_z", criterion3}},
        {4, {"bit flip at p=1/2 reverses ordering for every measure and constraint", criterion4}},
        {5, {"finite differences match analytic derivatives and claimed signs", criterion5}},
        {6, {"l1 and geometric coherence order 10^4 random pairs identically", criterion6}},
        {7, {"NC incoherence conditions and an l1 reversal witness", criterion7}},
        {8, {"figure data regenerates quickly and is monotone in t and n_z", criterion8}},
    };
    return table;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; i++) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty()) {
        for (const auto &[id, _] : criteria()) {
            selected.push_back(id);
        }
    }
    bool all_pass = true;
    for (int id : selected) {
        auto it = criteria().find(id);
        if (it == criteria().end()) {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        auto start = Clock::now();
        Outcome o;
        try {
            o = it->second.second();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all_pass = all_pass && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << it->second.first << " ("
                  << fmt(seconds_since(start)) << " s)\n";
        for (const auto &line : o.details) {
            std::cout << "    " << line << "\n";
        }
    }
    return all_pass ? 0 : 1;
}
