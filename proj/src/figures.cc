#include "qorder/figures.h"

#include <sstream>

namespace qorder {

namespace {

GridSpec surface_grid() {
    GridSpec g;
    g.t_values = linspace_step(0, 1, 0.05);
    g.nz_values = linspace_step(0, 1, 0.05);
    return g;
}

std::string panel_label(double p, const Measure &m) {
    std::ostringstream ss;
    ss << "p=" << p << " " << m.name();
    return ss.str();
}

FigurePanel panel(MarkovianKind kind, double p, const Measure &m, const GridSpec &g) {
    return {panel_label(p, m), figure_surface(kind, p, m, g)};
}

}  // namespace

std::vector<FigurePanel> figure_panels(int id) {
    const auto ad = MarkovianKind::AmplitudeDamping;
    std::vector<FigurePanel> out;
    switch (id) {
        case 1:
            for (double p : {0.25, 0.5, 0.75}) {
                out.push_back(panel(ad, p, Measure::relative_entropy(), surface_grid()));
            }
            break;
        case 2: {
            GridSpec g;
            g.t_values = linspace_step(0, 1, 0.01);
            g.nz_values = {0.3, 0.6, 0.9};
            for (double p : {0.25, 0.5, 0.75}) {
                out.push_back(panel(ad, p, Measure::relative_entropy(), g));
            }
            break;
        }
        case 3: {
            GridSpec g;
            g.t_values = {0.3, 0.6, 0.9};
            g.nz_values = linspace_step(0, 1, 0.01);
            for (double p : {0.25, 0.5, 0.75}) {
                out.push_back(panel(ad, p, Measure::relative_entropy(), g));
            }
            break;
        }
        case 4:
            for (double p : {0.125, 0.375, 0.625, 0.875}) {
                out.push_back(panel(ad, p, Measure::tsallis(2), surface_grid()));
            }
            break;
        case 5:
            for (double alpha : {0.25, 0.75, 1.25, 1.75}) {
                out.push_back(panel(ad, 0.5, Measure::tsallis(alpha), surface_grid()));
            }
            break;
        case 6:
            for (double alpha : {0.25, 0.75, 1.25, 1.75}) {
                out.push_back(panel(MarkovianKind::PhaseDamping, 0.5, Measure::tsallis(alpha), surface_grid()));
            }
            break;
        default:
            throw Error(ErrorKind::DomainError, "figure id must be 1..6");
    }
    return out;
}

}  // namespace qorder
