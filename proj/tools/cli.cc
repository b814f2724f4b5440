#include "cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qca/field.h"
#include "qca/qca1.h"
#include "qca/qca2.h"
#include "qca/qlga.h"
#include "qca/render.h"
#include "qca/unitarity.h"

namespace qca::cli {

namespace {

// A flag value that failed validation; the message names the flag.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string &text) {
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a number: " + text);
    }
    return value;
}

std::int64_t parse_integer(const std::string &text) {
    std::size_t used = 0;
    long long value = std::stoll(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument("not an integer: " + text);
    }
    return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Amplitude> read_amplitude_rows(const std::string &path, std::size_t columns_per_row) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    std::vector<Amplitude> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cols = split(line, ',');
        if (cols.size() != columns_per_row) {
            throw std::invalid_argument(
                path + ":" + std::to_string(line_no) + ": expected " + std::to_string(columns_per_row) + " columns");
        }
        for (std::size_t k = 0; k < cols.size(); k += 2) {
            out.emplace_back(parse_number(trim(cols[k])), parse_number(trim(cols[k + 1])));
        }
    }
    return out;
}

std::string format_complex(Amplitude a) {
    std::string im = format_real(std::abs(a.imag()));
    return format_real(a.real()) + (std::signbit(a.imag()) ? "-" : "+") + im + "i";
}

struct InitSpec {
    std::string kind;
    std::vector<std::int64_t> positions;
    std::string direction;
    std::string path;
};

InitSpec parse_init(const std::string &text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError("--init: expected kind:value, got '" + text + "'");
    }
    InitSpec spec;
    spec.kind = text.substr(0, colon);
    auto rest = text.substr(colon + 1);
    try {
        if (spec.kind == "delta") {
            auto parts = split(rest, ':');
            if (parts.empty() || parts.size() > 2) {
                throw std::invalid_argument("bad delta");
            }
            spec.positions.push_back(parse_integer(parts[0]));
            if (parts.size() == 2) {
                if (parts[1] != "left" && parts[1] != "right") {
                    throw std::invalid_argument("direction must be left or right");
                }
                spec.direction = parts[1];
            }
        } else if (spec.kind == "pair" || spec.kind == "particles") {
            for (const auto &p : split(rest, ',')) {
                spec.positions.push_back(parse_integer(p));
            }
            if (spec.kind == "pair" && spec.positions.size() != 2) {
                throw std::invalid_argument("pair needs exactly two cells");
            }
            if (spec.positions.empty()) {
                throw std::invalid_argument("no positions");
            }
        } else if (spec.kind == "amp-file") {
            if (rest.empty()) {
                throw std::invalid_argument("missing path");
            }
            spec.path = rest;
        } else {
            throw std::invalid_argument("unknown kind");
        }
    } catch (const std::exception &e) {
        throw UsageError("--init: cannot parse '" + text + "' (" + e.what() + ")");
    }
    return spec;
}

void require_cells_in_range(const InitSpec &spec, std::int64_t n) {
    for (auto x : spec.positions) {
        if (x < 0 || x >= n) {
            throw UsageError("--init: cell " + std::to_string(x) + " outside 0.." + std::to_string(n - 1));
        }
    }
}

OneComponentField qca1_init(const InitSpec &spec, std::int64_t n) {
    auto size = static_cast<std::size_t>(n);
    if (spec.kind == "amp-file") {
        OneComponentField f;
        f.cells = read_amplitude_rows(spec.path, 2);
        if (f.cells.size() != size) {
            throw UsageError("--init: amp-file has " + std::to_string(f.cells.size()) + " rows, --n is " +
                             std::to_string(n));
        }
        return f;
    }
    require_cells_in_range(spec, n);
    if (spec.kind == "delta") {
        if (spec.direction == "right") {
            return qca1::right_mover(size, spec.positions[0]);
        }
        if (spec.direction == "left") {
            return qca1::left_mover(size, spec.positions[0]);
        }
        OneComponentField f;
        f.cells.assign(size, Amplitude{0, 0});
        f.cells[static_cast<std::size_t>(spec.positions[0])] = 1;
        return f;
    }
    if (spec.kind == "pair") {
        if (spec.positions[0] == spec.positions[1]) {
            throw UsageError("--init: pair cells must differ");
        }
        OneComponentField f;
        f.cells.assign(size, Amplitude{0, 0});
        for (auto x : spec.positions) {
            f.cells[static_cast<std::size_t>(x)] = 1 / std::sqrt(2.0);
        }
        return f;
    }
    throw UsageError("--init: " + spec.kind + " is not supported by this subcommand");
}

TwoComponentField qca2_init(const InitSpec &spec, std::int64_t n) {
    auto size = static_cast<std::size_t>(n);
    if (spec.kind == "amp-file") {
        auto amps = read_amplitude_rows(spec.path, 4);
        if (amps.size() != 2 * size) {
            throw UsageError("--init: amp-file has " + std::to_string(amps.size() / 2) + " rows, --n is " +
                             std::to_string(n));
        }
        TwoComponentField f;
        for (std::size_t x = 0; x < size; x++) {
            f.cells.push_back({amps[2 * x], amps[2 * x + 1]});
        }
        return f;
    }
    require_cells_in_range(spec, n);
    if (spec.kind == "delta") {
        if (spec.direction == "left") {
            return qca2::left_mover(size, spec.positions[0]);
        }
        return qca2::right_mover(size, spec.positions[0]);
    }
    if (spec.kind == "pair") {
        return qca2::embed(qca1_init(spec, n));
    }
    throw UsageError("--init: " + spec.kind + " is not supported by this subcommand");
}

qlga::FockVector qlga_init(const InitSpec &spec, std::int64_t n) {
    require_cells_in_range(spec, n);
    if (spec.kind == "particles" || spec.kind == "delta") {
        if (!spec.direction.empty()) {
            throw UsageError("--init: movers are encoded by cell parity in the lattice gas; drop :" + spec.direction);
        }
        return qlga::configuration(static_cast<int>(n), spec.positions);
    }
    if (spec.kind == "pair") {
        return qlga::single_particle_superposition(static_cast<int>(n), spec.positions);
    }
    throw UsageError("--init: " + spec.kind + " is not supported by this subcommand");
}

struct Options {
    std::int64_t n = 32;
    std::int64_t steps = 64;
    std::string theta = "pi/4";
    std::string rho = "0";
    std::string alpha = "0";
    std::string beta = "0";
    std::string init;
    std::string format = "csv";
    std::string out = "-";
    bool lightcone = false;
    std::int64_t x0 = 0;
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::string compare;
    bool left = false;
    std::int64_t halvings = 3;
    std::string weights;
    std::int64_t radius = -1;
    double tol = 1e-12;
};

double angle_flag(const std::string &flag, const std::string &value) {
    try {
        return parse_angle(value);
    } catch (const std::exception &) {
        throw UsageError(flag + ": cannot parse angle '" + value + "'");
    }
}

std::string argv_comment(const std::vector<std::string> &args) {
    std::string line = "# argv:";
    for (const auto &a : args) {
        line += " " + a;
    }
    return line + "\n";
}

void emit(const Options &opt, const std::string &payload, std::ostream &out) {
    if (opt.out == "-") {
        out << payload;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
        throw UsageError("--out: cannot write " + opt.out);
    }
    file << payload;
}

std::string render(
    const Options &opt, const std::vector<std::string> &args, const PositionDistribution &dist,
    std::int64_t last_t) {
    if (opt.format == "pgm") {
        return render_pgm(dist, opt.n, last_t + 1);
    }
    return argv_comment(args) + write_csv(dist);
}

void check_lattice(const Options &opt, std::int64_t max_cells) {
    if (opt.n < 2 || opt.n % 2 != 0 || opt.n > max_cells) {
        throw UsageError("--n: need an even ring size in [2, " + std::to_string(max_cells) + "]");
    }
    if (opt.steps < 0) {
        throw UsageError("--steps: must be non-negative");
    }
    if (opt.init.empty()) {
        throw UsageError("--init: required");
    }
}

int run_qca1(const Options &opt, const std::vector<std::string> &args, std::ostream &out) {
    check_lattice(opt, 1 << 24);
    double theta = angle_flag("--theta", opt.theta);
    auto init = qca1_init(parse_init(opt.init), opt.n);
    auto history = qca1::evolve(init, static_cast<std::size_t>(opt.steps), theta);
    if (opt.lightcone) {
        LightconeDistribution window;
        try {
            window = lightcone_window(
                project_position(history), static_cast<std::size_t>(opt.n), opt.x0, opt.steps / 2);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--x0: ") + e.what());
        }
        emit(opt, opt.format == "pgm" ? render_pgm(window) : argv_comment(args) + write_csv(window), out);
        return 0;
    }
    emit(opt, render(opt, args, cell_probabilities(history), history.back().t), out);
    return 0;
}

int run_qca2(const Options &opt, const std::vector<std::string> &args, std::ostream &out) {
    check_lattice(opt, 1 << 24);
    double theta = angle_flag("--theta", opt.theta);
    double rho = angle_flag("--rho", opt.rho);
    auto init = qca2_init(parse_init(opt.init), opt.n);
    auto history = qca2::evolve(init, static_cast<std::size_t>(opt.steps), theta, rho);
    emit(opt, render(opt, args, qca2::probability(history), history.back().t), out);
    return 0;
}

int run_qlga(const Options &opt, const std::vector<std::string> &args, std::ostream &out) {
    check_lattice(opt, qlga::kMaxCells);
    qlga::QlgaParams params{
        angle_flag("--theta", opt.theta), angle_flag("--alpha", opt.alpha), angle_flag("--beta", opt.beta)};
    auto init = qlga_init(parse_init(opt.init), opt.n);
    auto history = qlga::evolve(init, static_cast<std::size_t>(opt.steps), params);
    emit(opt, render(opt, args, qlga::occupation_distribution(history), history.back().t), out);
    return 0;
}

int run_propagator(const Options &opt, const std::vector<std::string> &args, std::ostream &out) {
    double theta = angle_flag("--theta", opt.theta);
    if (opt.u < 0 || opt.v < 0) {
        throw UsageError("--u/--v: lightcone indices must be non-negative");
    }
    std::string text = argv_comment(args);
    auto closed = [&](std::int64_t u, std::int64_t v) {
        return opt.left ? qca1::propagator_left_start(u, v, theta) : qca1::propagator_closed(u, v, theta);
    };

    if (opt.compare.empty()) {
        auto r = closed(opt.u, opt.v);
        text += "u,v,channel,re,im\n";
        for (auto [name, a] : {std::pair{"left", r.left}, std::pair{"right", r.right}}) {
            text += std::to_string(opt.u) + "," + std::to_string(opt.v) + "," + name + "," + format_real(a.real()) +
                    "," + format_real(a.imag()) + "\n";
        }
    } else if (opt.compare == "paths") {
        if (opt.u + opt.v > qca1::kMaxPathLength) {
            throw UsageError("--u/--v: path enumeration needs u+v <= " + std::to_string(qca1::kMaxPathLength));
        }
        auto c = closed(opt.u, opt.v);
        auto p = qca1::propagator_paths(opt.u, opt.v, theta, opt.left ? qca1::Mover::Left : qca1::Mover::Right);
        text += "channel,closed_re,closed_im,paths_re,paths_im,abs_diff\n";
        double worst = 0;
        for (auto [name, a, b] : {std::tuple{"left", c.left, p.left}, std::tuple{"right", c.right, p.right}}) {
            double d = std::abs(a - b);
            worst = std::max(worst, d);
            text += std::string(name) + "," + format_real(a.real()) + "," + format_real(a.imag()) + "," +
                    format_real(b.real()) + "," + format_real(b.imag()) + "," + format_real(d) + "\n";
        }
        text += "# max_abs_diff=" + format_real(worst) + "\n";
    } else if (opt.compare == "bessel") {
        if (opt.u <= 0 || opt.v <= 0) {
            throw UsageError("--u/--v: the continuum limit needs an event strictly inside the lightcone");
        }
        if (opt.halvings < 1 || opt.halvings > 8) {
            throw UsageError("--halvings: must be in [1, 8]");
        }
        if (opt.left) {
            throw UsageError("--left: continuum comparison is implemented for right-moving sources");
        }
        text += "eps,lattice_u,lattice_v,channel,lattice_re,lattice_im,limit_re,limit_im,abs_diff\n";
        auto t = static_cast<double>(opt.u + opt.v);
        auto x = static_cast<double>(opt.u - opt.v);
        double previous = 0;
        std::string ratios;
        for (std::int64_t h = 0; h < opt.halvings; h++) {
            std::int64_t scale = std::int64_t{4} << h;
            double eps = 1.0 / static_cast<double>(scale);
            auto lat = qca1::propagator_closed(opt.u * scale, opt.v * scale, eps * theta);
            auto lim = qca1::bessel_limit(t, x, theta, eps);
            double worst = 0;
            for (auto [name, a, b] : {std::tuple{"left", lat.left, lim.left}, std::tuple{"right", lat.right, lim.right}}) {
                double d = std::abs(a - b);
                worst = std::max(worst, d);
                text += format_real(eps) + "," + std::to_string(lat.u) + "," + std::to_string(lat.v) + "," + name +
                        "," + format_real(a.real()) + "," + format_real(a.imag()) + "," + format_real(b.real()) +
                        "," + format_real(b.imag()) + "," + format_real(d) + "\n";
            }
            if (h > 0) {
                ratios += " " + format_real(previous / worst);
            }
            previous = worst;
        }
        text += "# error_ratio_per_halving:" + ratios + "\n";
    } else {
        throw UsageError("--compare: expected paths or bessel, got '" + opt.compare + "'");
    }
    emit(opt, text, out);
    return 0;
}

int run_nogo(const Options &opt, std::ostream &out) {
    if (opt.weights.empty()) {
        throw UsageError("--weights: required");
    }
    if (!(opt.tol > 0)) {
        throw UsageError("--tol: must be positive");
    }
    std::vector<Amplitude> w;
    try {
        w = read_amplitude_rows(opt.weights, 2);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--weights: ") + e.what());
    }
    if (opt.radius >= 0 && w.size() != static_cast<std::size_t>(2 * opt.radius + 1)) {
        throw UsageError("--r: expected " + std::to_string(2 * opt.radius + 1) + " weights, file has " +
                         std::to_string(w.size()));
    }
    if (w.size() % 2 == 0) {
        throw UsageError("--weights: need an odd number 2r+1 of rows");
    }
    auto verdict = classify_no_go(ScalarBandWeights(std::move(w)), opt.tol);
    std::string text;
    if (const auto *t = std::get_if<TrivialVerdict>(&verdict)) {
        text = "TRIVIAL k=" + std::to_string(t->shift) + " phase=" + format_complex(t->phase) + "\n";
    } else {
        text = "NONUNITARY max_residual=" + format_real(std::get<NonUnitaryVerdict>(verdict).max_residual) + "\n";
    }
    emit(opt, text, out);
    return 0;
}

void add_lattice_options(CLI::App *sub, Options &opt) {
    sub->add_option("--n", opt.n, "ring size (even)");
    sub->add_option("--steps", opt.steps, "number of timesteps");
    sub->add_option("--theta", opt.theta, "mixing angle, e.g. pi/4");
    sub->add_option("--init", opt.init, "delta:<x>[:left|right], pair:<x1>,<x2>, amp-file:<path>, particles:<x1>,...");
    sub->add_option("--format", opt.format, "csv or pgm")->check(CLI::IsMember({"csv", "pgm"}));
    sub->add_option("--out", opt.out, "output path, - for stdout");
}

}  // namespace

double parse_angle(const std::string &text) {
    auto s = trim(text);
    if (s.empty()) {
        throw std::invalid_argument("empty angle");
    }
    auto at = s.find("pi");
    if (at == std::string::npos) {
        return parse_number(s);
    }
    double sign = 1;
    std::string head = s.substr(0, at);
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
        sign = head[0] == '-' ? -1 : 1;
        head = head.substr(1);
    }
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
        if (head.empty()) {
            throw std::invalid_argument("dangling '*' in angle");
        }
    }
    double multiple = head.empty() ? 1.0 : parse_number(head);
    if (head.find_first_of("+-") == 0) {
        throw std::invalid_argument("double sign in angle");
    }
    std::string tail = s.substr(at + 2);
    double divisor = 1;
    if (!tail.empty()) {
        if (tail[0] != '/' || tail.size() == 1) {
            throw std::invalid_argument("expected /<number> after pi");
        }
        divisor = parse_number(tail.substr(1));
        if (divisor == 0) {
            throw std::invalid_argument("division by zero in angle");
        }
    }
    return sign * multiple * std::numbers::pi / divisor;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum cellular automata and lattice gas simulator", "qca"};
    app.require_subcommand(1);
    Options opt;

    auto *qca1_cmd = app.add_subcommand("qca1", "partitioned one-particle automaton");
    add_lattice_options(qca1_cmd, opt);
    qca1_cmd->add_flag("--lightcone", opt.lightcone, "position distribution in lightcone coordinates");
    qca1_cmd->add_option("--x0", opt.x0, "lightcone origin cell");

    auto *qca2_cmd = app.add_subcommand("qca2", "two-component automaton");
    add_lattice_options(qca2_cmd, opt);
    qca2_cmd->add_option("--rho", opt.rho, "coupling angle");

    auto *qlga_cmd = app.add_subcommand("qlga", "multi-particle lattice gas");
    add_lattice_options(qlga_cmd, opt);
    qlga_cmd->add_option("--alpha", opt.alpha, "one-particle phase");
    qlga_cmd->add_option("--beta", opt.beta, "two-particle collision phase");

    auto *prop_cmd = app.add_subcommand("propagator", "lattice propagator tables");
    prop_cmd->add_option("--u", opt.u, "right steps")->required();
    prop_cmd->add_option("--v", opt.v, "left steps")->required();
    prop_cmd->add_option("--theta", opt.theta, "mixing angle");
    prop_cmd->add_option("--compare", opt.compare, "paths or bessel");
    prop_cmd->add_flag("--left", opt.left, "left-moving source");
    prop_cmd->add_option("--halvings", opt.halvings, "lattice refinements for --compare bessel, from eps=1/4");
    prop_cmd->add_option("--out", opt.out, "output path, - for stdout");

    auto *nogo_cmd = app.add_subcommand("nogo", "classify translation-invariant band weights");
    nogo_cmd->add_option("--weights", opt.weights, "CSV of re,im rows, 2r+1 of them");
    nogo_cmd->add_option("--r", opt.radius, "band radius (checked against the file)");
    nogo_cmd->add_option("--tol", opt.tol, "residual tolerance");
    nogo_cmd->add_option("--out", opt.out, "output path, - for stdout");

    std::vector<const char *> argv{"qca"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (qca1_cmd->parsed()) {
            return run_qca1(opt, args, out);
        }
        if (qca2_cmd->parsed()) {
            return run_qca2(opt, args, out);
        }
        if (qlga_cmd->parsed()) {
            return run_qlga(opt, args, out);
        }
        if (prop_cmd->parsed()) {
            return run_propagator(opt, args, out);
        }
        return run_nogo(opt, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qca::cli
