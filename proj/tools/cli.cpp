#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <catgate/catgate.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace catgate::cli {
namespace {

struct CommandInfo {
    Command command;
    const char* name;
    const char* description;
};

constexpr CommandInfo commands[] = {
    {Command::fidelity_scan, "fidelity-scan", "F_scl (exact vs semiclassical output) versus n for a list of x0"},
    {Command::cat_fidelity, "cat-fidelity", "F_cat (exact output vs perfect cat) versus n and x0"},
    {Command::wigner, "wigner", "Wigner function of the exact output (Mehler engine and/or quadrature oracle)"},
    {Command::prob_density, "prob-density", "homodyne outcome density P(y_m, x0) for a list of n"},
    {Command::mixed_fidelity, "mixed-fidelity", "acceptance-window fidelity F_mix and probability P_mix versus d"},
    {Command::scl_map, "scl-map", "semiclassical images of the input uncertainty disk"},
};

struct FlagSpec {
    const char* name;
    const char* help;
    bool is_switch = false;
};

// Flags accepted per command, with defaults documented in the help text.
std::vector<FlagSpec> flags_for(Command c)
{
    switch (c) {
    case Command::fidelity_scan:
        return {{"n", "photon numbers: list 'a,b,c' or inclusive range 'a:b' (default 1:25)"},
                {"x0", "input x0 values, list or a:b:count (default 0,1,2)"},
                {"ym", "homodyne outcome (default 0)"},
                {"p0", "input p0 (default 0)"},
                {"forbidden", "semiclassical phase outside the resource circle: clamp|zero (default clamp)"}};
    case Command::cat_fidelity:
        return {{"n", "photon numbers (default 1,5,15)"},
                {"x0", "input x0 values (default 0)"},
                {"ym", "homodyne outcome (default 0)"},
                {"p0", "input p0 (default 0)"},
                {"ym-equals-x0", "use y_m = x0 for every row", true}};
    case Command::wigner:
        return {{"n", "photon number (default 0)"},
                {"x0", "input x0 (default 0)"},
                {"p0", "input p0 (default 0)"},
                {"ym", "homodyne outcome (default 0)"},
                {"engine", "mehler|quadrature|both (default mehler)"},
                {"x-range", "a:b:count (default (x0+ym)/2 -+ 6, 201 points)"},
                {"p-range", "a:b:count (default p0 -+ (sqrt(2n+1)+4), 201 points)"},
                {"cat", "also emit the perfect-cat reference grid", true},
                {"timings", "report wall-clock timings in the metadata (breaks byte-identical reruns)", true}};
    case Command::prob_density:
        return {{"n", "photon numbers (default 1,5,10,15)"},
                {"x0", "input x0 (default 0)"},
                {"ym", "outcomes, list or a:b:count (default 0:5:101)"},
                {"method", "gf|quadrature (default gf)"}};
    case Command::mixed_fidelity:
        return {{"n", "photon numbers (default 1,5,10)"},
                {"x0", "input x0, also the window center (default 0)"},
                {"p0", "input p0 (default 0)"},
                {"d", "window widths, list or a:b:count (default 0.01,0.1,0.5,1,2)"}};
    case Command::scl_map:
        return {{"n", "photon number (default 4)"},
                {"ym", "homodyne outcome (default 3)"},
                {"x0", "disk center x (default 3)"},
                {"p0", "disk center p (default 3)"},
                {"radius", "disk radius (default 1)"},
                {"samples", "boundary samples, >= 8 (default 64)"}};
    }
    return {};
}

// ---- parameter parsing -----------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw config_error(key, "expected a finite number, got '" + text + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& text)
{
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw config_error(key, "expected an integer, got '" + text + "'");
    return v;
}

unsigned parse_photon_number(const std::string& key, const std::string& text)
{
    const long v = parse_long(key, text);
    if (v < 0 || v > 400)
        throw config_error(key, "photon number must be in [0, 400], got " + text);
    return static_cast<unsigned>(v);
}

std::size_t parse_count(const std::string& key, const std::string& text)
{
    const long v = parse_long(key, text);
    if (v < 2)
        throw config_error(key, "resolution must be >= 2, got " + text);
    return static_cast<std::size_t>(v);
}

class Params {
public:
    explicit Params(const RunConfig& c) : map_(c.parameters) {}

    bool has(const std::string& key) const { return map_.count(key) != 0; }
    bool flag(const std::string& key) const
    {
        if (!has(key))
            return false;
        const auto& v = map_.at(key);
        if (v == "true" || v == "1" || v.empty())
            return true;
        if (v == "false" || v == "0")
            return false;
        throw config_error(key, "expected true/false, got '" + v + "'");
    }
    std::string text(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? map_.at(key) : fallback;
    }
    double real(const std::string& key, double fallback) const
    {
        return has(key) ? parse_double(key, map_.at(key)) : fallback;
    }
    unsigned photon(const std::string& key, unsigned fallback) const
    {
        return has(key) ? parse_photon_number(key, map_.at(key)) : fallback;
    }

    /// 'a,b,c' or inclusive 'a:b'.
    std::vector<unsigned> photon_list(const std::string& key, const std::string& fallback) const
    {
        const std::string s = text(key, fallback);
        std::vector<unsigned> out;
        if (s.find(':') != std::string::npos) {
            const auto parts = split(s, ':');
            if (parts.size() != 2)
                throw config_error(key, "range must look like a:b, got '" + s + "'");
            const unsigned a = parse_photon_number(key, parts[0]);
            const unsigned b = parse_photon_number(key, parts[1]);
            if (a > b)
                throw config_error(key, "empty range '" + s + "'");
            for (unsigned n = a; n <= b; ++n)
                out.push_back(n);
            return out;
        }
        for (const auto& item : split(s, ','))
            out.push_back(parse_photon_number(key, item));
        return out;
    }

    /// 'a,b,c' or 'a:b:count' (linear, both ends included).
    std::vector<double> real_list(const std::string& key, const std::string& fallback) const
    {
        const std::string s = text(key, fallback);
        if (s.find(':') != std::string::npos) {
            const auto g = range(key, s);
            return g.nodes();
        }
        std::vector<double> out;
        for (const auto& item : split(s, ','))
            out.push_back(parse_double(key, item));
        return out;
    }

    Grid1D range(const std::string& key, const std::string& s) const
    {
        const auto parts = split(s, ':');
        if (parts.size() != 3)
            throw config_error(key, "range must look like a:b:count, got '" + s + "'");
        const double a = parse_double(key, parts[0]);
        const double b = parse_double(key, parts[1]);
        const std::size_t count = parse_count(key, parts[2]);
        if (!(a < b))
            throw config_error(key, "range needs a < b, got '" + s + "'");
        return Grid1D(a, b, count);
    }

    std::optional<Grid1D> optional_range(const std::string& key) const
    {
        if (!has(key))
            return std::nullopt;
        return range(key, map_.at(key));
    }

    void require_known(const std::vector<FlagSpec>& known) const
    {
        std::set<std::string> names;
        for (const auto& f : known)
            names.insert(f.name);
        for (const auto& [k, v] : map_)
            if (!names.count(k))
                throw config_error(k, "not accepted by this command");
    }

private:
    const std::map<std::string, std::string>& map_;
};

MetaValue meta_num(double v) { return {format_number(v), true}; }
MetaValue meta_text(std::string s) { return {std::move(s), false}; }

// ---- commands --------------------------------------------------------------

Table fidelity_scan(const Params& prm)
{
    const auto ns = prm.photon_list("n", "1:25");
    const auto x0s = prm.real_list("x0", "0,1,2");
    const double ym = prm.real("ym", 0.0);
    const double p0 = prm.real("p0", 0.0);
    const std::string mode = prm.text("forbidden", "clamp");
    ForbiddenRegion outside;
    if (mode == "clamp")
        outside = ForbiddenRegion::clamp;
    else if (mode == "zero")
        outside = ForbiddenRegion::zero;
    else
        throw config_error("forbidden", "expected clamp or zero, got '" + mode + "'");

    Table t{{"n", "y_m", "x0", "p0", "F_scl"}, {}, {{"forbidden_region", meta_text(mode)}}};
    for (double x0 : x0s)
        for (unsigned n : ns)
            t.rows.push_back({double(n), ym, x0, p0, scl_fidelity(n, ym, x0, p0, outside)});
    return t;
}

Table cat_fidelity(const Params& prm)
{
    const auto ns = prm.photon_list("n", "1,5,15");
    const auto x0s = prm.real_list("x0", "0");
    const bool follow = prm.flag("ym-equals-x0");
    if (follow && prm.has("ym"))
        throw config_error("ym", "cannot be combined with --ym-equals-x0");
    const double ym = prm.real("ym", 0.0);
    const double p0 = prm.real("p0", 0.0);

    Table t{{"n", "y_m", "x0", "p0", "F_cat"}, {}, {{"cat_expansion", meta_text("about x = y_m")}}};
    for (double x0 : x0s)
        for (unsigned n : ns) {
            const double y = follow ? x0 : ym;
            t.rows.push_back({double(n), y, x0, p0, fidelity_cat_scan(n, y, x0, p0)});
        }
    return t;
}

Table wigner(const Params& prm)
{
    const GateParams params{prm.photon("n", 0), prm.real("ym", 0.0)};
    const CoherentParams input{prm.real("x0", 0.0), prm.real("p0", 0.0)};
    const std::string engine = prm.text("engine", "mehler");
    if (engine != "mehler" && engine != "quadrature" && engine != "both")
        throw config_error("engine", "expected mehler, quadrature or both, got '" + engine + "'");
    const bool with_cat = prm.flag("cat");
    const bool timings = prm.flag("timings");

    auto [xs, ps] = default_wigner_axes(params, input);
    if (auto r = prm.optional_range("x-range"))
        xs = *r;
    if (auto r = prm.optional_range("p-range"))
        ps = *r;

    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };

    std::vector<std::pair<std::string, WignerGrid>> grids;
    Table t;
    t.metadata.push_back({"engine", meta_text(engine)});
    if (engine != "quadrature") {
        const auto t0 = clock::now();
        grids.emplace_back(engine == "both" ? "W_mehler" : "W", wigner_mehler(params, input, xs, ps));
        if (timings)
            t.metadata.push_back({"seconds_mehler", meta_num(seconds(t0, clock::now()))});
    }
    if (engine != "mehler") {
        const auto t0 = clock::now();
        grids.emplace_back(engine == "both" ? "W_quadrature" : "W", wigner_exact_quadrature(params, input, xs, ps));
        if (timings)
            t.metadata.push_back({"seconds_quadrature", meta_num(seconds(t0, clock::now()))});
    }
    if (with_cat)
        grids.emplace_back("W_cat", wigner_cat_reference(perfect_cat(params, input), xs, ps));

    if (engine == "both")
        t.metadata.push_back({"max_abs_difference", meta_num(grids[0].second.max_abs_difference(grids[1].second))});
    for (const auto& [name, g] : grids)
        t.metadata.push_back({"integral_" + name, meta_num(g.integral())});

    t.columns = {"x", "p"};
    for (const auto& [name, g] : grids)
        t.columns.push_back(name);
    for (std::size_t j = 0; j < xs.count(); ++j)
        for (std::size_t k = 0; k < ps.count(); ++k) {
            std::vector<double> row{xs[j], ps[k]};
            for (const auto& entry : grids)
                row.push_back(entry.second.at(j, k));
            t.rows.push_back(std::move(row));
        }
    return t;
}

Table prob_density(const Params& prm)
{
    const auto ns = prm.photon_list("n", "1,5,10,15");
    const double x0 = prm.real("x0", 0.0);
    const auto yms = prm.real_list("ym", "0:5:101");
    const std::string method = prm.text("method", "gf");
    DensityMethod m;
    if (method == "gf")
        m = DensityMethod::generating_function;
    else if (method == "quadrature")
        m = DensityMethod::quadrature;
    else
        throw config_error("method", "expected gf or quadrature, got '" + method + "'");

    Table t{{"n", "x0", "y_m", "P"}, {}, {{"method", meta_text(method)}}};
    for (unsigned n : ns)
        for (double y : yms)
            t.rows.push_back({double(n), x0, y, outcome_density(n, x0, y, m)});
    return t;
}

Table mixed(const Params& prm)
{
    const auto ns = prm.photon_list("n", "1,5,10");
    const double x0 = prm.real("x0", 0.0);
    const double p0 = prm.real("p0", 0.0);
    const auto ds = prm.real_list("d", "0.01,0.1,0.5,1,2");
    for (double d : ds)
        if (!(d > 0.0))
            throw config_error("d", "window widths must be positive");

    Table t{{"n", "x0", "d", "P_mix", "F_mix"}, {}, {{"tolerance", meta_num(1e-9)}}};
    for (unsigned n : ns)
        for (double d : ds) {
            const auto r = mixed_fidelity(n, x0, AcceptanceWindow(x0, d), p0);
            t.rows.push_back({double(n), x0, d, r.probability, r.fidelity});
        }
    return t;
}

Table scl_map(const Params& prm)
{
    const GateParams params{prm.photon("n", 4), prm.real("ym", 3.0)};
    const PhasePoint center{prm.real("x0", 3.0), prm.real("p0", 3.0)};
    const double radius = prm.real("radius", 1.0);
    if (!(radius > 0.0))
        throw config_error("radius", "must be positive");
    const long samples = parse_long("samples", prm.text("samples", "64"));
    if (samples < 8)
        throw config_error("samples", "must be >= 8");

    const auto img = map_disk(params, center, radius, static_cast<std::size_t>(samples));
    const auto circle = resource_circle(params.n, 0.0);
    Table t{{"branch", "x", "p"},
            {},
            {{"dropped", meta_num(double(img.dropped))}, {"resource_radius", meta_num(circle.radius)}}};
    for (const auto& pt : img.upper)
        t.rows.push_back({1.0, pt.q, pt.p});
    for (const auto& pt : img.lower)
        t.rows.push_back({-1.0, pt.q, pt.p});
    return t;
}

void write_json_string(std::ostream& os, const std::string& s) { os << nlohmann::json(s).dump(); }

void write_json_number(std::ostream& os, double v)
{
    if (std::isfinite(v))
        os << format_number(v);
    else
        os << "null";
}

} // namespace

std::string command_name(Command c)
{
    for (const auto& info : commands)
        if (info.command == c)
            return info.name;
    return "?";
}

Command parse_command(const std::string& name)
{
    for (const auto& info : commands)
        if (name == info.name)
            return info.command;
    throw config_error("command", "unknown command '" + name + "'");
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

Table execute(const RunConfig& config)
{
    const Params prm(config);
    prm.require_known(flags_for(config.command));
    switch (config.command) {
    case Command::fidelity_scan:
        return fidelity_scan(prm);
    case Command::cat_fidelity:
        return cat_fidelity(prm);
    case Command::wigner:
        return wigner(prm);
    case Command::prob_density:
        return prob_density(prm);
    case Command::mixed_fidelity:
        return mixed(prm);
    case Command::scl_map:
        return scl_map(prm);
    }
    throw config_error("command", "unhandled command");
}

std::string render(const RunConfig& config, const Table& table)
{
    std::ostringstream os;
    if (config.format == Format::csv) {
        os << "# command=" << command_name(config.command) << '\n';
        for (const auto& [k, v] : config.parameters)
            os << "# " << k << '=' << v << '\n';
        for (const auto& [k, v] : table.metadata)
            os << "# " << k << '=' << v.text << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            os << (i ? "," : "") << table.columns[i];
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << format_number(row[i]);
            os << '\n';
        }
        return os.str();
    }

    os << "{\n  \"config\": {\"command\": ";
    write_json_string(os, command_name(config.command));
    os << ", \"parameters\": {";
    bool first = true;
    for (const auto& [k, v] : config.parameters) {
        os << (first ? "" : ", ");
        write_json_string(os, k);
        os << ": ";
        write_json_string(os, v);
        first = false;
    }
    os << "}},\n  \"columns\": [";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? ", " : "");
        write_json_string(os, table.columns[i]);
    }
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << (r ? ",\n    [" : "\n    [");
        for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
            os << (i ? ", " : "");
            write_json_number(os, table.rows[r][i]);
        }
        os << ']';
    }
    os << (table.rows.empty() ? "],\n" : "\n  ],\n");
    os << "  \"metadata\": {";
    first = true;
    for (const auto& [k, v] : table.metadata) {
        os << (first ? "" : ", ");
        write_json_string(os, k);
        os << ": ";
        if (v.numeric)
            os << v.text;
        else
            write_json_string(os, v.text);
        first = false;
    }
    os << "}\n}\n";
    return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    std::string text;
    try {
        text = render(config, execute(config));
    } catch (const config_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const numerical_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const catgate::domain_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const contract_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (config.output_path.empty()) {
        out << text;
        out.flush();
        return 0;
    }
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: --out: cannot open '" << config.output_path << "' for writing\n";
        return 2;
    }
    file << text;
    if (!file) {
        err << "error: --out: write to '" << config.output_path << "' failed\n";
        return 2;
    }
    return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fock-state cat gate simulator: fidelities, outcome statistics and Wigner maps"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;

    struct Bound {
        CLI::App* sub;
        Command command;
        std::vector<std::pair<std::string, CLI::Option*>> options;
    };
    std::vector<Bound> bound;
    std::map<std::string, std::string> storage;
    std::map<std::string, bool> switches;

    for (const auto& info : commands) {
        CLI::App* sub = app.add_subcommand(info.name, info.description);
        sub->add_option("--format", format, "output format: csv|json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", output, "output file (default: standard output)");
        Bound b{sub, info.command, {}};
        for (const auto& f : flags_for(info.command)) {
            const std::string key = std::string(info.name) + "/" + f.name;
            CLI::Option* opt = f.is_switch ? sub->add_flag(std::string("--") + f.name, switches[key], f.help)
                                           : sub->add_option(std::string("--") + f.name, storage[key], f.help);
            b.options.emplace_back(f.name, opt);
        }
        bound.push_back(std::move(b));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    for (const auto& b : bound) {
        if (!b.sub->parsed())
            continue;
        RunConfig config;
        config.command = b.command;
        config.format = format == "json" ? Format::json : Format::csv;
        config.output_path = output;
        for (const auto& [name, opt] : b.options) {
            if (opt->count() == 0)
                continue;
            const std::string key = command_name(b.command) + "/" + name;
            config.parameters[name] = switches.count(key) ? "true" : storage[key];
        }
        return run(config, out, err);
    }
    return 2;
}

} // namespace catgate::cli
