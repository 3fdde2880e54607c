#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catgate::cli {

enum class Command { fidelity_scan, cat_fidelity, wigner, prob_density, mixed_fidelity, scl_map };
enum class Format { csv, json };

/// Invalid user configuration; the message starts with the offending flag.
class config_error : public std::invalid_argument {
public:
    config_error(const std::string& key, const std::string& what)
        : std::invalid_argument("--" + key + ": " + what), key_(key)
    {
    }
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct RunConfig {
    Command command = Command::cat_fidelity;
    std::map<std::string, std::string> parameters; // flag name without dashes -> raw value
    std::string output_path;                       // empty: standard output
    Format format = Format::csv;
};

struct MetaValue {
    std::string text;
    bool numeric = false;
};

/// Result of one command: column names, numeric records and metadata.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, MetaValue>> metadata;
};

std::string command_name(Command c);
Command parse_command(const std::string& name);

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);

/// Computes the table for a configuration. Throws config_error for bad
/// parameters and catgate::numerical_error for numerical failures.
Table execute(const RunConfig& config);

/// Serializes the table (CSV or JSON) with LF line endings.
std::string render(const RunConfig& config, const Table& table);

/// execute + render + write. Returns the process exit status
/// (0 ok, 2 invalid configuration, 3 numerical failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace catgate::cli
