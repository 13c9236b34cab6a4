#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lsii/optim.hpp"
#include "lsii/series.hpp"

namespace lsii::cli {

enum ExitCode : int { ok = 0, usage = 1, io_error = 2, parse_error = 3, degenerate = 4, study_failure = 5 };

struct BootstrapSettings {
    std::size_t block_size = 10;
    double window_fraction = 0.11;
    std::size_t replications = 999;
    double level = 0.90;
};

/// Everything a subcommand needs. Populated from the JSON config, then
/// from flags, then from LSII_SEED for the seed.
struct RunConfig {
    std::string model = "ls_ma1";
    std::string design = "ls_ma1_c";
    std::optional<double> theta;  ///< constant truth for the custom design
    std::size_t T = 0;            ///< 0: the design's own sample size
    std::size_t replications = 200;
    std::string kernel = "gaussian";
    std::optional<double> bandwidth;  ///< empty: rule of thumb
    std::vector<double> grid;         ///< empty: default grid
    std::size_t H = 2;
    std::size_t sim_length = 0;
    std::map<std::string, Bounds> bounds;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    int restarts = 3;
    double tolerance = 1e-8;
    int max_iterations = 2000;
    BootstrapSettings bootstrap;
    std::string input;
    std::string output;
    std::string column;
    std::vector<std::string> regressors;
    bool time_varying_mean = false;
    int lags = 5;
};

/// Parses a JSON config document; unknown keys and wrong types raise ParseError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// "0.1,0.5,0.9" -> values; throws ParseError.
std::vector<double> parse_list(const std::string& text);
/// "lo,hi" -> Bounds; throws ParseError.
Bounds parse_bounds(const std::string& text);

/// A numeric table read from CSV: selected value column plus regressors.
struct InputData {
    std::vector<double> values;
    std::vector<std::vector<double>> regressors;  ///< one vector per regressor column
};

/// Reads `path`. `column` empty selects "value" if present, else the last
/// column that is not t, date or u. Throws IoError or ParseError (with the
/// 1-based line number).
InputData read_input_csv(const std::string& path, const std::string& column,
                         const std::vector<std::string>& regressors);
InputData parse_input_csv(const std::string& text, const std::string& column,
                          const std::vector<std::string>& regressors);

/// Shortest-safe 17 significant digit rendering.
std::string format_double(double x);

/// Writes comma-separated rows with LF endings.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void comment(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);

private:
    std::ostream& out_;
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsii::cli
