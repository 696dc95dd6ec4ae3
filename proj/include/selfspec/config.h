#ifndef SELFSPEC_CONFIG_H
#define SELFSPEC_CONFIG_H

#include "selfspec/selfsim.h"

#include <string>
#include <vector>

namespace selfspec {

// One solver job. depth = -1 means automatic deepening until the
// requested eigenvalues stabilize.
struct JobConfig {
    RawParams params;
    int depth = -1;
    int pos_count = 0;
    int neg_count = 0;
    double rel_tol = 1e-10;
    double auto_depth_tol = 1e-3;
    std::string output;          // empty writes to stdout
    std::string format = "csv";  // csv or text
    bool force = false;
    unsigned long long seed = 1234;
};

// "p/q" with integer parts, or a plain decimal.
double parse_fraction(const std::string& text);

// Flat JSON file with the JobConfig field names; array entries may be
// numbers or fraction strings.
JobConfig load_config(const std::string& path);

// Published reference values for one tabulated eigenvalue: signed index,
// residue class (l, k), the raw magnitude and the normalized magnitude.
struct TableRowRef {
    int index = 0;
    int l = 0;
    int k = 0;
    double raw = 0.0;
    double norm = 0.0;
};

struct TablePreset {
    int id = 0;
    RawParams params;
    int pos_count = 0;
    int neg_count = 0;
    std::vector<TableRowRef> rows;
    double raw_tol = 1e-2;
    double norm_tol = 5e-3;
    double auto_depth_tol = 2e-4;
};

TablePreset preset_table(int id);

} // namespace selfspec

#endif
