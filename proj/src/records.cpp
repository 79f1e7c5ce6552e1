#include "records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace scalekit {
namespace {

const std::vector<std::string>& schema_v1_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c = {"family",  "label",    "variant", "params",
                                      "train_flops", "pile_xent", "tokens",  "d_model",
                                      "n_layers",    "d_head",    "d_ffn",   "vocab_size",
                                      "seq_len"};
        for (const char* d : kDownstreamColumns) c.push_back(d);
        return c;
    }();
    return cols;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(ErrorCode code, std::size_t line, std::size_t column,
                             const std::string& what) {
    fail(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                   ": " + what);
}

double parse_double(const std::string& cell, std::size_t line, std::size_t col) {
    const std::string t = trim(cell);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        parse_fail(ErrorCode::malformed_number, line, col, "bad number '" + t + "'");
    if (!std::isfinite(v))
        parse_fail(ErrorCode::malformed_number, line, col, "non-finite number");
    return v;
}

std::int64_t parse_int(const std::string& cell, std::size_t line, std::size_t col) {
    const double v = parse_double(cell, line, col);
    if (v != std::floor(v) || std::fabs(v) > 9.2e18)
        parse_fail(ErrorCode::malformed_number, line, col, "expected an integer");
    return static_cast<std::int64_t>(v);
}

std::string format_double(double v) {
    // Shortest representation that round-trips.
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

RecordFile parse_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    RecordFile file;
    std::set<std::pair<std::string, std::string>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::vector<std::string> cells = split_csv_line(line);

        if (!have_header) {
            const auto& want = schema_v1_columns();
            if (cells.size() != want.size())
                parse_fail(ErrorCode::schema_mismatch, line_no, 1,
                           "header has " + std::to_string(cells.size()) + " columns, schema v1 needs " +
                               std::to_string(want.size()));
            for (std::size_t i = 0; i < want.size(); ++i)
                if (trim(cells[i]) != want[i])
                    parse_fail(ErrorCode::schema_mismatch, line_no, i + 1,
                               "expected column '" + want[i] + "', found '" + trim(cells[i]) + "'");
            have_header = true;
            continue;
        }

        if (cells.size() != schema_v1_columns().size())
            parse_fail(ErrorCode::schema_mismatch, line_no, 1,
                       "row has " + std::to_string(cells.size()) + " columns");

        EvalRecord r;
        std::size_t col = 0;
        r.family = trim(cells[col++]);
        r.label = trim(cells[col++]);
        r.variant = trim(cells[col++]);
        if (r.family.empty() || r.label.empty())
            parse_fail(ErrorCode::schema_mismatch, line_no, 1, "family and label are required");
        if (!seen.insert({r.family, r.label}).second)
            parse_fail(ErrorCode::duplicate_label, line_no, 1,
                       "duplicate (" + r.family + ", " + r.label + ")");

        r.params = parse_int(cells[col], line_no, col + 1);
        ++col;
        r.train_flops = parse_double(cells[col], line_no, col + 1);
        if (!(r.train_flops > 0.0))
            parse_fail(ErrorCode::malformed_number, line_no, col + 1,
                       "train_flops must be positive");
        ++col;
        if (!trim(cells[col]).empty()) r.pile_xent = parse_double(cells[col], line_no, col + 1);
        ++col;
        if (!trim(cells[col]).empty()) r.tokens = parse_int(cells[col], line_no, col + 1);
        ++col;

        std::array<std::optional<std::int64_t>, 6> dims;
        for (std::size_t d = 0; d < 6; ++d, ++col)
            if (!trim(cells[col]).empty()) dims[d] = parse_int(cells[col], line_no, col + 1);
        const bool any_dim = dims[0] || dims[1] || dims[2] || dims[3] || dims[4] || dims[5];
        if (any_dim) {
            for (std::size_t d = 0; d < 6; ++d)
                if (!dims[d])
                    parse_fail(ErrorCode::schema_mismatch, line_no, 8 + d,
                               "shape columns must be all present or all empty");
            ModelShape s{*dims[0], *dims[1], *dims[2], *dims[3], *dims[4], *dims[5]};
            try {
                validate_shape(s);
            } catch (const Error& e) {
                parse_fail(ErrorCode::malformed_number, line_no, 8, e.what());
            }
            r.shape = s;
        }

        for (const char* task : kDownstreamColumns) {
            if (!trim(cells[col]).empty()) {
                const double acc = parse_double(cells[col], line_no, col + 1);
                if (acc < 0.0 || acc > 1.0)
                    parse_fail(ErrorCode::malformed_number, line_no, col + 1,
                               "accuracy outside [0, 1]");
                r.downstream[task] = acc;
            }
            ++col;
        }
        file.rows.push_back(std::move(r));
    }
    if (!have_header)
        fail(ErrorCode::schema_mismatch, "missing header row");
    return file;
}

RecordFile parse_records_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_records(buf.str());
}

std::string emit_records(const RecordFile& file) {
    std::string out = "# scalekit records v" + std::to_string(file.schema_version) + "\n";
    const auto& cols = schema_v1_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out += cols[i];
        out += (i + 1 < cols.size()) ? "," : "\n";
    }
    for (const auto& r : file.rows) {
        out += r.family + "," + r.label + "," + r.variant + ",";
        out += std::to_string(r.params) + ",";
        out += format_double(r.train_flops) + ",";
        out += r.pile_xent ? format_double(*r.pile_xent) : "";
        out += ",";
        out += r.tokens ? std::to_string(*r.tokens) : "";
        out += ",";
        if (r.shape) {
            const ModelShape& s = *r.shape;
            out += std::to_string(s.d_model) + "," + std::to_string(s.n_layers) + "," +
                   std::to_string(s.d_head) + "," + std::to_string(s.d_ffn) + "," +
                   std::to_string(s.vocab_size) + "," + std::to_string(s.seq_len);
        } else {
            out += ",,,,,";
        }
        for (const char* task : kDownstreamColumns) {
            out += ",";
            auto it = r.downstream.find(task);
            if (it != r.downstream.end()) out += format_double(it->second);
        }
        out += "\n";
    }
    return out;
}

const std::vector<RecipeRow>& bundled_recipes() {
    // Training-recipe constants for the seven released model sizes.
    // Batch sizes are the sequence counts times 2048 tokens.
    static const std::vector<RecipeRow> rows = {
        {"111m", {768, 10, 64, 3072, 50257, 2048}, 2'200'000'000, 245'760, 6.0e-4, false, 0, 0},
        {"256m", {1088, 14, 64, 4352, 50257, 2048}, 5'100'000'000, 540'672, 6.0e-4, false, 0, 0},
        {"590m", {1536, 18, 128, 6144, 50257, 2048}, 11'800'000'000, 540'672, 2.0e-4, false, 0, 0},
        {"1.3b", {2048, 24, 128, 8192, 50257, 2048}, 26'300'000'000, 1'081'344, 2.0e-4, true, 0, 0},
        {"2.7b", {2560, 32, 80, 10240, 50257, 2048}, 53'000'000'000, 1'081'344, 2.0e-4, true, 0, 0},
        {"6.7b", {4096, 32, 128, 16384, 50257, 2048}, 133'200'000'000, 2'129'920, 1.2e-4, false, 0, 0},
        {"13b", {5120, 40, 128, 20480, 50257, 2048}, 257'100'000'000, 2'211'840, 1.2e-4, true,
         1'474'560, 84'000'000'000},
    };
    return rows;
}

} // namespace scalekit
