#pragma once

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lama/datasets.hpp"
#include "lama/matrix.hpp"
#include "lama/model.hpp"
#include "lama/pca.hpp"
#include "lama/trainer.hpp"
#include "lama/viz.hpp"

namespace lama {

/// Doubles are written with enough digits to round-trip exactly.
inline std::string format_double(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

namespace detail {

inline double parse_double(std::string_view field, std::size_t row_number, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::invalid_argument(std::string(what) + " parse error at row " +
                                    std::to_string(row_number) + ": bad number '" +
                                    std::string(field) + "'");
    return value;
}

inline Matrix read_matrix_csv(std::istream& in, const char* what) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        for (std::string_view field : split_csv(line))
            row.push_back(parse_double(field, row_number, what));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument(std::string(what) + " parse error at row " +
                                        std::to_string(row_number) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument(std::string(what) + ": no rows");
    Matrix out(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = rows[r][c];
    return out;
}

inline void write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
}

}  // namespace detail

inline void write_codebook_csv(std::ostream& out, const Codebook& codebook) {
    detail::write_matrix_csv(out, codebook.weights);
}

inline Codebook read_codebook_csv(std::istream& in) {
    return Codebook{detail::read_matrix_csv(in, "codebook")};
}

inline void write_umatrix_csv(std::ostream& out, const UMatrix& u) {
    detail::write_matrix_csv(out, u.values);
}

inline UMatrix read_umatrix_csv(std::istream& in) {
    return UMatrix{detail::read_matrix_csv(in, "umatrix")};
}

/// Checkpoint metrics, one row per checkpoint. The qel column is empty when
/// the run had no landmarks.
inline void write_trace_csv(std::ostream& out, const std::vector<TraceCheckpoint>& checkpoints) {
    out << "step,qed,qel,ste\n";
    for (const TraceCheckpoint& cp : checkpoints) {
        out << cp.step << ',' << format_double(cp.qed) << ',';
        if (cp.qel) out << format_double(*cp.qel);
        out << ',' << format_double(cp.ste) << '\n';
    }
}

/// Projection export: codebook rows, then data rows, then one variance row
/// carrying the three explained variances.
inline void write_pca_csv(std::ostream& out, const PcaProjection& p) {
    out << "kind,index,pc1,pc2,pc3\n";
    auto rows = [&](const char* kind, const Matrix& coords) {
        for (std::size_t r = 0; r < coords.rows(); ++r)
            out << kind << ',' << r << ',' << format_double(coords(r, 0)) << ','
                << format_double(coords(r, 1)) << ',' << format_double(coords(r, 2)) << '\n';
    };
    rows("codebook", p.codebook_coords);
    rows("data", p.data_coords);
    out << "variance,0," << format_double(p.explained_variance[0]) << ','
        << format_double(p.explained_variance[1]) << ','
        << format_double(p.explained_variance[2]) << '\n';
}

/// Raw generated formant samples for inspection, one line per sample.
inline void write_formant_csv(std::ostream& out, const FormantData& formant) {
    out << "f1,f2,vowel\n";
    for (std::size_t r = 0; r < formant.raw.rows(); ++r)
        out << format_double(formant.raw(r, 0)) << ',' << format_double(formant.raw(r, 1)) << ','
            << formant.dataset.names[r] << '\n';
}

/// Scaled dataset with its row names, one line per row.
inline void write_named_dataset_csv(std::ostream& out, const Dataset& dataset) {
    out << "name";
    for (std::size_t c = 0; c < dataset.dim(); ++c) out << ",x" << c;
    out << '\n';
    for (std::size_t r = 0; r < dataset.size(); ++r) {
        out << (dataset.has_names() ? dataset.names[r] : std::to_string(r));
        for (std::size_t c = 0; c < dataset.dim(); ++c)
            out << ',' << format_double(dataset.rows(r, c));
        out << '\n';
    }
}

inline void write_file(const std::filesystem::path& path, const auto& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace lama
