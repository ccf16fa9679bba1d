#include "skewrot/csv.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "skewrot/maps.hpp"
#include "skewrot/winding.hpp"

namespace skewrot::csv {

std::string format_double(double v) {
    char buf[48];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;  // 17 significant digits always round-trip
}

Writer::Writer(const std::string& path, const std::vector<std::string>& columns)
    : n_cols_(columns.size()), path_(path) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) throw std::runtime_error("cannot open " + path + " for writing");
    row(columns);
}

Writer::~Writer() {
    if (f_) std::fclose(f_);
}

void Writer::row(const std::vector<std::string>& cells) {
    if (!f_) throw std::runtime_error(path_ + " already closed");
    if (cells.size() != n_cols_)
        throw std::runtime_error(path_ + ": row has " + std::to_string(cells.size()) +
                                 " cells, expected " + std::to_string(n_cols_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) std::fputc(',', f_);
        std::fputs(cells[i].c_str(), f_);
    }
    std::fputc('\n', f_);
    if (std::ferror(f_)) throw std::runtime_error("write failure on " + path_);
}

void Writer::close() {
    if (!f_) return;
    const int rc = std::fclose(f_);
    f_ = nullptr;
    if (rc != 0) throw std::runtime_error("close failure on " + path_);
}

void write_orbit_trace(const std::string& path, const OrbitTrace& trace, Point center) {
    Writer w(path, {"step", "substep", "x", "y", "rho", "phi_unwrapped", "h_value"});
    const CombinedHamiltonian ham = hamiltonian_of(trace.product);
    const std::size_t n_factors = trace.product.factors.size();

    double phi = to_inverse_polar(InversePolarFrame{center}, trace.initial).phi;
    auto emit = [&](std::size_t step, std::size_t substep, Point p) {
        w.row({std::to_string(step), std::to_string(substep), format_double(p.x),
               format_double(p.y), format_double(dist(p, center)), format_double(phi),
               format_double(combined_h(ham, p))});
    };

    emit(0, 0, trace.initial);
    Point z = trace.initial;
    for (std::size_t k = 0; k < trace.n(); ++k) {
        for (std::size_t j = 0; j < n_factors; ++j) {
            Arc arc;
            const Point next = apply_traced(trace.product.factors[j], z, arc);
            phi += arc_winding(arc, center);
            z = next;
            if (trace.has_half_steps) {
                // recorded intermediate images must agree with the re-derived ones
                const Point rec = trace.half_steps[k * n_factors + j];
                if (rec.x != z.x || rec.y != z.y)
                    throw std::runtime_error("trace is inconsistent with its own product");
                emit(k + 1, j + 1, z);
            }
        }
        const Point full = trace.full_steps[k];
        if (full.x != z.x || full.y != z.y)
            throw std::runtime_error("trace is inconsistent with its own product");
        if (!trace.has_half_steps) emit(k + 1, n_factors, z);
    }
    w.close();
}

void write_series(const std::string& path, const std::string& t_name,
                  const std::string& value_name,
                  const std::vector<std::pair<double, double>>& xs) {
    Writer w(path, {t_name, value_name});
    for (const auto& [t, v] : xs) w.row({format_double(t), format_double(v)});
    w.close();
}

}  // namespace skewrot::csv
