#ifndef CURVEAVG_GRID_HPP
#define CURVEAVG_GRID_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace curveavg {

/// Axis-aligned box, lo < hi per axis.
struct Box {
    std::vector<double> lo, hi;

    Box() = default;
    Box(std::vector<double> lo_, std::vector<double> hi_);

    static Box cube(int dim, double half_width);  // [-h, h]^dim
    /// Nonisotropic box {|x_1| <= delta, ..., |x_d| <= delta^d} centred at 0.
    static Box nonisotropic(int dim, double delta);

    int dim() const { return static_cast<int>(lo.size()); }
    double volume() const;
    Box translate(const std::vector<double>& shift) const;
    bool contains(const std::vector<double>& x) const;
    bool intersects(const Box& o) const;
};

/// Values on a uniform axis-aligned grid, row-major with the last axis
/// fastest. Point evaluation is nearest-cell so indicators stay {0,1}-valued.
struct GridFunction {
    int dim = 0;
    Box box;
    std::vector<int> resolution;
    std::vector<double> values;

    static GridFunction zeros(const Box& box, const std::vector<int>& resolution);

    double cell_volume() const;
    size_t cell_count() const { return values.size(); }
    std::vector<double> cell_center(size_t flat_index) const;
    double value_at(const std::vector<double>& x) const;  // nearest cell; 0 outside the box
    void fill_indicator(const Box& region);               // cells whose centre lies in region
};

double lp_norm(const GridFunction& f, double p);

/// Lorentz quasi-norm through the decreasing rearrangement of |values| with
/// cell-volume weights; r may be infinity. lorentz_norm(f, p, p) == lp_norm.
double lorentz_norm(const GridFunction& f, double p, double r);

/// Closed form for a single-level function: value v on measure m.
double lorentz_norm_indicator(double v, double m, double p, double r);

// Flat binary layout: one text header line "dim lo hi ... res ...", then
// row-major little-endian 8-byte floats. The JSON sidecar repeats the header.
void write_grid(const GridFunction& f, const std::string& path);
GridFunction read_grid(const std::string& path);
std::string grid_sidecar_json(const GridFunction& f, const std::string& config_hash);
void write_grid_csv(const GridFunction& f, const std::string& path,
                    const std::string& config_hash);

}  // namespace curveavg

#endif
