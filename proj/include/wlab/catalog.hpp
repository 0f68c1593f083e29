#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wlab/chart.hpp"

namespace wlab {

// A catalog surface: one or more charts covering it up to a parameter
// cutoff, a table of analytically known quantities, and (when available) an
// implicit function used for box meshing of surfaces whose charts do not
// stitch along seams.
struct CatalogSurface {
    std::string name;
    std::vector<SurfaceChart> charts;
    std::map<std::string, double> known_values;
    std::function<double(const Vec&)> implicit; // ambient_dim == 3 only
    double reach = 0; // max |f| the charts are guaranteed to cover
};

struct SurfaceParams {
    double radius = 1;      // sphere
    double neck = 1;        // catenoid
    double plane_offset = 0;
    double theta = 1.5707963267948966; // scherk wing angle (only pi/2 supported)
    double torus_R = 1.4142135623730951, torus_r = 1;
    std::string graph_kind = "saddle"; // flat | saddle | cone
};

// Build a catalog surface whose charts cover at least |f| <= extent.
// Names: plane, sphere, catenoid, enneper, scherk, graph, torus.
CatalogSurface make_surface(const std::string& name, double extent,
                            const SurfaceParams& params = {});

// Graph chart over [-L,L]^2 from phi and its analytic derivatives.
SurfaceChart make_graph_chart(
    double L, std::function<double(double, double)> phi,
    std::function<void(double, double, double&, double&)> dphi,
    std::function<void(double, double, double&, double&, double&)> d2phi);

// Available names, for CLI help and error messages.
std::vector<std::string> catalog_names();

} // namespace wlab
